#include "moodfilm/story.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace moodfilm {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Wander: return "wander";
    case EventKind::ExerciseBoost: return "exercise_boost";
    case EventKind::Social: return "social";
    case EventKind::Sleep: return "sleep";
    case EventKind::Stress: return "stress";
  }
  return "wander";
}

std::optional<EventKind> event_kind_from_string(std::string_view text) {
  for (auto k : {EventKind::Wander, EventKind::ExerciseBoost, EventKind::Social, EventKind::Sleep,
                 EventKind::Stress}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::string_view to_string(StoryMode mode) {
  return mode == StoryMode::Control ? "control" : "personalized";
}

std::optional<StoryMode> story_mode_from_string(std::string_view text) {
  if (text == "personalized") return StoryMode::Personalized;
  if (text == "control") return StoryMode::Control;
  return std::nullopt;
}

double partner_scale(SocialPartner partner) {
  switch (partner) {
    case SocialPartner::Submissive: return 0.6;
    case SocialPartner::Peer: return 1.0;
    case SocialPartner::Dominant: return 1.5;
  }
  return 1.0;
}

bool ChapterPlan::solitary() const {
  return social_kind == SocialKind::None &&
         std::none_of(events.begin(), events.end(),
                      [](const EventSpec& e) { return e.kind() == EventKind::Social; });
}

double dramatic_score(const DailyReport& r) {
  const auto a = to_affect(r.mood_valence, r.mood_arousal);
  return std::abs(a.valence) + 0.5 * std::abs(a.arousal) + 0.5 * (r.stress_level.value() / 7.0);
}

namespace {

Millis sum_durations(const ChapterPlan& c) {
  Millis total = 0;
  for (const auto& e : c.events) total += e.duration_ms;
  return total;
}

// Splits `total` over the two wander events, first one taking the floor.
void set_wander(ChapterPlan& c, Millis total) {
  c.events.front().duration_ms = total / 2;
  c.events.back().duration_ms = total - total / 2;
}

}  // namespace

std::vector<DailyReport> select_chapter_days(const WeekData& week) {
  std::vector<std::size_t> order(week.reports.size());
  std::iota(order.begin(), order.end(), 0);
  // Ranked on 42x the score, which is an exact integer, so equal scores tie.
  std::vector<int> scores;
  scores.reserve(week.reports.size());
  for (const auto& r : week.reports) {
    scores.push_back(14 * std::abs(r.mood_valence.value() - 4) +
                     7 * std::abs(r.mood_arousal.value() - 4) + 3 * r.stress_level.value());
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return std::chrono::sys_days{week.reports[a].date} < std::chrono::sys_days{week.reports[b].date};
  });
  order.resize(std::min<std::size_t>(kMaxChapters, order.size()));
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::chrono::sys_days{week.reports[a].date} < std::chrono::sys_days{week.reports[b].date};
  });
  std::vector<DailyReport> out;
  for (auto i : order) out.push_back(week.reports[i]);
  return out;
}

ChapterPlan plan_chapter(const DailyReport& r) {
  ChapterPlan c;
  c.date = r.date;
  c.title = r.memory_cue;
  c.affect = to_affect(r.mood_valence, r.mood_arousal);
  c.quadrant = classify_quadrant(c.affect);
  c.palette = palette_for(c.quadrant, c.affect.intensity());
  c.energy = energy_level(r.sleep_hours, r.sleep_quality, r.exercise_minutes);
  c.stress = stress_profile(r.stress_level, r.stress_handling);
  c.social_kind = r.social.kind;
  c.late_night = r.bedtime.minutes >= 60 && r.bedtime.minutes < 5 * 60;

  std::vector<EventSpec> interior;
  if (r.exercise_minutes >= kExerciseBoostMinutes) {
    interior.push_back({ExerciseBoostEvent{}, kInteriorEventMs, kInteriorEventMs});
  }
  if (r.social.kind != SocialKind::None) {
    interior.push_back(
        {SocialEvent{r.social.kind, partner_scale(r.social.partner)}, kInteriorEventMs,
         kInteriorEventMs});
  }
  if (c.energy.fatigued) {
    interior.push_back({SleepEvent{1.0 - c.energy.value}, kInteriorEventMs, kInteriorEventMs});
  }
  if (c.stress.kind != StressKind::NoStressor) {
    interior.push_back({StressEvent{c.stress}, kInteriorEventMs, kInteriorEventMs});
  }
  std::stable_sort(interior.begin(), interior.end(), [](const EventSpec& a, const EventSpec& b) {
    return a.intensity_rank() < b.intensity_rank();
  });

  const Millis half_wander = kWanderBaseMs / 2;
  c.events.push_back({WanderEvent{}, half_wander, half_wander});
  c.events.insert(c.events.end(), interior.begin(), interior.end());
  c.events.push_back({WanderEvent{}, half_wander, half_wander});
  const Millis interior_ms = kInteriorEventMs * c.interior_count();
  c.duration_ms = std::clamp(kWanderBaseMs + interior_ms, kChapterMinMs, kChapterMaxMs);
  set_wander(c, c.duration_ms - interior_ms);
  return c;
}


DurationBudget allocate_durations(std::vector<ChapterPlan>& chapters) {
  Millis events_total = 0;
  Millis wander_total = 0;
  for (auto& c : chapters) {
    Millis interior = 0;
    for (std::size_t i = 1; i + 1 < c.events.size(); ++i) {
      c.events[i].duration_ms = c.events[i].nominal_ms;
      interior += c.events[i].duration_ms;
    }
    const Millis raw = std::clamp(kWanderBaseMs + interior, kChapterMinMs, kChapterMaxMs);
    set_wander(c, raw - interior);
    c.duration_ms = raw;
    events_total += interior;
    wander_total += raw - interior;
  }

  DurationBudget budget;
  budget.total_ms = kIntroMs + kEndingMs + events_total + wander_total;
  if (chapters.size() == static_cast<std::size_t>(kMaxChapters) &&
      (budget.total_ms < kFullWeekMinMs || budget.total_ms > kFullWeekMaxMs)) {
    const Millis target = budget.total_ms < kFullWeekMinMs ? kFullWeekMinMs : kFullWeekMaxMs;
    const Millis wander_target = target - kIntroMs - kEndingMs - events_total;
    budget.wander_scale = static_cast<double>(wander_target) / static_cast<double>(wander_total);
    Millis assigned = 0;
    for (std::size_t i = 0; i < chapters.size(); ++i) {
      auto& c = chapters[i];
      const Millis wander = c.events.front().duration_ms + c.events.back().duration_ms;
      Millis scaled = std::llround(static_cast<double>(wander) * budget.wander_scale);
      if (i + 1 == chapters.size()) scaled = wander_target - assigned;  // absorb rounding
      assigned += scaled;
      set_wander(c, scaled);
      c.duration_ms = sum_durations(c);
    }
    budget.total_ms = target;
  }
  return budget;
}

const WeekData& control_week() {
  static const WeekData week = [] {
    auto report = [](const char* date, int v, int a, int bed, double sleep, int quality,
                     int exercise, SocialRecord social, int stress, int handling,
                     std::array<int, 3> purpose, const char* cue) {
      DailyReport r;
      r.date = *parse_date(date);
      r.mood_valence = LikertScore(v);
      r.mood_arousal = LikertScore(a);
      r.bedtime = ClockTime{bed};
      r.sleep_hours = sleep;
      r.sleep_quality = LikertScore(quality);
      r.exercise_minutes = exercise;
      r.social = social;
      r.stress_level = StressLevel(stress);
      r.stress_handling = StressHandlingScore(handling);
      r.purpose_interest = LikertScore(purpose[0]);
      r.purpose_purposeful = LikertScore(purpose[1]);
      r.purpose_achievement = LikertScore(purpose[2]);
      r.memory_cue = cue;
      return r;
    };
    const SocialRecord alone{LikertScore(1), SocialKind::None, SocialPartner::Peer};
    WeekData w;
    w.user_id = "control";
    w.week_start = *parse_date("2017-09-11");
    w.reports = {
        report("2017-09-11", 5, 5, 23 * 60, 8.0, 6, 45, alone, 0, 5, {5, 5, 5},
               "Running through the forest"),
        report("2017-09-12", 2, 6, 30, 7.0, 5, 10, alone, 6, 1, {4, 5, 4}, "Rain of rocks"),
        report("2017-09-13", 2, 5, 23 * 60 + 30, 7.0, 4, 0,
               {LikertScore(5), SocialKind::Fight, SocialPartner::Dominant}, 1, 4, {4, 4, 5},
               "A fight with a bigger dog"),
        report("2017-09-14", 6, 5, 22 * 60 + 30, 8.0, 6, 40,
               {LikertScore(6), SocialKind::Happy, SocialPartner::Peer}, 0, 6, {6, 6, 6},
               "Uphill on a good note"),
    };
    return w;
  }();
  return week;
}

StoryPlan plan_story(const WeekData& week, StoryMode mode) {
  if (mode == StoryMode::Control) return plan_control_story();
  if (week.reports.empty()) {
    throw SurveyError(SurveyErrorCode::EmptyWeek, "", format_date(week.week_start));
  }
  StoryPlan plan;
  plan.mode = mode;
  for (const auto& r : select_chapter_days(week)) plan.chapters.push_back(plan_chapter(r));
  const auto budget = allocate_durations(plan.chapters);
  plan.total_ms = budget.total_ms;
  plan.wander_scale = budget.wander_scale;
  plan.outcome = purpose_outcome(week.reports);
  return plan;
}

StoryPlan plan_control_story() {
  StoryPlan plan = plan_story(control_week(), StoryMode::Personalized);
  plan.mode = StoryMode::Control;
  for (auto& c : plan.chapters) c.title.reset();
  return plan;
}

}  // namespace moodfilm
