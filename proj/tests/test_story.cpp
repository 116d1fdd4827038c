#include <gtest/gtest.h>

#include <random>

#include "moodfilm/story.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace moodfilm {
namespace {

DailyReport neutral(const char* date) {
  DailyReport r;
  r.date = *parse_date(date);
  r.memory_cue = "cue";
  return r;
}

std::vector<EventKind> kinds(const ChapterPlan& c) {
  std::vector<EventKind> out;
  for (const auto& e : c.events) out.push_back(e.kind());
  return out;
}

TEST(Drama, Examples) {
  auto r = neutral("2017-09-11");
  EXPECT_DOUBLE_EQ(dramatic_score(r), 0.0);
  r.mood_valence = LikertScore(1);
  r.mood_arousal = LikertScore(7);
  r.stress_level = StressLevel(7);
  EXPECT_DOUBLE_EQ(dramatic_score(r), 2.0);
  r = neutral("2017-09-11");
  r.mood_valence = LikertScore(7);
  EXPECT_DOUBLE_EQ(dramatic_score(r), 1.0);
}

TEST(Drama, IntegerOracleAgrees) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    const auto r = testing::random_report(rng, *parse_date("2017-09-11"));
    EXPECT_NEAR(dramatic_score(r), testing::drama42(r) / 42.0, 1e-12);
  }
}

TEST(SelectDays, NeutralWeekTakesFirstFour) {
  WeekData w;
  for (const char* d : {"2017-09-11", "2017-09-12", "2017-09-13", "2017-09-14", "2017-09-15",
                        "2017-09-16", "2017-09-17"}) {
    w.reports.push_back(neutral(d));
  }
  const auto days = select_chapter_days(w);
  ASSERT_EQ(days.size(), 4u);
  EXPECT_EQ(format_date(days.front().date), "2017-09-11");
  EXPECT_EQ(format_date(days.back().date), "2017-09-14");
}

TEST(SelectDays, FewerThanFourKeepsAll) {
  std::mt19937_64 rng(4);
  const auto w = testing::random_week(rng, 3);
  EXPECT_EQ(select_chapter_days(w), w.reports);
}

TEST(SelectDays, MatchesBruteForce) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const auto w = testing::random_week(rng, testing::pick(rng, 1, 7));
    std::vector<DailyReport> expected;
    for (auto idx : testing::brute_force_days(w.reports)) expected.push_back(w.reports[idx]);
    ASSERT_EQ(select_chapter_days(w), expected) << "week " << i;
  }
}

TEST(SelectDays, ChronologicalRegardlessOfScore) {
  WeekData w;
  for (const char* d : {"2017-09-11", "2017-09-12", "2017-09-13", "2017-09-14", "2017-09-15"}) {
    w.reports.push_back(neutral(d));
  }
  w.reports[4].mood_valence = LikertScore(1);  // most dramatic, latest
  w.reports[2].mood_valence = LikertScore(2);
  const auto days = select_chapter_days(w);
  ASSERT_EQ(days.size(), 4u);
  for (std::size_t i = 1; i < days.size(); ++i) {
    EXPECT_LT(std::chrono::sys_days{days[i - 1].date}, std::chrono::sys_days{days[i].date});
  }
  EXPECT_EQ(format_date(days.back().date), "2017-09-15");
}

TEST(PlanChapter, NoEventDay) {
  auto r = neutral("2017-09-11");
  r.sleep_hours = 8.0;
  const auto c = plan_chapter(r);
  EXPECT_EQ(kinds(c), (std::vector{EventKind::Wander, EventKind::Wander}));
  EXPECT_EQ(c.interior_count(), 0);
  EXPECT_EQ(c.duration_ms, 70'000);
  EXPECT_TRUE(c.solitary());
}

TEST(PlanChapter, RisingActionOrder) {
  auto r = neutral("2017-09-11");
  r.social = {LikertScore(3), SocialKind::Fight, SocialPartner::Dominant};
  r.stress_level = StressLevel(6);
  r.stress_handling = StressHandlingScore(0);
  r.sleep_hours = 2.0;
  const auto c = plan_chapter(r);
  ASSERT_EQ(kinds(c), (std::vector{EventKind::Wander, EventKind::Social, EventKind::Sleep,
                                   EventKind::Stress, EventKind::Wander}));
  EXPECT_DOUBLE_EQ(std::get<SocialEvent>(c.events[1].payload).partner_scale, 1.5);
  EXPECT_EQ(std::get<SocialEvent>(c.events[1].payload).kind, SocialKind::Fight);
  EXPECT_EQ(std::get<StressEvent>(c.events[3].payload).response.kind, StressKind::Threat);
  EXPECT_NEAR(std::get<SleepEvent>(c.events[2].payload).severity, 1.0 - c.energy.value, 1e-12);
  EXPECT_EQ(c.duration_ms, 140'000);  // 70 + 3 x 25 = 145, clamped
}

TEST(PlanChapter, SubmissivePartner) {
  auto r = neutral("2017-09-11");
  r.social = {LikertScore(5), SocialKind::Happy, SocialPartner::Submissive};
  const auto c = plan_chapter(r);
  ASSERT_EQ(kinds(c), (std::vector{EventKind::Wander, EventKind::Social, EventKind::Wander}));
  EXPECT_DOUBLE_EQ(std::get<SocialEvent>(c.events[1].payload).partner_scale, 0.6);
  EXPECT_FALSE(c.solitary());
}

TEST(PlanChapter, LateNightWindow) {
  auto r = neutral("2017-09-11");
  const std::pair<int, bool> cases[] = {{0, false}, {59, false}, {60, true},
                                        {299, true}, {300, false}, {23 * 60, false}};
  for (auto [minutes, expected] : cases) {
    r.bedtime = ClockTime{minutes};
    EXPECT_EQ(plan_chapter(r).late_night, expected) << minutes;
  }
}

TEST(PlanChapter, TriggersAreBiconditional) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 5000; ++i) {
    const auto r = testing::random_report(rng, *parse_date("2017-09-11"));
    const auto c = plan_chapter(r);
    auto count = [&](EventKind k) {
      return std::count_if(c.events.begin(), c.events.end(),
                           [&](const EventSpec& e) { return e.kind() == k; });
    };
    const double energy = std::clamp(0.4 * (r.sleep_quality.value() - 1) / 6.0 +
                                         0.3 * std::min(r.sleep_hours / 8.0, 1.0) +
                                         0.3 * std::min(r.exercise_minutes / 60.0, 1.0),
                                     0.0, 1.0);
    const bool fatigued = r.sleep_hours < 6.0 || energy < 0.3;
    EXPECT_EQ(count(EventKind::Social), r.social.kind != SocialKind::None ? 1 : 0);
    EXPECT_EQ(count(EventKind::Stress), r.stress_level.value() > 1 ? 1 : 0);
    EXPECT_EQ(count(EventKind::Sleep), fatigued ? 1 : 0);
    EXPECT_EQ(count(EventKind::ExerciseBoost), r.exercise_minutes >= 30 ? 1 : 0);
    EXPECT_EQ(count(EventKind::Wander), 2);
    EXPECT_EQ(c.events.front().kind(), EventKind::Wander);
    EXPECT_EQ(c.events.back().kind(), EventKind::Wander);
    for (std::size_t k = 2; k + 1 < c.events.size(); ++k) {
      EXPECT_LT(c.events[k - 1].intensity_rank(), c.events[k].intensity_rank());
    }
    EXPECT_EQ(c.title, r.memory_cue);
  }
}

std::vector<ChapterPlan> chapters_with(int n, int interior) {
  auto r = neutral("2017-09-11");
  r.sleep_hours = 8.0;
  if (interior >= 1) r.exercise_minutes = 45;
  if (interior >= 2) r.social = {LikertScore(4), SocialKind::Neutral, SocialPartner::Peer};
  if (interior >= 3) r.stress_level = StressLevel(5);
  std::vector<ChapterPlan> out;
  for (int i = 0; i < n; ++i) {
    r.date = add_days(*parse_date("2017-09-11"), i);
    out.push_back(plan_chapter(r));
    EXPECT_EQ(out.back().interior_count(), interior);
  }
  return out;
}

Millis sum_events(const ChapterPlan& c) {
  Millis s = 0;
  for (const auto& e : c.events) s += e.duration_ms;
  return s;
}

TEST(Budget, ShortWeekScalesUp) {
  auto chapters = chapters_with(4, 0);
  const auto b = allocate_durations(chapters);
  EXPECT_EQ(b.total_ms, 360'000);
  EXPECT_NEAR(b.wander_scale, 330.0 / 280.0, 1e-12);
  Millis sum = 0;
  for (const auto& c : chapters) {
    EXPECT_EQ(sum_events(c), c.duration_ms);
    sum += c.duration_ms;
  }
  EXPECT_EQ(10'000 + sum + 20'000, 360'000);
}

TEST(Budget, LongWeekScalesDown) {
  auto chapters = chapters_with(4, 3);
  EXPECT_EQ(chapters.front().duration_ms, 140'000);
  const auto b = allocate_durations(chapters);
  EXPECT_EQ(b.total_ms, 480'000);
  EXPECT_LT(b.wander_scale, 1.0);
  for (const auto& c : chapters) {
    for (std::size_t i = 1; i + 1 < c.events.size(); ++i) EXPECT_EQ(c.events[i].duration_ms, 25'000);
  }
}

TEST(Budget, SparseWeekNotScaled) {
  auto chapters = chapters_with(1, 1);
  const auto b = allocate_durations(chapters);
  EXPECT_EQ(b.total_ms, 125'000);
  EXPECT_DOUBLE_EQ(b.wander_scale, 1.0);
}

TEST(Budget, InBandWeekUntouched) {
  auto chapters = chapters_with(4, 1);  // 10 + 4 x 95 + 20 = 410
  const auto b = allocate_durations(chapters);
  EXPECT_EQ(b.total_ms, 410'000);
  EXPECT_DOUBLE_EQ(b.wander_scale, 1.0);
}

TEST(PlanStory, FullWeeksStayInBand) {
  std::mt19937_64 rng(10'000);
  for (int i = 0; i < 10'000; ++i) {
    const auto plan = plan_story(testing::random_week(rng, 7));
    ASSERT_EQ(plan.chapters.size(), 4u);
    ASSERT_GE(plan.total_ms, 360'000);
    ASSERT_LE(plan.total_ms, 480'000);
    Millis sum = 0;
    for (const auto& c : plan.chapters) sum += sum_events(c);
    ASSERT_EQ(kIntroMs + sum + kEndingMs, plan.total_ms);
  }
}

TEST(PlanStory, SparseWeekFloor) {
  std::mt19937_64 rng(8);
  for (int n = 1; n <= 3; ++n) {
    const auto plan = plan_story(testing::random_week(rng, n));
    EXPECT_EQ(plan.chapters.size(), static_cast<std::size_t>(n));
    EXPECT_GE(plan.total_ms, 90'000 * n);
  }
}

TEST(PlanStory, TwoReportsChronological) {
  std::mt19937_64 rng(12);
  auto w = testing::random_week(rng, 2);
  const auto plan = plan_story(w);
  ASSERT_EQ(plan.chapters.size(), 2u);
  EXPECT_EQ(plan.chapters[0].date, w.reports[0].date);
  EXPECT_EQ(plan.chapters[1].date, w.reports[1].date);
}

TEST(PlanStory, HighPurposeReachesMoon) {
  std::mt19937_64 rng(13);
  auto w = testing::random_week(rng, 7);
  for (auto& r : w.reports) {
    // (7 - 1)/6 = 1 and (6 - 1)/6; mean over three items is 0.944.
    r.purpose_interest = LikertScore(7);
    r.purpose_purposeful = LikertScore(7);
    r.purpose_achievement = LikertScore(6);
  }
  const auto plan = plan_story(w);
  EXPECT_NEAR(plan.outcome.score, 17.0 / 18.0, 1e-12);
  EXPECT_TRUE(plan.outcome.reaches_moon);
}

TEST(PlanStory, EmptyWeekRejected) {
  WeekData w;
  try {
    plan_story(w);
    FAIL();
  } catch (const SurveyError& e) {
    EXPECT_EQ(e.code(), SurveyErrorCode::EmptyWeek);
  }
}

TEST(Control, IdenticalEveryCall) {
  EXPECT_EQ(plan_control_story(), plan_control_story());
  EXPECT_EQ(plan_story(WeekData{}, StoryMode::Control), plan_control_story());
}

TEST(Control, ScriptedBeats) {
  const auto plan = plan_control_story();
  EXPECT_EQ(plan.mode, StoryMode::Control);
  ASSERT_EQ(plan.chapters.size(), 4u);
  int threat = 0, fight = 0, happy = 0, other = 0;
  for (const auto& c : plan.chapters) {
    EXPECT_FALSE(c.title.has_value());
    for (const auto& e : c.events) {
      if (const auto* s = std::get_if<StressEvent>(&e.payload)) {
        s->response.kind == StressKind::Threat ? ++threat : ++other;
      } else if (const auto* so = std::get_if<SocialEvent>(&e.payload)) {
        so->kind == SocialKind::Fight ? ++fight : so->kind == SocialKind::Happy ? ++happy : ++other;
      }
    }
  }
  EXPECT_EQ(threat, 1);
  EXPECT_EQ(fight, 1);
  EXPECT_EQ(happy, 1);
  EXPECT_EQ(other, 0);
  EXPECT_GT(plan.chapters[3].affect.valence, plan.chapters[2].affect.valence);
  EXPECT_GT(plan.chapters[3].affect.valence, 0.0);
  EXPECT_TRUE(plan.outcome.reaches_moon);
  EXPECT_EQ(plan.total_ms, 435'000);
}

TEST(Control, FixtureMatchesBuiltIn) {
  const auto j = nlohmann::json::parse(testing::slurp(testing::fixture("control-week.json")));
  const auto& week = control_week();
  EXPECT_EQ(j.at("user_id"), week.user_id);
  EXPECT_EQ(j.at("week_start"), format_date(week.week_start));
  ASSERT_EQ(j.at("reports").size(), week.reports.size());
  for (std::size_t i = 0; i < week.reports.size(); ++i) {
    EXPECT_EQ(parse_daily_report(j["reports"][i]), week.reports[i]) << i;
  }
}

}  // namespace
}  // namespace moodfilm
