#pragma once

// Story IR: chapter-day selection, per-chapter event arcs and the duration
// budget.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "moodfilm/affect.hpp"
#include "moodfilm/survey.hpp"

namespace moodfilm {

// Timeline positions and durations are integer milliseconds so that the
// duration budget and the camera partition are exact.
using Millis = std::int64_t;

inline constexpr Millis kIntroMs = 10'000;
inline constexpr Millis kEndingMs = 20'000;
inline constexpr Millis kWanderBaseMs = 70'000;
inline constexpr Millis kInteriorEventMs = 25'000;
inline constexpr Millis kChapterMinMs = 60'000;
inline constexpr Millis kChapterMaxMs = 140'000;
inline constexpr Millis kFullWeekMinMs = 360'000;
inline constexpr Millis kFullWeekMaxMs = 480'000;
inline constexpr int kMaxChapters = 4;
inline constexpr int kExerciseBoostMinutes = 30;

struct WanderEvent {
  bool operator==(const WanderEvent&) const = default;
};
struct ExerciseBoostEvent {
  bool operator==(const ExerciseBoostEvent&) const = default;
};
struct SocialEvent {
  SocialKind kind = SocialKind::Neutral;
  double partner_scale = 1.0;
  bool operator==(const SocialEvent&) const = default;
};
struct SleepEvent {
  double severity = 1.0;  // (0, 1]
  bool operator==(const SleepEvent&) const = default;
};
struct StressEvent {
  StressResponse response;
  bool operator==(const StressEvent&) const = default;
};

// Alternative order is the intensity rank used to order a chapter's interior.
using EventPayload =
    std::variant<WanderEvent, ExerciseBoostEvent, SocialEvent, SleepEvent, StressEvent>;

enum class EventKind { Wander, ExerciseBoost, Social, Sleep, Stress };

std::string_view to_string(EventKind kind);
std::optional<EventKind> event_kind_from_string(std::string_view text);

struct EventSpec {
  EventPayload payload;
  Millis nominal_ms = 0;
  Millis duration_ms = 0;

  EventKind kind() const { return static_cast<EventKind>(payload.index()); }
  int intensity_rank() const { return static_cast<int>(payload.index()); }
  bool operator==(const EventSpec&) const = default;
};

double partner_scale(SocialPartner partner);

struct ChapterPlan {
  Date date{};
  std::optional<std::string> title;
  AffectState affect;
  AffectQuadrant quadrant = AffectQuadrant::Content;
  Palette palette;
  EnergyLevel energy;
  StressResponse stress;
  SocialKind social_kind = SocialKind::None;
  std::vector<EventSpec> events;
  Millis duration_ms = 0;
  bool late_night = false;

  int interior_count() const { return static_cast<int>(events.size()) - 2; }
  // No Social event and nobody met that day.
  bool solitary() const;
  bool operator==(const ChapterPlan&) const = default;
};

enum class StoryMode { Personalized, Control };

std::string_view to_string(StoryMode mode);
std::optional<StoryMode> story_mode_from_string(std::string_view text);

struct StoryPlan {
  std::vector<ChapterPlan> chapters;
  PurposeOutcome outcome;
  StoryMode mode = StoryMode::Personalized;
  Millis total_ms = 0;
  double wander_scale = 1.0;
  bool operator==(const StoryPlan&) const = default;
};

double dramatic_score(const DailyReport& report);

// The min(4, n) highest-scoring days, ties to the earlier date, returned in
// chronological order.
std::vector<DailyReport> select_chapter_days(const WeekData& week);

ChapterPlan plan_chapter(const DailyReport& report);

struct DurationBudget {
  Millis total_ms = 0;
  double wander_scale = 1.0;
};

// Sets every event's duration_ms and each chapter's duration_ms.
DurationBudget allocate_durations(std::vector<ChapterPlan>& chapters);

// The built-in week behind the control video (fixtures/control-week.json).
const WeekData& control_week();

StoryPlan plan_story(const WeekData& week, StoryMode mode = StoryMode::Personalized);
StoryPlan plan_control_story();

}  // namespace moodfilm
