#pragma once

// The scene script: the renderer-independent timeline handed to the viewer,
// its canonical byte encoding, validation and a human-readable summary.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "moodfilm/cinematography.hpp"
#include "moodfilm/story.hpp"
#include "moodfilm/world.hpp"

namespace moodfilm {

inline constexpr std::string_view kScriptVersion = "1";

struct ScriptEvent {
  EventKind kind = EventKind::Wander;
  Millis t0 = 0;
  Millis t1 = 0;
  std::optional<SocialKind> social;
  std::optional<double> partner_scale;
  std::optional<StressResponse> stress;
  std::optional<double> severity;
  bool operator==(const ScriptEvent&) const = default;
};

struct ScriptWaypoint {
  Cell cell;
  double z = 0.0;
  double t_s = 0.0;
  bool operator==(const ScriptWaypoint&) const = default;
};

struct ScriptChapter {
  int index = 0;
  std::string date;
  std::optional<std::string> title;
  Millis t0 = 0;
  Millis t1 = 0;
  AffectQuadrant quadrant = AffectQuadrant::Content;
  double valence = 0.0;
  double arousal = 0.0;
  double energy = 0.0;
  bool fatigued = false;
  bool late_night = false;
  double speed_mps = 0.0;
  Palette palette;
  std::vector<ScriptEvent> events;
  Cell start;
  Cell goal;
  std::optional<Cell> detour;
  bool reached_goal = false;
  std::vector<ScriptWaypoint> waypoints;
  bool operator==(const ScriptChapter&) const = default;
};

struct TerrainRecord {
  int chapter = 0;
  int size = kGridSize;
  double cell_m = kCellM;
  std::uint64_t seed = 0;
  double amplitude_m = 0.0;
  std::vector<double> heights;
  bool operator==(const TerrainRecord&) const = default;
};

struct AgentCue {
  Millis t0 = 0;
  Millis t1 = 0;
  AgentClip clip = AgentClip::WalkHappy;
  double speed_mps = 0.0;
  int chapter = 0;
  int w0 = 0;  // waypoint index at t0
  int w1 = 0;  // waypoint index at t1
  bool operator==(const AgentCue&) const = default;
};

enum class SpawnKind { Dog, RockRain };

std::string_view to_string(SpawnKind kind);

struct SpawnRecord {
  Millis t0 = 0;
  Millis t1 = 0;
  SpawnKind kind = SpawnKind::Dog;
  int chapter = 0;
  // Dog
  Cell cell;
  double z = 0.0;
  double scale = 1.0;
  SocialKind interaction = SocialKind::Neutral;
  // RockRain
  std::vector<Cell> cells;
  bool operator==(const SpawnRecord&) const = default;
};

struct TitleCue {
  Millis t0 = 0;
  Millis t1 = 0;
  std::string text;
  int chapter = 0;
  bool operator==(const TitleCue&) const = default;
};

struct Tracks {
  std::vector<CameraCue> camera;
  std::vector<AgentCue> agent;
  std::vector<LightingKeyframe> lighting;
  std::vector<AudioCue> audio;
  std::vector<SpawnRecord> spawns;
  std::vector<TitleCue> titles;
  bool operator==(const Tracks&) const = default;
};

struct SceneScript {
  std::string version{kScriptVersion};
  StoryMode mode = StoryMode::Personalized;
  std::uint64_t seed = 0;
  Millis total_ms = 0;
  PurposeOutcome outcome;
  std::vector<ScriptChapter> chapters;
  std::vector<TerrainRecord> terrain;
  Tracks tracks;
  bool operator==(const SceneScript&) const = default;
};

inline constexpr Millis kTitleMs = 5'000;

// Personalized mode needs a week; Control ignores it. Throws
// SurveyError(EmptyWeek) for an empty personalized week.
SceneScript compile(const WeekData* week, StoryMode mode, std::uint64_t seed);
SceneScript compile_plan(const StoryPlan& plan, std::uint64_t seed);

nlohmann::json script_to_json(const SceneScript& script);
// Throws std::invalid_argument on anything validate_script would reject.
SceneScript script_from_json(const nlohmann::json& j);

// Canonical bytes: sorted keys, at most three decimals, trailing newline.
std::string serialize(const SceneScript& script);
SceneScript parse_script(std::string_view bytes);

struct Violation {
  std::string code;
  std::string message;
  bool operator==(const Violation&) const = default;
};

// Never throws; an empty result means the script is valid.
std::vector<Violation> validate_script(std::string_view bytes);
std::vector<Violation> validate_script_json(const nlohmann::json& j);

std::string inspect(const SceneScript& script);

}  // namespace moodfilm
