#pragma once

// Camera schedule, lens effects, lighting keyframes and audio cues.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "moodfilm/story.hpp"
#include "moodfilm/world.hpp"

namespace moodfilm {

enum class ShotKind {
  // rotating
  Frontal,
  AgentPOV,
  CloseUp,
  Side,
  // special
  DutchAngle,
  OverheadSolitude,
  ExtremeCloseUp,
  WeatherPan,
  MoonReveal,
  LowTrackingRun,
  HighWide,
};

inline constexpr int kRotatingShotCount = 4;
inline constexpr int kSpecialShotCount = 7;
inline constexpr Millis kShotMinMs = 4'000;
inline constexpr Millis kShotMaxMs = 8'000;
inline constexpr Millis kCueFloorMs = 2'000;
inline constexpr Millis kSolitudeShotMs = 6'000;

constexpr bool is_rotating(ShotKind kind) {
  return static_cast<int>(kind) < kRotatingShotCount;
}

std::string_view to_string(ShotKind kind);
std::optional<ShotKind> shot_kind_from_string(std::string_view text);

enum class LensKind { DepthOfFieldBlur, Recolor, DoubleFocus };

std::string_view to_string(LensKind kind);
std::optional<LensKind> lens_kind_from_string(std::string_view text);

struct LensEffect {
  LensKind kind = LensKind::DepthOfFieldBlur;
  double strength = 0.0;
  bool operator==(const LensEffect&) const = default;
};

struct CameraCue {
  Millis t0 = 0;
  Millis t1 = 0;
  ShotKind shot = ShotKind::Frontal;
  std::vector<LensEffect> effects;
  bool operator==(const CameraCue&) const = default;
};

struct LightingKeyframe {
  Millis t = 0;
  Rgb sky_rgb{};
  double fog = 0.0;
  double temperature_k = 6500.0;
  bool operator==(const LightingKeyframe&) const = default;
};

enum class Sound {
  BirdsBreeze,
  Wind,
  Eerie,
  Rumble,
  Pant,
  Snore,
  Bark,
  Howl,
  MusicCalm,
  MusicTense,
  MusicTriumph,
};

// Cues in different layers may overlap; within a layer they may not.
enum class AudioLayer { Ambience, Music, Effect };

std::string_view to_string(Sound sound);
std::string_view to_string(AudioLayer layer);
std::optional<Sound> sound_from_string(std::string_view text);
std::optional<AudioLayer> audio_layer_from_string(std::string_view text);

struct AudioCue {
  Millis t0 = 0;
  Millis t1 = 0;
  Sound sound = Sound::MusicCalm;
  AudioLayer layer = AudioLayer::Music;
  bool operator==(const AudioCue&) const = default;
};

enum class WindowKind { Intro, Wander, ExerciseBoost, Social, Sleep, Stress, Ending };

struct TimelineWindow {
  Millis t0 = 0;
  Millis t1 = 0;
  WindowKind kind = WindowKind::Wander;
  int chapter = -1;  // -1 for the intro
  std::optional<SocialKind> social;
  std::optional<StressKind> stress;
};

struct ChapterContext {
  AffectQuadrant quadrant = AffectQuadrant::Content;
  double intensity = 0.0;
  bool solitary = false;
  Millis t0 = 0;
  Millis t1 = 0;
};

struct Timeline {
  Millis total_ms = 0;
  std::vector<TimelineWindow> windows;  // contiguous, covering [0, total_ms]
  std::vector<ChapterContext> chapters;
};

Millis chapter_start_ms(const StoryPlan& plan, std::size_t chapter);
Timeline build_timeline(const StoryPlan& plan);

inline constexpr double kCloseUpBlur = 0.6;
inline constexpr double kDutchDoubleFocus = 0.5;

// `context` is the chapter the cue plays in; null for the intro.
std::vector<LensEffect> lens_for(ShotKind shot, const ChapterContext* context);

std::vector<CameraCue> schedule_cameras(const Timeline& timeline, std::uint64_t seed);

inline constexpr Millis kCrossfadeMs = 5'000;
inline constexpr Millis kLateNightRecoverMs = 10'000;
inline constexpr double kLateNightBrightness = 0.6;

std::vector<LightingKeyframe> lighting_track(const StoryPlan& plan);

inline constexpr double kPantSpeedMps = 2.0;
inline constexpr Millis kPantMinMs = 3'000;
inline constexpr Millis kBarkMs = 2'000;
inline constexpr Millis kHowlMs = 3'000;

std::vector<AudioCue> schedule_audio(const StoryPlan& plan, const Timeline& timeline,
                                     std::span<const ChapterWorld> worlds);

}  // namespace moodfilm
