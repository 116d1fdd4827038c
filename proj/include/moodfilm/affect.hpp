#pragma once

// Survey answers -> valence/arousal, environment palette, energy, stress
// response and the purpose-driven ending.

#include <array>
#include <span>
#include <string_view>

#include "moodfilm/survey.hpp"

namespace moodfilm {

struct AffectState {
  double valence = 0.0;
  double arousal = 0.0;

  double intensity() const;
  bool operator==(const AffectState&) const = default;
};

enum class AffectQuadrant { Excited, Distressed, Depressed, Content };

enum class Weather { Clear, Mist, Overcast, Storm };
enum class Ambience { BirdsBreeze, Wind, Eerie, Rumble };

using Rgb = std::array<double, 3>;

struct Palette {
  Rgb sky_rgb{};
  double fog_density = 0.0;
  double light_temperature_k = 6500.0;
  Weather weather = Weather::Clear;
  Ambience ambience = Ambience::BirdsBreeze;
  bool operator==(const Palette&) const = default;
};

// Endpoints at intensity 0 (low) and 1 (high); see docs/palettes.md.
struct PaletteScheme {
  Rgb sky_low;
  Rgb sky_high;
  double fog_low;
  double fog_high;
  double temperature_low_k;
  double temperature_high_k;
  Weather weather;
  Ambience ambience;
};

struct EnergyLevel {
  double value = 0.0;
  bool fatigued = false;
  bool operator==(const EnergyLevel&) const = default;
};

enum class StressKind { NoStressor, Challenge, Threat };

struct StressResponse {
  StressKind kind = StressKind::NoStressor;
  double intensity = 0.0;
  bool operator==(const StressResponse&) const = default;
};

struct PurposeOutcome {
  double score = 0.0;
  double moon_distance_m = 200.0;
  bool reaches_moon = false;
  bool operator==(const PurposeOutcome&) const = default;
};

inline constexpr double kNeutralBand = 0.15;
inline constexpr double kFatigueSleepHours = 6.0;
inline constexpr double kFatigueEnergy = 0.3;
inline constexpr double kReachMoonScore = 0.5;

std::string_view to_string(AffectQuadrant q);
std::string_view to_string(Weather w);
std::string_view to_string(Ambience a);
std::string_view to_string(StressKind k);

std::optional<AffectQuadrant> quadrant_from_string(std::string_view text);
std::optional<Weather> weather_from_string(std::string_view text);
std::optional<Ambience> ambience_from_string(std::string_view text);
std::optional<StressKind> stress_kind_from_string(std::string_view text);

AffectState to_affect(LikertScore mood_valence, LikertScore mood_arousal);
AffectQuadrant classify_quadrant(AffectState affect);

const PaletteScheme& palette_scheme(AffectQuadrant q);
Palette palette_for(AffectQuadrant q, double intensity);

EnergyLevel energy_level(double sleep_hours, LikertScore sleep_quality, int exercise_minutes);
StressResponse stress_profile(StressLevel level, StressHandlingScore handling);

// Precondition: at least one report.
PurposeOutcome purpose_outcome(std::span<const DailyReport> reports);

}  // namespace moodfilm
