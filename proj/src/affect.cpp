#include "moodfilm/affect.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace moodfilm {

namespace {

// Keep in sync with docs/palettes.md.
constexpr PaletteScheme kContent{
    {0.78, 0.70, 0.90}, {0.70, 0.58, 0.88}, 0.15, 0.30, 6500.0, 7500.0,
    Weather::Mist,      Ambience::BirdsBreeze};
constexpr PaletteScheme kExcited{
    {1.00, 0.85, 0.60}, {1.00, 0.70, 0.35}, 0.05, 0.00, 5500.0, 4000.0,
    Weather::Clear,     Ambience::BirdsBreeze};
constexpr PaletteScheme kDepressed{
    {0.55, 0.60, 0.68}, {0.35, 0.40, 0.50}, 0.35, 0.75, 7000.0, 9000.0,
    Weather::Overcast,  Ambience::Wind};
constexpr PaletteScheme kDistressed{
    {0.45, 0.30, 0.30}, {0.30, 0.12, 0.12}, 0.20, 0.50, 4500.0, 3000.0,
    Weather::Storm,     Ambience::Eerie};

double lerp(double a, double b, double t) { return a + (b - a) * t; }

double likert_unit(LikertScore s) { return (s.value() - 1) / 6.0; }

}  // namespace

double AffectState::intensity() const { return std::max(std::abs(valence), std::abs(arousal)); }

std::string_view to_string(AffectQuadrant q) {
  switch (q) {
    case AffectQuadrant::Excited: return "excited";
    case AffectQuadrant::Distressed: return "distressed";
    case AffectQuadrant::Depressed: return "depressed";
    case AffectQuadrant::Content: return "content";
  }
  return "content";
}

std::string_view to_string(Weather w) {
  switch (w) {
    case Weather::Clear: return "clear";
    case Weather::Mist: return "mist";
    case Weather::Overcast: return "overcast";
    case Weather::Storm: return "storm";
  }
  return "clear";
}

std::string_view to_string(Ambience a) {
  switch (a) {
    case Ambience::BirdsBreeze: return "birds_breeze";
    case Ambience::Wind: return "wind";
    case Ambience::Eerie: return "eerie";
    case Ambience::Rumble: return "rumble";
  }
  return "birds_breeze";
}

std::string_view to_string(StressKind k) {
  switch (k) {
    case StressKind::NoStressor: return "no_stressor";
    case StressKind::Challenge: return "challenge";
    case StressKind::Threat: return "threat";
  }
  return "no_stressor";
}

std::optional<AffectQuadrant> quadrant_from_string(std::string_view text) {
  for (auto q : {AffectQuadrant::Excited, AffectQuadrant::Distressed, AffectQuadrant::Depressed,
                 AffectQuadrant::Content}) {
    if (to_string(q) == text) return q;
  }
  return std::nullopt;
}

std::optional<Weather> weather_from_string(std::string_view text) {
  for (auto w : {Weather::Clear, Weather::Mist, Weather::Overcast, Weather::Storm}) {
    if (to_string(w) == text) return w;
  }
  return std::nullopt;
}

std::optional<Ambience> ambience_from_string(std::string_view text) {
  for (auto a : {Ambience::BirdsBreeze, Ambience::Wind, Ambience::Eerie, Ambience::Rumble}) {
    if (to_string(a) == text) return a;
  }
  return std::nullopt;
}

std::optional<StressKind> stress_kind_from_string(std::string_view text) {
  for (auto k : {StressKind::NoStressor, StressKind::Challenge, StressKind::Threat}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

AffectState to_affect(LikertScore mood_valence, LikertScore mood_arousal) {
  return {(mood_valence.value() - 4) / 3.0, (mood_arousal.value() - 4) / 3.0};
}

AffectQuadrant classify_quadrant(AffectState a) {
  if (a.intensity() <= kNeutralBand) return AffectQuadrant::Content;
  if (a.valence >= 0.0) {
    return a.arousal >= 0.0 ? AffectQuadrant::Excited : AffectQuadrant::Content;
  }
  return a.arousal >= 0.0 ? AffectQuadrant::Distressed : AffectQuadrant::Depressed;
}

const PaletteScheme& palette_scheme(AffectQuadrant q) {
  switch (q) {
    case AffectQuadrant::Excited: return kExcited;
    case AffectQuadrant::Distressed: return kDistressed;
    case AffectQuadrant::Depressed: return kDepressed;
    case AffectQuadrant::Content: return kContent;
  }
  return kContent;
}

Palette palette_for(AffectQuadrant q, double intensity) {
  const auto& s = palette_scheme(q);
  const double t = std::clamp(intensity, 0.0, 1.0);
  Palette p;
  for (std::size_t i = 0; i < 3; ++i) p.sky_rgb[i] = lerp(s.sky_low[i], s.sky_high[i], t);
  p.fog_density = lerp(s.fog_low, s.fog_high, t);
  p.light_temperature_k = lerp(s.temperature_low_k, s.temperature_high_k, t);
  p.weather = s.weather;
  p.ambience = s.ambience;
  return p;
}

EnergyLevel energy_level(double sleep_hours, LikertScore sleep_quality, int exercise_minutes) {
  const double value = std::clamp(0.4 * likert_unit(sleep_quality) +
                                      0.3 * std::min(sleep_hours / 8.0, 1.0) +
                                      0.3 * std::min(exercise_minutes / 60.0, 1.0),
                                  0.0, 1.0);
  return {value, sleep_hours < kFatigueSleepHours || value < kFatigueEnergy};
}

StressResponse stress_profile(StressLevel level, StressHandlingScore handling) {
  if (level.value() <= 1) return {StressKind::NoStressor, 0.0};
  return {handling.value() >= 4 ? StressKind::Challenge : StressKind::Threat,
          level.value() / 7.0};
}

PurposeOutcome purpose_outcome(std::span<const DailyReport> reports) {
  if (reports.empty()) throw std::invalid_argument("purpose_outcome needs at least one report");
  double sum = 0.0;
  for (const auto& r : reports) {
    sum += (likert_unit(r.purpose_interest) + likert_unit(r.purpose_purposeful) +
            likert_unit(r.purpose_achievement)) /
           3.0;
  }
  PurposeOutcome out;
  out.score = sum / static_cast<double>(reports.size());
  out.moon_distance_m = 200.0 - 150.0 * out.score;
  out.reaches_moon = out.score >= kReachMoonScore;
  return out;
}

}  // namespace moodfilm
