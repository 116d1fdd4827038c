#include "moodfilm/cinematography.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <tuple>

#include "moodfilm/rng.hpp"

namespace moodfilm {

std::string_view to_string(ShotKind kind) {
  switch (kind) {
    case ShotKind::Frontal: return "frontal";
    case ShotKind::AgentPOV: return "agent_pov";
    case ShotKind::CloseUp: return "close_up";
    case ShotKind::Side: return "side";
    case ShotKind::DutchAngle: return "dutch_angle";
    case ShotKind::OverheadSolitude: return "overhead_solitude";
    case ShotKind::ExtremeCloseUp: return "extreme_close_up";
    case ShotKind::WeatherPan: return "weather_pan";
    case ShotKind::MoonReveal: return "moon_reveal";
    case ShotKind::LowTrackingRun: return "low_tracking_run";
    case ShotKind::HighWide: return "high_wide";
  }
  return "frontal";
}

std::optional<ShotKind> shot_kind_from_string(std::string_view text) {
  for (int i = 0; i < kRotatingShotCount + kSpecialShotCount; ++i) {
    const auto kind = static_cast<ShotKind>(i);
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(LensKind kind) {
  switch (kind) {
    case LensKind::DepthOfFieldBlur: return "depth_of_field_blur";
    case LensKind::Recolor: return "recolor";
    case LensKind::DoubleFocus: return "double_focus";
  }
  return "recolor";
}

std::optional<LensKind> lens_kind_from_string(std::string_view text) {
  for (auto k : {LensKind::DepthOfFieldBlur, LensKind::Recolor, LensKind::DoubleFocus}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::string_view to_string(Sound sound) {
  switch (sound) {
    case Sound::BirdsBreeze: return "birds_breeze";
    case Sound::Wind: return "wind";
    case Sound::Eerie: return "eerie";
    case Sound::Rumble: return "rumble";
    case Sound::Pant: return "pant";
    case Sound::Snore: return "snore";
    case Sound::Bark: return "bark";
    case Sound::Howl: return "howl";
    case Sound::MusicCalm: return "music_calm";
    case Sound::MusicTense: return "music_tense";
    case Sound::MusicTriumph: return "music_triumph";
  }
  return "music_calm";
}

std::string_view to_string(AudioLayer layer) {
  switch (layer) {
    case AudioLayer::Ambience: return "ambience";
    case AudioLayer::Music: return "music";
    case AudioLayer::Effect: return "effect";
  }
  return "effect";
}

std::optional<Sound> sound_from_string(std::string_view text) {
  for (int i = 0; i <= static_cast<int>(Sound::MusicTriumph); ++i) {
    const auto s = static_cast<Sound>(i);
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

std::optional<AudioLayer> audio_layer_from_string(std::string_view text) {
  for (auto l : {AudioLayer::Ambience, AudioLayer::Music, AudioLayer::Effect}) {
    if (to_string(l) == text) return l;
  }
  return std::nullopt;
}

Millis chapter_start_ms(const StoryPlan& plan, std::size_t chapter) {
  Millis t = kIntroMs;
  for (std::size_t i = 0; i < chapter; ++i) t += plan.chapters[i].duration_ms;
  return t;
}

Timeline build_timeline(const StoryPlan& plan) {
  Timeline tl;
  tl.total_ms = plan.total_ms;
  tl.windows.push_back({0, kIntroMs, WindowKind::Intro, -1, std::nullopt, std::nullopt});
  Millis cursor = kIntroMs;
  for (std::size_t i = 0; i < plan.chapters.size(); ++i) {
    const auto& c = plan.chapters[i];
    tl.chapters.push_back(
        {c.quadrant, c.affect.intensity(), c.solitary(), cursor, cursor + c.duration_ms});
    for (const auto& e : c.events) {
      TimelineWindow w{cursor, cursor + e.duration_ms, WindowKind::Wander, static_cast<int>(i),
                       std::nullopt, std::nullopt};
      switch (e.kind()) {
        case EventKind::Wander: w.kind = WindowKind::Wander; break;
        case EventKind::ExerciseBoost: w.kind = WindowKind::ExerciseBoost; break;
        case EventKind::Social:
          w.kind = WindowKind::Social;
          w.social = std::get<SocialEvent>(e.payload).kind;
          break;
        case EventKind::Sleep: w.kind = WindowKind::Sleep; break;
        case EventKind::Stress:
          w.kind = WindowKind::Stress;
          w.stress = std::get<StressEvent>(e.payload).response.kind;
          break;
      }
      tl.windows.push_back(w);
      cursor += e.duration_ms;
    }
  }
  tl.windows.push_back({cursor, cursor + kEndingMs, WindowKind::Ending,
                        static_cast<int>(plan.chapters.size()) - 1, std::nullopt, std::nullopt});
  return tl;
}

std::vector<LensEffect> lens_for(ShotKind shot, const ChapterContext* context) {
  std::vector<LensEffect> effects;
  if (shot == ShotKind::CloseUp || shot == ShotKind::ExtremeCloseUp) {
    effects.push_back({LensKind::DepthOfFieldBlur, kCloseUpBlur});
  } else if (shot == ShotKind::DutchAngle) {
    effects.push_back({LensKind::DoubleFocus, kDutchDoubleFocus});
  }
  if (context != nullptr && context->quadrant == AffectQuadrant::Distressed) {
    effects.push_back({LensKind::Recolor, std::clamp(context->intensity, 0.0, 1.0)});
  }
  return effects;
}

namespace {

const ChapterContext* context_at(const Timeline& tl, Millis t) {
  for (const auto& w : tl.windows) {
    if (t >= w.t0 && t < w.t1) {
      return w.chapter >= 0 ? &tl.chapters[static_cast<std::size_t>(w.chapter)] : nullptr;
    }
  }
  return tl.chapters.empty() ? nullptr : &tl.chapters.back();
}

std::vector<CameraCue> forced_cues(const Timeline& tl) {
  std::vector<CameraCue> forced;
  auto add = [&](Millis t0, Millis t1, ShotKind shot) {
    if (t1 > t0) forced.push_back({t0, t1, shot, {}});
  };
  for (const auto& w : tl.windows) {
    switch (w.kind) {
      case WindowKind::Intro: add(w.t0, w.t1, ShotKind::HighWide); break;
      case WindowKind::ExerciseBoost: add(w.t0, w.t1, ShotKind::LowTrackingRun); break;
      case WindowKind::Sleep: add(w.t0, w.t1, ShotKind::DutchAngle); break;
      case WindowKind::Stress: {
        const Millis mid = w.t0 + (w.t1 - w.t0) / 2;
        add(w.t0, mid, ShotKind::ExtremeCloseUp);
        add(mid, w.t1, ShotKind::WeatherPan);
        break;
      }
      case WindowKind::Ending: add(w.t0, w.t1, ShotKind::MoonReveal); break;
      case WindowKind::Wander:
      case WindowKind::Social:
        break;
    }
  }
  // One slow overhead orbit in the longest wander stretch of a solitary chapter.
  for (std::size_t i = 0; i < tl.chapters.size(); ++i) {
    if (!tl.chapters[i].solitary) continue;
    const TimelineWindow* longest = nullptr;
    for (const auto& w : tl.windows) {
      if (w.chapter == static_cast<int>(i) && w.kind == WindowKind::Wander &&
          (longest == nullptr || w.t1 - w.t0 > longest->t1 - longest->t0)) {
        longest = &w;
      }
    }
    if (longest != nullptr && longest->t1 - longest->t0 >= kCueFloorMs) {
      add(longest->t0, longest->t0 + std::min(kSolitudeShotMs, longest->t1 - longest->t0),
          ShotKind::OverheadSolitude);
    }
  }
  std::sort(forced.begin(), forced.end(),
            [](const CameraCue& a, const CameraCue& b) { return a.t0 < b.t0; });
  return forced;
}

ShotKind pick_rotating(SplitMix64& rng, const std::vector<CameraCue>& cues) {
  if (cues.empty() || !is_rotating(cues.back().shot)) {
    return static_cast<ShotKind>(rng.below(kRotatingShotCount));
  }
  const int prev = static_cast<int>(cues.back().shot);
  int pick = static_cast<int>(rng.below(kRotatingShotCount - 1));
  if (pick >= prev) ++pick;
  return static_cast<ShotKind>(pick);
}

void fill_gap(Millis from, Millis to, SplitMix64& rng, std::vector<CameraCue>& cues) {
  Millis left = to - from;
  if (left <= 0) return;
  if (left < kCueFloorMs && !cues.empty()) {
    cues.back().t1 = to;
    return;
  }
  Millis t = from;
  while (left > kShotMaxMs) {
    auto d = static_cast<Millis>(std::llround(rng.uniform(kShotMinMs, kShotMaxMs)));
    if (left - d < kShotMinMs) d = left - kShotMinMs;
    cues.push_back({t, t + d, pick_rotating(rng, cues), {}});
    t += d;
    left -= d;
  }
  cues.push_back({t, to, pick_rotating(rng, cues), {}});
}

}  // namespace

std::vector<CameraCue> schedule_cameras(const Timeline& timeline, std::uint64_t seed) {
  SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(SeedStream::Camera)));
  const auto forced = forced_cues(timeline);
  std::vector<CameraCue> cues;
  Millis t = 0;
  bool pending_short = false;  // leading sliver with no cue to absorb it
  for (const auto& f : forced) {
    if (f.t0 - t > 0 && f.t0 - t < kCueFloorMs && cues.empty()) {
      pending_short = true;
    } else {
      fill_gap(t, f.t0, rng, cues);
    }
    cues.push_back(f);
    if (pending_short) {
      cues.back().t0 = 0;
      pending_short = false;
    }
    t = f.t1;
  }
  if (timeline.total_ms > t) fill_gap(t, timeline.total_ms, rng, cues);
  for (auto& cue : cues) cue.effects = lens_for(cue.shot, context_at(timeline, cue.t0));
  return cues;
}

std::vector<LightingKeyframe> lighting_track(const StoryPlan& plan) {
  std::vector<LightingKeyframe> keys;
  if (plan.chapters.empty()) return keys;
  auto look = [](const Palette& p, double brightness) {
    LightingKeyframe k;
    for (std::size_t i = 0; i < 3; ++i) k.sky_rgb[i] = p.sky_rgb[i] * brightness;
    k.fog = p.fog_density;
    k.temperature_k = p.light_temperature_k;
    return k;
  };
  auto push = [&](Millis t, LightingKeyframe k) {
    k.t = t;
    keys.push_back(k);
  };
  push(0, look(plan.chapters.front().palette, 1.0));
  LightingKeyframe previous = keys.back();
  for (std::size_t i = 0; i < plan.chapters.size(); ++i) {
    const auto& c = plan.chapters[i];
    const Millis t0 = chapter_start_ms(plan, i);
    push(t0, previous);
    const double opening = c.late_night ? kLateNightBrightness : 1.0;
    push(t0 + kCrossfadeMs, look(c.palette, opening));
    if (c.late_night) push(t0 + kCrossfadeMs + kLateNightRecoverMs, look(c.palette, 1.0));
    previous = look(c.palette, 1.0);
  }
  push(plan.total_ms, previous);
  return keys;
}

namespace {

Sound ambience_sound(Ambience a) {
  switch (a) {
    case Ambience::BirdsBreeze: return Sound::BirdsBreeze;
    case Ambience::Wind: return Sound::Wind;
    case Ambience::Eerie: return Sound::Eerie;
    case Ambience::Rumble: return Sound::Rumble;
  }
  return Sound::BirdsBreeze;
}

Sound chapter_music(AffectQuadrant q) {
  return q == AffectQuadrant::Distressed ? Sound::MusicTense : Sound::MusicCalm;
}

// Running stretches above the panting speed, joined across sub-second pauses.
std::vector<std::pair<Millis, Millis>> pant_spans(const ChapterWorld& world) {
  std::vector<std::pair<double, double>> runs;
  const auto& wps = world.path.waypoints;
  for (std::size_t i = 1; i < wps.size(); ++i) {
    if (wps[i].hold || wps[i].speed_mps <= kPantSpeedMps) continue;
    const double a = wps[i - 1].t_s;
    const double b = wps[i].t_s;
    if (!runs.empty() && a - runs.back().second <= 1.0) {
      runs.back().second = b;
    } else {
      runs.emplace_back(a, b);
    }
  }
  std::vector<std::pair<Millis, Millis>> spans;
  for (auto [a, b] : runs) {
    const auto t0 = static_cast<Millis>(std::ceil(a * 1000.0 - 1e-6));
    const auto t1 = static_cast<Millis>(std::floor(b * 1000.0 + 1e-6));
    if (t1 - t0 >= kPantMinMs) spans.emplace_back(t0, t1);
  }
  return spans;
}

}  // namespace

std::vector<AudioCue> schedule_audio(const StoryPlan& plan, const Timeline& timeline,
                                     std::span<const ChapterWorld> worlds) {
  std::vector<AudioCue> cues;
  const Millis total = timeline.total_ms;
  for (std::size_t i = 0; i < plan.chapters.size(); ++i) {
    const auto& c = plan.chapters[i];
    const auto& ctx = timeline.chapters[i];
    const bool last = i + 1 == plan.chapters.size();
    cues.push_back({ctx.t0, last ? total : ctx.t1, ambience_sound(c.palette.ambience),
                    AudioLayer::Ambience});
    cues.push_back({ctx.t0, ctx.t1, chapter_music(c.quadrant), AudioLayer::Music});
  }
  if (!plan.chapters.empty()) {
    cues.push_back({total - kEndingMs, total,
                    plan.outcome.reaches_moon ? Sound::MusicTriumph : Sound::MusicCalm,
                    AudioLayer::Music});
  }
  for (const auto& w : timeline.windows) {
    switch (w.kind) {
      case WindowKind::Sleep:
        cues.push_back({w.t0, w.t1, Sound::Snore, AudioLayer::Effect});
        break;
      case WindowKind::Social:
        cues.push_back({w.t0, std::min(w.t1, w.t0 + kBarkMs), Sound::Bark, AudioLayer::Effect});
        break;
      case WindowKind::Stress:
        if (w.stress == StressKind::Threat) {
          cues.push_back({w.t0, std::min(w.t1, w.t0 + kHowlMs), Sound::Howl, AudioLayer::Effect});
        }
        break;
      default:
        break;
    }
  }
  for (const auto& world : worlds) {
    for (auto [t0, t1] : pant_spans(world)) {
      cues.push_back({t0, std::min(t1, total), Sound::Pant, AudioLayer::Effect});
    }
  }
  std::sort(cues.begin(), cues.end(), [](const AudioCue& a, const AudioCue& b) {
    return std::tie(a.t0, a.layer, a.t1, a.sound) < std::tie(b.t0, b.layer, b.t1, b.sound);
  });
  return cues;
}

}  // namespace moodfilm
