#include <gtest/gtest.h>

#include <algorithm>
#include <iterator>
#include <map>
#include <random>
#include <set>

#include "moodfilm/cinematography.hpp"
#include "moodfilm/rng.hpp"
#include "support.hpp"

namespace moodfilm {
namespace {

bool overlaps(Millis a0, Millis a1, Millis b0, Millis b1) { return a0 < b1 && b0 < a1; }

void expect_partition(const std::vector<CameraCue>& cues, Millis total) {
  ASSERT_FALSE(cues.empty());
  EXPECT_EQ(cues.front().t0, 0);
  EXPECT_EQ(cues.back().t1, total);
  Millis sum = 0;
  for (std::size_t i = 0; i < cues.size(); ++i) {
    EXPECT_GE(cues[i].t1 - cues[i].t0, kCueFloorMs);
    sum += cues[i].t1 - cues[i].t0;
    if (i == 0) continue;
    EXPECT_EQ(cues[i].t0, cues[i - 1].t1);
    if (is_rotating(cues[i].shot)) EXPECT_NE(cues[i].shot, cues[i - 1].shot);
  }
  EXPECT_EQ(sum, total);
}

std::vector<ChapterWorld> worlds_for(const StoryPlan& plan, std::uint64_t seed) {
  std::vector<ChapterWorld> worlds;
  for (std::size_t k = 0; k < plan.chapters.size(); ++k) {
    worlds.push_back(build_chapter_world(
        plan.chapters[k], {chapter_start_ms(plan, k), k + 1 == plan.chapters.size(),
                           plan.outcome.reaches_moon, chapter_base_seed(seed, static_cast<int>(k))}));
  }
  return worlds;
}

TEST(Shots, Vocabulary) {
  int rotating = 0, special = 0;
  for (int i = 0; i <= static_cast<int>(ShotKind::HighWide); ++i) {
    const auto kind = static_cast<ShotKind>(i);
    is_rotating(kind) ? ++rotating : ++special;
    EXPECT_EQ(shot_kind_from_string(to_string(kind)), kind);
  }
  EXPECT_EQ(rotating, 4);
  EXPECT_EQ(special, 7);
}

TEST(Lens, Table) {
  const ChapterContext content{AffectQuadrant::Content, 0.5, false, 0, 1};
  const ChapterContext distressed{AffectQuadrant::Distressed, 0.8, false, 0, 1};
  EXPECT_TRUE(lens_for(ShotKind::Frontal, &content).empty());
  EXPECT_EQ(lens_for(ShotKind::ExtremeCloseUp, &content),
            (std::vector<LensEffect>{{LensKind::DepthOfFieldBlur, 0.6}}));
  EXPECT_EQ(lens_for(ShotKind::ExtremeCloseUp, nullptr),
            (std::vector<LensEffect>{{LensKind::DepthOfFieldBlur, 0.6}}));
  EXPECT_EQ(lens_for(ShotKind::Side, &distressed),
            (std::vector<LensEffect>{{LensKind::Recolor, 0.8}}));
  EXPECT_EQ(lens_for(ShotKind::DutchAngle, &content),
            (std::vector<LensEffect>{{LensKind::DoubleFocus, 0.5}}));
  EXPECT_EQ(lens_for(ShotKind::CloseUp, &distressed),
            (std::vector<LensEffect>{{LensKind::DepthOfFieldBlur, 0.6}, {LensKind::Recolor, 0.8}}));
}

// One 70 s wander window with someone around: rotating shots only.
TEST(Cameras, EventlessChapterRotates) {
  Timeline tl;
  tl.total_ms = 70'000;
  tl.windows.push_back({0, 70'000, WindowKind::Wander, 0, std::nullopt, std::nullopt});
  tl.chapters.push_back({AffectQuadrant::Content, 0.3, false, 0, 70'000});
  std::set<std::size_t> counts;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto cues = schedule_cameras(tl, seed);
    expect_partition(cues, tl.total_ms);
    EXPECT_GE(cues.size(), 9u);
    EXPECT_LE(cues.size(), 18u);
    counts.insert(cues.size());
    for (const auto& c : cues) {
      EXPECT_TRUE(is_rotating(c.shot));
      EXPECT_GE(c.t1 - c.t0, kShotMinMs);
      EXPECT_LE(c.t1 - c.t0, kShotMaxMs);
    }
  }
  EXPECT_GT(counts.size(), 1u);
}

TEST(Cameras, SolitaryChapterGetsOneOverhead) {
  Timeline tl;
  tl.total_ms = 70'000;
  tl.windows.push_back({0, 35'000, WindowKind::Wander, 0, std::nullopt, std::nullopt});
  tl.windows.push_back({35'000, 70'000, WindowKind::Wander, 0, std::nullopt, std::nullopt});
  tl.chapters.push_back({AffectQuadrant::Depressed, 0.6, true, 0, 70'000});
  const auto cues = schedule_cameras(tl, 3);
  expect_partition(cues, tl.total_ms);
  EXPECT_EQ(std::count_if(cues.begin(), cues.end(),
                          [](const CameraCue& c) { return c.shot == ShotKind::OverheadSolitude; }),
            1);
}

TEST(Cameras, CompiledTimelines) {
  std::mt19937_64 rng(123);
  for (int i = 0; i < 300; ++i) {
    const auto plan = plan_story(testing::random_week(rng, testing::pick(rng, 1, 7)));
    const auto tl = build_timeline(plan);
    // Windows tile the timeline.
    EXPECT_EQ(tl.windows.front().t0, 0);
    EXPECT_EQ(tl.windows.back().t1, plan.total_ms);
    for (std::size_t k = 1; k < tl.windows.size(); ++k) EXPECT_EQ(tl.windows[k].t0, tl.windows[k - 1].t1);

    const auto seed = rng();
    const auto cues = schedule_cameras(tl, seed);
    expect_partition(cues, plan.total_ms);
    EXPECT_EQ(cues, schedule_cameras(tl, seed));
    auto any_in = [&](const TimelineWindow& w, ShotKind shot) {
      return std::any_of(cues.begin(), cues.end(), [&](const CameraCue& c) {
        return c.shot == shot && overlaps(c.t0, c.t1, w.t0, w.t1);
      });
    };
    for (const auto& w : tl.windows) {
      if (w.kind == WindowKind::Sleep) EXPECT_TRUE(any_in(w, ShotKind::DutchAngle));
      if (w.kind == WindowKind::Stress) {
        EXPECT_TRUE(any_in(w, ShotKind::ExtremeCloseUp));
        EXPECT_TRUE(any_in(w, ShotKind::WeatherPan));
      }
      if (w.kind == WindowKind::Ending) EXPECT_EQ(cues.back().shot, ShotKind::MoonReveal);
    }
    for (const auto& c : cues) {
      for (const auto& e : c.effects) {
        EXPECT_GE(e.strength, 0.0);
        EXPECT_LE(e.strength, 1.0);
      }
    }
  }
}

ChapterPlan chapter_with(const char* date, int valence, int bedtime_minutes) {
  DailyReport r;
  r.date = *parse_date(date);
  r.mood_valence = LikertScore(valence);
  r.bedtime = ClockTime{bedtime_minutes};
  r.sleep_hours = 8.0;
  r.memory_cue = "cue";
  return plan_chapter(r);
}

StoryPlan plan_of(std::vector<ChapterPlan> chapters) {
  StoryPlan plan;
  plan.chapters = std::move(chapters);
  plan.total_ms = allocate_durations(plan.chapters).total_ms;
  return plan;
}

TEST(Lighting, KeyframePerChapterStartAndCrossfade) {
  const auto plan = plan_of({chapter_with("2017-09-11", 6, 1380), chapter_with("2017-09-12", 2, 1380),
                             chapter_with("2017-09-13", 3, 1380), chapter_with("2017-09-14", 7, 1380)});
  const auto keys = lighting_track(plan);
  EXPECT_GE(keys.size(), 8u);
  for (std::size_t i = 1; i < keys.size(); ++i) EXPECT_LE(keys[i - 1].t, keys[i].t);
  EXPECT_EQ(keys.front().t, 0);
  EXPECT_EQ(keys.back().t, plan.total_ms);
  for (std::size_t c = 0; c < plan.chapters.size(); ++c) {
    const Millis t0 = chapter_start_ms(plan, c);
    auto at = std::find_if(keys.begin(), keys.end(),
                           [&](const LightingKeyframe& k) { return k.t == t0 + kCrossfadeMs; });
    ASSERT_NE(at, keys.end());
    EXPECT_EQ(at->sky_rgb, plan.chapters[c].palette.sky_rgb);
    EXPECT_EQ(at->fog, plan.chapters[c].palette.fog_density);
    EXPECT_EQ(at->temperature_k, plan.chapters[c].palette.light_temperature_k);
  }
}

TEST(Lighting, IdenticalPalettesDoNotChange) {
  const auto plan = plan_of({chapter_with("2017-09-11", 6, 1380), chapter_with("2017-09-12", 6, 1380)});
  const auto keys = lighting_track(plan);
  for (std::size_t i = 1; i < keys.size(); ++i) {
    EXPECT_EQ(keys[i].sky_rgb, keys[0].sky_rgb);
    EXPECT_EQ(keys[i].fog, keys[0].fog);
  }
}

TEST(Lighting, LateNightOpensDim) {
  const auto plan = plan_of({chapter_with("2017-09-11", 6, 1380), chapter_with("2017-09-12", 3, 90)});
  ASSERT_TRUE(plan.chapters[1].late_night);
  const auto keys = lighting_track(plan);
  const Millis t0 = chapter_start_ms(plan, 1);
  auto open = std::find_if(keys.begin(), keys.end(),
                           [&](const LightingKeyframe& k) { return k.t == t0 + kCrossfadeMs; });
  ASSERT_NE(open, keys.end());
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(open->sky_rgb[i], 0.6 * plan.chapters[1].palette.sky_rgb[i], 1e-12);
  }
}

TEST(Audio, SleepSnoresExactlyOnce) {
  auto rested = chapter_with("2017-09-11", 3, 1380);
  DailyReport r;
  r.date = *parse_date("2017-09-12");
  r.sleep_hours = 3.0;
  r.sleep_quality = LikertScore(2);
  r.memory_cue = "tired";
  const auto plan = plan_of({rested, plan_chapter(r)});
  const auto tl = build_timeline(plan);
  const auto audio = schedule_audio(plan, tl, worlds_for(plan, 1));
  const auto sleep = std::find_if(tl.windows.begin(), tl.windows.end(),
                                  [](const TimelineWindow& w) { return w.kind == WindowKind::Sleep; });
  ASSERT_NE(sleep, tl.windows.end());
  std::vector<AudioCue> snores;
  std::copy_if(audio.begin(), audio.end(), std::back_inserter(snores),
               [](const AudioCue& c) { return c.sound == Sound::Snore; });
  ASSERT_EQ(snores.size(), 1u);
  EXPECT_EQ(snores[0].t0, sleep->t0);
  EXPECT_EQ(snores[0].t1, sleep->t1);
}

TEST(Audio, Properties) {
  std::mt19937_64 rng(321);
  int slow = 0, triumph = 0;
  for (int i = 0; i < 150; ++i) {
    const auto plan = plan_story(testing::random_week(rng, testing::pick(rng, 1, 7)));
    const auto tl = build_timeline(plan);
    const auto worlds = worlds_for(plan, rng());
    const auto audio = schedule_audio(plan, tl, worlds);
    std::map<AudioLayer, Millis> layer_end;
    int ambience = 0;
    for (std::size_t k = 0; k < audio.size(); ++k) {
      const auto& c = audio[k];
      EXPECT_LT(c.t0, c.t1);
      EXPECT_GE(c.t0, 0);
      EXPECT_LE(c.t1, plan.total_ms);
      if (k > 0) EXPECT_LE(audio[k - 1].t0, c.t0);
      EXPECT_GE(c.t0, layer_end[c.layer]) << "overlap in layer " << to_string(c.layer);
      layer_end[c.layer] = c.t1;
      if (c.layer == AudioLayer::Ambience) ++ambience;
    }
    EXPECT_EQ(ambience, static_cast<int>(plan.chapters.size()));

    double top_speed = 0.0;
    for (const auto& w : worlds) top_speed = std::max(top_speed, w.speed_mps);
    const auto pants = std::count_if(audio.begin(), audio.end(),
                                     [](const AudioCue& c) { return c.sound == Sound::Pant; });
    if (top_speed <= kPantSpeedMps) {
      EXPECT_EQ(pants, 0);
      ++slow;
    }
    for (const auto& c : audio) {
      if (c.sound == Sound::Pant) EXPECT_GE(c.t1 - c.t0, kPantMinMs);
    }

    const AudioCue* last_music = nullptr;
    for (const auto& c : audio) {
      if (c.layer == AudioLayer::Music) last_music = &c;
    }
    ASSERT_NE(last_music, nullptr);
    EXPECT_EQ(last_music->t1, plan.total_ms);
    EXPECT_EQ(last_music->sound == Sound::MusicTriumph, plan.outcome.reaches_moon);
    if (plan.outcome.reaches_moon) ++triumph;

    for (const auto& w : tl.windows) {
      const auto count = [&](Sound s) {
        return std::count_if(audio.begin(), audio.end(),
                             [&](const AudioCue& c) { return c.sound == s && c.t0 == w.t0; });
      };
      if (w.kind == WindowKind::Social) EXPECT_EQ(count(Sound::Bark), 1);
      if (w.kind == WindowKind::Stress) {
        EXPECT_EQ(count(Sound::Howl), w.stress == StressKind::Threat ? 1 : 0);
      }
    }
  }
  EXPECT_GT(slow, 0);
  EXPECT_GT(triumph, 0);
}

TEST(Audio, FastRunnerPants) {
  DailyReport r;
  r.date = *parse_date("2017-09-11");
  r.mood_valence = LikertScore(7);
  r.mood_arousal = LikertScore(7);
  r.sleep_hours = 8.0;
  r.sleep_quality = LikertScore(7);
  r.exercise_minutes = 60;
  r.memory_cue = "sprint";
  const auto plan = plan_of({plan_chapter(r)});
  const auto tl = build_timeline(plan);
  const auto worlds = worlds_for(plan, 4);
  ASSERT_GT(worlds[0].speed_mps, kPantSpeedMps);
  const auto audio = schedule_audio(plan, tl, worlds);
  EXPECT_GT(std::count_if(audio.begin(), audio.end(),
                          [](const AudioCue& c) { return c.sound == Sound::Pant; }),
            0);
}

}  // namespace
}  // namespace moodfilm
