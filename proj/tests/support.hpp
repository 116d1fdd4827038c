#pragma once

// Random valid check-ins and fixture paths shared by the test binaries.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "moodfilm/survey.hpp"

namespace moodfilm::testing {

inline std::filesystem::path source_dir() { return MOODFILM_SOURCE_DIR; }

inline std::filesystem::path fixture(const std::string& name) {
  return source_dir() / "fixtures" / name;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline int pick(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline DailyReport random_report(std::mt19937_64& rng, Date date) {
  DailyReport r;
  r.date = date;
  r.mood_valence = LikertScore(pick(rng, 1, 7));
  r.mood_arousal = LikertScore(pick(rng, 1, 7));
  r.bedtime = ClockTime{pick(rng, 0, 1439)};
  r.sleep_hours = pick(rng, 0, 64) / 4.0;
  r.sleep_quality = LikertScore(pick(rng, 1, 7));
  r.exercise_minutes = pick(rng, 0, 3) == 0 ? 0 : pick(rng, 0, 120);
  const auto kind = static_cast<SocialKind>(pick(rng, 0, 4));
  r.social = {LikertScore(pick(rng, 1, 7)), kind,
              kind == SocialKind::None ? SocialPartner::Peer
                                       : static_cast<SocialPartner>(pick(rng, 0, 2))};
  r.stress_level = StressLevel(pick(rng, 0, 7));
  r.stress_handling = StressHandlingScore(pick(rng, 0, 7));
  r.purpose_interest = LikertScore(pick(rng, 1, 7));
  r.purpose_purposeful = LikertScore(pick(rng, 1, 7));
  r.purpose_achievement = LikertScore(pick(rng, 1, 7));
  r.memory_cue = "day " + format_date(date);
  return r;
}

// A week with `days` reports on distinct dates (all seven when days == 7).
inline WeekData random_week(std::mt19937_64& rng, int days = 7) {
  WeekData w;
  w.user_id = "tester";
  w.week_start = *parse_date("2017-09-11");
  std::vector<int> offsets{0, 1, 2, 3, 4, 5, 6};
  std::shuffle(offsets.begin(), offsets.end(), rng);
  offsets.resize(static_cast<std::size_t>(days));
  std::sort(offsets.begin(), offsets.end());
  for (int d : offsets) w.reports.push_back(random_report(rng, add_days(w.week_start, d)));
  return w;
}

}  // namespace moodfilm::testing
