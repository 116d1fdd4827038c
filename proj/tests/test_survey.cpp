#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "moodfilm/survey.hpp"
#include "support.hpp"

namespace moodfilm {
namespace {

using nlohmann::json;

json mid_scale(const std::string& cue = "Pho Basil") {
  return {
      {"date", "2017-09-12"},
      {"mood_valence", 4},
      {"mood_arousal", 4},
      {"bedtime", "23:00"},
      {"sleep_hours", 7.5},
      {"sleep_quality", 4},
      {"exercise_minutes", 20},
      {"social", {{"amount", 4}, {"kind", "neutral"}, {"partner", "peer"}}},
      {"stress_level", 3},
      {"stress_handling", 4},
      {"purpose_interest", 4},
      {"purpose_purposeful", 4},
      {"purpose_achievement", 4},
      {"memory_cue", cue},
  };
}

SurveyError parse_error(const json& raw) {
  try {
    parse_daily_report(raw);
  } catch (const SurveyError& e) {
    return e;
  }
  ADD_FAILURE() << "expected a SurveyError for " << raw.dump();
  return SurveyError(SurveyErrorCode::ParseError, "none");
}

TEST(Survey, MidScaleRecordParses) {
  const auto r = parse_daily_report(mid_scale());
  EXPECT_EQ(r.memory_cue, "Pho Basil");
  EXPECT_EQ(format_date(r.date), "2017-09-12");
  EXPECT_EQ(r.mood_valence.value(), 4);
  EXPECT_EQ(r.social.kind, SocialKind::Neutral);
  EXPECT_DOUBLE_EQ(r.sleep_hours, 7.5);
  EXPECT_EQ(format_clock(r.bedtime), "23:00");
}

TEST(Survey, OutOfRangeValence) {
  auto raw = mid_scale();
  raw["mood_valence"] = 9;
  const auto e = parse_error(raw);
  EXPECT_EQ(e.code(), SurveyErrorCode::OutOfRange);
  EXPECT_EQ(e.field(), "mood_valence");
  EXPECT_EQ(e.value(), "9");
  EXPECT_EQ(e.allowed(), "1..7");
  EXPECT_STREQ(e.what(), "OutOfRange(mood_valence, 9, allowed 1..7)");
}

TEST(Survey, MissingStressHandling) {
  auto raw = mid_scale();
  raw.erase("stress_handling");
  const auto e = parse_error(raw);
  EXPECT_EQ(e.code(), SurveyErrorCode::MissingField);
  EXPECT_EQ(e.field(), "stress_handling");
}

TEST(Survey, FieldBounds) {
  struct Case {
    const char* field;
    json value;
    bool ok;
  };
  const Case cases[] = {
      {"mood_arousal", 1, true},        {"mood_arousal", 7, true},
      {"mood_arousal", 0, false},       {"mood_arousal", 8, false},
      {"stress_handling", 0, true},     {"stress_handling", 7, true},
      {"stress_handling", -1, false},   {"stress_handling", 8, false},
      {"stress_level", 0, true},        {"stress_level", 8, false},
      {"sleep_hours", 0.0, true},       {"sleep_hours", 16.0, true},
      {"sleep_hours", 16.25, false},    {"sleep_hours", -0.5, false},
      {"exercise_minutes", 300, true},  {"exercise_minutes", 301, false},
      {"exercise_minutes", -1, false},  {"exercise_minutes", 12.5, false},
      {"mood_valence", "4", false},     {"bedtime", "24:00", false},
      {"bedtime", "7:30", false},       {"bedtime", "00:00", true},
      {"purpose_achievement", 0, false},
  };
  for (const auto& c : cases) {
    auto raw = mid_scale();
    raw[c.field] = c.value;
    if (c.ok) {
      EXPECT_NO_THROW(parse_daily_report(raw)) << c.field << "=" << c.value.dump();
    } else {
      const auto e = parse_error(raw);
      EXPECT_EQ(e.code(), SurveyErrorCode::OutOfRange) << c.field << "=" << c.value.dump();
      EXPECT_EQ(e.field(), c.field);
    }
  }
}

TEST(Survey, SocialFieldsAreChecked) {
  auto raw = mid_scale();
  raw["social"]["kind"] = "grumpy";
  EXPECT_EQ(parse_error(raw).field(), "social.kind");
  raw = mid_scale();
  raw["social"]["amount"] = 0;
  EXPECT_EQ(parse_error(raw).field(), "social.amount");
  raw = mid_scale();
  raw["social"].erase("partner");
  EXPECT_EQ(parse_error(raw).code(), SurveyErrorCode::MissingField);
  EXPECT_EQ(parse_error(raw).field(), "social.partner");
}

TEST(Survey, Dates) {
  for (const char* bad : {"2017-02-29", "2017-13-01", "2017-9-12", "12/09/2017", "", "2017-09-12x"}) {
    auto raw = mid_scale();
    raw["date"] = bad;
    EXPECT_EQ(parse_error(raw).code(), SurveyErrorCode::BadDate) << bad;
  }
  EXPECT_TRUE(parse_date("2016-02-29"));
}

TEST(Survey, CueRules) {
  EXPECT_EQ(parse_error(mid_scale("")).code(), SurveyErrorCode::CueEmpty);
  EXPECT_EQ(parse_error(mid_scale("   ")).code(), SurveyErrorCode::CueEmpty);
  EXPECT_NO_THROW(parse_daily_report(mid_scale(std::string(80, 'x'))));
  EXPECT_EQ(parse_error(mid_scale(std::string(81, 'x'))).code(), SurveyErrorCode::CueTooLong);
  // 80 two-byte characters are 80 characters, not 160.
  std::string accented;
  for (int i = 0; i < 80; ++i) accented += "\xC3\xA9";
  EXPECT_NO_THROW(parse_daily_report(mid_scale(accented)));
}

TEST(Survey, UnknownKeysRejected) {
  auto raw = mid_scale();
  raw["mood"] = 3;
  EXPECT_EQ(parse_error(raw).code(), SurveyErrorCode::UnknownField);
}

TEST(Survey, FirstFailingFieldWins) {
  auto raw = mid_scale("");
  raw["mood_valence"] = 0;
  raw.erase("stress_level");
  EXPECT_EQ(parse_error(raw).field(), "mood_valence");
}

TEST(Survey, MalformedText) {
  try {
    parse_daily_report_text("{\"date\": ");
    FAIL();
  } catch (const SurveyError& e) {
    EXPECT_EQ(e.code(), SurveyErrorCode::ParseError);
  }
}

TEST(Survey, RoundTripRandomReports) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const auto r = testing::random_report(rng, *parse_date("2017-09-11"));
    const auto text = serialize_report(r);
    EXPECT_EQ(text.back(), '\n');
    EXPECT_EQ(parse_daily_report_text(text), r);
  }
}

// Every single-field corruption gives exactly one typed error for that field.
TEST(Survey, FuzzedFieldsNeverClamp) {
  std::mt19937_64 rng(5);
  const std::pair<const char*, std::pair<int, int>> ranges[] = {
      {"mood_valence", {1, 7}},       {"mood_arousal", {1, 7}},
      {"sleep_quality", {1, 7}},      {"stress_level", {0, 7}},
      {"stress_handling", {0, 7}},    {"purpose_interest", {1, 7}},
      {"purpose_purposeful", {1, 7}}, {"purpose_achievement", {1, 7}},
      {"exercise_minutes", {0, 300}},
  };
  for (int i = 0; i < 2000; ++i) {
    const auto& [field, range] = ranges[static_cast<std::size_t>(testing::pick(rng, 0, 8))];
    const int v = testing::pick(rng, -20, 400);
    auto raw = mid_scale();
    raw[field] = v;
    if (v >= range.first && v <= range.second) {
      EXPECT_NO_THROW(parse_daily_report(raw));
    } else {
      const auto e = parse_error(raw);
      EXPECT_EQ(e.code(), SurveyErrorCode::OutOfRange);
      EXPECT_EQ(e.field(), field);
      EXPECT_EQ(e.value(), std::to_string(v));
    }
  }
}

TEST(Survey, SerializedKeysAreFieldNames) {
  const auto j = json::parse(serialize_report(parse_daily_report(mid_scale())));
  EXPECT_EQ(j, mid_scale());
  EXPECT_EQ(report_filename(*parse_date("2017-09-12")), "2017-09-12.report.json");
}

DailyReport day(const char* date, const std::string& cue = "x") {
  auto raw = mid_scale(cue);
  raw["date"] = date;
  return parse_daily_report(raw);
}

TEST(Week, SevenReportsSorted) {
  std::vector<DailyReport> in;
  for (const char* d : {"2017-09-17", "2017-09-11", "2017-09-13", "2017-09-12", "2017-09-15",
                        "2017-09-14", "2017-09-16"}) {
    in.push_back(day(d));
  }
  const auto w = assemble_week(in, *parse_date("2017-09-11"), "u");
  ASSERT_EQ(w.reports.size(), 7u);
  for (std::size_t i = 1; i < w.reports.size(); ++i) {
    EXPECT_LT(std::chrono::sys_days{w.reports[i - 1].date}, std::chrono::sys_days{w.reports[i].date});
  }
}

TEST(Week, LastWriteWins) {
  const auto w = assemble_week({day("2017-09-12", "first"), day("2017-09-12", "second")},
                               *parse_date("2017-09-11"));
  ASSERT_EQ(w.reports.size(), 1u);
  EXPECT_EQ(w.reports[0].memory_cue, "second");
}

TEST(Week, OutsideWindowIsEmpty) {
  try {
    assemble_week({day("2017-09-10"), day("2017-09-18")}, *parse_date("2017-09-11"));
    FAIL();
  } catch (const SurveyError& e) {
    EXPECT_EQ(e.code(), SurveyErrorCode::EmptyWeek);
  }
}

TEST(Week, WindowEdgesInclusive) {
  const auto w = assemble_week({day("2017-09-11"), day("2017-09-17"), day("2017-09-18")},
                               *parse_date("2017-09-11"));
  EXPECT_EQ(w.reports.size(), 2u);
}

TEST(Week, LoadsDirectoryInNameOrder) {
  const auto dir = std::filesystem::temp_directory_path() / "moodfilm_week_load";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  for (const char* d : {"2017-09-13", "2017-09-11"}) {
    std::ofstream(dir / report_filename(*parse_date(d))) << serialize_report(day(d));
  }
  std::ofstream(dir / "notes.txt") << "ignored";
  const auto reports = load_report_dir(dir);
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(format_date(reports[0].date), "2017-09-11");

  std::ofstream(dir / "2017-09-14.report.json") << "{\"date\": \"2017-09-14\"}";
  try {
    load_report_dir(dir);
    FAIL();
  } catch (const SurveyError& e) {
    EXPECT_EQ(e.code(), SurveyErrorCode::MissingField);
    EXPECT_NE(e.field().find("2017-09-14.report.json"), std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST(Week, AssembledWeekProperties) {
  std::mt19937_64 rng(3);
  const auto start = *parse_date("2017-09-11");
  for (int i = 0; i < 200; ++i) {
    std::vector<DailyReport> in;
    const int n = testing::pick(rng, 1, 12);
    for (int k = 0; k < n; ++k) in.push_back(testing::random_report(rng, add_days(start, testing::pick(rng, -2, 8))));
    try {
      const auto w = assemble_week(in, start);
      EXPECT_LE(w.reports.size(), std::min<std::size_t>(7, in.size()));
      for (std::size_t k = 1; k < w.reports.size(); ++k) {
        EXPECT_LT(std::chrono::sys_days{w.reports[k - 1].date}, std::chrono::sys_days{w.reports[k].date});
      }
    } catch (const SurveyError& e) {
      EXPECT_EQ(e.code(), SurveyErrorCode::EmptyWeek);
    }
  }
}

}  // namespace
}  // namespace moodfilm
