#pragma once

// Daily check-in records and week assembly.

#include <chrono>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace moodfilm {

using Date = std::chrono::year_month_day;

std::string format_date(Date date);
// Strict "YYYY-MM-DD"; nullopt on any malformed or impossible date.
std::optional<Date> parse_date(std::string_view text);
Date add_days(Date date, int days);

template <int Lo, int Hi, class Tag>
class BoundedScore {
 public:
  static constexpr int kMin = Lo;
  static constexpr int kMax = Hi;

  constexpr BoundedScore() = default;
  constexpr explicit BoundedScore(int value) : value_(value) {
    if (value < Lo || value > Hi) {
      throw std::out_of_range("score out of range");
    }
  }

  static constexpr bool in_range(int value) { return value >= Lo && value <= Hi; }
  constexpr int value() const { return value_; }
  auto operator<=>(const BoundedScore&) const = default;

 private:
  int value_ = Lo;
};

using LikertScore = BoundedScore<1, 7, struct LikertTag>;
// 0 = "I was anxious and stressed out", 7 = "I felt things were under control".
using StressHandlingScore = BoundedScore<0, 7, struct StressHandlingTag>;
// 0 = no stressor at all.
using StressLevel = BoundedScore<0, 7, struct StressLevelTag>;

// Minutes after local midnight, 0..1439.
struct ClockTime {
  int minutes = 0;
  auto operator<=>(const ClockTime&) const = default;
};

std::string format_clock(ClockTime time);
std::optional<ClockTime> parse_clock(std::string_view text);

enum class SocialKind { None, Neutral, Happy, Fight, Rejection };
enum class SocialPartner { Submissive, Peer, Dominant };

std::string_view to_string(SocialKind kind);
std::string_view to_string(SocialPartner partner);
std::optional<SocialKind> social_kind_from_string(std::string_view text);
std::optional<SocialPartner> social_partner_from_string(std::string_view text);

struct SocialRecord {
  LikertScore amount{1};
  SocialKind kind = SocialKind::None;
  SocialPartner partner = SocialPartner::Peer;
  bool operator==(const SocialRecord&) const = default;
};

inline constexpr int kMaxExerciseMinutes = 300;
inline constexpr double kMaxSleepHours = 16.0;
inline constexpr std::size_t kMaxCueLength = 80;

struct DailyReport {
  Date date{};
  LikertScore mood_valence{4};
  LikertScore mood_arousal{4};
  ClockTime bedtime{23 * 60};
  double sleep_hours = 8.0;
  LikertScore sleep_quality{4};
  int exercise_minutes = 0;
  SocialRecord social{};
  StressLevel stress_level{0};
  StressHandlingScore stress_handling{4};
  LikertScore purpose_interest{4};
  LikertScore purpose_purposeful{4};
  LikertScore purpose_achievement{4};
  std::string memory_cue;

  bool operator==(const DailyReport&) const = default;
};

struct WeekData {
  std::string user_id;
  Date week_start{};
  std::vector<DailyReport> reports;
};

enum class SurveyErrorCode {
  MissingField,
  OutOfRange,
  BadDate,
  CueTooLong,
  CueEmpty,
  UnknownField,
  ParseError,
  EmptyWeek,
};

std::string_view to_string(SurveyErrorCode code);

class SurveyError : public std::runtime_error {
 public:
  SurveyError(SurveyErrorCode code, std::string field, std::string value = {},
              std::string allowed = {});

  SurveyErrorCode code() const { return code_; }
  const std::string& field() const { return field_; }
  const std::string& value() const { return value_; }
  const std::string& allowed() const { return allowed_; }

 private:
  SurveyErrorCode code_;
  std::string field_;
  std::string value_;
  std::string allowed_;
};

// Validates every field; the first failing field (in declaration order)
// raises a SurveyError.
DailyReport parse_daily_report(const nlohmann::json& raw);
DailyReport parse_daily_report_text(std::string_view text);

nlohmann::json report_to_json(const DailyReport& report);
// Pretty JSON with sorted keys and a trailing newline.
std::string serialize_report(const DailyReport& report);
std::string report_filename(Date date);

// Keeps reports inside [week_start, week_start + 6], last submission wins on
// duplicate dates, sorted ascending. Throws SurveyError(EmptyWeek).
WeekData assemble_week(const std::vector<DailyReport>& reports, Date week_start,
                       std::string user_id = {});

// Reads every `*.report.json` in `dir`, in file-name order.
std::vector<DailyReport> load_report_dir(const std::filesystem::path& dir);

}  // namespace moodfilm
