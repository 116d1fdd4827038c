#include "moodfilm/survey.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <span>
#include <sstream>

namespace moodfilm {

namespace {

constexpr std::array<std::string_view, 14> kReportFields = {
    "date",           "mood_valence",     "mood_arousal",     "bedtime",
    "sleep_hours",    "sleep_quality",    "exercise_minutes", "social",
    "stress_level",   "stress_handling",  "purpose_interest", "purpose_purposeful",
    "purpose_achievement", "memory_cue"};

constexpr std::array<std::string_view, 3> kSocialFields = {"amount", "kind", "partner"};

std::string range_text(int lo, int hi) {
  return std::to_string(lo) + ".." + std::to_string(hi);
}

const nlohmann::json& require(const nlohmann::json& obj, std::string_view key,
                              const std::string& name) {
  auto it = obj.find(std::string(key));
  if (it == obj.end()) {
    throw SurveyError(SurveyErrorCode::MissingField, name);
  }
  return *it;
}

int read_int(const nlohmann::json& value, const std::string& name, int lo, int hi) {
  if (!value.is_number_integer()) {
    throw SurveyError(SurveyErrorCode::OutOfRange, name, value.dump(),
                      "integer " + range_text(lo, hi));
  }
  const auto v = value.get<std::int64_t>();
  if (v < lo || v > hi) {
    throw SurveyError(SurveyErrorCode::OutOfRange, name, std::to_string(v), range_text(lo, hi));
  }
  return static_cast<int>(v);
}

template <class Score>
Score read_score(const nlohmann::json& obj, std::string_view key, const std::string& name) {
  return Score(read_int(require(obj, key, name), name, Score::kMin, Score::kMax));
}

std::size_t utf8_length(std::string_view text) {
  return static_cast<std::size_t>(std::count_if(text.begin(), text.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

bool is_blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; });
}

void reject_unknown(const nlohmann::json& obj, std::span<const std::string_view> known,
                    const std::string& prefix) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw SurveyError(SurveyErrorCode::UnknownField, prefix + key);
    }
  }
}

}  // namespace

std::string format_date(Date date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    return std::nullopt;
  }
  auto digits = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
        return std::nullopt;
      }
      v = v * 10 + (text[i] - '0');
    }
    return v;
  };
  auto y = digits(0, 4);
  auto m = digits(5, 2);
  auto d = digits(8, 2);
  if (!y || !m || !d) {
    return std::nullopt;
  }
  Date date{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
            std::chrono::day{static_cast<unsigned>(*d)}};
  if (!date.ok()) {
    return std::nullopt;
  }
  return date;
}

Date add_days(Date date, int days) {
  return Date{std::chrono::sys_days{date} + std::chrono::days{days}};
}

std::string format_clock(ClockTime time) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d:%02d", time.minutes / 60, time.minutes % 60);
  return buf;
}

std::optional<ClockTime> parse_clock(std::string_view text) {
  if (text.size() != 5 || text[2] != ':') {
    return std::nullopt;
  }
  for (std::size_t i : {0u, 1u, 3u, 4u}) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      return std::nullopt;
    }
  }
  const int h = (text[0] - '0') * 10 + (text[1] - '0');
  const int m = (text[3] - '0') * 10 + (text[4] - '0');
  if (h > 23 || m > 59) {
    return std::nullopt;
  }
  return ClockTime{h * 60 + m};
}

std::string_view to_string(SocialKind kind) {
  switch (kind) {
    case SocialKind::None: return "none";
    case SocialKind::Neutral: return "neutral";
    case SocialKind::Happy: return "happy";
    case SocialKind::Fight: return "fight";
    case SocialKind::Rejection: return "rejection";
  }
  return "none";
}

std::string_view to_string(SocialPartner partner) {
  switch (partner) {
    case SocialPartner::Submissive: return "submissive";
    case SocialPartner::Peer: return "peer";
    case SocialPartner::Dominant: return "dominant";
  }
  return "peer";
}

std::optional<SocialKind> social_kind_from_string(std::string_view text) {
  for (auto k : {SocialKind::None, SocialKind::Neutral, SocialKind::Happy, SocialKind::Fight,
                 SocialKind::Rejection}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::optional<SocialPartner> social_partner_from_string(std::string_view text) {
  for (auto p : {SocialPartner::Submissive, SocialPartner::Peer, SocialPartner::Dominant}) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

std::string_view to_string(SurveyErrorCode code) {
  switch (code) {
    case SurveyErrorCode::MissingField: return "MissingField";
    case SurveyErrorCode::OutOfRange: return "OutOfRange";
    case SurveyErrorCode::BadDate: return "BadDate";
    case SurveyErrorCode::CueTooLong: return "CueTooLong";
    case SurveyErrorCode::CueEmpty: return "CueEmpty";
    case SurveyErrorCode::UnknownField: return "UnknownField";
    case SurveyErrorCode::ParseError: return "ParseError";
    case SurveyErrorCode::EmptyWeek: return "EmptyWeek";
  }
  return "ParseError";
}

namespace {

std::string describe(SurveyErrorCode code, const std::string& field, const std::string& value,
                     const std::string& allowed) {
  std::ostringstream os;
  os << to_string(code);
  if (!field.empty()) {
    os << "(" << field;
    if (!value.empty()) os << ", " << value;
    if (!allowed.empty()) os << ", allowed " << allowed;
    os << ")";
  }
  return os.str();
}

}  // namespace

SurveyError::SurveyError(SurveyErrorCode code, std::string field, std::string value,
                         std::string allowed)
    : std::runtime_error(describe(code, field, value, allowed)),
      code_(code),
      field_(std::move(field)),
      value_(std::move(value)),
      allowed_(std::move(allowed)) {}

DailyReport parse_daily_report(const nlohmann::json& raw) {
  if (!raw.is_object()) {
    throw SurveyError(SurveyErrorCode::ParseError, "", raw.type_name(), "object");
  }
  DailyReport r;

  const auto& date = require(raw, "date", "date");
  if (!date.is_string()) {
    throw SurveyError(SurveyErrorCode::BadDate, "date", date.dump());
  }
  auto parsed_date = parse_date(date.get<std::string>());
  if (!parsed_date) {
    throw SurveyError(SurveyErrorCode::BadDate, "date", date.get<std::string>());
  }
  r.date = *parsed_date;

  r.mood_valence = read_score<LikertScore>(raw, "mood_valence", "mood_valence");
  r.mood_arousal = read_score<LikertScore>(raw, "mood_arousal", "mood_arousal");

  const auto& bedtime = require(raw, "bedtime", "bedtime");
  std::optional<ClockTime> clock;
  if (bedtime.is_string()) clock = parse_clock(bedtime.get<std::string>());
  if (!clock) {
    throw SurveyError(SurveyErrorCode::OutOfRange, "bedtime", bedtime.dump(), "HH:MM 00:00..23:59");
  }
  r.bedtime = *clock;

  const auto& sleep = require(raw, "sleep_hours", "sleep_hours");
  if (!sleep.is_number() || sleep.get<double>() < 0.0 || sleep.get<double>() > kMaxSleepHours) {
    throw SurveyError(SurveyErrorCode::OutOfRange, "sleep_hours", sleep.dump(), "0..16");
  }
  r.sleep_hours = sleep.get<double>();

  r.sleep_quality = read_score<LikertScore>(raw, "sleep_quality", "sleep_quality");
  r.exercise_minutes = read_int(require(raw, "exercise_minutes", "exercise_minutes"),
                                "exercise_minutes", 0, kMaxExerciseMinutes);

  const auto& social = require(raw, "social", "social");
  if (!social.is_object()) {
    throw SurveyError(SurveyErrorCode::OutOfRange, "social", social.dump(),
                      "object {amount, kind, partner}");
  }
  r.social.amount = read_score<LikertScore>(social, "amount", "social.amount");
  const auto& kind = require(social, "kind", "social.kind");
  auto parsed_kind = kind.is_string() ? social_kind_from_string(kind.get<std::string>())
                                      : std::nullopt;
  if (!parsed_kind) {
    throw SurveyError(SurveyErrorCode::OutOfRange, "social.kind", kind.dump(),
                      "none|neutral|happy|fight|rejection");
  }
  r.social.kind = *parsed_kind;
  const auto& partner = require(social, "partner", "social.partner");
  auto parsed_partner = partner.is_string()
                            ? social_partner_from_string(partner.get<std::string>())
                            : std::nullopt;
  if (!parsed_partner) {
    throw SurveyError(SurveyErrorCode::OutOfRange, "social.partner", partner.dump(),
                      "submissive|peer|dominant");
  }
  r.social.partner = *parsed_partner;
  reject_unknown(social, kSocialFields, "social.");

  r.stress_level = read_score<StressLevel>(raw, "stress_level", "stress_level");
  r.stress_handling = read_score<StressHandlingScore>(raw, "stress_handling", "stress_handling");
  r.purpose_interest = read_score<LikertScore>(raw, "purpose_interest", "purpose_interest");
  r.purpose_purposeful = read_score<LikertScore>(raw, "purpose_purposeful", "purpose_purposeful");
  r.purpose_achievement =
      read_score<LikertScore>(raw, "purpose_achievement", "purpose_achievement");

  const auto& cue = require(raw, "memory_cue", "memory_cue");
  if (!cue.is_string()) {
    throw SurveyError(SurveyErrorCode::OutOfRange, "memory_cue", cue.dump(), "text");
  }
  r.memory_cue = cue.get<std::string>();
  if (is_blank(r.memory_cue)) {
    throw SurveyError(SurveyErrorCode::CueEmpty, "memory_cue");
  }
  if (utf8_length(r.memory_cue) > kMaxCueLength) {
    throw SurveyError(SurveyErrorCode::CueTooLong, "memory_cue",
                      std::to_string(utf8_length(r.memory_cue)), "1..80 characters");
  }

  reject_unknown(raw, kReportFields, "");
  return r;
}

DailyReport parse_daily_report_text(std::string_view text) {
  nlohmann::json raw;
  try {
    raw = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SurveyError(SurveyErrorCode::ParseError, "", e.what());
  }
  return parse_daily_report(raw);
}

nlohmann::json report_to_json(const DailyReport& r) {
  nlohmann::json j;
  j["date"] = format_date(r.date);
  j["mood_valence"] = r.mood_valence.value();
  j["mood_arousal"] = r.mood_arousal.value();
  j["bedtime"] = format_clock(r.bedtime);
  j["sleep_hours"] = r.sleep_hours;
  j["sleep_quality"] = r.sleep_quality.value();
  j["exercise_minutes"] = r.exercise_minutes;
  j["social"] = {{"amount", r.social.amount.value()},
                 {"kind", std::string(to_string(r.social.kind))},
                 {"partner", std::string(to_string(r.social.partner))}};
  j["stress_level"] = r.stress_level.value();
  j["stress_handling"] = r.stress_handling.value();
  j["purpose_interest"] = r.purpose_interest.value();
  j["purpose_purposeful"] = r.purpose_purposeful.value();
  j["purpose_achievement"] = r.purpose_achievement.value();
  j["memory_cue"] = r.memory_cue;
  return j;
}

std::string serialize_report(const DailyReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

std::string report_filename(Date date) { return format_date(date) + ".report.json"; }

WeekData assemble_week(const std::vector<DailyReport>& reports, Date week_start,
                       std::string user_id) {
  const auto first = std::chrono::sys_days{week_start};
  const auto last = first + std::chrono::days{6};
  std::map<std::chrono::sys_days, const DailyReport*> by_date;
  for (const auto& r : reports) {
    const auto day = std::chrono::sys_days{r.date};
    if (day < first || day > last) continue;
    by_date[day] = &r;  // later submissions overwrite earlier ones
  }
  if (by_date.empty()) {
    throw SurveyError(SurveyErrorCode::EmptyWeek, "", format_date(week_start));
  }
  WeekData week;
  week.user_id = std::move(user_id);
  week.week_start = week_start;
  for (const auto& [day, r] : by_date) week.reports.push_back(*r);
  return week;
}

std::vector<DailyReport> load_report_dir(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    constexpr std::string_view kSuffix = ".report.json";
    if (entry.is_regular_file() && name.size() > kSuffix.size() &&
        name.compare(name.size() - kSuffix.size(), kSuffix.size(), kSuffix) == 0) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<DailyReport> reports;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
      reports.push_back(parse_daily_report_text(text));
    } catch (const SurveyError& e) {
      throw SurveyError(e.code(), file.filename().string() + ": " + e.field(), e.value(),
                        e.allowed());
    }
  }
  return reports;
}

}  // namespace moodfilm
