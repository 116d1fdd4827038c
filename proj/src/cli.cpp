#include "moodfilm/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "moodfilm/canonical_json.hpp"
#include "moodfilm/script.hpp"
#include "moodfilm/survey.hpp"

namespace moodfilm {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CheckinFlags {
  std::string date;
  int mood = 0;
  int energy = 0;
  std::string bedtime;
  double sleep_hours = 0.0;
  int sleep_quality = 0;
  int exercise = 0;
  int social_amount = 1;
  std::string social_kind = "none";
  std::string social_partner = "peer";
  int stress = 0;
  int stress_handling = 4;
  int interest = 4;
  int purposeful = 4;
  int achievement = 4;
  std::string cue;
  std::string data_dir;
};

struct CompileFlags {
  std::string data_dir;
  std::string week_start;
  std::string mode = "personalized";
  std::uint64_t seed = 0;
  std::string out;
};

struct FileFlags {
  std::string path;
};

struct DemoFlags {
  std::uint64_t seed = 0;
  std::string out;
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool write_file(const fs::path& path, const std::string& bytes, std::ostream& err) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << bytes) || !out.flush()) {
    err << "error: cannot write " << path.string() << "\n";
    return false;
  }
  return true;
}

int cmd_checkin(const CheckinFlags& f, std::ostream& out, std::ostream& err) {
  if (f.data_dir.empty()) {
    err << "error: --data-dir or MOODFILM_DATA is required\n";
    return kExitUsage;
  }
  const json raw = {
      {"date", f.date},
      {"mood_valence", f.mood},
      {"mood_arousal", f.energy},
      {"bedtime", f.bedtime},
      {"sleep_hours", f.sleep_hours},
      {"sleep_quality", f.sleep_quality},
      {"exercise_minutes", f.exercise},
      {"social", {{"amount", f.social_amount}, {"kind", f.social_kind}, {"partner", f.social_partner}}},
      {"stress_level", f.stress},
      {"stress_handling", f.stress_handling},
      {"purpose_interest", f.interest},
      {"purpose_purposeful", f.purposeful},
      {"purpose_achievement", f.achievement},
      {"memory_cue", f.cue},
  };
  DailyReport report;
  try {
    report = parse_daily_report(raw);
  } catch (const SurveyError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  const fs::path path = fs::path(f.data_dir) / report_filename(report.date);
  if (!write_file(path, serialize_report(report), err)) return kExitFailure;
  out << "wrote " << path.string() << "\n";
  return kExitOk;
}

int cmd_compile(const CompileFlags& f, std::ostream& out, std::ostream& err) {
  const auto mode = story_mode_from_string(f.mode);
  if (!mode) {
    err << "error: --mode must be personalized or control\n";
    return kExitUsage;
  }
  SceneScript script;
  try {
    if (*mode == StoryMode::Control) {
      script = compile(nullptr, StoryMode::Control, f.seed);
    } else {
      if (f.data_dir.empty() || f.week_start.empty()) {
        err << "error: personalized mode needs --data-dir (or MOODFILM_DATA) and --week-start\n";
        return kExitUsage;
      }
      const auto start = parse_date(f.week_start);
      if (!start) {
        err << "error: --week-start must be YYYY-MM-DD\n";
        return kExitUsage;
      }
      if (!fs::is_directory(f.data_dir)) {
        err << "error: data directory " << f.data_dir << " does not exist\n";
        return kExitFailure;
      }
      const WeekData week = assemble_week(load_report_dir(f.data_dir), *start, "");
      script = compile(&week, StoryMode::Personalized, f.seed);
    }
  } catch (const SurveyError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  if (!write_file(f.out, serialize(script), err)) return kExitFailure;
  out << "wrote " << f.out << ": " << script.chapters.size() << " chapters, "
      << format_number(static_cast<double>(script.total_ms) / 1000.0) << " s, "
      << (script.outcome.reaches_moon ? "reaches the moon" : "stops short of the moon") << "\n";
  return kExitOk;
}

int cmd_validate(const FileFlags& f, std::ostream& out, std::ostream& err) {
  const auto bytes = read_file(f.path);
  if (!bytes) {
    err << "error: cannot read " << f.path << "\n";
    return kExitFailure;
  }
  const auto violations = validate_script(*bytes);
  if (violations.empty()) {
    out << "ok\n";
    return kExitOk;
  }
  for (const auto& v : violations) err << v.code << ": " << v.message << "\n";
  return kExitFailure;
}

int cmd_inspect(const FileFlags& f, std::ostream& out, std::ostream& err) {
  const auto bytes = read_file(f.path);
  if (!bytes) {
    err << "error: cannot read " << f.path << "\n";
    return kExitFailure;
  }
  try {
    out << inspect(parse_script(*bytes));
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_demo(const DemoFlags& f, std::ostream& out, std::ostream& err) {
  const auto script = compile(nullptr, StoryMode::Control, f.seed);
  if (!write_file(f.out, serialize(script), err)) return kExitFailure;
  out << "wrote " << f.out << ": control story, "
      << format_number(static_cast<double>(script.total_ms) / 1000.0) << " s\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Turns a week of daily check-ins into an animated story script", "moodfilm"};
  app.require_subcommand(1);

  CheckinFlags checkin;
  auto* ci = app.add_subcommand("checkin", "Record one day's check-in");
  ci->add_option("--date", checkin.date, "Day of the report, YYYY-MM-DD")->required();
  ci->add_option("--mood", checkin.mood, "Mood valence, 1 (unpleasant) to 7 (pleasant)")->required();
  ci->add_option("--energy", checkin.energy, "Mood arousal, 1 (calm) to 7 (activated)")->required();
  ci->add_option("--bedtime", checkin.bedtime, "Bedtime, HH:MM")->required();
  ci->add_option("--sleep-hours", checkin.sleep_hours, "Hours slept")->required();
  ci->add_option("--sleep-quality", checkin.sleep_quality, "Sleep quality, 1 to 7")->required();
  ci->add_option("--exercise", checkin.exercise, "Exercise minutes")->capture_default_str();
  ci->add_option("--social-amount", checkin.social_amount, "Time with others, 1 to 7")
      ->capture_default_str();
  ci->add_option("--social-kind", checkin.social_kind,
                 "none, neutral, happy, fight or rejection")
      ->capture_default_str();
  ci->add_option("--social-partner", checkin.social_partner, "submissive, peer or dominant")
      ->capture_default_str();
  ci->add_option("--stress", checkin.stress, "Stress level, 0 (none) to 7")->capture_default_str();
  ci->add_option("--stress-handling", checkin.stress_handling, "0 (anxious) to 7 (under control)")
      ->capture_default_str();
  ci->add_option("--interest", checkin.interest, "Purpose: interest, 1 to 7")->capture_default_str();
  ci->add_option("--purposeful", checkin.purposeful, "Purpose: purposeful, 1 to 7")
      ->capture_default_str();
  ci->add_option("--achievement", checkin.achievement, "Purpose: achievement, 1 to 7")
      ->capture_default_str();
  ci->add_option("--cue", checkin.cue, "One-line memory cue, at most 80 characters")->required();
  ci->add_option("--data-dir", checkin.data_dir, "Report directory")->envname("MOODFILM_DATA");

  CompileFlags comp;
  auto* co = app.add_subcommand("compile", "Compile a week into a scene script");
  co->add_option("--data-dir", comp.data_dir, "Report directory")->envname("MOODFILM_DATA");
  co->add_option("--week-start", comp.week_start, "First day of the week, YYYY-MM-DD");
  co->add_option("--mode", comp.mode, "personalized or control")->capture_default_str();
  co->add_option("--seed", comp.seed, "64-bit seed")->capture_default_str();
  co->add_option("--out", comp.out, "Output scene script")->required();

  FileFlags validate;
  auto* va = app.add_subcommand("validate", "Check a scene script");
  va->add_option("path", validate.path, "Scene script")->required();

  FileFlags insp;
  auto* in = app.add_subcommand("inspect", "Summarize a scene script");
  in->add_option("path", insp.path, "Scene script")->required();

  DemoFlags demo;
  auto* de = app.add_subcommand("demo", "Write the control story");
  de->add_option("--seed", demo.seed, "64-bit seed")->capture_default_str();
  de->add_option("--out", demo.out, "Output scene script")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (*ci) return cmd_checkin(checkin, out, err);
  if (*co) return cmd_compile(comp, out, err);
  if (*va) return cmd_validate(validate, out, err);
  if (*in) return cmd_inspect(insp, out, err);
  return cmd_demo(demo, out, err);
}

}  // namespace moodfilm
