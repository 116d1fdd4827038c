#include <iomanip>
#include <sstream>

#include "moodfilm/canonical_json.hpp"
#include "moodfilm/script.hpp"

namespace moodfilm {

namespace {

std::string seconds(Millis ms) { return format_number(static_cast<double>(ms) / 1000.0) + " s"; }

std::string count_word(int n) {
  static const char* const words[] = {"no", "one", "two", "three", "four"};
  return n >= 0 && n <= 4 ? words[n] : std::to_string(n);
}

std::string event_label(const ScriptEvent& e) {
  std::string label(to_string(e.kind));
  if (e.social) label += " (" + std::string(to_string(*e.social)) + ")";
  if (e.stress) label += " (" + std::string(to_string(e.stress->kind)) + ")";
  return label;
}

std::string events_cell(const ScriptChapter& c) {
  std::string out;
  for (const auto& e : c.events) {
    if (e.kind == EventKind::Wander) continue;
    if (!out.empty()) out += ", ";
    out += event_label(e);
  }
  return out.empty() ? "wander only" : out;
}

std::string interactions_line(const SceneScript& s) {
  int negative = 0;
  int positive = 0;
  int neutral = 0;
  for (const auto& c : s.chapters) {
    for (const auto& e : c.events) {
      if (!e.social) continue;
      switch (*e.social) {
        case SocialKind::Fight:
        case SocialKind::Rejection: ++negative; break;
        case SocialKind::Happy: ++positive; break;
        case SocialKind::Neutral: ++neutral; break;
        case SocialKind::None: break;
      }
    }
  }
  std::vector<std::string> parts;
  int last = 0;
  for (auto [n, word] : {std::pair{negative, "negative"}, {positive, "positive"}, {neutral, "neutral"}}) {
    if (n == 0) continue;
    parts.push_back(count_word(n) + " " + word);
    last = n;
  }
  if (parts.empty()) return "no interactions";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += i + 1 == parts.size() ? " and " : ", ";
    out += parts[i];
  }
  return out + (last > 1 ? " interactions" : " interaction");
}

}  // namespace

std::string inspect(const SceneScript& s) {
  std::ostringstream os;
  os << "scene script v" << s.version << ", " << to_string(s.mode) << " mode, seed " << s.seed
     << "\n\n";
  os << std::left << std::setw(4) << "#" << std::setw(12) << "date" << std::setw(34) << "title"
     << std::setw(12) << "quadrant" << std::setw(40) << "events"
     << "duration\n";
  for (const auto& c : s.chapters) {
    std::string title = c.title.value_or("(untitled)");
    if (title.size() > 32) title = title.substr(0, 29) + "...";
    os << std::setw(4) << (c.index + 1) << std::setw(12) << c.date << std::setw(34) << title
       << std::setw(12) << to_string(c.quadrant) << std::setw(40) << events_cell(c)
       << seconds(c.t1 - c.t0) << "\n";
  }
  os << "\ninteractions: " << interactions_line(s) << "\n";
  os << "ending: ";
  if (s.outcome.reaches_moon) {
    os << "reaches the moon";
  } else {
    os << "stops " << format_number(s.outcome.moon_distance_m) << " m short of the moon";
  }
  os << " (purpose score " << format_number(s.outcome.score) << ")\n";
  os << "total: " << seconds(s.total_ms) << "\n";
  return os.str();
}

}  // namespace moodfilm
