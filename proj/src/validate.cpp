#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "moodfilm/script.hpp"

namespace moodfilm {

using nlohmann::json;

namespace {

// Collects violations while walking the document. Every accessor reports a
// problem and returns nullopt instead of throwing.
class Checker {
 public:
  std::vector<Violation> out;

  void add(std::string code, std::string message) {
    out.push_back({std::move(code), std::move(message)});
  }

  const json* field(const json& obj, const std::string& key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) {
      add("missing_field", "missing field " + where + "." + key);
      return nullptr;
    }
    return &*it;
  }

  const json* typed(const json& obj, const std::string& key, const std::string& where,
                    json::value_t kind, const char* kind_name) {
    const json* v = field(obj, key, where);
    if (v == nullptr) return nullptr;
    const bool ok = kind == json::value_t::number_float ? v->is_number()
                    : kind == json::value_t::number_integer ? v->is_number_integer()
                                                            : v->type() == kind;
    if (!ok) {
      add("wrong_type", "field " + where + "." + key + " must be " + kind_name);
      return nullptr;
    }
    return v;
  }

  std::optional<double> number(const json& obj, const std::string& key, const std::string& where) {
    const json* v = typed(obj, key, where, json::value_t::number_float, "a number");
    if (v == nullptr) return std::nullopt;
    const double d = v->get<double>();
    if (!std::isfinite(d)) {
      add("wrong_type", "field " + where + "." + key + " must be finite");
      return std::nullopt;
    }
    return d;
  }

  std::optional<Millis> time(const json& obj, const std::string& key, const std::string& where) {
    auto d = number(obj, key, where);
    if (!d) return std::nullopt;
    return std::llround(*d * 1000.0);
  }

  std::optional<long long> integer(const json& obj, const std::string& key,
                                   const std::string& where) {
    const json* v = typed(obj, key, where, json::value_t::number_integer, "an integer");
    if (v == nullptr) return std::nullopt;
    return v->get<long long>();
  }

  const json* boolean(const json& obj, const std::string& key, const std::string& where) {
    return typed(obj, key, where, json::value_t::boolean, "a boolean");
  }

  const json* string(const json& obj, const std::string& key, const std::string& where) {
    return typed(obj, key, where, json::value_t::string, "a string");
  }

  const json* array(const json& obj, const std::string& key, const std::string& where) {
    return typed(obj, key, where, json::value_t::array, "an array");
  }

  const json* object(const json& obj, const std::string& key, const std::string& where) {
    return typed(obj, key, where, json::value_t::object, "an object");
  }

  template <class Parse>
  bool enumerated(const json& obj, const std::string& key, const std::string& where, Parse parse) {
    const json* v = string(obj, key, where);
    if (v == nullptr) return false;
    const auto text = v->get<std::string>();
    if (!parse(text)) {
      add("bad_enum", "unknown value \"" + text + "\" for " + where + "." + key);
      return false;
    }
    return true;
  }

  void cell(const json& obj, const std::string& key, const std::string& where) {
    const json* v = array(obj, key, where);
    if (v == nullptr) return;
    if (v->size() != 2 || !(*v)[0].is_number_integer() || !(*v)[1].is_number_integer()) {
      add("wrong_type", "field " + where + "." + key + " must be [x, y]");
    }
  }

  void rgb(const json& obj, const std::string& key, const std::string& where) {
    const json* v = array(obj, key, where);
    if (v == nullptr) return;
    if (v->size() != 3 ||
        !std::all_of(v->begin(), v->end(), [](const json& x) { return x.is_number(); })) {
      add("wrong_type", "field " + where + "." + key + " must be three numbers");
    }
  }
};

std::string fmt_s(Millis ms) {
  std::string s = std::to_string(ms / 1000);
  if (Millis frac = ms % 1000; frac != 0) {
    std::string f = std::to_string(frac + 1000).substr(1);
    while (f.back() == '0') f.pop_back();
    s += "." + f;
  }
  return s;
}

struct Span {
  Millis t0 = 0;
  Millis t1 = 0;
};

// Shared interval checks for one track (or one audio layer).
void check_intervals(Checker& c, const std::vector<Span>& spans, const std::string& track,
                     std::optional<Millis> total, bool check_overlap) {
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const auto& s = spans[i];
    const std::string where = "tracks." + track + "[" + std::to_string(i) + "]";
    if (s.t1 <= s.t0) c.add("bad_interval", where + " ends at or before its start");
    if (s.t0 < 0 || (total && s.t1 > *total)) {
      c.add("time_out_of_bounds", where + " lies outside [0, total_duration_s]");
    }
    if (i == 0) continue;
    const auto& prev = spans[i - 1];
    if (s.t0 < prev.t0) {
      c.add("unsorted_track", "track " + track + " not sorted at t=" + fmt_s(s.t0));
    } else if (check_overlap && s.t0 < prev.t1) {
      c.add("track_overlap", "track " + track + " cues overlap at t=" + fmt_s(s.t0));
    }
  }
}

std::vector<Span> spans_of(Checker& c, const json& track, const std::string& name) {
  std::vector<Span> spans;
  for (std::size_t i = 0; i < track.size(); ++i) {
    const std::string where = "tracks." + name + "[" + std::to_string(i) + "]";
    if (!track[i].is_object()) {
      c.add("wrong_type", where + " must be an object");
      continue;
    }
    auto t0 = c.time(track[i], "t0", where);
    auto t1 = c.time(track[i], "t1", where);
    if (t0 && t1) spans.push_back({*t0, *t1});
  }
  return spans;
}

void check_camera(Checker& c, const json& track, std::optional<Millis> total) {
  for (std::size_t i = 0; i < track.size(); ++i) {
    const std::string where = "tracks.camera[" + std::to_string(i) + "]";
    if (!track[i].is_object()) continue;
    c.enumerated(track[i], "shot", where, shot_kind_from_string);
    if (const json* effects = c.array(track[i], "effects", where)) {
      for (std::size_t k = 0; k < effects->size(); ++k) {
        const std::string ew = where + ".effects[" + std::to_string(k) + "]";
        const json& e = (*effects)[k];
        if (!e.is_object()) {
          c.add("wrong_type", ew + " must be an object");
          continue;
        }
        c.enumerated(e, "kind", ew, lens_kind_from_string);
        if (auto s = c.number(e, "strength", ew); s && (*s < 0.0 || *s > 1.0)) {
          c.add("out_of_range", ew + ".strength outside [0, 1]");
        }
      }
    }
  }

  const auto spans = spans_of(c, track, "camera");
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const auto& s = spans[i];
    if (s.t0 < 0 || (total && s.t1 > *total)) {
      c.add("time_out_of_bounds", "tracks.camera[" + std::to_string(i) + "] lies outside [0, total_duration_s]");
    }
    if (s.t1 - s.t0 < kCueFloorMs) {
      c.add("camera_cue_too_short", "camera cue at t=" + fmt_s(s.t0) + " shorter than 2 s");
    }
    if (i == 0) {
      if (s.t0 > 0) c.add("camera_gap", "camera track gap at t=0");
      continue;
    }
    const auto& prev = spans[i - 1];
    if (s.t0 < prev.t0) {
      c.add("unsorted_track", "track camera not sorted at t=" + fmt_s(s.t0));
    } else if (s.t0 > prev.t1) {
      c.add("camera_gap", "camera track gap at t=" + fmt_s(prev.t1));
    } else if (s.t0 < prev.t1) {
      c.add("camera_overlap", "camera cues overlap at t=" + fmt_s(s.t0));
    }
  }
  if (spans.empty()) {
    c.add("camera_gap", "camera track gap at t=0");
  } else if (total && spans.back().t1 < *total) {
    c.add("camera_gap", "camera track gap at t=" + fmt_s(spans.back().t1));
  }

  for (std::size_t i = 1; i < track.size(); ++i) {
    const auto& a = track[i - 1];
    const auto& b = track[i];
    if (!a.is_object() || !b.is_object() || !a.contains("shot") || !b.contains("shot")) continue;
    if (!a["shot"].is_string() || !b["shot"].is_string()) continue;
    const auto shot = shot_kind_from_string(b["shot"].get<std::string>());
    if (shot && is_rotating(*shot) && a["shot"] == b["shot"]) {
      c.add("camera_repeat", "rotating shot repeated at tracks.camera[" + std::to_string(i) + "]");
    }
  }
}

void check_chapters(Checker& c, const json& chapters, std::optional<Millis> total) {
  for (std::size_t i = 0; i < chapters.size(); ++i) {
    const std::string where = "chapters[" + std::to_string(i) + "]";
    const json& ch = chapters[i];
    if (!ch.is_object()) {
      c.add("wrong_type", where + " must be an object");
      continue;
    }
    if (auto index = c.integer(ch, "index", where); index && *index != static_cast<long long>(i)) {
      c.add("bad_reference", where + ".index is " + std::to_string(*index));
    }
    if (const json* date = c.string(ch, "date", where); date && !parse_date(date->get<std::string>())) {
      c.add("wrong_type", where + ".date must be YYYY-MM-DD");
    }
    if (ch.contains("title")) c.string(ch, "title", where);
    auto t0 = c.time(ch, "t0", where);
    auto t1 = c.time(ch, "t1", where);
    if (t0 && t1) {
      if (*t1 <= *t0) c.add("bad_interval", where + " ends at or before its start");
      if (*t0 < 0 || (total && *t1 > *total)) {
        c.add("time_out_of_bounds", where + " lies outside [0, total_duration_s]");
      }
    }
    c.enumerated(ch, "quadrant", where, quadrant_from_string);
    for (const char* key : {"valence", "arousal", "energy", "speed_mps"}) c.number(ch, key, where);
    for (const char* key : {"fatigued", "late_night", "reached_goal"}) c.boolean(ch, key, where);
    if (const json* p = c.object(ch, "palette", where)) {
      const std::string pw = where + ".palette";
      c.rgb(*p, "sky_rgb", pw);
      c.number(*p, "fog_density", pw);
      c.number(*p, "light_temperature_k", pw);
      c.enumerated(*p, "weather", pw, weather_from_string);
      c.enumerated(*p, "ambience", pw, ambience_from_string);
    }
    c.cell(ch, "start", where);
    c.cell(ch, "goal", where);
    if (const json* d = c.field(ch, "detour", where); d && !d->is_null()) c.cell(ch, "detour", where);
    if (const json* events = c.array(ch, "events", where)) {
      for (std::size_t k = 0; k < events->size(); ++k) {
        const std::string ew = where + ".events[" + std::to_string(k) + "]";
        const json& e = (*events)[k];
        if (!e.is_object()) {
          c.add("wrong_type", ew + " must be an object");
          continue;
        }
        c.enumerated(e, "kind", ew, event_kind_from_string);
        c.time(e, "t0", ew);
        c.time(e, "t1", ew);
        if (e.contains("social")) c.enumerated(e, "social", ew, social_kind_from_string);
        if (e.contains("stress")) {
          c.enumerated(e, "stress", ew, stress_kind_from_string);
          c.number(e, "stress_intensity", ew);
        }
        if (e.contains("partner_scale")) c.number(e, "partner_scale", ew);
        if (e.contains("severity")) c.number(e, "severity", ew);
      }
    }
    if (const json* wps = c.array(ch, "waypoints", where)) {
      for (std::size_t k = 0; k < wps->size(); ++k) {
        const json& w = (*wps)[k];
        const bool ok = w.is_array() && w.size() == 4 && w[0].is_number_integer() &&
                        w[1].is_number_integer() && w[2].is_number() && w[3].is_number();
        if (!ok) {
          c.add("wrong_type", where + ".waypoints[" + std::to_string(k) + "] must be [x, y, z, t]");
        }
      }
    }
  }
}

void check_terrain(Checker& c, const json& terrain) {
  for (std::size_t i = 0; i < terrain.size(); ++i) {
    const std::string where = "terrain[" + std::to_string(i) + "]";
    const json& t = terrain[i];
    if (!t.is_object()) {
      c.add("wrong_type", where + " must be an object");
      continue;
    }
    c.integer(t, "chapter", where);
    c.number(t, "cell_m", where);
    c.number(t, "amplitude_m", where);
    c.string(t, "seed", where);
    auto size = c.integer(t, "size", where);
    if (const json* h = c.array(t, "heights", where)) {
      if (!std::all_of(h->begin(), h->end(), [](const json& x) { return x.is_number(); })) {
        c.add("wrong_type", where + ".heights must hold numbers");
      } else if (size && static_cast<long long>(h->size()) != *size * *size) {
        c.add("terrain_size_mismatch", where + " has " + std::to_string(h->size()) + " heights");
      }
    }
  }
}

void check_tracks(Checker& c, const json& tracks, std::optional<Millis> total,
                  std::optional<StoryMode> mode, const json* chapters) {
  const std::string where = "tracks";
  if (const json* camera = c.array(tracks, "camera", where)) check_camera(c, *camera, total);

  if (const json* agent = c.array(tracks, "agent", where)) {
    for (std::size_t i = 0; i < agent->size(); ++i) {
      const json& a = (*agent)[i];
      if (!a.is_object()) continue;
      const std::string aw = "tracks.agent[" + std::to_string(i) + "]";
      c.enumerated(a, "clip", aw, agent_clip_from_string);
      c.number(a, "speed_mps", aw);
      auto ch = c.integer(a, "chapter", aw);
      auto w0 = c.integer(a, "w0", aw);
      auto w1 = c.integer(a, "w1", aw);
      if (ch && chapters != nullptr) {
        if (*ch < 0 || *ch >= static_cast<long long>(chapters->size())) {
          c.add("bad_reference", aw + ".chapter out of range");
        } else if (w0 && w1) {
          const json& chapter = (*chapters)[static_cast<std::size_t>(*ch)];
          const auto n = chapter.is_object() && chapter.contains("waypoints") &&
                                 chapter["waypoints"].is_array()
                             ? static_cast<long long>(chapter["waypoints"].size())
                             : 0;
          if (*w0 < 0 || *w1 < *w0 || *w1 >= n) {
            c.add("bad_reference", aw + " waypoint range out of bounds");
          }
        }
      }
    }
    check_intervals(c, spans_of(c, *agent, "agent"), "agent", total, true);
  }

  if (const json* lighting = c.array(tracks, "lighting", where)) {
    std::optional<Millis> prev;
    for (std::size_t i = 0; i < lighting->size(); ++i) {
      const json& k = (*lighting)[i];
      const std::string kw = "tracks.lighting[" + std::to_string(i) + "]";
      if (!k.is_object()) {
        c.add("wrong_type", kw + " must be an object");
        continue;
      }
      c.rgb(k, "sky_rgb", kw);
      c.number(k, "fog", kw);
      c.number(k, "temperature_k", kw);
      auto t = c.time(k, "t", kw);
      if (!t) continue;
      if (*t < 0 || (total && *t > *total)) {
        c.add("time_out_of_bounds", kw + " lies outside [0, total_duration_s]");
      }
      if (prev && *t < *prev) c.add("unsorted_track", "track lighting not sorted at t=" + fmt_s(*t));
      prev = t;
    }
  }

  if (const json* audio = c.array(tracks, "audio", where)) {
    std::map<std::string, std::vector<Span>> layers;
    for (std::size_t i = 0; i < audio->size(); ++i) {
      const json& a = (*audio)[i];
      const std::string aw = "tracks.audio[" + std::to_string(i) + "]";
      if (!a.is_object()) {
        c.add("wrong_type", aw + " must be an object");
        continue;
      }
      c.enumerated(a, "sound", aw, sound_from_string);
      const bool layer_ok = c.enumerated(a, "layer", aw, audio_layer_from_string);
      auto t0 = c.time(a, "t0", aw);
      auto t1 = c.time(a, "t1", aw);
      if (layer_ok && t0 && t1) layers[a["layer"].get<std::string>()].push_back({*t0, *t1});
    }
    // Sort order is checked across the whole track, overlap per layer.
    check_intervals(c, spans_of(c, *audio, "audio"), "audio", total, false);
    for (const auto& [layer, spans] : layers) {
      for (std::size_t i = 1; i < spans.size(); ++i) {
        if (spans[i].t0 >= spans[i - 1].t0 && spans[i].t0 < spans[i - 1].t1) {
          c.add("track_overlap", "track audio/" + layer + " cues overlap at t=" + fmt_s(spans[i].t0));
        }
      }
    }
  }

  if (const json* spawns = c.array(tracks, "spawns", where)) {
    for (std::size_t i = 0; i < spawns->size(); ++i) {
      const json& s = (*spawns)[i];
      if (!s.is_object()) continue;
      const std::string sw = "tracks.spawns[" + std::to_string(i) + "]";
      c.integer(s, "chapter", sw);
      const json* kind = c.string(s, "kind", sw);
      if (kind == nullptr) continue;
      const auto text = kind->get<std::string>();
      if (text == "dog") {
        c.cell(s, "cell", sw);
        c.number(s, "z", sw);
        c.number(s, "scale", sw);
        c.enumerated(s, "interaction", sw, social_kind_from_string);
      } else if (text == "rock_rain") {
        if (const json* cells = c.array(s, "cells", sw)) {
          for (const auto& cell : *cells) {
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number_integer() ||
                !cell[1].is_number_integer()) {
              c.add("wrong_type", sw + ".cells must hold [x, y] pairs");
              break;
            }
          }
        }
      } else {
        c.add("bad_enum", "unknown value \"" + text + "\" for " + sw + ".kind");
      }
    }
    check_intervals(c, spans_of(c, *spawns, "spawns"), "spawns", total, true);
  }

  if (const json* titles = c.array(tracks, "titles", where)) {
    for (std::size_t i = 0; i < titles->size(); ++i) {
      const json& t = (*titles)[i];
      if (!t.is_object()) continue;
      const std::string tw = "tracks.titles[" + std::to_string(i) + "]";
      const json* text = c.string(t, "text", tw);
      auto ch = c.integer(t, "chapter", tw);
      if (text && ch && chapters != nullptr && *ch >= 0 &&
          *ch < static_cast<long long>(chapters->size())) {
        const json& chapter = (*chapters)[static_cast<std::size_t>(*ch)];
        if (!chapter.is_object() || !chapter.contains("title") || chapter["title"] != *text) {
          c.add("title_mode_mismatch", tw + " text differs from chapter title");
        }
      }
    }
    check_intervals(c, spans_of(c, *titles, "titles"), "titles", total, true);
    if (mode == StoryMode::Control && !titles->empty()) {
      c.add("title_mode_mismatch", "control scripts carry no titles");
    }
    if (mode == StoryMode::Personalized && chapters != nullptr &&
        titles->size() != chapters->size()) {
      c.add("title_mode_mismatch", "personalized scripts carry one title per chapter");
    }
  }
}

}  // namespace

std::vector<Violation> validate_script_json(const json& j) {
  Checker c;
  try {
    if (!j.is_object()) {
      c.add("wrong_type", "scene script must be a JSON object");
      return c.out;
    }
    const json* version = c.string(j, "version", "script");
    if (version == nullptr) return c.out;
    if (version->get<std::string>() != kScriptVersion) {
      c.add("unsupported_version", "unsupported version " + version->dump());
      return c.out;
    }

    std::optional<StoryMode> mode;
    if (c.enumerated(j, "mode", "script", story_mode_from_string)) {
      mode = story_mode_from_string(j["mode"].get<std::string>());
    }
    if (const json* seed = c.string(j, "seed", "script")) {
      const auto text = seed->get<std::string>();
      if (text.empty() || text.size() > 20 ||
          !std::all_of(text.begin(), text.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
        c.add("wrong_type", "field script.seed must be a decimal string");
      }
    }
    auto total = c.time(j, "total_duration_s", "script");
    if (total && *total <= 0) {
      c.add("time_out_of_bounds", "total_duration_s must be positive");
      total.reset();
    }
    if (const json* o = c.object(j, "outcome", "script")) {
      c.number(*o, "score", "outcome");
      c.number(*o, "moon_distance_m", "outcome");
      c.boolean(*o, "reaches_moon", "outcome");
    }
    const json* chapters = c.array(j, "chapters", "script");
    if (chapters != nullptr) check_chapters(c, *chapters, total);
    if (const json* terrain = c.array(j, "terrain", "script")) check_terrain(c, *terrain);
    if (const json* tracks = c.object(j, "tracks", "script")) {
      check_tracks(c, *tracks, total, mode, chapters);
    }
  } catch (const std::exception& e) {
    c.add("internal", std::string("validator error: ") + e.what());
  }
  return c.out;
}

std::vector<Violation> validate_script(std::string_view bytes) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::exception& e) {
    return {{"parse_error", std::string("parse error: ") + e.what()}};
  }
  return validate_script_json(j);
}

}  // namespace moodfilm
