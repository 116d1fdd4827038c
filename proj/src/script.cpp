#include "moodfilm/script.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "moodfilm/canonical_json.hpp"
#include "moodfilm/rng.hpp"

namespace moodfilm {

using nlohmann::json;

std::string_view to_string(SpawnKind kind) {
  switch (kind) {
    case SpawnKind::Dog: return "dog";
    case SpawnKind::RockRain: return "rock_rain";
  }
  return "dog";
}

namespace {

double secs(Millis ms) { return static_cast<double>(ms) / 1000.0; }
Millis millis(double s) { return std::llround(s * 1000.0); }

int waypoint_at(const std::vector<ScriptWaypoint>& waypoints, Millis t) {
  int index = 0;
  for (std::size_t i = 0; i < waypoints.size(); ++i) {
    if (millis(waypoints[i].t_s) <= t) index = static_cast<int>(i);
  }
  return index;
}

std::vector<ScriptEvent> chapter_events(const ChapterPlan& chapter, Millis t0) {
  std::vector<ScriptEvent> out;
  Millis cursor = t0;
  for (const auto& e : chapter.events) {
    ScriptEvent ev;
    ev.kind = e.kind();
    ev.t0 = cursor;
    ev.t1 = cursor + e.duration_ms;
    cursor = ev.t1;
    if (const auto* s = std::get_if<SocialEvent>(&e.payload)) {
      ev.social = s->kind;
      ev.partner_scale = s->partner_scale;
    } else if (const auto* st = std::get_if<StressEvent>(&e.payload)) {
      ev.stress = st->response;
    } else if (const auto* sl = std::get_if<SleepEvent>(&e.payload)) {
      ev.severity = sl->severity;
    }
    out.push_back(std::move(ev));
  }
  return out;
}

}  // namespace

SceneScript compile_plan(const StoryPlan& plan, std::uint64_t seed) {
  SceneScript script;
  script.mode = plan.mode;
  script.seed = seed;
  script.total_ms = plan.total_ms;
  script.outcome = plan.outcome;

  const Timeline timeline = build_timeline(plan);
  std::vector<ChapterWorld> worlds;
  worlds.reserve(plan.chapters.size());

  for (std::size_t i = 0; i < plan.chapters.size(); ++i) {
    const auto& chapter = plan.chapters[i];
    const int index = static_cast<int>(i);
    ChapterStaging staging;
    staging.t0 = chapter_start_ms(plan, i);
    staging.final_chapter = i + 1 == plan.chapters.size();
    staging.reaches_moon = plan.outcome.reaches_moon;
    staging.seed = chapter_base_seed(seed, index);
    auto world = build_chapter_world(chapter, staging);

    ScriptChapter sc;
    sc.index = index;
    sc.date = format_date(chapter.date);
    sc.title = chapter.title;
    sc.t0 = staging.t0;
    sc.t1 = staging.t0 + chapter.duration_ms;
    sc.quadrant = chapter.quadrant;
    sc.valence = chapter.affect.valence;
    sc.arousal = chapter.affect.arousal;
    sc.energy = chapter.energy.value;
    sc.fatigued = chapter.energy.fatigued;
    sc.late_night = chapter.late_night;
    sc.speed_mps = world.speed_mps;
    sc.palette = chapter.palette;
    sc.events = chapter_events(chapter, staging.t0);
    sc.start = world.path.start;
    sc.goal = world.path.goal;
    sc.detour = world.path.detour;
    sc.reached_goal = world.reached_goal;
    for (const auto& w : world.path.waypoints) sc.waypoints.push_back({w.cell, w.z, w.t_s});

    for (const auto& seg : world.agent) {
      script.tracks.agent.push_back({seg.t0, seg.t1, seg.clip, seg.speed_mps, index,
                                     waypoint_at(sc.waypoints, seg.t0),
                                     waypoint_at(sc.waypoints, seg.t1)});
    }

    std::vector<SpawnRecord> spawns;
    if (world.dog) {
      SpawnRecord r;
      r.t0 = world.dog->t0;
      r.t1 = world.dog->t1;
      r.kind = SpawnKind::Dog;
      r.chapter = index;
      r.cell = world.dog->dog.cell;
      r.z = world.dog->dog.z;
      r.scale = world.dog->dog.scale;
      r.interaction = world.dog->dog.interaction;
      spawns.push_back(std::move(r));
    }
    for (const auto& phase : world.rocks) {
      SpawnRecord r;
      r.t0 = phase.t0;
      r.t1 = phase.t1;
      r.kind = SpawnKind::RockRain;
      r.chapter = index;
      r.cells = phase.cells;
      spawns.push_back(std::move(r));
    }
    std::stable_sort(spawns.begin(), spawns.end(),
                     [](const SpawnRecord& a, const SpawnRecord& b) { return a.t0 < b.t0; });
    script.tracks.spawns.insert(script.tracks.spawns.end(), spawns.begin(), spawns.end());

    TerrainRecord tr;
    tr.chapter = index;
    tr.size = world.terrain.size;
    tr.cell_m = world.terrain.cell_m;
    tr.seed = world.terrain.seed;
    tr.amplitude_m = world.terrain.amplitude_m;
    tr.heights = world.terrain.heights;
    script.terrain.push_back(std::move(tr));

    if (plan.mode == StoryMode::Personalized && chapter.title) {
      const Millis title_t0 = i == 0 ? 0 : staging.t0;
      script.tracks.titles.push_back({title_t0, staging.t0 + kTitleMs, *chapter.title, index});
    }

    script.chapters.push_back(std::move(sc));
    worlds.push_back(std::move(world));
  }

  script.tracks.camera = schedule_cameras(timeline, seed);
  script.tracks.lighting = lighting_track(plan);
  script.tracks.audio = schedule_audio(plan, timeline, worlds);
  return script;
}

SceneScript compile(const WeekData* week, StoryMode mode, std::uint64_t seed) {
  if (mode == StoryMode::Control) return compile_plan(plan_control_story(), seed);
  if (week == nullptr || week->reports.empty()) {
    throw SurveyError(SurveyErrorCode::EmptyWeek, "week");
  }
  return compile_plan(plan_story(*week, mode), seed);
}

// ---- JSON encoding ----

namespace {

json cell_json(Cell c) { return json::array({c.x, c.y}); }

json rgb_json(const Rgb& rgb) { return json::array({rgb[0], rgb[1], rgb[2]}); }

json event_json(const ScriptEvent& e) {
  json j = {{"kind", to_string(e.kind)}, {"t0", secs(e.t0)}, {"t1", secs(e.t1)}};
  if (e.social) j["social"] = to_string(*e.social);
  if (e.partner_scale) j["partner_scale"] = *e.partner_scale;
  if (e.stress) {
    j["stress"] = to_string(e.stress->kind);
    j["stress_intensity"] = e.stress->intensity;
  }
  if (e.severity) j["severity"] = *e.severity;
  return j;
}

json chapter_json(const ScriptChapter& c) {
  json j = {
      {"index", c.index},
      {"date", c.date},
      {"t0", secs(c.t0)},
      {"t1", secs(c.t1)},
      {"quadrant", to_string(c.quadrant)},
      {"valence", c.valence},
      {"arousal", c.arousal},
      {"energy", c.energy},
      {"fatigued", c.fatigued},
      {"late_night", c.late_night},
      {"speed_mps", c.speed_mps},
      {"palette",
       {{"sky_rgb", rgb_json(c.palette.sky_rgb)},
        {"fog_density", c.palette.fog_density},
        {"light_temperature_k", c.palette.light_temperature_k},
        {"weather", to_string(c.palette.weather)},
        {"ambience", to_string(c.palette.ambience)}}},
      {"start", cell_json(c.start)},
      {"goal", cell_json(c.goal)},
      {"reached_goal", c.reached_goal},
  };
  if (c.title) j["title"] = *c.title;
  j["detour"] = c.detour ? cell_json(*c.detour) : json(nullptr);
  json events = json::array();
  for (const auto& e : c.events) events.push_back(event_json(e));
  j["events"] = std::move(events);
  json waypoints = json::array();
  for (const auto& w : c.waypoints) {
    waypoints.push_back(json::array({w.cell.x, w.cell.y, w.z, w.t_s}));
  }
  j["waypoints"] = std::move(waypoints);
  return j;
}

json tracks_json(const Tracks& t) {
  json camera = json::array();
  for (const auto& c : t.camera) {
    json effects = json::array();
    for (const auto& e : c.effects) {
      effects.push_back({{"kind", to_string(e.kind)}, {"strength", e.strength}});
    }
    camera.push_back({{"t0", secs(c.t0)},
                      {"t1", secs(c.t1)},
                      {"shot", to_string(c.shot)},
                      {"effects", std::move(effects)}});
  }
  json agent = json::array();
  for (const auto& a : t.agent) {
    agent.push_back({{"t0", secs(a.t0)},
                     {"t1", secs(a.t1)},
                     {"clip", to_string(a.clip)},
                     {"speed_mps", a.speed_mps},
                     {"chapter", a.chapter},
                     {"w0", a.w0},
                     {"w1", a.w1}});
  }
  json lighting = json::array();
  for (const auto& k : t.lighting) {
    lighting.push_back({{"t", secs(k.t)},
                        {"sky_rgb", rgb_json(k.sky_rgb)},
                        {"fog", k.fog},
                        {"temperature_k", k.temperature_k}});
  }
  json audio = json::array();
  for (const auto& a : t.audio) {
    audio.push_back({{"t0", secs(a.t0)},
                     {"t1", secs(a.t1)},
                     {"sound", to_string(a.sound)},
                     {"layer", to_string(a.layer)}});
  }
  json spawns = json::array();
  for (const auto& s : t.spawns) {
    json j = {{"t0", secs(s.t0)},
              {"t1", secs(s.t1)},
              {"kind", to_string(s.kind)},
              {"chapter", s.chapter}};
    if (s.kind == SpawnKind::Dog) {
      j["cell"] = cell_json(s.cell);
      j["z"] = s.z;
      j["scale"] = s.scale;
      j["interaction"] = to_string(s.interaction);
    } else {
      json cells = json::array();
      for (const auto& c : s.cells) cells.push_back(cell_json(c));
      j["cells"] = std::move(cells);
    }
    spawns.push_back(std::move(j));
  }
  json titles = json::array();
  for (const auto& tc : t.titles) {
    titles.push_back(
        {{"t0", secs(tc.t0)}, {"t1", secs(tc.t1)}, {"text", tc.text}, {"chapter", tc.chapter}});
  }
  return {{"camera", std::move(camera)},     {"agent", std::move(agent)},
          {"lighting", std::move(lighting)}, {"audio", std::move(audio)},
          {"spawns", std::move(spawns)},     {"titles", std::move(titles)}};
}

}  // namespace

json script_to_json(const SceneScript& s) {
  json chapters = json::array();
  for (const auto& c : s.chapters) chapters.push_back(chapter_json(c));
  json terrain = json::array();
  for (const auto& t : s.terrain) {
    terrain.push_back({{"chapter", t.chapter},
                       {"size", t.size},
                       {"cell_m", t.cell_m},
                       {"seed", std::to_string(t.seed)},
                       {"amplitude_m", t.amplitude_m},
                       {"heights", t.heights}});
  }
  return {
      {"version", s.version},
      {"mode", to_string(s.mode)},
      {"seed", std::to_string(s.seed)},
      {"total_duration_s", secs(s.total_ms)},
      {"outcome",
       {{"score", s.outcome.score},
        {"moon_distance_m", s.outcome.moon_distance_m},
        {"reaches_moon", s.outcome.reaches_moon}}},
      {"chapters", std::move(chapters)},
      {"terrain", std::move(terrain)},
      {"tracks", tracks_json(s.tracks)},
  };
}

// ---- JSON decoding ----

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

template <class T>
T need(std::optional<T> value, const std::string& what) {
  if (!value) fail("bad value for " + what);
  return *value;
}

Millis ms_at(const json& j, const char* key) { return millis(j.at(key).get<double>()); }

Cell cell_from(const json& j) {
  if (!j.is_array() || j.size() < 2) fail("bad cell");
  return {j.at(0).get<int>(), j.at(1).get<int>()};
}

Rgb rgb_from(const json& j) {
  if (!j.is_array() || j.size() != 3) fail("bad rgb");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::uint64_t seed_from(const json& j) {
  const auto text = j.get<std::string>();
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    fail("bad seed");
  }
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    fail("bad seed");
  }
}

ScriptChapter chapter_from(const json& j) {
  ScriptChapter c;
  c.index = j.at("index").get<int>();
  c.date = j.at("date").get<std::string>();
  if (j.contains("title")) c.title = j.at("title").get<std::string>();
  c.t0 = ms_at(j, "t0");
  c.t1 = ms_at(j, "t1");
  c.quadrant = need(quadrant_from_string(j.at("quadrant").get<std::string>()), "quadrant");
  c.valence = j.at("valence").get<double>();
  c.arousal = j.at("arousal").get<double>();
  c.energy = j.at("energy").get<double>();
  c.fatigued = j.at("fatigued").get<bool>();
  c.late_night = j.at("late_night").get<bool>();
  c.speed_mps = j.at("speed_mps").get<double>();
  const auto& p = j.at("palette");
  c.palette.sky_rgb = rgb_from(p.at("sky_rgb"));
  c.palette.fog_density = p.at("fog_density").get<double>();
  c.palette.light_temperature_k = p.at("light_temperature_k").get<double>();
  c.palette.weather = need(weather_from_string(p.at("weather").get<std::string>()), "weather");
  c.palette.ambience =
      need(ambience_from_string(p.at("ambience").get<std::string>()), "ambience");
  for (const auto& e : j.at("events")) {
    ScriptEvent ev;
    ev.kind = need(event_kind_from_string(e.at("kind").get<std::string>()), "event kind");
    ev.t0 = ms_at(e, "t0");
    ev.t1 = ms_at(e, "t1");
    if (e.contains("social")) {
      ev.social = need(social_kind_from_string(e.at("social").get<std::string>()), "social");
    }
    if (e.contains("partner_scale")) ev.partner_scale = e.at("partner_scale").get<double>();
    if (e.contains("stress")) {
      StressResponse r;
      r.kind = need(stress_kind_from_string(e.at("stress").get<std::string>()), "stress");
      r.intensity = e.at("stress_intensity").get<double>();
      ev.stress = r;
    }
    if (e.contains("severity")) ev.severity = e.at("severity").get<double>();
    c.events.push_back(std::move(ev));
  }
  c.start = cell_from(j.at("start"));
  c.goal = cell_from(j.at("goal"));
  if (!j.at("detour").is_null()) c.detour = cell_from(j.at("detour"));
  c.reached_goal = j.at("reached_goal").get<bool>();
  for (const auto& w : j.at("waypoints")) {
    if (!w.is_array() || w.size() != 4) fail("bad waypoint");
    c.waypoints.push_back({{w[0].get<int>(), w[1].get<int>()}, w[2].get<double>(), w[3].get<double>()});
  }
  return c;
}

Tracks tracks_from(const json& j) {
  Tracks t;
  for (const auto& c : j.at("camera")) {
    CameraCue cue{ms_at(c, "t0"), ms_at(c, "t1"),
                  need(shot_kind_from_string(c.at("shot").get<std::string>()), "shot"), {}};
    for (const auto& e : c.at("effects")) {
      cue.effects.push_back(
          {need(lens_kind_from_string(e.at("kind").get<std::string>()), "lens"),
           e.at("strength").get<double>()});
    }
    t.camera.push_back(std::move(cue));
  }
  for (const auto& a : j.at("agent")) {
    t.agent.push_back({ms_at(a, "t0"), ms_at(a, "t1"),
                       need(agent_clip_from_string(a.at("clip").get<std::string>()), "clip"),
                       a.at("speed_mps").get<double>(), a.at("chapter").get<int>(),
                       a.at("w0").get<int>(), a.at("w1").get<int>()});
  }
  for (const auto& k : j.at("lighting")) {
    t.lighting.push_back({ms_at(k, "t"), rgb_from(k.at("sky_rgb")), k.at("fog").get<double>(),
                          k.at("temperature_k").get<double>()});
  }
  for (const auto& a : j.at("audio")) {
    t.audio.push_back({ms_at(a, "t0"), ms_at(a, "t1"),
                       need(sound_from_string(a.at("sound").get<std::string>()), "sound"),
                       need(audio_layer_from_string(a.at("layer").get<std::string>()), "layer")});
  }
  for (const auto& s : j.at("spawns")) {
    SpawnRecord r;
    r.t0 = ms_at(s, "t0");
    r.t1 = ms_at(s, "t1");
    const auto kind = s.at("kind").get<std::string>();
    if (kind == "dog") {
      r.kind = SpawnKind::Dog;
      r.cell = cell_from(s.at("cell"));
      r.z = s.at("z").get<double>();
      r.scale = s.at("scale").get<double>();
      r.interaction =
          need(social_kind_from_string(s.at("interaction").get<std::string>()), "interaction");
    } else if (kind == "rock_rain") {
      r.kind = SpawnKind::RockRain;
      for (const auto& c : s.at("cells")) r.cells.push_back(cell_from(c));
    } else {
      fail("bad spawn kind");
    }
    r.chapter = s.at("chapter").get<int>();
    t.spawns.push_back(std::move(r));
  }
  for (const auto& tc : j.at("titles")) {
    t.titles.push_back({ms_at(tc, "t0"), ms_at(tc, "t1"), tc.at("text").get<std::string>(),
                        tc.at("chapter").get<int>()});
  }
  return t;
}

}  // namespace

SceneScript script_from_json(const json& j) {
  if (auto violations = validate_script_json(j); !violations.empty()) {
    fail(violations.front().message);
  }
  try {
    SceneScript s;
    s.version = j.at("version").get<std::string>();
    s.mode = need(story_mode_from_string(j.at("mode").get<std::string>()), "mode");
    s.seed = seed_from(j.at("seed"));
    s.total_ms = ms_at(j, "total_duration_s");
    const auto& o = j.at("outcome");
    s.outcome.score = o.at("score").get<double>();
    s.outcome.moon_distance_m = o.at("moon_distance_m").get<double>();
    s.outcome.reaches_moon = o.at("reaches_moon").get<bool>();
    for (const auto& c : j.at("chapters")) s.chapters.push_back(chapter_from(c));
    for (const auto& t : j.at("terrain")) {
      TerrainRecord r;
      r.chapter = t.at("chapter").get<int>();
      r.size = t.at("size").get<int>();
      r.cell_m = t.at("cell_m").get<double>();
      r.seed = seed_from(t.at("seed"));
      r.amplitude_m = t.at("amplitude_m").get<double>();
      r.heights = t.at("heights").get<std::vector<double>>();
      s.terrain.push_back(std::move(r));
    }
    s.tracks = tracks_from(j.at("tracks"));
    return s;
  } catch (const json::exception& e) {
    fail(std::string("malformed scene script: ") + e.what());
  }
}

std::string serialize(const SceneScript& script) { return canonical_dump(script_to_json(script)); }

SceneScript parse_script(std::string_view bytes) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    fail(std::string("parse error: ") + e.what());
  }
  return script_from_json(j);
}

}  // namespace moodfilm
