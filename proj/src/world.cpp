#include "moodfilm/world.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "moodfilm/rng.hpp"

namespace moodfilm {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
// Cross-track tie-break weight; far below any real cost difference.
constexpr double kLineTieBreak = 1e-6;

int index_of(const Terrain& t, Cell c) { return c.y * t.size + c.x; }

Cell cell_of(const Terrain& t, int idx) { return {idx % t.size, idx / t.size}; }

Cell clamp_cell(const Terrain& t, Cell c) {
  return {std::clamp(c.x, 0, t.size - 1), std::clamp(c.y, 0, t.size - 1)};
}

// Perpendicular distance (cells) from c to the infinite line through a, b.
double cross_track(Cell a, Cell b, Cell c) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len = std::hypot(dx, dy);
  if (len == 0.0) return std::hypot(c.x - a.x, c.y - a.y);
  return std::abs(dx * (c.y - a.y) - dy * (c.x - a.x)) / len;
}

double octile_m(const Terrain& t, Cell a, Cell b) {
  const int dx = std::abs(a.x - b.x);
  const int dy = std::abs(a.y - b.y);
  return t.cell_m * (std::max(dx, dy) + (kSqrt2 - 1.0) * std::min(dx, dy));
}

bool route_hits(std::span<const Cell> route, const ObstacleField& band) {
  return std::any_of(route.begin(), route.end(), [&](Cell c) { return band.contains(c); });
}

ObstacleField shrink_band(const ObstacleField& band, Cell position, Cell goal) {
  double widest = 0.0;
  for (auto c : band.blocked) widest = std::max(widest, cross_track(position, goal, c));
  ObstacleField half = band;
  half.blocked.clear();
  for (auto c : band.blocked) {
    if (cross_track(position, goal, c) <= widest / 2.0) half.blocked.push_back(c);
  }
  return half;
}

}  // namespace

Terrain Terrain::flat(double h) {
  Terrain t;
  t.heights.assign(static_cast<std::size_t>(t.size * t.size), h);
  return t;
}

double terrain_amplitude(AffectState affect) {
  return 2.0 + 6.0 * std::max(0.0, -affect.valence) + 2.0 * std::abs(affect.arousal);
}

double lattice_value(std::uint64_t seed, int octave, int ix, int iy) {
  std::uint64_t h = splitmix64_mix(seed ^ (static_cast<std::uint64_t>(octave) * 0x9E3779B97F4A7C15ULL));
  h = splitmix64_mix(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ix)) *
                          0xC2B2AE3D27D4EB4FULL));
  h = splitmix64_mix(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(iy)) *
                          0x165667B19E3779F9ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

Terrain generate_terrain(AffectState affect, std::uint64_t seed) {
  Terrain t;
  t.seed = seed;
  t.amplitude_m = terrain_amplitude(affect);
  t.heights.resize(static_cast<std::size_t>(t.size * t.size));
  double weight_sum = 0.0;
  for (int o = 0; o < kNoiseOctaves; ++o) weight_sum += std::ldexp(1.0, -o);
  for (int y = 0; y < t.size; ++y) {
    for (int x = 0; x < t.size; ++x) {
      double n = 0.0;
      for (int o = 0; o < kNoiseOctaves; ++o) {
        const int spacing = kNoiseBaseSpacing >> o;
        const int ix = x / spacing;
        const int iy = y / spacing;
        const double fx = static_cast<double>(x % spacing) / spacing;
        const double fy = static_cast<double>(y % spacing) / spacing;
        const double v00 = lattice_value(seed, o, ix, iy);
        const double v10 = lattice_value(seed, o, ix + 1, iy);
        const double v01 = lattice_value(seed, o, ix, iy + 1);
        const double v11 = lattice_value(seed, o, ix + 1, iy + 1);
        const double top = v00 + (v10 - v00) * fx;
        const double bottom = v01 + (v11 - v01) * fx;
        n += std::ldexp(1.0, -o) * (top + (bottom - top) * fy);
      }
      t.height({x, y}) = t.amplitude_m * n / weight_sum;
    }
  }
  return t;
}

bool ObstacleField::contains(Cell c) const {
  return std::binary_search(blocked.begin(), blocked.end(), c);
}

double slope_penalty(double slope, const EnergyLevel& energy) {
  return 2.0 * std::max(0.0, slope) / (1.0 + 2.0 * energy.value);
}

double cell_distance_m(const Terrain& terrain, Cell a, Cell b) {
  return terrain.cell_m * std::hypot(a.x - b.x, a.y - b.y);
}

std::optional<double> step_cost(const Terrain& terrain, Cell from, Cell to,
                                const EnergyLevel& energy) {
  if (!terrain.contains(from) || !terrain.contains(to)) return std::nullopt;
  const double run = cell_distance_m(terrain, from, to);
  const double slope = (terrain.height(to) - terrain.height(from)) / run;
  if (std::abs(slope) > kMaxSlope) return std::nullopt;
  return run * (1.0 + slope_penalty(slope, energy));
}

std::optional<Route> find_route(const Terrain& terrain, Cell start, Cell goal,
                                const EnergyLevel& energy, const ObstacleField* obstacles) {
  auto blocked = [&](Cell c) { return obstacles != nullptr && obstacles->contains(c); };
  if (!terrain.contains(start) || !terrain.contains(goal) || blocked(start) || blocked(goal)) {
    return std::nullopt;
  }
  const int n = terrain.size * terrain.size;
  std::vector<double> g(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<char> closed(static_cast<std::size_t>(n), 0);

  struct Node {
    double f;
    int idx;
    bool operator>(const Node& o) const { return f != o.f ? f > o.f : idx > o.idx; }
  };
  std::priority_queue<Node, std::vector<Node>, std::greater<>> open;
  const int s = index_of(terrain, start);
  const int goal_idx = index_of(terrain, goal);
  g[static_cast<std::size_t>(s)] = 0.0;
  open.push({octile_m(terrain, start, goal), s});

  while (!open.empty()) {
    const auto [f, idx] = open.top();
    open.pop();
    if (closed[static_cast<std::size_t>(idx)]) continue;
    closed[static_cast<std::size_t>(idx)] = 1;
    if (idx == goal_idx) break;
    const Cell c = cell_of(terrain, idx);
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const Cell next{c.x + dx, c.y + dy};
        if (!terrain.contains(next) || blocked(next)) continue;
        const int ni = index_of(terrain, next);
        if (closed[static_cast<std::size_t>(ni)]) continue;
        const auto cost = step_cost(terrain, c, next, energy);
        if (!cost) continue;
        const double cand = g[static_cast<std::size_t>(idx)] + *cost +
                            kLineTieBreak * cross_track(start, goal, next);
        if (cand < g[static_cast<std::size_t>(ni)]) {
          g[static_cast<std::size_t>(ni)] = cand;
          parent[static_cast<std::size_t>(ni)] = idx;
          open.push({cand + octile_m(terrain, next, goal), ni});
        }
      }
    }
  }
  if (!closed[static_cast<std::size_t>(goal_idx)]) return std::nullopt;

  Route route;
  for (int idx = goal_idx; idx != -1; idx = parent[static_cast<std::size_t>(idx)]) {
    route.cells.push_back(cell_of(terrain, idx));
  }
  std::reverse(route.cells.begin(), route.cells.end());
  for (std::size_t i = 1; i < route.cells.size(); ++i) {
    route.cost += *step_cost(terrain, route.cells[i - 1], route.cells[i], energy);
  }
  return route;
}

std::optional<Route> plan_route(const Terrain& terrain, Cell start, Cell goal,
                                const EnergyLevel& energy, const ObstacleField* obstacles,
                                std::uint64_t seed) {
  const double dx = goal.x - start.x;
  const double dy = goal.y - start.y;
  const double len = std::hypot(dx, dy);
  if (len > 0.0) {
    SplitMix64 rng(seed);
    const double max_offset = std::min(kDetourCorridorCells / 2.0, len / 4.0);
    const double nx = -dy / len;
    const double ny = dx / len;
    for (int attempt = 0; attempt < 8; ++attempt) {
      const double u = rng.uniform(0.25, 0.75);
      const double off = rng.uniform(-max_offset, max_offset);
      const Cell detour = clamp_cell(
          terrain, {static_cast<int>(std::lround(start.x + u * dx + off * nx)),
                    static_cast<int>(std::lround(start.y + u * dy + off * ny))});
      if (detour == start || detour == goal) continue;
      if (obstacles != nullptr && obstacles->contains(detour)) continue;
      auto first = find_route(terrain, start, detour, energy, obstacles);
      if (!first) continue;
      auto second = find_route(terrain, detour, goal, energy, obstacles);
      if (!second) continue;
      first->cells.insert(first->cells.end(), second->cells.begin() + 1, second->cells.end());
      first->cost += second->cost;
      first->detour = detour;
      return first;
    }
  }
  return find_route(terrain, start, goal, energy, obstacles);
}

double agent_speed(const EnergyLevel& energy, AffectState affect) {
  return 0.8 + 1.2 * energy.value + 0.4 * std::max(0.0, affect.arousal);
}

std::optional<Path> plan_path(const Terrain& terrain, Cell start, Cell goal,
                              const EnergyLevel& energy, const ObstacleField* obstacles,
                              std::uint64_t seed, double speed_mps, double t0_s) {
  auto route = plan_route(terrain, start, goal, energy, obstacles, seed);
  if (!route) return std::nullopt;
  Path path{start, goal, route->detour, {}};
  double t = t0_s;
  path.waypoints.push_back({start, terrain.height(start), t, 0.0, false});
  for (std::size_t i = 1; i < route->cells.size(); ++i) {
    t += cell_distance_m(terrain, route->cells[i - 1], route->cells[i]) / speed_mps;
    path.waypoints.push_back({route->cells[i], terrain.height(route->cells[i]), t, speed_mps, false});
  }
  return path;
}

Cell position_at(const Path& path, double t_s) {
  Cell at = path.start;
  for (const auto& w : path.waypoints) {
    if (w.t_s > t_s) break;
    at = w.cell;
  }
  return at;
}

ObstacleField rock_band(const Terrain& terrain, Cell agent, Cell goal, double half_width_m,
                        double t_s) {
  ObstacleField band;
  band.spawn_time_s = t_s;
  const double dx = goal.x - agent.x;
  const double dy = goal.y - agent.y;
  const double len = std::hypot(dx, dy);
  if (len == 0.0) return band;
  const double ux = dx / len;
  const double uy = dy / len;
  for (int y = 0; y < terrain.size; ++y) {
    for (int x = 0; x < terrain.size; ++x) {
      const Cell c{x, y};
      if (c == agent || c == goal) continue;
      const double rx = (x - agent.x) * terrain.cell_m;
      const double ry = (y - agent.y) * terrain.cell_m;
      const double along = rx * ux + ry * uy;
      const double across = std::abs(-rx * uy + ry * ux);
      if (along >= kRockBandNearM && along <= kRockBandFarM && across <= half_width_m) {
        band.blocked.push_back(c);
      }
    }
  }
  std::sort(band.blocked.begin(), band.blocked.end());
  return band;
}

Placement place_event(const EventSpec& event, const Terrain& terrain, Cell agent, Cell heading_to,
                      Cell goal, double t_s) {
  switch (event.kind()) {
    case EventKind::Social: {
      const auto& social = std::get<SocialEvent>(event.payload);
      double hx = heading_to.x - agent.x;
      double hy = heading_to.y - agent.y;
      if (hx == 0.0 && hy == 0.0) {
        hx = goal.x - agent.x;
        hy = goal.y - agent.y;
      }
      if (hx == 0.0 && hy == 0.0) hx = 1.0;
      const double len = std::hypot(hx, hy);
      const double lateral = kDogLateralM / terrain.cell_m;
      const Cell spot = clamp_cell(
          terrain, {static_cast<int>(std::lround(agent.x - hy / len * lateral)),
                    static_cast<int>(std::lround(agent.y + hx / len * lateral))});
      return DogSpawn{spot, terrain.height(spot), social.partner_scale, social.kind};
    }
    case EventKind::Stress:
      return rock_band(terrain, agent, goal, kRockBandHalfWidthM, t_s);
    case EventKind::Wander:
    case EventKind::ExerciseBoost:
    case EventKind::Sleep:
      break;
  }
  return std::monostate{};
}

Continuation replan_on_block(const Terrain& terrain, std::span<const Cell> remaining, Cell position,
                             Cell goal, const EnergyLevel& energy, StressResponse response,
                             const ObstacleField& band) {
  const double spawn = band.spawn_time_s;
  const std::vector<Cell> unchanged(remaining.begin(), remaining.end());
  auto around = [&](const ObstacleField& field) -> std::optional<std::vector<Cell>> {
    auto r = find_route(terrain, position, goal, energy, &field);
    if (!r) return std::nullopt;
    return std::vector<Cell>(r->cells.begin() + 1, r->cells.end());
  };
  const ObstacleField half = shrink_band(band, position, goal);

  Continuation out;
  if (response.kind == StressKind::Threat) {
    out.resume_s = spawn + kThreatHoldS;
    out.phases.push_back({spawn, spawn + kThreatHoldS, band.blocked});
    if (!route_hits(remaining, half)) {
      out.route = unchanged;
      if (!half.empty()) out.phases.push_back({spawn + kThreatHoldS, kOpenEnded, half.blocked});
      return out;
    }
    if (auto r = around(half)) {
      out.route = std::move(*r);
      out.rerouted = true;
      out.phases.push_back({spawn + kThreatHoldS, kOpenEnded, half.blocked});
      return out;
    }
    // Still cut off: the half band lingers one more hold, then clears.
    out.phases.push_back({spawn + kThreatHoldS, spawn + 2 * kThreatHoldS, half.blocked});
    out.resume_s = spawn + 2 * kThreatHoldS;
    out.route = unchanged;
    return out;
  }

  out.resume_s = spawn;
  if (response.kind == StressKind::NoStressor || !route_hits(remaining, band)) {
    out.route = unchanged;
    if (response.kind != StressKind::NoStressor && !band.empty()) {
      out.phases.push_back({spawn, kOpenEnded, band.blocked});
    }
    return out;
  }
  if (auto r = around(band)) {
    out.route = std::move(*r);
    out.rerouted = true;
    out.phases.push_back({spawn, kOpenEnded, band.blocked});
    return out;
  }
  if (auto r = around(half)) {
    out.route = std::move(*r);
    out.rerouted = true;
    out.phases.push_back({spawn, kOpenEnded, half.blocked});
    return out;
  }
  out.phases.push_back({spawn, spawn + kThreatHoldS, half.blocked});
  out.resume_s = spawn + kThreatHoldS;
  out.route = unchanged;
  return out;
}

std::string_view to_string(AgentClip clip) {
  switch (clip) {
    case AgentClip::WalkHappy: return "walk_happy";
    case AgentClip::WalkSad: return "walk_sad";
    case AgentClip::RunEnergetic: return "run_energetic";
    case AgentClip::Trudge: return "trudge";
    case AgentClip::SitLonely: return "sit_lonely";
    case AgentClip::PlayBow: return "play_bow";
    case AgentClip::FightStance: return "fight_stance";
    case AgentClip::CowerScared: return "cower_scared";
    case AgentClip::BraveCharge: return "brave_charge";
    case AgentClip::FallAsleep: return "fall_asleep";
    case AgentClip::MoonIdle: return "moon_idle";
  }
  return "walk_happy";
}

std::optional<AgentClip> agent_clip_from_string(std::string_view text) {
  for (int i = 0; i <= static_cast<int>(AgentClip::MoonIdle); ++i) {
    const auto clip = static_cast<AgentClip>(i);
    if (to_string(clip) == text) return clip;
  }
  return std::nullopt;
}

AgentClip wander_clip(const ChapterPlan& chapter) {
  if (chapter.energy.fatigued) return AgentClip::Trudge;
  switch (chapter.quadrant) {
    case AffectQuadrant::Excited:
    case AffectQuadrant::Content:
      return AgentClip::WalkHappy;
    case AffectQuadrant::Depressed:
    case AffectQuadrant::Distressed:
      return AgentClip::WalkSad;
  }
  return AgentClip::WalkHappy;
}

namespace {

AgentClip social_clip(SocialKind kind) {
  switch (kind) {
    case SocialKind::Fight: return AgentClip::FightStance;
    case SocialKind::Rejection: return AgentClip::SitLonely;
    case SocialKind::None:
    case SocialKind::Neutral:
    case SocialKind::Happy:
      return AgentClip::PlayBow;
  }
  return AgentClip::PlayBow;
}

Millis to_ms_ceil(double t_s) { return static_cast<Millis>(std::ceil(t_s * 1000.0 - 1e-6)); }
Millis to_ms(double t_s) { return std::llround(t_s * 1000.0); }
double to_s(Millis ms) { return static_cast<double>(ms) / 1000.0; }

// Advances cell by cell along a route; a step is only taken if it completes
// before the current window closes.
class Walker {
 public:
  Walker(const Terrain& terrain, Path& path, Cell goal, std::vector<Cell> route, double t0_s,
         std::optional<double> halt_radius_m)
      : terrain_(terrain), path_(path), goal_(goal), route_(std::move(route)),
        halt_radius_m_(halt_radius_m), cell_(path.start), t_(t0_s) {
    path_.waypoints.push_back({cell_, terrain_.height(cell_), t_, 0.0, false});
  }

  Cell cell() const { return cell_; }
  bool halted() const { return halted_; }
  double last_move_s() const { return last_move_s_; }

  Cell heading() const { return next_ < route_.size() ? route_[next_] : goal_; }

  std::span<const Cell> remaining() const {
    return std::span<const Cell>(route_).subspan(next_);
  }

  void set_route(std::vector<Cell> route) {
    route_ = std::move(route);
    next_ = 0;
  }

  void move_until(double end_s, double speed) {
    while (next_ < route_.size()) {
      const Cell to = route_[next_];
      if (halt_radius_m_ && cell_distance_m(terrain_, to, goal_) < *halt_radius_m_) {
        halted_ = true;
        break;
      }
      const double dt = cell_distance_m(terrain_, cell_, to) / speed;
      if (t_ + dt > end_s + 1e-9) break;
      t_ += dt;
      cell_ = to;
      ++next_;
      last_move_s_ = t_;
      path_.waypoints.push_back({cell_, terrain_.height(cell_), t_, speed, false});
    }
    hold_until(end_s);
  }

  void hold_until(double end_s) {
    if (end_s - t_ >= 1e-3) {
      t_ = end_s;
      path_.waypoints.push_back({cell_, terrain_.height(cell_), t_, 0.0, true});
    }
  }

 private:
  const Terrain& terrain_;
  Path& path_;
  Cell goal_;
  std::vector<Cell> route_;
  std::size_t next_ = 0;
  std::optional<double> halt_radius_m_;
  Cell cell_;
  double t_;
  double last_move_s_ = -1.0;
  bool halted_ = false;
};

std::optional<ChapterWorld> simulate(const ChapterPlan& chapter, const ChapterStaging& staging,
                                     const Terrain& terrain, Cell start, Cell goal) {
  const auto detour_seed = derive_seed(staging.seed, static_cast<std::uint64_t>(SeedStream::Detour));
  auto route = plan_route(terrain, start, goal, chapter.energy, nullptr, detour_seed);
  if (!route) return std::nullopt;

  ChapterWorld world;
  world.terrain = terrain;
  world.speed_mps = agent_speed(chapter.energy, chapter.affect);
  world.path.start = start;
  world.path.goal = goal;
  world.path.detour = route->detour;
  const double speed = world.speed_mps;
  const Millis world_end =
      staging.t0 + chapter.duration_ms + (staging.final_chapter ? kEndingMs : 0);

  std::optional<double> halt;
  if (staging.final_chapter && !staging.reaches_moon) halt = kShortOfMoonM;
  Walker walker(terrain, world.path, goal,
                std::vector<Cell>(route->cells.begin() + 1, route->cells.end()), to_s(staging.t0),
                halt);

  const AgentClip walk = wander_clip(chapter);
  Millis cursor = staging.t0;
  for (const auto& event : chapter.events) {
    const Millis begin = cursor;
    const Millis end = cursor + event.duration_ms;
    cursor = end;
    switch (event.kind()) {
      case EventKind::Wander:
        walker.move_until(to_s(end), speed);
        world.agent.push_back({begin, end, walk, speed});
        break;
      case EventKind::ExerciseBoost:
        walker.move_until(to_s(end), speed);
        world.agent.push_back({begin, end, AgentClip::RunEnergetic, speed});
        break;
      case EventKind::Social: {
        const auto placed = place_event(event, terrain, walker.cell(), walker.heading(), goal,
                                        to_s(begin));
        world.dog = DogRecord{begin, end, std::get<DogSpawn>(placed)};
        walker.hold_until(to_s(end));
        world.agent.push_back(
            {begin, end, social_clip(std::get<SocialEvent>(event.payload).kind), 0.0});
        break;
      }
      case EventKind::Sleep: {
        const Millis mid = begin + event.duration_ms / 2;
        walker.move_until(to_s(mid), speed / 2.0);
        world.agent.push_back({begin, mid, AgentClip::Trudge, speed / 2.0});
        walker.hold_until(to_s(end));
        world.agent.push_back({mid, end, AgentClip::FallAsleep, 0.0});
        break;
      }
      case EventKind::Stress: {
        const auto response = std::get<StressEvent>(event.payload).response;
        const auto band = std::get<ObstacleField>(
            place_event(event, terrain, walker.cell(), walker.heading(), goal, to_s(begin)));
        auto cont = replan_on_block(terrain, walker.remaining(), walker.cell(), goal,
                                    chapter.energy, response, band);
        walker.set_route(std::move(cont.route));
        for (const auto& phase : cont.phases) {
          const Millis p0 = to_ms(phase.t0_s);
          const Millis p1 = std::isinf(phase.t1_s) ? world_end : std::min(world_end, to_ms(phase.t1_s));
          if (p1 > p0 && !phase.cells.empty()) world.rocks.push_back({p0, p1, phase.cells});
        }
        const Millis resume = std::min(end, to_ms(cont.resume_s));
        walker.hold_until(to_s(resume));
        if (response.kind == StressKind::Threat) {
          world.agent.push_back({begin, resume, AgentClip::CowerScared, 0.0});
          walker.move_until(to_s(end), speed);
          if (end > resume) world.agent.push_back({resume, end, AgentClip::Trudge, speed});
        } else {
          walker.move_until(to_s(end), speed);
          world.agent.push_back({begin, end, AgentClip::BraveCharge, speed});
        }
        break;
      }
    }
  }

  if (staging.final_chapter) {
    const Millis begin = cursor;
    const Millis end = cursor + kEndingMs;
    walker.move_until(to_s(end), speed);
    const bool arrived = walker.cell() == goal;
    const bool stopped = arrived || walker.halted();
    const AgentClip rest = arrived ? AgentClip::MoonIdle : AgentClip::SitLonely;
    const Millis settle = stopped ? std::max(begin, to_ms_ceil(walker.last_move_s())) : end;
    if (settle > begin) world.agent.push_back({begin, std::min(settle, end), walk, speed});
    if (settle < end) world.agent.push_back({settle, end, rest, 0.0});
  }
  world.reached_goal = walker.cell() == goal;
  return world;
}

// Cell gap to the gate the final chapter can cover with time to spare.
int reachable_gap_cells(const ChapterPlan& chapter, double speed) {
  double moving_s = kEndingMs / 1000.0;
  int windows = 1;
  for (const auto& e : chapter.events) {
    const double d = e.duration_ms / 1000.0;
    ++windows;
    switch (e.kind()) {
      case EventKind::Wander:
      case EventKind::ExerciseBoost:
        moving_s += d;
        break;
      case EventKind::Sleep:
        moving_s += d / 4.0;
        break;
      case EventKind::Stress:
        moving_s += std::get<StressEvent>(e.payload).response.kind == StressKind::Threat
                        ? d - 2 * kThreatHoldS
                        : d;
        break;
      case EventKind::Social:
        break;
    }
  }
  const double reach_m = speed * moving_s - windows * kCellM * kSqrt2;
  return static_cast<int>(std::floor(reach_m / 2.0 / kCellM));
}

}  // namespace

ChapterWorld build_chapter_world(const ChapterPlan& chapter, const ChapterStaging& staging) {
  const auto terrain_seed =
      derive_seed(staging.seed, static_cast<std::uint64_t>(SeedStream::Terrain));
  const double speed = agent_speed(chapter.energy, chapter.affect);
  for (std::uint64_t attempt = 0;; ++attempt) {
    const auto seed = attempt == 0 ? terrain_seed : derive_seed(terrain_seed, attempt);
    const Terrain terrain = generate_terrain(chapter.affect, seed);
    if (!(staging.final_chapter && staging.reaches_moon)) {
      if (auto world = simulate(chapter, staging, terrain, kChapterStart, kMoonGate)) return *world;
      continue;
    }
    // Move the start towards the gate until the walk arrives in time.
    int gap = std::clamp(reachable_gap_cells(chapter, speed), 1, kMoonGate.x - kChapterStart.x);
    while (true) {
      const Cell start{kMoonGate.x - gap, kMoonGate.y};
      if (auto world = simulate(chapter, staging, terrain, start, kMoonGate);
          world && world->reached_goal) {
        return *world;
      }
      if (gap == 1) break;
      gap /= 2;
    }
    if (auto world = simulate(chapter, staging, terrain, kMoonGate, kMoonGate)) return *world;
  }
}

}  // namespace moodfilm
