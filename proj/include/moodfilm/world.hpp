#pragma once

// Per-chapter world: value-noise terrain, A* routes with a seeded detour,
// event placement, rock-rain replanning and the timed agent walk.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "moodfilm/affect.hpp"
#include "moodfilm/story.hpp"

namespace moodfilm {

inline constexpr int kGridSize = 64;
inline constexpr double kCellM = 2.0;
inline constexpr int kNoiseOctaves = 4;
inline constexpr int kNoiseBaseSpacing = 16;  // cells between lattice points, octave 0
inline constexpr double kMaxSlope = 1.0;      // 45 degrees
inline constexpr int kDetourCorridorCells = 10;
inline constexpr double kRockBandNearM = 10.0;
inline constexpr double kRockBandFarM = 14.0;
inline constexpr double kRockBandHalfWidthM = 10.0;
inline constexpr double kThreatHoldS = 8.0;
inline constexpr double kDogLateralM = 6.0;
inline constexpr double kShortOfMoonM = 10.0;

struct Cell {
  int x = 0;
  int y = 0;
  auto operator<=>(const Cell&) const = default;
};

inline constexpr Cell kChapterStart{2, kGridSize / 2};
inline constexpr Cell kMoonGate{kGridSize - 3, kGridSize / 2};

struct Terrain {
  int size = kGridSize;
  double cell_m = kCellM;
  std::uint64_t seed = 0;
  double amplitude_m = 0.0;
  std::vector<double> heights;  // row-major, heights[y * size + x]

  bool contains(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < size && c.y < size; }
  double height(Cell c) const { return heights[static_cast<std::size_t>(c.y * size + c.x)]; }
  double& height(Cell c) { return heights[static_cast<std::size_t>(c.y * size + c.x)]; }

  static Terrain flat(double h = 0.0);
};

double terrain_amplitude(AffectState affect);
// Lattice value in [0, 1) for octave `octave` at lattice point (ix, iy).
double lattice_value(std::uint64_t seed, int octave, int ix, int iy);
Terrain generate_terrain(AffectState affect, std::uint64_t seed);

enum class ObstacleKind { RockRain };

struct ObstacleField {
  std::vector<Cell> blocked;  // sorted, unique
  double spawn_time_s = 0.0;
  ObstacleKind kind = ObstacleKind::RockRain;

  bool contains(Cell c) const;
  bool empty() const { return blocked.empty(); }
};

// 2 * max(0, slope) / (1 + 2 * energy): the uphill surcharge per meter.
double slope_penalty(double slope, const EnergyLevel& energy);
// Horizontal distance in meters between cell centers.
double cell_distance_m(const Terrain& terrain, Cell a, Cell b);
// nullopt when the step leaves the grid or is steeper than kMaxSlope.
std::optional<double> step_cost(const Terrain& terrain, Cell from, Cell to,
                                const EnergyLevel& energy);

struct Route {
  std::vector<Cell> cells;  // start .. goal inclusive
  double cost = 0.0;
  std::optional<Cell> detour;
};

// Least-cost 8-connected route. Equal-cost alternatives are broken toward the
// straight start-goal line.
std::optional<Route> find_route(const Terrain& terrain, Cell start, Cell goal,
                                const EnergyLevel& energy, const ObstacleField* obstacles = nullptr);

// find_route through one seeded detour cell inside the corridor around the
// direct line; falls back to the direct route if no detour leg exists.
std::optional<Route> plan_route(const Terrain& terrain, Cell start, Cell goal,
                                const EnergyLevel& energy, const ObstacleField* obstacles,
                                std::uint64_t seed);

double agent_speed(const EnergyLevel& energy, AffectState affect);

struct Waypoint {
  Cell cell;
  double z = 0.0;
  double t_s = 0.0;
  double speed_mps = 0.0;  // speed over the segment ending here; 0 for holds
  bool hold = false;
};

struct Path {
  Cell start;
  Cell goal;
  std::optional<Cell> detour;
  std::vector<Waypoint> waypoints;
};

// Times a route at constant speed from t0_s. nullopt = NoRoute.
std::optional<Path> plan_path(const Terrain& terrain, Cell start, Cell goal,
                              const EnergyLevel& energy, const ObstacleField* obstacles,
                              std::uint64_t seed, double speed_mps, double t0_s = 0.0);

// Last waypoint cell reached at or before t_s.
Cell position_at(const Path& path, double t_s);

struct DogSpawn {
  Cell cell;
  double z = 0.0;
  double scale = 1.0;
  SocialKind interaction = SocialKind::Neutral;
};

using Placement = std::variant<std::monostate, DogSpawn, ObstacleField>;

// Band of cells kRockBandNearM..kRockBandFarM ahead of `agent` towards `goal`,
// within `half_width_m` of that line. Never contains agent or goal.
ObstacleField rock_band(const Terrain& terrain, Cell agent, Cell goal, double half_width_m,
                        double t_s);

Placement place_event(const EventSpec& event, const Terrain& terrain, Cell agent, Cell heading_to,
                      Cell goal, double t_s);

inline constexpr double kOpenEnded = std::numeric_limits<double>::infinity();

struct BandPhase {
  double t0_s = 0.0;
  double t1_s = kOpenEnded;
  std::vector<Cell> cells;
};

struct Continuation {
  double resume_s = 0.0;
  std::vector<Cell> route;  // cells still to visit, excluding the current one
  std::vector<BandPhase> phases;
  bool rerouted = false;
};

Continuation replan_on_block(const Terrain& terrain, std::span<const Cell> remaining, Cell position,
                             Cell goal, const EnergyLevel& energy, StressResponse response,
                             const ObstacleField& band);

enum class AgentClip {
  WalkHappy,
  WalkSad,
  RunEnergetic,
  Trudge,
  SitLonely,
  PlayBow,
  FightStance,
  CowerScared,
  BraveCharge,
  FallAsleep,
  MoonIdle,
};

std::string_view to_string(AgentClip clip);
std::optional<AgentClip> agent_clip_from_string(std::string_view text);

struct AgentSegment {
  Millis t0 = 0;
  Millis t1 = 0;
  AgentClip clip = AgentClip::WalkHappy;
  double speed_mps = 0.0;
};

struct DogRecord {
  Millis t0 = 0;
  Millis t1 = 0;
  DogSpawn dog;
};

struct RockPhase {
  Millis t0 = 0;
  Millis t1 = 0;
  std::vector<Cell> cells;
};

struct ChapterWorld {
  Terrain terrain;
  Path path;
  double speed_mps = 0.0;
  std::vector<AgentSegment> agent;
  std::optional<DogRecord> dog;
  std::vector<RockPhase> rocks;
  bool reached_goal = false;
};

struct ChapterStaging {
  Millis t0 = 0;
  bool final_chapter = false;
  bool reaches_moon = false;
  std::uint64_t seed = 0;
};

// Lays out one chapter from its plan. The final chapter also covers the
// ending window and reaches the moon gate iff staging.reaches_moon.
ChapterWorld build_chapter_world(const ChapterPlan& chapter, const ChapterStaging& staging);

AgentClip wander_clip(const ChapterPlan& chapter);

}  // namespace moodfilm
