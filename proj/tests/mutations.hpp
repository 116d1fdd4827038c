#pragma once

// One representative edit per documented validator mutation class, applied to
// a clean control-mode script.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace moodfilm::testing {

struct MutationClass {
  std::string code;
  std::function<void(nlohmann::json&)> apply;
};

inline std::vector<MutationClass> mutation_classes() {
  using nlohmann::json;
  return {
      {"unsupported_version", [](json& j) { j["version"] = "2"; }},
      {"missing_field", [](json& j) { j["chapters"][0].erase("palette"); }},
      {"wrong_type", [](json& j) { j["tracks"]["camera"][2]["t1"] = "soon"; }},
      {"bad_enum", [](json& j) { j["tracks"]["audio"][0]["sound"] = "kazoo"; }},
      {"camera_gap", [](json& j) { j["tracks"]["camera"].erase(3); }},
      {"camera_overlap",
       [](json& j) {
         auto& cam = j["tracks"]["camera"];
         cam[1]["t1"] = cam[2]["t0"].get<double>() + 1.0;
       }},
      {"camera_cue_too_short",
       [](json& j) {
         auto& cam = j["tracks"]["camera"];
         const double cut = cam[2]["t0"].get<double>() + 1.0;
         cam[2]["t1"] = cut;
         cam[3]["t0"] = cut;
       }},
      {"unsorted_track",
       [](json& j) {
         auto& agent = j["tracks"]["agent"];
         std::swap(agent[0], agent[1]);
       }},
      {"time_out_of_bounds",
       [](json& j) { j["tracks"]["audio"].back()["t1"] = j["total_duration_s"].get<double>() + 3; }},
      {"title_mode_mismatch",
       [](json& j) {
         j["tracks"]["titles"].push_back(
             {{"t0", 0}, {"t1", 5}, {"text", "hello"}, {"chapter", 0}});
       }},
  };
}

}  // namespace moodfilm::testing
