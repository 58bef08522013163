#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "regret_route/error.hpp"
#include "regret_route/instance.hpp"
#include "regret_route/path.hpp"
#include "regret_route/rounding.hpp"

namespace regret_route {

using Json = nlohmann::json;

// Instance file contents before normalization.
struct RawInstance {
  std::vector<std::vector<Cost>> dist;
  NodeId root = 0;
  Json meta = Json::object();
};

inline Json instance_to_json(const Instance& inst, const Json& meta = Json::object()) {
  return Json{{"n", inst.num_nodes()}, {"root", inst.root()}, {"dist", inst.matrix()}, {"meta", meta}};
}

inline RawInstance raw_instance_from_json(const Json& j) {
  using detail::check;
  RawInstance raw;
  try {
    const int n = j.at("n").get<int>();
    raw.root = j.at("root").get<NodeId>();
    raw.dist = j.at("dist").get<std::vector<std::vector<Cost>>>();
    if (j.contains("meta")) raw.meta = j.at("meta");
    check(static_cast<int>(raw.dist.size()) == n, ErrorKind::kInvalidInstance, "\"dist\" does not have n rows");
  } catch (const Json::exception& e) {
    detail::fail(ErrorKind::kInvalidInstance, std::string("malformed instance JSON: ") + e.what());
  }
  return raw;
}

// Parses and normalizes (closure, zero-distance merging).
inline Instance instance_from_json(const Json& j) {
  const RawInstance raw = raw_instance_from_json(j);
  return normalize_instance(raw.dist, raw.root);
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  detail::check(static_cast<bool>(in), ErrorKind::kInvalidArgument, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    detail::fail(ErrorKind::kInvalidArgument, path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  detail::check(static_cast<bool>(out), ErrorKind::kInvalidArgument, "cannot write " + path);
  out << j.dump(2) << "\n";
}

// Paths in the ids of the input before zero-distance merging. Nodes merged
// into the root are visited first on the first path.
inline std::vector<std::vector<NodeId>> expand_paths(const Instance& inst, const std::vector<RootedPath>& paths) {
  const auto& root_group = inst.origin(inst.root());
  const NodeId original_root = root_group.front();
  std::vector<std::vector<NodeId>> out;
  for (const auto& p : paths) {
    std::vector<NodeId> seq{original_root};
    for (std::size_t i = 1; i < p.size(); ++i)
      for (NodeId v : inst.origin(p.nodes()[i])) seq.push_back(v);
    out.push_back(std::move(seq));
  }
  if (root_group.size() > 1) {
    if (out.empty()) out.push_back({original_root});
    out.front().insert(out.front().begin() + 1, root_group.begin() + 1, root_group.end());
  }
  return out;
}

inline Json solution_to_json(const Instance& inst, const std::vector<RootedPath>& paths,
                             const Json& stats = Json::object()) {
  Json regrets = Json::array();
  for (const auto& p : paths) regrets.push_back(p.regret());
  return Json{{"paths", expand_paths(inst, paths)}, {"regrets", regrets}, {"stats", stats}};
}

inline std::vector<std::vector<NodeId>> paths_from_json(const Json& j) {
  try {
    return j.at("paths").get<std::vector<std::vector<NodeId>>>();
  } catch (const Json::exception& e) {
    detail::fail(ErrorKind::kMalformedPath, std::string("malformed solution JSON: ") + e.what());
  }
}

inline Json checks_to_json(const std::vector<BoundCheck>& checks) {
  Json out = Json::array();
  for (const auto& c : checks)
    out.push_back({{"name", c.name}, {"bound", c.bound}, {"observed", c.observed}, {"pass", c.pass}});
  return out;
}

inline Json diagnostics_to_json(const RoundingDiagnostics& d) {
  return Json{{"lp_value", d.lp_value},
              {"delta", d.delta},
              {"forest_cost", d.forest_cost},
              {"tour_cost", d.tour_cost},
              {"flow_cost", d.flow_cost},
              {"fractional_flow_cost", d.fractional_flow_cost},
              {"flow_value", d.flow_value},
              {"witnesses", d.witness_count},
              {"path_count", d.path_count},
              {"max_regret", d.max_regret},
              {"total_regret", d.total_regret},
              {"pre_split_regret", d.pre_split_regret},
              {"bound_checks", checks_to_json(d.bound_checks)}};
}

}  // namespace regret_route
