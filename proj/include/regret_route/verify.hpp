#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "regret_route/instance.hpp"
#include "regret_route/path.hpp"

// Solution checker that recomputes everything from the raw distance matrix.
// It does not use Instance or RootedPath bookkeeping.
namespace regret_route {

struct RvrpMode {
  Cost regret_bound = 0;
  std::optional<double> max_paths;
};
struct DvrpMode {
  Cost max_length = 0;
  std::optional<double> max_paths;
};
struct MultiplicativeMode {
  std::int64_t num = 1;  // R = num / den
  std::int64_t den = 1;
};
struct NonuniformMode {
  std::vector<Cost> bounds;  // per node id
};
struct KPathsMode {
  int k = 1;
};

using VerifyMode = std::variant<RvrpMode, DvrpMode, MultiplicativeMode, NonuniformMode, KPathsMode>;

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> failures;
  int path_count = 0;
  Cost max_regret = 0;
  Cost total_regret = 0;
  Cost max_length = 0;

  void fail(std::string what) {
    ok = false;
    failures.push_back(std::move(what));
  }
};

inline VerifyReport verify(const std::vector<std::vector<Cost>>& matrix, NodeId root,
                           const std::vector<std::vector<NodeId>>& paths, const VerifyMode& mode) {
  VerifyReport rep;
  const int n = static_cast<int>(matrix.size());
  if (root < 0 || root >= n) {
    rep.fail("root " + std::to_string(root) + " out of range");
    return rep;
  }
  // Shortest-path distances from the root, by Bellman-Ford style relaxation.
  std::vector<Cost> dist_root(n, std::numeric_limits<Cost>::max() / 4);
  dist_root[root] = 0;
  for (int round = 0; round < n; ++round)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (matrix[u][v] >= 0 && dist_root[u] + matrix[u][v] < dist_root[v]) dist_root[v] = dist_root[u] + matrix[u][v];

  rep.path_count = static_cast<int>(paths.size());
  std::vector<int> hits(n, 0);
  for (std::size_t p = 0; p < paths.size(); ++p) {
    const auto& seq = paths[p];
    const std::string tag = "path " + std::to_string(p);
    if (seq.empty() || seq.front() != root) {
      rep.fail(tag + " does not start at the root");
      continue;
    }
    std::vector<char> seen(n, 0);
    bool valid = true;
    for (NodeId v : seq) {
      if (v < 0 || v >= n) {
        rep.fail(tag + " has out-of-range node " + std::to_string(v));
        valid = false;
        break;
      }
      if (seen[v]) {
        rep.fail(tag + " repeats node " + std::to_string(v));
        valid = false;
        break;
      }
      seen[v] = 1;
    }
    if (!valid) continue;
    Cost time = 0;
    for (std::size_t i = 1; i < seq.size(); ++i) {
      const NodeId v = seq[i];
      ++hits[v];
      time += matrix[seq[i - 1]][v];
      const Cost node_regret = time - dist_root[v];
      if (const auto* m = std::get_if<MultiplicativeMode>(&mode)) {
        if (static_cast<__int128>(m->den) * time > static_cast<__int128>(m->num) * dist_root[v])
          rep.fail("node " + std::to_string(v) + " reached at time " + std::to_string(time) + " > R * D_v = " +
                   std::to_string(m->num) + "/" + std::to_string(m->den) + " * " + std::to_string(dist_root[v]));
      } else if (const auto* nu = std::get_if<NonuniformMode>(&mode)) {
        if (static_cast<std::size_t>(v) < nu->bounds.size() && node_regret > nu->bounds[v])
          rep.fail("node " + std::to_string(v) + " has regret " + std::to_string(node_regret) + " > its bound " +
                   std::to_string(nu->bounds[v]));
      }
    }
    const Cost regret = time - dist_root[seq.back()];
    rep.max_regret = std::max(rep.max_regret, regret);
    rep.total_regret += regret;
    rep.max_length = std::max(rep.max_length, time);
    if (const auto* r = std::get_if<RvrpMode>(&mode); r && regret > r->regret_bound)
      rep.fail(tag + " has regret " + std::to_string(regret) + " > R = " + std::to_string(r->regret_bound));
    if (const auto* d = std::get_if<DvrpMode>(&mode); d && time > d->max_length)
      rep.fail(tag + " has length " + std::to_string(time) + " > D = " + std::to_string(d->max_length));
  }
  for (NodeId v = 0; v < n; ++v)
    if (v != root && hits[v] == 0) rep.fail("node " + std::to_string(v) + " is not covered");

  std::optional<double> cap;
  if (const auto* r = std::get_if<RvrpMode>(&mode)) cap = r->max_paths;
  if (const auto* d = std::get_if<DvrpMode>(&mode)) cap = d->max_paths;
  if (const auto* k = std::get_if<KPathsMode>(&mode)) cap = k->k;
  if (cap && rep.path_count > *cap + 1e-9)
    rep.fail("path count " + std::to_string(rep.path_count) + " exceeds the allowed " + std::to_string(*cap));
  return rep;
}

inline VerifyReport verify(const Instance& inst, const std::vector<RootedPath>& paths, const VerifyMode& mode) {
  std::vector<std::vector<NodeId>> raw;
  for (const auto& p : paths) raw.push_back(p.nodes());
  return verify(inst.matrix(), inst.root(), raw, mode);
}

}  // namespace regret_route
