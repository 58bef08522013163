#pragma once

#include <algorithm>
#include <functional>
#include <span>
#include <vector>

#include "regret_route/error.hpp"
#include "regret_route/instance.hpp"
#include "regret_route/path.hpp"

namespace regret_route {

// An edge u -> v is tight when D_u + c_uv = D_v, i.e. it lies on a shortest
// root path. Tight edges form a transitively closed DAG.
inline bool is_tight(const Instance& inst, NodeId u, NodeId v) {
  return u != v && inst.root_dist(u) + inst.dist(u, v) == inst.root_dist(v);
}

// Minimum number of regret-0 rooted paths covering `targets`.
//
// Because the tight DAG is transitively closed, a minimum path cover with
// shared nodes equals a minimum vertex-disjoint chain cover of the targets,
// which is |targets| - (maximum matching on tight arcs between targets).
inline std::vector<RootedPath> zero_regret_cover(const Instance& inst, std::span<const NodeId> targets) {
  detail::check(inst.is_normalized(), ErrorKind::kInvalidInstance,
                "zero_regret_cover needs a normalized instance");
  std::vector<NodeId> nodes;
  for (NodeId v : targets) {
    detail::check(inst.valid_node(v), ErrorKind::kInvalidArgument, "target out of range");
    if (v != inst.root()) nodes.push_back(v);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  const int m = static_cast<int>(nodes.size());

  std::vector<std::vector<int>> succ(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (is_tight(inst, nodes[a], nodes[b])) succ[a].push_back(b);

  // Kuhn's augmenting paths; deterministic in node order.
  std::vector<int> match_next(m, -1), match_prev(m, -1);
  for (int a = 0; a < m; ++a) {
    std::vector<char> visited(m, 0);
    std::function<bool(int)> augment = [&](int u) {
      for (int b : succ[u]) {
        if (visited[b]) continue;
        visited[b] = 1;
        if (match_prev[b] < 0 || augment(match_prev[b])) {
          match_prev[b] = u;
          match_next[u] = b;
          return true;
        }
      }
      return false;
    };
    augment(a);
  }

  std::vector<RootedPath> out;
  for (int a = 0; a < m; ++a) {
    if (match_prev[a] >= 0) continue;
    std::vector<NodeId> seq{inst.root()};
    for (int cur = a; cur >= 0; cur = match_next[cur]) seq.push_back(nodes[cur]);
    out.emplace_back(inst, std::move(seq));
  }
  return out;
}

inline std::vector<RootedPath> zero_regret_cover(const Instance& inst) {
  return zero_regret_cover(inst, inst.customers());
}

}  // namespace regret_route
