#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "regret_route/error.hpp"

namespace regret_route {

using NodeId = int;
using Cost = std::int64_t;

inline constexpr Cost kInfiniteCost = std::numeric_limits<Cost>::max() / 4;

// A rooted instance over a symmetric integer metric. Node ids are 0..n-1 and
// the root may be any of them. D_v (root_dist) is cached.
//
// The constructor certifies the metric axioms; it does not require distinct
// nodes to be at positive distance. normalize_instance() produces instances
// where every off-diagonal distance is >= 1, which is what the solvers need.
class Instance {
 public:
  Instance() = default;

  Instance(std::vector<Cost> dist, int num_nodes, NodeId root,
           std::vector<std::vector<NodeId>> origin = {})
      : n_(num_nodes), root_(root), dist_(std::move(dist)), origin_(std::move(origin)) {
    using detail::check;
    check(n_ >= 1, ErrorKind::kInvalidInstance, "instance needs at least the root node");
    check(dist_.size() == static_cast<std::size_t>(n_) * n_, ErrorKind::kInvalidInstance,
          "distance matrix has wrong size");
    check(root_ >= 0 && root_ < n_, ErrorKind::kInvalidInstance, "root out of range");
    for (int u = 0; u < n_; ++u) {
      check(at(u, u) == 0, ErrorKind::kInvalidInstance,
            "nonzero diagonal at node " + std::to_string(u));
      for (int v = 0; v < n_; ++v) {
        check(at(u, v) >= 0, ErrorKind::kInvalidInstance, "negative distance");
        check(at(u, v) == at(v, u), ErrorKind::kInvalidInstance,
              "asymmetric distance between " + std::to_string(u) + " and " + std::to_string(v));
      }
    }
    for (int w = 0; w < n_; ++w)
      for (int u = 0; u < n_; ++u)
        for (int v = 0; v < n_; ++v)
          check(at(u, v) <= at(u, w) + at(w, v), ErrorKind::kInvalidInstance,
                "triangle inequality violated on (" + std::to_string(u) + "," +
                    std::to_string(w) + "," + std::to_string(v) + ")");
    root_dist_.resize(n_);
    normalized_ = true;
    for (int v = 0; v < n_; ++v) {
      root_dist_[v] = at(root_, v);
      if (v != root_) customers_.push_back(v);
      for (int u = 0; u < n_; ++u)
        if (u != v && at(u, v) == 0) normalized_ = false;
    }
    if (origin_.empty()) {
      origin_.resize(n_);
      for (int v = 0; v < n_; ++v) origin_[v] = {v};
    }
    check(origin_.size() == static_cast<std::size_t>(n_), ErrorKind::kInvalidInstance,
          "origin map has wrong size");
  }

  int num_nodes() const { return n_; }
  NodeId root() const { return root_; }
  Cost dist(NodeId u, NodeId v) const { return at(u, v); }
  Cost root_dist(NodeId v) const { return root_dist_[v]; }
  const std::vector<Cost>& root_dists() const { return root_dist_; }

  // Non-root nodes in ascending id order.
  const std::vector<NodeId>& customers() const { return customers_; }
  int num_customers() const { return static_cast<int>(customers_.size()); }

  bool valid_node(NodeId v) const { return v >= 0 && v < n_; }

  // True when all distinct nodes are at distance >= 1.
  bool is_normalized() const { return normalized_; }

  // Original node ids represented by node v (more than one after merging).
  const std::vector<NodeId>& origin(NodeId v) const { return origin_[v]; }
  const std::vector<std::vector<NodeId>>& origins() const { return origin_; }

  std::vector<std::vector<Cost>> matrix() const {
    std::vector<std::vector<Cost>> m(n_, std::vector<Cost>(n_));
    for (int u = 0; u < n_; ++u)
      for (int v = 0; v < n_; ++v) m[u][v] = at(u, v);
    return m;
  }

  Cost max_root_dist() const {
    Cost best = 0;
    for (Cost d : root_dist_) best = std::max(best, d);
    return best;
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.n_ == b.n_ && a.root_ == b.root_ && a.dist_ == b.dist_;
  }

 private:
  Cost at(NodeId u, NodeId v) const { return dist_[static_cast<std::size_t>(u) * n_ + v]; }

  int n_ = 0;
  NodeId root_ = 0;
  std::vector<Cost> dist_;
  std::vector<Cost> root_dist_;
  std::vector<NodeId> customers_;
  std::vector<std::vector<NodeId>> origin_;
  bool normalized_ = false;
};

namespace detail {

inline void floyd_warshall(std::vector<Cost>& d, int n) {
  for (int w = 0; w < n; ++w)
    for (int u = 0; u < n; ++u) {
      const Cost uw = d[static_cast<std::size_t>(u) * n + w];
      if (uw >= kInfiniteCost) continue;
      for (int v = 0; v < n; ++v) {
        const Cost wv = d[static_cast<std::size_t>(w) * n + v];
        Cost& uv = d[static_cast<std::size_t>(u) * n + v];
        if (wv < kInfiniteCost && uw + wv < uv) uv = uw + wv;
      }
    }
}

// Closure, zero-distance merging and relabelling of a square cost matrix in
// which kInfiniteCost marks a missing edge.
inline Instance close_and_merge(std::vector<Cost> d, int n, NodeId root) {
  check(root >= 0 && root < n, ErrorKind::kInvalidInstance, "root out of range");
  floyd_warshall(d, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      check(d[static_cast<std::size_t>(u) * n + v] < kInfiniteCost, ErrorKind::kInvalidInstance,
            "graph is disconnected: no path between " + std::to_string(u) + " and " +
                std::to_string(v));

  // Representative of each zero-distance group: the root for the root's group,
  // otherwise the lowest id.
  std::vector<NodeId> rep(n);
  for (int v = 0; v < n; ++v) {
    rep[v] = v;
    if (d[static_cast<std::size_t>(v) * n + root] == 0) {
      rep[v] = root;
      continue;
    }
    for (int u = 0; u < v; ++u)
      if (d[static_cast<std::size_t>(u) * n + v] == 0) {
        rep[v] = rep[u];
        break;
      }
  }
  std::vector<NodeId> new_id(n, -1);
  std::vector<NodeId> kept;
  for (int v = 0; v < n; ++v)
    if (rep[v] == v) {
      new_id[v] = static_cast<NodeId>(kept.size());
      kept.push_back(v);
    }
  const int m = static_cast<int>(kept.size());
  std::vector<std::vector<NodeId>> origin(m);
  for (int v = 0; v < n; ++v) origin[new_id[rep[v]]].push_back(v);
  // Representative first in every group.
  auto& root_group = origin[new_id[root]];
  std::stable_partition(root_group.begin(), root_group.end(), [&](NodeId v) { return v == root; });
  std::vector<Cost> out(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      out[static_cast<std::size_t>(a) * m + b] = d[static_cast<std::size_t>(kept[a]) * n + kept[b]];
  return Instance(std::move(out), m, new_id[root], std::move(origin));
}

}  // namespace detail

// Metric closure of a nonnegative symmetric integer matrix, with zero-distance
// node groups merged. An input that is already a strictly positive metric comes
// back unchanged.
inline Instance normalize_instance(const std::vector<std::vector<Cost>>& raw, NodeId root) {
  using detail::check;
  const int n = static_cast<int>(raw.size());
  check(n >= 1, ErrorKind::kInvalidInstance, "empty distance matrix");
  std::vector<Cost> d(static_cast<std::size_t>(n) * n);
  for (int u = 0; u < n; ++u) {
    check(static_cast<int>(raw[u].size()) == n, ErrorKind::kInvalidInstance,
          "distance matrix is not square");
    for (int v = 0; v < n; ++v) {
      check(raw[u][v] >= 0, ErrorKind::kInvalidInstance, "negative distance");
      check(raw[u][v] == raw[v][u], ErrorKind::kInvalidInstance,
            "asymmetric distance between " + std::to_string(u) + " and " + std::to_string(v));
      d[static_cast<std::size_t>(u) * n + v] = (u == v) ? 0 : raw[u][v];
    }
  }
  return detail::close_and_merge(std::move(d), n, root);
}

struct WeightedEdge {
  NodeId u;
  NodeId v;
  Cost cost;
};

// Shortest-path metric of an undirected graph given as an edge list.
inline Instance normalize_instance(int num_nodes, NodeId root, std::span<const WeightedEdge> edges) {
  using detail::check;
  check(num_nodes >= 1, ErrorKind::kInvalidInstance, "graph needs at least one node");
  std::vector<Cost> d(static_cast<std::size_t>(num_nodes) * num_nodes, kInfiniteCost);
  for (int v = 0; v < num_nodes; ++v) d[static_cast<std::size_t>(v) * num_nodes + v] = 0;
  for (const auto& e : edges) {
    check(e.u >= 0 && e.u < num_nodes && e.v >= 0 && e.v < num_nodes, ErrorKind::kInvalidInstance,
          "edge endpoint out of range");
    check(e.cost >= 0, ErrorKind::kInvalidInstance, "negative edge cost");
    auto& a = d[static_cast<std::size_t>(e.u) * num_nodes + e.v];
    auto& b = d[static_cast<std::size_t>(e.v) * num_nodes + e.u];
    a = std::min(a, e.cost);
    b = std::min(b, e.cost);
  }
  return detail::close_and_merge(std::move(d), num_nodes, root);
}

// The instance induced by the root plus `nodes`. In the sub-instance the root
// is node 0 and the remaining nodes keep their relative order.
struct SubInstance {
  Instance instance;
  std::vector<NodeId> to_parent;
};

inline SubInstance induced(const Instance& inst, std::span<const NodeId> nodes) {
  std::vector<NodeId> keep{inst.root()};
  for (NodeId v : nodes)
    if (v != inst.root()) keep.push_back(v);
  std::sort(keep.begin() + 1, keep.end());
  keep.erase(std::unique(keep.begin() + 1, keep.end()), keep.end());
  const int m = static_cast<int>(keep.size());
  std::vector<Cost> d(static_cast<std::size_t>(m) * m);
  std::vector<std::vector<NodeId>> origin(m);
  for (int a = 0; a < m; ++a) {
    detail::check(inst.valid_node(keep[a]), ErrorKind::kInvalidArgument, "node id out of range");
    origin[a] = inst.origin(keep[a]);
    for (int b = 0; b < m; ++b) d[static_cast<std::size_t>(a) * m + b] = inst.dist(keep[a], keep[b]);
  }
  return {Instance(std::move(d), m, 0, std::move(origin)), std::move(keep)};
}

}  // namespace regret_route
