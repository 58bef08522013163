#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "regret_route/error.hpp"
#include "regret_route/instance.hpp"

namespace regret_route {

// c^reg_uv = D_u + c_uv - D_v. Nonnegative and obeys the triangle inequality
// (an asymmetric metric).
inline Cost regret_distance(const Instance& inst, NodeId u, NodeId v) {
  return inst.root_dist(u) + inst.dist(u, v) - inst.root_dist(v);
}

// A simple path that starts at the root. Cost, regret and per-node prefix
// quantities are computed once at construction.
class RootedPath {
 public:
  RootedPath() = default;

  RootedPath(const Instance& inst, std::vector<NodeId> nodes) : nodes_(std::move(nodes)) {
    using detail::check;
    check(!nodes_.empty(), ErrorKind::kMalformedPath, "empty node sequence");
    check(nodes_.front() == inst.root(), ErrorKind::kMalformedPath, "path does not start at the root");
    std::vector<char> seen(inst.num_nodes(), 0);
    prefix_cost_.assign(nodes_.size(), 0);
    prefix_regret_.assign(nodes_.size(), 0);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const NodeId v = nodes_[i];
      check(inst.valid_node(v), ErrorKind::kMalformedPath, "node id " + std::to_string(v) + " out of range");
      check(!seen[v], ErrorKind::kMalformedPath, "node " + std::to_string(v) + " repeats");
      seen[v] = 1;
      if (i > 0) {
        prefix_cost_[i] = prefix_cost_[i - 1] + inst.dist(nodes_[i - 1], v);
        prefix_regret_[i] = prefix_regret_[i - 1] + regret_distance(inst, nodes_[i - 1], v);
      }
    }
    cost_ = prefix_cost_.back();
    regret_ = prefix_regret_.back();
  }

  static RootedPath trivial(const Instance& inst) { return RootedPath(inst, {inst.root()}); }

  const std::vector<NodeId>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  NodeId end() const { return nodes_.back(); }
  bool is_trivial() const { return nodes_.size() == 1; }

  Cost cost() const { return cost_; }
  Cost regret() const { return regret_; }
  // Visit time c_P(v) of the i-th node.
  const std::vector<Cost>& prefix_cost() const { return prefix_cost_; }
  // c^reg_P(v) of the i-th node; nondecreasing along the path.
  const std::vector<Cost>& prefix_regret() const { return prefix_regret_; }

  bool contains(NodeId v) const { return std::find(nodes_.begin(), nodes_.end(), v) != nodes_.end(); }

  friend bool operator==(const RootedPath& a, const RootedPath& b) { return a.nodes_ == b.nodes_; }
  friend auto operator<=>(const RootedPath& a, const RootedPath& b) { return a.nodes_ <=> b.nodes_; }

 private:
  std::vector<NodeId> nodes_;
  std::vector<Cost> prefix_cost_;
  std::vector<Cost> prefix_regret_;
  Cost cost_ = 0;
  Cost regret_ = 0;
};

// Sum of regret distances along the path; equals c(P) - D_end.
inline Cost path_regret(const Instance& inst, const RootedPath& path) {
  Cost total = 0;
  const auto& nodes = path.nodes();
  for (std::size_t i = 1; i < nodes.size(); ++i) total += regret_distance(inst, nodes[i - 1], nodes[i]);
  return total;
}

// Red/blue labels of a path's edges. `segments` lists the maximal red subpaths
// as inclusive node-index ranges, including trivial one-node segments, so that
// every node of the path lies in exactly one segment.
struct EdgeColoring {
  std::vector<bool> red;                                // red[i] labels edge (nodes[i], nodes[i+1])
  std::vector<std::pair<std::size_t, std::size_t>> segments;
  std::vector<std::size_t> segment_of;                  // per node index

  // The maximal red subpath around node index i, red(x,P).
  std::pair<std::size_t, std::size_t> red_interval(std::size_t i) const { return segments[segment_of[i]]; }
};

// Edge i is red iff max_{j<=i} D_{u_j} >= min_{j>i} D_{u_j}.
inline EdgeColoring classify_edges(const Instance& inst, const RootedPath& path) {
  const auto& nodes = path.nodes();
  const std::size_t len = nodes.size();
  EdgeColoring out;
  out.red.assign(len > 0 ? len - 1 : 0, false);
  std::vector<Cost> suffix_min(len + 1, kInfiniteCost);
  for (std::size_t i = len; i-- > 0;) suffix_min[i] = std::min(suffix_min[i + 1], inst.root_dist(nodes[i]));
  Cost prefix_max = -1;
  for (std::size_t i = 0; i + 1 < len; ++i) {
    prefix_max = std::max(prefix_max, inst.root_dist(nodes[i]));
    out.red[i] = prefix_max >= suffix_min[i + 1];
  }
  out.segment_of.assign(len, 0);
  std::size_t start = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const bool continues = i + 1 < len && out.red[i];
    out.segment_of[i] = out.segments.size();
    if (!continues) {
      out.segments.emplace_back(start, i);
      start = i + 1;
    }
  }
  return out;
}

inline Cost red_edge_cost(const Instance& inst, const RootedPath& path, const EdgeColoring& coloring) {
  Cost total = 0;
  for (std::size_t i = 0; i < coloring.red.size(); ++i)
    if (coloring.red[i]) total += inst.dist(path.nodes()[i], path.nodes()[i + 1]);
  return total;
}

// Breaks a path into rooted paths of regret <= bound: cut before the first node
// whose prefix regret exceeds each multiple of the bound and reconnect that
// node to the root. Yields at most max(ceil(regret/bound), 1) paths.
inline std::vector<RootedPath> split_by_regret(const Instance& inst, const RootedPath& path, Cost bound) {
  detail::check(bound >= 1, ErrorKind::kInvalidArgument,
                "split_by_regret needs a positive bound (use zero_regret_cover for 0)");
  if (path.regret() <= bound) return {path};
  const auto& nodes = path.nodes();
  const auto& pr = path.prefix_regret();
  const Cost pieces = (path.regret() + bound - 1) / bound;
  std::vector<std::size_t> starts{1};
  for (Cost level = 1; level < pieces; ++level) {
    std::size_t i = 1;
    while (pr[i] <= level * bound) ++i;
    if (i != starts.back()) starts.push_back(i);
  }
  std::vector<RootedPath> out;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    const std::size_t stop = (s + 1 < starts.size()) ? starts[s + 1] : nodes.size();
    std::vector<NodeId> seq{inst.root()};
    seq.insert(seq.end(), nodes.begin() + static_cast<std::ptrdiff_t>(starts[s]),
               nodes.begin() + static_cast<std::ptrdiff_t>(stop));
    if (seq.size() > 1) out.emplace_back(inst, std::move(seq));
  }
  return out;
}

// Index of the farthest node (max D_v, ties to the smallest id).
inline std::size_t farthest_index(const Instance& inst, const RootedPath& path) {
  const auto& nodes = path.nodes();
  std::size_t best = 0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const Cost d = inst.root_dist(nodes[i]), bd = inst.root_dist(nodes[best]);
    if (d > bd || (d == bd && nodes[i] < nodes[best])) best = i;
  }
  return best;
}

// Two paths ending at the farthest node v of P that jointly cover P: the r..v
// prefix of P, and r -> end(P) followed by the reversed end(P)..v portion.
// Neither has larger cost or regret than P.
inline std::pair<RootedPath, RootedPath> preprocess_path_pair(const Instance& inst, const RootedPath& path) {
  const auto& nodes = path.nodes();
  const std::size_t far = farthest_index(inst, path);
  std::vector<NodeId> first(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(far) + 1);
  std::vector<NodeId> second{inst.root()};
  for (std::size_t i = nodes.size(); i-- > far;) second.push_back(nodes[i]);
  if (far == 0) second.resize(1);
  return {RootedPath(inst, std::move(first)), RootedPath(inst, std::move(second))};
}

// Subsequence of P restricted to `keep` (root always retained).
inline RootedPath shortcut(const Instance& inst, const RootedPath& path, std::span<const NodeId> keep) {
  std::vector<char> mark(inst.num_nodes(), 0);
  for (NodeId v : keep) {
    detail::check(inst.valid_node(v) && path.contains(v), ErrorKind::kInvalidArgument,
                  "shortcut keep-set is not a subset of the path");
    mark[v] = 1;
  }
  std::vector<NodeId> seq{inst.root()};
  for (std::size_t i = 1; i < path.size(); ++i)
    if (mark[path.nodes()[i]]) seq.push_back(path.nodes()[i]);
  return RootedPath(inst, std::move(seq));
}

// Portion of P up to and including the last node with visit time <= limit.
inline RootedPath length_prefix(const Instance& inst, const RootedPath& path, Cost limit) {
  std::size_t stop = 0;
  while (stop + 1 < path.size() && path.prefix_cost()[stop + 1] <= limit) ++stop;
  return RootedPath(inst, std::vector<NodeId>(path.nodes().begin(),
                                              path.nodes().begin() + static_cast<std::ptrdiff_t>(stop) + 1));
}

// Maps a path of a sub-instance back to parent ids.
inline RootedPath lift(const Instance& parent, const SubInstance& sub, const RootedPath& path) {
  std::vector<NodeId> seq;
  seq.reserve(path.size());
  for (NodeId v : path.nodes()) seq.push_back(sub.to_parent[v]);
  return RootedPath(parent, std::move(seq));
}

}  // namespace regret_route
