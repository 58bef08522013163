#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "regret_route/error.hpp"
#include "regret_route/instance.hpp"
#include "regret_route/path.hpp"

namespace regret_route {

// Ladder instance plus its canonical fractional cover: 2h-1 regret-1 paths per
// copy, each with weight 1/h.
struct Ladder {
  Instance instance;
  int height = 0;
  int copies = 0;
  std::vector<RootedPath> paths;
  std::vector<double> weights;

  // Node id of u_level (side 0) or v_level (side 1) in `copy`, level in 1..2h-1.
  static NodeId node(int height, int copy, int level, int side) {
    return 1 + copy * 2 * (2 * height - 1) + 2 * (level - 1) + side;
  }
};

// `copies` disjoint ladders sharing the root. Each has two rails of 2h-1
// nodes with edges of cost h (the first one from the root) and unit rungs.
inline Ladder gen_ladder(int height, int copies) {
  using detail::check;
  check(height >= 1 && copies >= 1, ErrorKind::kInvalidArgument, "ladder needs h >= 1 and c >= 1");
  const int levels = 2 * height - 1;
  const int n = 1 + copies * 2 * levels;
  std::vector<WeightedEdge> edges;
  for (int c = 0; c < copies; ++c)
    for (int i = 1; i <= levels; ++i)
      for (int side = 0; side < 2; ++side) {
        const NodeId prev = i == 1 ? 0 : Ladder::node(height, c, i - 1, side);
        edges.push_back({prev, Ladder::node(height, c, i, side), height});
        if (side == 1) edges.push_back({Ladder::node(height, c, i, 0), Ladder::node(height, c, i, 1), 1});
      }
  Ladder out;
  out.instance = normalize_instance(n, 0, edges);
  out.height = height;
  out.copies = copies;
  for (int c = 0; c < copies; ++c)
    for (int i = 1; i <= levels; ++i) {
      const int first = i % 2 == 1 ? 0 : 1;
      std::vector<NodeId> seq{0};
      for (int j = 1; j <= i; ++j) seq.push_back(Ladder::node(height, c, j, first));
      for (int j = i; j <= levels; ++j) seq.push_back(Ladder::node(height, c, j, 1 - first));
      out.paths.emplace_back(out.instance, std::move(seq));
      out.weights.push_back(1.0 / height);
    }
  return out;
}

namespace detail {

// Uniform double in [0,1) from the top 53 bits, identical on every platform.
inline double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline Instance closed(std::vector<Cost> d, int n) {
  floyd_warshall(d, n);
  return Instance(std::move(d), n, 0);
}

}  // namespace detail

// Points uniform in the unit square; distances ceil(scale * euclidean), at
// least 1. Node 0 is the root.
inline Instance gen_euclidean(int n, std::uint64_t seed, double scale = 100.0) {
  detail::check(n >= 2, ErrorKind::kInvalidArgument, "generator needs n >= 2");
  detail::check(scale > 0.0, ErrorKind::kInvalidArgument, "scale must be positive");
  std::mt19937_64 rng(seed);
  std::vector<double> x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x[i] = detail::unit_double(rng);
    y[i] = detail::unit_double(rng);
  }
  std::vector<Cost> d(static_cast<std::size_t>(n) * n, 0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v)
        d[static_cast<std::size_t>(u) * n + v] =
            std::max<Cost>(1, static_cast<Cost>(std::ceil(scale * std::hypot(x[u] - x[v], y[u] - y[v]))));
  // Closure only repairs floating-point rounding at integer boundaries.
  return detail::closed(std::move(d), n);
}

// Symmetric integer weights in [1, max_weight], then shortest-path closure.
inline Instance gen_random_metric(int n, std::uint64_t seed, Cost max_weight = 20) {
  detail::check(n >= 2, ErrorKind::kInvalidArgument, "generator needs n >= 2");
  detail::check(max_weight >= 1, ErrorKind::kInvalidArgument, "max_weight must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Cost> d(static_cast<std::size_t>(n) * n, 0);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const Cost w = 1 + static_cast<Cost>(rng() % static_cast<std::uint64_t>(max_weight));
      d[static_cast<std::size_t>(u) * n + v] = w;
      d[static_cast<std::size_t>(v) * n + u] = w;
    }
  return detail::closed(std::move(d), n);
}

// Points on a line; the first one is the root. Positions must be distinct.
inline Instance gen_line(std::span<const Cost> positions) {
  const int n = static_cast<int>(positions.size());
  detail::check(n >= 2, ErrorKind::kInvalidArgument, "generator needs n >= 2");
  detail::check(std::set<Cost>(positions.begin(), positions.end()).size() == positions.size(),
                ErrorKind::kInvalidArgument, "line positions must be distinct");
  std::vector<Cost> d(static_cast<std::size_t>(n) * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) d[static_cast<std::size_t>(u) * n + v] = positions[u] > positions[v]
                                                                             ? positions[u] - positions[v]
                                                                             : positions[v] - positions[u];
  return Instance(std::move(d), n, 0);
}

inline Instance gen_line(std::initializer_list<Cost> positions) {
  return gen_line(std::span<const Cost>(positions.begin(), positions.size()));
}

// Root at distance 1 from each of `leaves` nodes, leaves pairwise at distance 2.
inline Instance gen_star(int leaves) {
  detail::check(leaves >= 1, ErrorKind::kInvalidArgument, "star needs at least one leaf");
  const int n = leaves + 1;
  std::vector<Cost> d(static_cast<std::size_t>(n) * n, 2);
  for (int v = 0; v < n; ++v) {
    d[static_cast<std::size_t>(v) * n + v] = 0;
    if (v != 0) d[v] = d[static_cast<std::size_t>(v) * n] = 1;
  }
  return Instance(std::move(d), n, 0);
}

}  // namespace regret_route
