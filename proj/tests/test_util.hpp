#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "regret_route.hpp"

namespace rr_test {

using namespace regret_route;

// r=0, a=1, b=2 with c_ra=2, c_rb=3, c_ab=1.
inline Instance tri() { return Instance({0, 2, 3, 2, 0, 1, 3, 1, 0}, 3, 0); }

// r, a, b at positions 0, 1, 2.
inline Instance line3() { return gen_line({0, 1, 2}); }

inline Instance random_small(std::uint64_t seed, int customers) {
  return seed % 2 == 0 ? gen_euclidean(customers + 1, seed, 20.0) : gen_random_metric(customers + 1, seed, 12);
}

// Every simple rooted path, the trivial one included.
inline std::vector<std::vector<NodeId>> all_rooted_paths(const Instance& inst) {
  std::vector<std::vector<NodeId>> out;
  std::vector<NodeId> cur{inst.root()};
  std::vector<char> used(inst.num_nodes(), 0);
  used[inst.root()] = 1;
  std::function<void()> rec = [&] {
    out.push_back(cur);
    for (NodeId v : inst.customers()) {
      if (used[v]) continue;
      used[v] = 1;
      cur.push_back(v);
      rec();
      cur.pop_back();
      used[v] = 0;
    }
  };
  rec();
  return out;
}

inline Cost seq_cost(const Instance& inst, const std::vector<NodeId>& s) {
  Cost c = 0;
  for (std::size_t i = 1; i < s.size(); ++i) c += inst.dist(s[i - 1], s[i]);
  return c;
}

inline Cost seq_regret(const Instance& inst, const std::vector<NodeId>& s) {
  return seq_cost(inst, s) - inst.root_dist(s.back());
}

// Random simple rooted path through a random subset in random order.
inline RootedPath random_path(const Instance& inst, std::mt19937_64& rng) {
  std::vector<NodeId> c = inst.customers();
  std::shuffle(c.begin(), c.end(), rng);
  const std::size_t len = rng() % (c.size() + 1);
  std::vector<NodeId> seq{inst.root()};
  seq.insert(seq.end(), c.begin(), c.begin() + static_cast<std::ptrdiff_t>(len));
  return RootedPath(inst, std::move(seq));
}

inline std::vector<char> covered_by(const Instance& inst, const std::vector<RootedPath>& paths) {
  std::vector<char> cov(inst.num_nodes(), 0);
  for (const auto& p : paths)
    for (NodeId v : p.nodes()) cov[v] = 1;
  return cov;
}

}  // namespace rr_test
