#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "regret_route/error.hpp"
#include "regret_route/instance.hpp"
#include "regret_route/path.hpp"

namespace regret_route {

inline constexpr int kDefaultExactThreshold = 16;
inline constexpr int kHardExactLimit = 22;

// Subset DP over the customers of an instance: cell (S, t) holds the minimum
// cost of a rooted path that visits exactly S and ends at t. Customers are
// indexed by their position in inst.customers().
class HKTable {
 public:
  using Mask = std::uint32_t;

  explicit HKTable(const Instance& inst, int threshold = kDefaultExactThreshold)
      : inst_(&inst), m_(inst.num_customers()) {
    detail::check(m_ <= threshold && m_ <= kHardExactLimit, ErrorKind::kOracleUnavailable,
                  "exact subset DP needs at most " + std::to_string(threshold) +
                      " non-root nodes, instance has " + std::to_string(m_));
    const auto& cust = inst.customers();
    table_.assign((std::size_t{1} << m_) * m_, kInfiniteCost);
    for (int t = 0; t < m_; ++t) cell(Mask{1} << t, t) = inst.root_dist(cust[t]);
    for (Mask mask = 1; mask < (Mask{1} << m_); ++mask) {
      for (int t = 0; t < m_; ++t) {
        if (!(mask & (Mask{1} << t))) continue;
        const Cost here = cell(mask, t);
        if (here >= kInfiniteCost) continue;
        for (int u = 0; u < m_; ++u) {
          if (mask & (Mask{1} << u)) continue;
          Cost& next = cell(mask | (Mask{1} << u), u);
          const Cost cand = here + inst.dist(cust[t], cust[u]);
          if (cand < next) next = cand;
        }
      }
    }
  }

  int num_customers() const { return m_; }
  Mask full_mask() const { return m_ == 0 ? 0 : static_cast<Mask>((std::uint64_t{1} << m_) - 1); }
  const Instance& instance() const { return *inst_; }
  NodeId node(int index) const { return inst_->customers()[index]; }

  // Minimum cost of a rooted path over exactly `mask` ending at customer index t.
  Cost at(Mask mask, int t) const { return table_[static_cast<std::size_t>(mask) * m_ + t]; }

  Cost min_regret(Mask mask) const {
    if (mask == 0) return 0;
    Cost best = kInfiniteCost;
    for (int t = 0; t < m_; ++t)
      if (mask & (Mask{1} << t)) best = std::min(best, at(mask, t) - inst_->root_dist(node(t)));
    return best;
  }

  Cost min_length(Mask mask) const {
    if (mask == 0) return 0;
    Cost best = kInfiniteCost;
    for (int t = 0; t < m_; ++t)
      if (mask & (Mask{1} << t)) best = std::min(best, at(mask, t));
    return best;
  }

  // Rebuilds an optimal path for (mask, t); predecessors are chosen by
  // smallest customer index so the result is deterministic.
  RootedPath path(Mask mask, int t) const {
    std::vector<NodeId> rev;
    while (mask != 0) {
      rev.push_back(node(t));
      const Mask rest = mask & ~(Mask{1} << t);
      if (rest == 0) break;
      const Cost target = at(mask, t);
      int pred = -1;
      for (int u = 0; u < m_ && pred < 0; ++u)
        if ((rest & (Mask{1} << u)) && at(rest, u) + inst_->dist(node(u), node(t)) == target) pred = u;
      detail::check(pred >= 0, ErrorKind::kInternal, "subset DP reconstruction failed");
      mask = rest;
      t = pred;
    }
    std::vector<NodeId> seq{inst_->root()};
    seq.insert(seq.end(), rev.rbegin(), rev.rend());
    return RootedPath(*inst_, std::move(seq));
  }

  Mask mask_of(const RootedPath& p) const {
    Mask mask = 0;
    const auto& cust = inst_->customers();
    for (NodeId v : p.nodes()) {
      auto it = std::lower_bound(cust.begin(), cust.end(), v);
      if (it != cust.end() && *it == v) mask |= Mask{1} << (it - cust.begin());
    }
    return mask;
  }

 private:
  Cost& cell(Mask mask, int t) { return table_[static_cast<std::size_t>(mask) * m_ + t]; }

  const Instance* inst_;
  int m_;
  std::vector<Cost> table_;
};

}  // namespace regret_route
