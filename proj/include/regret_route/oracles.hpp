#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "regret_route/error.hpp"
#include "regret_route/instance.hpp"
#include "regret_route/simplex.hpp"

// Exhaustive reference solvers for small instances. They share no code with
// the pricing tables or the column generation.
namespace regret_route {

inline constexpr int kIntegralOracleLimit = 12;
inline constexpr int kLpOracleLimit = 9;

namespace oracle_detail {

using Mask = std::uint32_t;
inline constexpr Cost kNone = std::numeric_limits<Cost>::max() / 4;

inline void require_size(const Instance& inst, int limit) {
  if (inst.num_customers() > limit)
    detail::fail(ErrorKind::kOracleUnavailable, "oracle refuses " + std::to_string(inst.num_customers()) +
                                                    " customers (limit " + std::to_string(limit) + ")");
}

// Per customer subset: cheapest rooted path through exactly that subset, and
// the least regret of such a path (minimized over end nodes).
struct SubsetCosts {
  std::vector<Cost> min_length;
  std::vector<Cost> min_regret;
};

inline SubsetCosts subset_costs(const Instance& inst) {
  const auto& cust = inst.customers();
  const int m = static_cast<int>(cust.size());
  const std::size_t full = std::size_t{1} << m;
  std::vector<Cost> best(full * std::max(m, 1), kNone);
  for (int t = 0; t < m; ++t) best[(std::size_t{1} << t) * m + t] = inst.root_dist(cust[t]);
  for (std::size_t mask = 1; mask < full; ++mask)
    for (int t = 0; t < m; ++t) {
      const Cost here = best[mask * m + t];
      if (here == kNone) continue;
      for (int u = 0; u < m; ++u) {
        if (mask & (std::size_t{1} << u)) continue;
        Cost& next = best[(mask | (std::size_t{1} << u)) * m + u];
        next = std::min(next, here + inst.dist(cust[t], cust[u]));
      }
    }
  SubsetCosts out;
  out.min_length.assign(full, kNone);
  out.min_regret.assign(full, kNone);
  out.min_length[0] = out.min_regret[0] = 0;
  for (std::size_t mask = 1; mask < full; ++mask)
    for (int t = 0; t < m; ++t) {
      const Cost c = best[mask * m + t];
      if (c == kNone) continue;
      out.min_length[mask] = std::min(out.min_length[mask], c);
      out.min_regret[mask] = std::min(out.min_regret[mask], c - inst.root_dist(cust[t]));
    }
  return out;
}

// Fewest feasible sets covering everything; feasibility is inherited by subsets.
inline int min_partition(const std::vector<char>& feasible, int m) {
  const std::size_t full = std::size_t{1} << m;
  constexpr int kInf = std::numeric_limits<int>::max() / 2;
  std::vector<int> dp(full, kInf);
  dp[0] = 0;
  for (std::size_t mask = 1; mask < full; ++mask) {
    const std::size_t low = mask & (~mask + 1);
    const std::size_t rest = mask ^ low;
    for (std::size_t sub = rest;; sub = (sub - 1) & rest) {
      const std::size_t part = sub | low;
      if (feasible[part] && dp[mask ^ part] + 1 < dp[mask]) dp[mask] = dp[mask ^ part] + 1;
      if (sub == 0) break;
    }
  }
  return dp[full - 1];
}

}  // namespace oracle_detail

// Minimum number of rooted paths of regret <= R covering every customer.
inline int brute_force_rvrp(const Instance& inst, Cost regret_bound, int limit = kIntegralOracleLimit) {
  oracle_detail::require_size(inst, limit);
  const int m = inst.num_customers();
  if (m == 0) return 0;
  const auto sc = oracle_detail::subset_costs(inst);
  std::vector<char> feasible(sc.min_regret.size());
  for (std::size_t s = 0; s < feasible.size(); ++s) feasible[s] = sc.min_regret[s] <= regret_bound;
  return oracle_detail::min_partition(feasible, m);
}

// Minimum number of rooted paths of length <= D covering every customer.
inline int brute_force_dvrp(const Instance& inst, Cost max_length, int limit = kIntegralOracleLimit) {
  oracle_detail::require_size(inst, limit);
  const int m = inst.num_customers();
  if (m == 0) return 0;
  for (NodeId v : inst.customers())
    if (inst.root_dist(v) > max_length)
      throw InfeasibleError(v, "node " + std::to_string(v) + " is farther than D from the root");
  const auto sc = oracle_detail::subset_costs(inst);
  std::vector<char> feasible(sc.min_length.size());
  for (std::size_t s = 0; s < feasible.size(); ++s) feasible[s] = sc.min_length[s] <= max_length;
  return oracle_detail::min_partition(feasible, m);
}

// Least R such that k rooted paths of regret <= R cover every customer.
// Binary search over the distinct subset regrets.
inline Cost brute_force_krvrp(const Instance& inst, int k, int limit = kIntegralOracleLimit) {
  detail::check(k >= 1, ErrorKind::kInvalidArgument, "k must be >= 1");
  oracle_detail::require_size(inst, limit);
  const int m = inst.num_customers();
  if (m == 0) return 0;
  const auto sc = oracle_detail::subset_costs(inst);
  std::vector<Cost> candidates(sc.min_regret.begin() + 1, sc.min_regret.end());
  candidates.push_back(0);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::size_t lo = 0, hi = candidates.size() - 1;  // the full set is always feasible at hi
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    std::vector<char> feasible(sc.min_regret.size());
    for (std::size_t s = 0; s < feasible.size(); ++s) feasible[s] = sc.min_regret[s] <= candidates[mid];
    if (oracle_detail::min_partition(feasible, m) <= k) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

enum class LpOracleKind { kRegret, kLength, kMinSum };

struct LpOracleResult {
  mpq_class value;
  int columns = 0;  // distinct node sets in the program

  double as_double() const { return value.get_d(); }
};

// Exact optimum of the path-covering LP over every simple rooted path,
// enumerated by depth-first search and solved in rational arithmetic.
//   kRegret: min sum x_P over paths with regret <= budget.
//   kLength: min sum x_P over paths with length <= budget.
//   kMinSum: min sum regret(P) x_P with sum x_P <= budget (= k).
inline LpOracleResult brute_force_lp(const Instance& inst, LpOracleKind kind, Cost budget,
                                     int limit = kLpOracleLimit) {
  using oracle_detail::Mask;
  oracle_detail::require_size(inst, limit);
  const auto& cust = inst.customers();
  const int m = static_cast<int>(cust.size());
  LpOracleResult out;
  if (m == 0) return out;
  if (kind == LpOracleKind::kLength)
    for (NodeId v : cust)
      if (inst.root_dist(v) > budget) throw InfeasibleError(v, "node farther than D from the root");
  if (kind == LpOracleKind::kMinSum) detail::check(budget >= 1, ErrorKind::kInvalidArgument, "k must be >= 1");

  // Cheapest regret seen per node set (regret for kRegret/kMinSum, length for kLength).
  const std::size_t full = std::size_t{1} << m;
  std::vector<Cost> best(full, oracle_detail::kNone);
  std::vector<int> stack;
  auto dfs = [&](auto&& self, int last, Mask mask, Cost length) -> void {
    const NodeId at = last < 0 ? inst.root() : cust[last];
    for (int u = 0; u < m; ++u) {
      if (mask & (Mask{1} << u)) continue;
      const Cost len = length + inst.dist(at, cust[u]);
      const Cost measure = kind == LpOracleKind::kLength ? len : len - inst.root_dist(cust[u]);
      // Prefix regret and length never decrease along a path.
      if (kind != LpOracleKind::kMinSum && measure > budget) continue;
      const Mask next = mask | (Mask{1} << u);
      best[next] = std::min(best[next], measure);
      self(self, u, next, len);
    }
  };
  dfs(dfs, -1, 0, 0);

  std::vector<Mask> sets;
  std::vector<mpq_class> costs;
  for (std::size_t s = 1; s < full; ++s) {
    if (best[s] == oracle_detail::kNone) continue;
    if (kind != LpOracleKind::kMinSum) {
      // Only inclusion-maximal sets matter when every column costs 1.
      bool maximal = true;
      for (int u = 0; u < m && maximal; ++u)
        if (!(s & (std::size_t{1} << u)) && best[s | (std::size_t{1} << u)] != oracle_detail::kNone) maximal = false;
      if (!maximal) continue;
      costs.emplace_back(1);
    } else {
      costs.emplace_back(static_cast<long>(best[s]));
    }
    sets.push_back(static_cast<Mask>(s));
  }
  // Dual packing program: max sum pi - k z  s.t.  pi(S) - z <= cost_S.
  const int vars = m + (kind == LpOracleKind::kMinSum ? 1 : 0);
  std::vector<std::vector<mpq_class>> a(sets.size(), std::vector<mpq_class>(vars, 0));
  for (std::size_t r = 0; r < sets.size(); ++r) {
    for (int u = 0; u < m; ++u)
      if (sets[r] & (Mask{1} << u)) a[r][u] = 1;
    if (kind == LpOracleKind::kMinSum) a[r][m] = -1;
  }
  std::vector<mpq_class> c(vars, 1);
  if (kind == LpOracleKind::kMinSum) c[m] = -static_cast<long>(budget);
  const auto res = solve_packing_lp(a, costs, c);
  detail::check(res.status == SimplexStatus::kOptimal, ErrorKind::kInfeasible, "enumerated LP is infeasible");
  out.value = res.objective;
  out.columns = static_cast<int>(sets.size());
  return out;
}

}  // namespace regret_route
