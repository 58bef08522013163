#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "regret_route/error.hpp"
#include "regret_route/held_karp.hpp"
#include "regret_route/instance.hpp"
#include "regret_route/path.hpp"

namespace regret_route {

enum class BudgetKind {
  kRegret,     // c(P) - D_end <= budget, maximize reward
  kLength,     // c(P) <= budget, maximize reward
  kMinExcess,  // minimize c^reg(P) - reward(P), no budget
};

// Rewards are indexed by node id; the root's entry is ignored.
struct PricingQuery {
  std::vector<double> rewards;
  BudgetKind kind = BudgetKind::kRegret;
  Cost budget = 0;
};

// `value` is the collected reward for the budgeted kinds and the minimized
// c^reg(P) - reward(P) for kMinExcess.
struct PricingResult {
  RootedPath path;
  double value = 0.0;
};

namespace detail {

inline constexpr double kPricingTieTolerance = 1e-12;

inline double path_reward(const std::vector<double>& rewards, const RootedPath& p, NodeId root) {
  double total = 0.0;
  for (NodeId v : p.nodes())
    if (v != root) total += rewards[v];
  return total;
}

inline void check_query(const Instance& inst, const PricingQuery& q) {
  check(q.rewards.size() == static_cast<std::size_t>(inst.num_nodes()), ErrorKind::kInvalidArgument,
        "reward vector size does not match the instance");
  for (double r : q.rewards)
    check(std::isfinite(r) && r >= 0.0, ErrorKind::kInvalidArgument, "rewards must be finite and >= 0");
  check(q.budget >= 0, ErrorKind::kInvalidArgument, "budget must be >= 0");
}

// Maximizes score(mask, t) over all table cells plus the trivial path (score
// `trivial_score`). Ties: fewer nodes, then lexicographically smallest path.
template <typename Score>
PricingResult best_cell(const HKTable& table, double trivial_score, Score score) {
  const int m = table.num_customers();
  double best = trivial_score;
  int best_pop = 0;
  std::vector<std::pair<HKTable::Mask, int>> ties;
  for (HKTable::Mask mask = 1; m > 0 && mask <= table.full_mask(); ++mask) {
    const int pop = std::popcount(mask);
    for (int t = 0; t < m; ++t) {
      if (!(mask & (HKTable::Mask{1} << t))) continue;
      const std::optional<double> s = score(mask, t);
      if (!s) continue;
      if (*s > best + kPricingTieTolerance) {
        best = *s;
        best_pop = pop;
        ties.assign(1, {mask, t});
      } else if (*s >= best - kPricingTieTolerance) {
        if (pop < best_pop) {
          best_pop = pop;
          ties.assign(1, {mask, t});
        } else if (pop == best_pop && pop > 0) {
          ties.emplace_back(mask, t);
        }
      }
    }
  }
  if (best_pop == 0) return {RootedPath::trivial(table.instance()), trivial_score};
  std::optional<RootedPath> chosen;
  double chosen_score = best;
  for (auto [mask, t] : ties) {
    RootedPath p = table.path(mask, t);
    if (!chosen || p < *chosen) {
      chosen = std::move(p);
      chosen_score = *score(mask, t);
    }
  }
  return {std::move(*chosen), chosen_score};
}

template <typename Feasible>
PricingResult best_reward(const HKTable& table, const std::vector<double>& rewards, Feasible feasible) {
  const int m = table.num_customers();
  std::vector<double> mask_reward(std::size_t{1} << m, 0.0);
  for (HKTable::Mask mask = 1; m > 0 && mask <= table.full_mask(); ++mask) {
    const int low = std::countr_zero(mask);
    mask_reward[mask] = mask_reward[mask & (mask - 1)] + rewards[table.node(low)];
  }
  return best_cell(table, 0.0, [&](HKTable::Mask mask, int t) -> std::optional<double> {
    if (!feasible(mask, t)) return std::nullopt;
    return mask_reward[mask];
  });
}

}  // namespace detail

// Rooted path of regret <= budget maximizing total reward (exact).
inline PricingResult exact_orienteering(const HKTable& table, const PricingQuery& q) {
  const Instance& inst = table.instance();
  detail::check_query(inst, q);
  return detail::best_reward(table, q.rewards, [&](HKTable::Mask mask, int t) {
    return table.at(mask, t) - inst.root_dist(table.node(t)) <= q.budget;
  });
}

// Rooted path minimizing c^reg(P) - reward(P); the empty path scores 0.
inline PricingResult exact_min_excess_pricing(const HKTable& table, const std::vector<double>& rewards) {
  const Instance& inst = table.instance();
  detail::check_query(inst, {rewards, BudgetKind::kMinExcess, 0});
  const int m = table.num_customers();
  std::vector<double> mask_reward(std::size_t{1} << m, 0.0);
  for (HKTable::Mask mask = 1; m > 0 && mask <= table.full_mask(); ++mask)
    mask_reward[mask] = mask_reward[mask & (mask - 1)] + rewards[table.node(std::countr_zero(mask))];
  PricingResult r = detail::best_cell(table, 0.0, [&](HKTable::Mask mask, int t) -> std::optional<double> {
    const double regret = static_cast<double>(table.at(mask, t) - inst.root_dist(table.node(t)));
    return mask_reward[mask] - regret;
  });
  r.value = -r.value;
  return r;
}

// Rooted path of length <= budget maximizing total reward (exact).
inline PricingResult exact_length_budget(const HKTable& table, const std::vector<double>& rewards, Cost max_length) {
  detail::check_query(table.instance(), {rewards, BudgetKind::kLength, max_length});
  return detail::best_reward(table, rewards,
                             [&](HKTable::Mask mask, int t) { return table.at(mask, t) <= max_length; });
}

inline PricingResult exact_pricing(const HKTable& table, const PricingQuery& q) {
  switch (q.kind) {
    case BudgetKind::kRegret: return exact_orienteering(table, q);
    case BudgetKind::kLength: return exact_length_budget(table, q.rewards, q.budget);
    case BudgetKind::kMinExcess: return exact_min_excess_pricing(table, q.rewards);
  }
  detail::fail(ErrorKind::kInternal, "unknown budget kind");
}

// Greedy insertion with 2-opt repair. Never violates the budget but may miss
// the optimum; callers must treat LP optimality as unverified.
inline PricingResult heuristic_pricing(const Instance& inst, const PricingQuery& q) {
  detail::check_query(inst, q);
  const NodeId root = inst.root();
  auto seq_cost = [&](const std::vector<NodeId>& s) {
    Cost c = 0;
    for (std::size_t i = 1; i < s.size(); ++i) c += inst.dist(s[i - 1], s[i]);
    return c;
  };
  // Quantity the budget (or objective) constrains.
  auto measure = [&](const std::vector<NodeId>& s) {
    const Cost c = seq_cost(s);
    return q.kind == BudgetKind::kLength ? c : c - inst.root_dist(s.back());
  };
  auto feasible = [&](const std::vector<NodeId>& s) {
    return q.kind == BudgetKind::kMinExcess || measure(s) <= q.budget;
  };
  auto reward_of = [&](const std::vector<NodeId>& s) {
    double r = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i) r += q.rewards[s[i]];
    return r;
  };
  auto objective = [&](const std::vector<NodeId>& s) {
    return q.kind == BudgetKind::kMinExcess ? static_cast<double>(measure(s)) - reward_of(s) : -reward_of(s);
  };

  auto two_opt = [&](std::vector<NodeId>& s) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t i = 1; i + 1 < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
          std::vector<NodeId> t = s;
          std::reverse(t.begin() + static_cast<std::ptrdiff_t>(i), t.begin() + static_cast<std::ptrdiff_t>(j) + 1);
          if (measure(t) < measure(s)) {
            s = std::move(t);
            improved = true;
          }
        }
    }
  };

  std::vector<NodeId> seq{root};
  std::vector<char> used(inst.num_nodes(), 0);
  used[root] = 1;
  for (;;) {
    double best_gain = 0.0;
    std::vector<NodeId> best_seq;
    for (NodeId v : inst.customers()) {
      if (used[v] || q.rewards[v] <= 0.0) continue;
      for (std::size_t pos = 1; pos <= seq.size(); ++pos) {
        std::vector<NodeId> t = seq;
        t.insert(t.begin() + static_cast<std::ptrdiff_t>(pos), v);
        if (!feasible(t)) continue;
        const double delta = static_cast<double>(measure(t) - measure(seq));
        double gain;
        if (q.kind == BudgetKind::kMinExcess) {
          gain = q.rewards[v] - delta;
        } else {
          gain = q.rewards[v] / (1.0 + std::max(0.0, delta));
        }
        if (gain > best_gain + 1e-12) {
          best_gain = gain;
          best_seq = std::move(t);
        }
      }
    }
    if (best_seq.empty()) break;
    for (NodeId v : best_seq) used[v] = 1;
    seq = std::move(best_seq);
    two_opt(seq);
  }
  RootedPath path(inst, seq);
  const double value = q.kind == BudgetKind::kMinExcess ? objective(seq) : reward_of(seq);
  return {std::move(path), value};
}

}  // namespace regret_route
