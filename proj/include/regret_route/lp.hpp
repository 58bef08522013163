#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "regret_route/error.hpp"
#include "regret_route/held_karp.hpp"
#include "regret_route/instance.hpp"
#include "regret_route/path.hpp"
#include "regret_route/pricing.hpp"
#include "regret_route/simplex.hpp"

namespace regret_route {

// Which configuration LP a fractional solution belongs to.
//   kRvrp:   min sum x_P over paths of regret <= budget, cover every node.
//   kMinSum: min sum c^reg(P) x_P over all paths, cover, sum x_P <= k.
//   kDvrp:   min sum x_P over paths of length <= budget, cover every node.
enum class LpKind { kRvrp, kMinSum, kDvrp };

inline constexpr double kCoverageTolerance = 1e-7;
inline constexpr double kReducedCostTolerance = 1e-9;
inline constexpr double kSupportThreshold = 1e-12;

struct LpOptions {
  int exact_threshold = kDefaultExactThreshold;
  // One line per column-generation round when set.
  std::ostream* trace = nullptr;
};

struct FractionalSolution {
  LpKind kind = LpKind::kRvrp;
  Cost budget = 0;  // R or D; unused for kMinSum
  int max_paths = 0;  // k for kMinSum
  std::vector<RootedPath> columns;
  std::vector<double> weights;
  double value = 0.0;  // k* for kRvrp/kDvrp, nu* for kMinSum
  std::vector<double> duals;  // per node id, root entry 0
  double budget_dual = 0.0;   // z, kMinSum only
  bool certified = false;     // optimality proven by exact pricing
  int rounds = 0;
  std::vector<double> history;  // restricted-master value per round

  double path_mass() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }

  double coverage(NodeId v) const {
    double s = 0.0;
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i].contains(v)) s += weights[i];
    return s;
  }

  // Columns with positive weight only.
  FractionalSolution support() const {
    FractionalSolution out = *this;
    out.columns.clear();
    out.weights.clear();
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (weights[i] > kSupportThreshold) {
        out.columns.push_back(columns[i]);
        out.weights.push_back(weights[i]);
      }
    return out;
  }
};

struct RestrictedMasterResult {
  std::vector<double> weights;
  std::vector<double> duals;  // per node id
  double budget_dual = 0.0;
  double value = 0.0;
  int pivots = 0;
};

// Solves   min sum cost_P x_P  s.t.  every customer covered >= 1,
// optionally sum x_P <= max_paths, x >= 0   over the given columns, through
// its dual packing program (the slack basis is feasible since costs >= 0).
inline RestrictedMasterResult solve_restricted_master(const Instance& inst, const std::vector<RootedPath>& columns,
                                                      const std::vector<double>& costs,
                                                      std::optional<int> max_paths = std::nullopt) {
  using detail::check;
  check(columns.size() == costs.size(), ErrorKind::kInvalidArgument, "one cost per column required");
  const auto& cust = inst.customers();
  const int m = static_cast<int>(cust.size());
  std::vector<int> index(inst.num_nodes(), -1);
  for (int i = 0; i < m; ++i) index[cust[i]] = i;
  const bool capped = max_paths.has_value();
  const double path_limit = static_cast<double>(max_paths.value_or(0));
  const int vars = m + (capped ? 1 : 0);

  std::vector<std::vector<double>> a(columns.size(), std::vector<double>(vars, 0.0));
  for (std::size_t p = 0; p < columns.size(); ++p) {
    check(costs[p] >= 0.0, ErrorKind::kInvalidArgument, "column costs must be >= 0");
    for (NodeId v : columns[p].nodes())
      if (index[v] >= 0) a[p][index[v]] = 1.0;
    if (capped) a[p][m] = -1.0;
  }
  std::vector<double> c(vars, 1.0);
  if (capped) c[m] = -path_limit;

  const auto res = solve_packing_lp(a, costs, c);
  if (res.status == SimplexStatus::kUnbounded)
    detail::fail(ErrorKind::kInfeasible, "restricted master is infeasible: columns cannot cover every node" +
                                             std::string(max_paths ? " within the path limit" : ""));
  RestrictedMasterResult out;
  out.value = res.objective;
  out.pivots = res.pivots;
  out.weights.resize(columns.size());
  for (std::size_t p = 0; p < columns.size(); ++p) out.weights[p] = std::max(0.0, res.row_duals[p]);
  out.duals.assign(inst.num_nodes(), 0.0);
  for (int i = 0; i < m; ++i) out.duals[cust[i]] = std::max(0.0, res.primal[i]);
  if (max_paths) out.budget_dual = std::max(0.0, res.primal[m]);
  return out;
}

namespace detail {

inline std::vector<RootedPath> single_hop_columns(const Instance& inst) {
  std::vector<RootedPath> cols;
  for (NodeId v : inst.customers()) cols.emplace_back(inst, std::vector<NodeId>{inst.root(), v});
  return cols;
}

inline RootedPath by_root_distance(const Instance& inst) {
  std::vector<NodeId> order = inst.customers();
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return inst.root_dist(a) < inst.root_dist(b); });
  order.insert(order.begin(), inst.root());
  return RootedPath(inst, std::move(order));
}

inline double column_cost(LpKind kind, const RootedPath& p) {
  return kind == LpKind::kMinSum ? static_cast<double>(p.regret()) : 1.0;
}

inline FractionalSolution column_generation(const Instance& inst, LpKind kind, Cost budget, int max_paths,
                                            std::vector<RootedPath> columns, const LpOptions& opt) {
  check(inst.is_normalized(), ErrorKind::kInvalidInstance, "LP solving needs a normalized instance");
  FractionalSolution sol;
  sol.kind = kind;
  sol.budget = budget;
  sol.max_paths = max_paths;

  std::set<std::vector<NodeId>> known;
  std::vector<RootedPath> unique;
  for (auto& p : columns)
    if (known.insert(p.nodes()).second) unique.push_back(std::move(p));
  columns = std::move(unique);

  std::optional<HKTable> table;
  if (inst.num_customers() <= std::min(opt.exact_threshold, kHardExactLimit))
    table.emplace(inst, opt.exact_threshold);
  sol.certified = table.has_value();

  const bool capped = kind == LpKind::kMinSum;
  const int max_rounds = 10 * inst.num_nodes() * std::max<int>(1, static_cast<int>(columns.size())) + 10;
  RestrictedMasterResult rm;
  for (int round = 0;; ++round) {
    check(round < max_rounds, ErrorKind::kNumerical,
          "column generation exceeded " + std::to_string(max_rounds) + " rounds");
    std::vector<double> costs;
    for (const auto& p : columns) costs.push_back(column_cost(kind, p));
    rm = capped ? solve_restricted_master(inst, columns, costs, max_paths) : solve_restricted_master(inst, columns, costs);
    if (!sol.history.empty() && rm.value > sol.history.back() + 1e-7)
      fail(ErrorKind::kNumerical, "restricted master value increased between rounds");
    sol.history.push_back(rm.value);
    sol.rounds = round + 1;

    PricingQuery q{rm.duals, BudgetKind::kRegret, budget};
    if (kind == LpKind::kDvrp) q.kind = BudgetKind::kLength;
    if (kind == LpKind::kMinSum) q.kind = BudgetKind::kMinExcess;
    PricingResult priced = table ? exact_pricing(*table, q) : heuristic_pricing(inst, q);

    bool improving;
    double signal;
    if (kind == LpKind::kMinSum) {
      signal = priced.value + rm.budget_dual;  // reduced cost
      improving = signal < -kReducedCostTolerance;
    } else {
      signal = priced.value;  // collected dual reward
      improving = signal > 1.0 + kReducedCostTolerance;
    }
    if (opt.trace)
      *opt.trace << "round " << round << " value " << rm.value << " priced " << signal << " columns "
                 << columns.size() << "\n";
    if (!improving) break;
    if (!known.insert(priced.path.nodes()).second) {
      // A known column priced as improving: the master and the oracle disagree
      // numerically, so optimality is no longer certified.
      sol.certified = false;
      break;
    }
    columns.push_back(std::move(priced.path));
  }

  sol.columns = std::move(columns);
  sol.weights = rm.weights;
  sol.value = rm.value;
  sol.duals = rm.duals;
  sol.budget_dual = rm.budget_dual;
  return sol;
}

}  // namespace detail

// LP over rooted paths of regret <= R. Starts from the single-hop columns,
// which have regret 0, so it is always feasible.
inline FractionalSolution solve_rvrp_lp(const Instance& inst, Cost regret_bound, const LpOptions& opt = {}) {
  detail::check(regret_bound >= 0, ErrorKind::kInvalidArgument, "regret bound must be >= 0");
  return detail::column_generation(inst, LpKind::kRvrp, regret_bound, 0, detail::single_hop_columns(inst), opt);
}

// Min-sum LP with at most k paths. The initial column set adds one path through
// every node (in order of D_v) so that the restricted master is feasible for
// any k >= 1.
inline FractionalSolution solve_minsum_lp(const Instance& inst, int k, const LpOptions& opt = {}) {
  detail::check(k >= 1, ErrorKind::kInvalidArgument, "k must be >= 1");
  auto cols = detail::single_hop_columns(inst);
  if (inst.num_customers() > 0) cols.push_back(detail::by_root_distance(inst));
  return detail::column_generation(inst, LpKind::kMinSum, 0, k, std::move(cols), opt);
}

// LP over rooted paths of length <= D.
inline FractionalSolution solve_dvrp_lp(const Instance& inst, Cost max_length, const LpOptions& opt = {}) {
  for (NodeId v : inst.customers())
    if (inst.root_dist(v) > max_length)
      throw InfeasibleError(v, "node " + std::to_string(v) + " has D_v = " + std::to_string(inst.root_dist(v)) +
                                   " > D = " + std::to_string(max_length));
  return detail::column_generation(inst, LpKind::kDvrp, max_length, 0, detail::single_hop_columns(inst), opt);
}

// Replaces every support column by the two paths of preprocess_path_pair(),
// each receiving the column's full weight. Columns that already end at their
// farthest node are kept as they are. Identical node sequences are merged.
inline FractionalSolution preprocess_fractional(const Instance& inst, const FractionalSolution& sol) {
  std::map<std::vector<NodeId>, double> mass;
  std::vector<std::vector<NodeId>> order;
  auto add = [&](const RootedPath& p, double w) {
    if (p.is_trivial()) return;
    auto [it, inserted] = mass.emplace(p.nodes(), 0.0);
    if (inserted) order.push_back(p.nodes());
    it->second += w;
  };
  for (std::size_t i = 0; i < sol.columns.size(); ++i) {
    const double w = sol.weights[i];
    if (w <= kSupportThreshold) continue;
    const RootedPath& p = sol.columns[i];
    if (farthest_index(inst, p) + 1 == p.size()) {
      add(p, w);
      continue;
    }
    auto [first, second] = preprocess_path_pair(inst, p);
    add(first, w);
    add(second, w);
  }
  FractionalSolution out = sol;
  out.columns.clear();
  out.weights.clear();
  out.value = 0.0;
  for (const auto& seq : order) {
    out.columns.emplace_back(inst, seq);
    out.weights.push_back(mass[seq]);
    out.value += sol.kind == LpKind::kMinSum ? mass[seq] * static_cast<double>(out.columns.back().regret())
                                             : mass[seq];
  }
  return out;
}

}  // namespace regret_route
