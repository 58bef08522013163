#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "regret_route/error.hpp"
#include "regret_route/instance.hpp"
#include "regret_route/lp.hpp"
#include "regret_route/path.hpp"
#include "regret_route/rounding.hpp"
#include "regret_route/zero_regret.hpp"

namespace regret_route {

struct SolveOptions {
  LpOptions lp;
  double delta = kDefaultDelta;
};

// Output of a top-level solver. `parts` holds the diagnostics of every
// sub-solve in order; `log` carries human-readable progress lines.
struct SolveResult {
  std::vector<RootedPath> paths;
  double lp_value = 0.0;
  bool lp_certified = true;
  std::vector<RoundingDiagnostics> parts;
  std::vector<std::string> log;

  bool bounds_pass() const {
    return std::all_of(parts.begin(), parts.end(), [](const RoundingDiagnostics& d) { return d.all_pass(); });
  }
};

// LP + rounding for a uniform regret bound.
inline SolveResult solve_rvrp(const Instance& inst, Cost regret_bound, const SolveOptions& opt = {}) {
  detail::check(regret_bound >= 0, ErrorKind::kInvalidArgument, "regret bound must be >= 0");
  SolveResult out;
  if (inst.num_customers() == 0) return out;
  if (regret_bound == 0) {
    out.paths = zero_regret_cover(inst);
    out.lp_value = static_cast<double>(out.paths.size());
    RoundingDiagnostics d;
    detail::summarize(out.paths, d);
    out.parts.push_back(d);
    return out;
  }
  const FractionalSolution lp = solve_rvrp_lp(inst, regret_bound, opt.lp);
  out.lp_value = lp.value;
  out.lp_certified = lp.certified;
  RoundingResult r = round_rvrp(inst, regret_bound, lp, opt.delta);
  out.paths = std::move(r.paths);
  out.parts.push_back(std::move(r.diagnostics));
  return out;
}

// solve_rvrp on the sub-instance {r} u nodes, mapped back to parent ids.
inline SolveResult solve_rvrp_on(const Instance& inst, std::span<const NodeId> nodes, Cost regret_bound,
                                 const SolveOptions& opt = {}) {
  const SubInstance sub = induced(inst, nodes);
  SolveResult r = solve_rvrp(sub.instance, regret_bound, opt);
  for (auto& p : r.paths) p = lift(inst, sub, p);
  return r;
}

// R = num/den as an exact ratio.
struct Ratio {
  std::int64_t num = 1;
  std::int64_t den = 1;
};

// Parses "2", "1.25" or "5/4".
inline Ratio parse_ratio(const std::string& text) {
  using detail::check;
  Ratio r;
  try {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
      r.num = std::stoll(text.substr(0, slash));
      r.den = std::stoll(text.substr(slash + 1));
    } else {
      const auto dot = text.find('.');
      if (dot == std::string::npos) {
        r.num = std::stoll(text);
      } else {
        const std::string frac = text.substr(dot + 1);
        check(frac.size() <= 12, ErrorKind::kInvalidArgument, "too many decimals in ratio " + text);
        r.den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) r.den *= 10;
        r.num = std::stoll(text.substr(0, dot)) * r.den + (frac.empty() ? 0 : std::stoll(frac));
      }
    }
  } catch (const std::logic_error&) {
    detail::fail(ErrorKind::kInvalidArgument, "cannot parse ratio '" + text + "'");
  }
  check(r.den > 0 && r.num > 0, ErrorKind::kInvalidArgument, "ratio must be positive: " + text);
  const std::int64_t g = std::gcd(r.num, r.den);
  r.num /= g;
  r.den /= g;
  return r;
}

// Multiplicative regret: every node v must be reached by time R * D_v.
// Rings of geometrically growing D are solved with an additive bound of a
// quarter of their slack, and rings M apart are chained through the root.
inline SolveResult solve_multiplicative(const Instance& inst, Ratio ratio, const SolveOptions& opt = {}) {
  using detail::check;
  check(ratio.num >= ratio.den && ratio.den > 0, ErrorKind::kInvalidArgument, "multiplicative bound must be >= 1");
  check(inst.is_normalized(), ErrorKind::kInvalidInstance, "multiplicative solver needs a normalized instance");
  SolveResult out;
  if (inst.num_customers() == 0) return out;
  if (ratio.num == ratio.den) {
    out.paths = zero_regret_cover(inst);
    out.log.push_back("R = 1: zero-regret cover");
    return out;
  }
  const __int128 p = ratio.num, q = ratio.den;
  int m_step = 1;
  while ((__int128{1} << m_step) * (p - q) < 3 * (p - q) + 8 * q) ++m_step;

  std::map<int, std::vector<NodeId>> rings;
  for (NodeId v : inst.customers()) {
    int i = 0;
    while ((Cost{1} << i) <= inst.root_dist(v)) ++i;  // 2^{i-1} <= D_v < 2^i
    rings[i].push_back(v);
  }
  std::map<int, std::vector<RootedPath>> ring_paths;
  for (const auto& [i, nodes] : rings) {
    // floor(delta * 2^(i-2)) with delta = (p - q)/q.
    const __int128 b = ((p - q) << i) / (4 * q);
    const Cost bound = static_cast<Cost>(b);
    SolveResult r = solve_rvrp_on(inst, nodes, bound, opt);
    out.log.push_back("ring " + std::to_string(i) + ": " + std::to_string(nodes.size()) + " nodes, bound " +
                      std::to_string(bound) + ", " + std::to_string(r.paths.size()) + " paths");
    out.lp_value += r.lp_value;
    out.lp_certified = out.lp_certified && r.lp_certified;
    for (auto& d : r.parts) out.parts.push_back(std::move(d));
    ring_paths[i] = std::move(r.paths);
  }
  out.log.push_back("chaining rings with step " + std::to_string(m_step));
  for (int residue = 0; residue < m_step; ++residue) {
    std::size_t width = 0;
    for (const auto& [i, paths] : ring_paths)
      if (i % m_step == residue) width = std::max(width, paths.size());
    for (std::size_t j = 0; j < width; ++j) {
      std::vector<NodeId> seq{inst.root()};
      for (const auto& [i, paths] : ring_paths)
        if (i % m_step == residue && j < paths.size())
          seq.insert(seq.end(), paths[j].nodes().begin() + 1, paths[j].nodes().end());
      if (seq.size() > 1) out.paths.emplace_back(inst, std::move(seq));
    }
  }
  for (const auto& path : out.paths)
    for (std::size_t i = 1; i < path.size(); ++i) {
      const NodeId v = path.nodes()[i];
      check(q * path.prefix_cost()[i] <= p * inst.root_dist(v), ErrorKind::kInternal,
            "chained path reaches node " + std::to_string(v) + " too late");
    }
  return out;
}

inline void require_reachable(const Instance& inst, Cost max_length) {
  for (NodeId v : inst.customers())
    if (inst.root_dist(v) > max_length)
      throw InfeasibleError(v, "node " + std::to_string(v) + " has D_v = " + std::to_string(inst.root_dist(v)) +
                                   " > D = " + std::to_string(max_length));
}

// Index-by-index state of the distance-bounded DP.
struct DvrpDpState {
  int max_index = 0;
  std::vector<std::vector<NodeId>> sets;              // S_i
  std::vector<long long> count;                       // F(i)
  std::vector<std::vector<RootedPath>> collections;   // P(i)
  std::vector<int> choice;                            // k' per index, -1 at 0
};

// Covers S_i = {v : D - D_v < 2^i} for i = 0..ceil(log2 D). S_0 gets a
// zero-regret cover; S_i combines P(k) with the length-D prefixes of a
// regret-2^k solution on S_i, minimizing over k < i.
inline SolveResult solve_dvrp_dp(const Instance& inst, Cost max_length, const SolveOptions& opt = {},
                                 DvrpDpState* state_out = nullptr) {
  using detail::check;
  require_reachable(inst, max_length);
  SolveResult out;
  if (inst.num_customers() == 0) return out;
  DvrpDpState st;
  while ((Cost{1} << st.max_index) < max_length) ++st.max_index;
  const int top = st.max_index;
  for (int i = 0; i <= top; ++i) {
    std::vector<NodeId> s;
    for (NodeId v : inst.customers())
      if (max_length - inst.root_dist(v) < (Cost{1} << i)) s.push_back(v);
    st.sets.push_back(std::move(s));
  }
  st.count.assign(top + 1, 0);
  st.collections.resize(top + 1);
  st.choice.assign(top + 1, -1);
  {
    const SubInstance sub = induced(inst, st.sets[0]);
    for (const auto& p : zero_regret_cover(sub.instance)) st.collections[0].push_back(lift(inst, sub, p));
    st.count[0] = static_cast<long long>(st.collections[0].size());
  }
  // Q(i, k) depends only on (S_i, k); consecutive equal sets share it.
  std::map<std::pair<std::vector<NodeId>, int>, std::vector<RootedPath>> cache;
  for (int i = 1; i <= top; ++i) {
    for (int k = 0; k < i; ++k) {
      const auto key = std::make_pair(st.sets[i], k);
      auto it = cache.find(key);
      if (it == cache.end()) {
        SolveResult r = solve_rvrp_on(inst, st.sets[i], Cost{1} << k, opt);
        out.lp_certified = out.lp_certified && r.lp_certified;
        for (auto& d : r.parts) out.parts.push_back(std::move(d));
        it = cache.emplace(key, std::move(r.paths)).first;
      }
      std::vector<RootedPath> cand = st.collections[k];
      for (const auto& path : it->second) {
        RootedPath pre = length_prefix(inst, path, max_length);
        if (!pre.is_trivial()) cand.push_back(std::move(pre));
      }
      // Drop paths whose nodes all lie on other kept paths.
      std::vector<int> covered(inst.num_nodes(), 0);
      for (const auto& path : cand)
        for (std::size_t j = 1; j < path.size(); ++j) ++covered[path.nodes()[j]];
      std::vector<RootedPath> kept;
      for (auto& path : cand) {
        const bool redundant =
            std::all_of(path.nodes().begin() + 1, path.nodes().end(), [&](NodeId v) { return covered[v] >= 2; });
        if (redundant) {
          for (std::size_t j = 1; j < path.size(); ++j) --covered[path.nodes()[j]];
        } else {
          kept.push_back(std::move(path));
        }
      }
      cand = std::move(kept);
      const bool covers = std::all_of(st.sets[i].begin(), st.sets[i].end(), [&](NodeId v) { return covered[v] > 0; });
      check(covers, ErrorKind::kInternal,
            "P(" + std::to_string(i) + ") from k = " + std::to_string(k) + " misses a node of S_i");
      if (st.choice[i] < 0 || static_cast<long long>(cand.size()) < st.count[i]) {
        st.choice[i] = k;
        st.count[i] = static_cast<long long>(cand.size());
        st.collections[i] = std::move(cand);
      }
    }
    for (const auto& path : st.collections[i])
      check(path.cost() <= max_length, ErrorKind::kInternal, "DP path exceeds the length bound");
    out.log.push_back("F(" + std::to_string(i) + ") = " + std::to_string(st.count[i]) + " via k = " +
                      std::to_string(st.choice[i]) + ", |S_i| = " + std::to_string(st.sets[i].size()));
  }
  out.paths = st.collections[top];
  if (state_out) *state_out = std::move(st);
  return out;
}

// Baseline for the distance-bounded problem: bucket nodes by the slack
// D - D_v in powers of two and solve each bucket with its lower slack as the
// regret bound; nodes with zero slack get a zero-regret cover.
inline SolveResult solve_dvrp_rings(const Instance& inst, Cost max_length, const SolveOptions& opt = {}) {
  require_reachable(inst, max_length);
  SolveResult out;
  std::map<int, std::vector<NodeId>> buckets;
  for (NodeId v : inst.customers()) {
    const Cost slack = max_length - inst.root_dist(v);
    int j = -1;
    while (j < 62 && (Cost{1} << (j + 1)) <= slack) ++j;  // 2^j <= slack < 2^(j+1)
    buckets[j].push_back(v);
  }
  for (const auto& [j, nodes] : buckets) {
    const SubInstance sub = induced(inst, nodes);
    std::vector<RootedPath> paths;
    if (j < 0) {
      paths = zero_regret_cover(sub.instance);
    } else {
      SolveResult r = solve_rvrp(sub.instance, Cost{1} << j, opt);
      out.lp_certified = out.lp_certified && r.lp_certified;
      for (auto& d : r.parts) out.parts.push_back(std::move(d));
      paths = std::move(r.paths);
    }
    for (const auto& p : paths) out.paths.push_back(length_prefix(inst, lift(inst, sub, p), max_length));
  }
  return out;
}

struct DvrpPartition {
  double k_star = 0.0;                  // preprocessed path mass
  std::vector<NodeId> leaders;          // v_i
  std::vector<std::vector<NodeId>> parts;
  std::vector<double> leader_mass;      // sum of x*_P over paths ending at v_i
  std::vector<NodeId> mass_shortfalls;  // leaders below the expected ending mass
  std::vector<BoundCheck> checks;
};

// Furthest-first partition: v_i is the farthest unassigned node (ties to the
// smallest id) and V_i = B(v_i) minus earlier parts.
inline DvrpPartition partition_by_endpoint(const Instance& inst, const FractionalSolution& pre) {
  using detail::check;
  DvrpPartition part;
  part.k_star = pre.path_mass();
  check(part.k_star > 0.0, ErrorKind::kInvalidArgument, "empty fractional solution");
  const double threshold = 1.0 / (3.0 * part.k_star);
  std::vector<NodeId> order = inst.customers();
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return inst.root_dist(a) > inst.root_dist(b); });
  std::vector<char> assigned(inst.num_nodes(), 0);
  for (NodeId v : order) {
    if (assigned[v]) continue;
    const int index = static_cast<int>(part.leaders.size()) + 1;
    std::vector<double> mass(inst.num_nodes(), 0.0);
    double ending = 0.0;
    for (std::size_t c = 0; c < pre.columns.size(); ++c) {
      if (pre.weights[c] <= kSupportThreshold || pre.columns[c].end() != v) continue;
      ending += pre.weights[c];
      for (NodeId u : pre.columns[c].nodes()) mass[u] += pre.weights[c];
    }
    // The mass ending at v_i can fall below 1 - (i-1)/(3k*) when paths through
    // v_i end at non-leader nodes of earlier parts; such leaders are recorded
    // and still placed in their own part.
    if (ending <= 1.0 - (index - 1) * threshold - kCoverageTolerance) part.mass_shortfalls.push_back(v);
    std::vector<NodeId> members;
    for (NodeId u : inst.customers())
      if (!assigned[u] && (u == v || mass[u] >= threshold - kSupportThreshold)) members.push_back(u);
    for (NodeId u : members) assigned[u] = 1;
    part.leaders.push_back(v);
    part.parts.push_back(std::move(members));
    part.leader_mass.push_back(ending);
  }
  return part;
}

// LP rounding for the distance-bounded problem: solve the length-bounded LP,
// preprocess it so that every path ends at its farthest node, partition, and
// solve each part with regret bound D - D_{v_i}.
inline SolveResult solve_dvrp_lp_round(const Instance& inst, Cost max_length, const SolveOptions& opt = {},
                                       DvrpPartition* partition_out = nullptr) {
  using detail::check;
  require_reachable(inst, max_length);
  SolveResult out;
  if (inst.num_customers() == 0) return out;
  const FractionalSolution lp = solve_dvrp_lp(inst, max_length, opt.lp);
  out.lp_value = lp.value;
  out.lp_certified = lp.certified;
  const FractionalSolution pre = preprocess_fractional(inst, lp);
  DvrpPartition part = partition_by_endpoint(inst, pre);
  part.checks.push_back(make_check("parts < 3k*", 3.0 * part.k_star - 1e-9, static_cast<double>(part.parts.size())));
  out.log.push_back("k* = " + std::to_string(part.k_star) + ", parts = " + std::to_string(part.parts.size()) +
                    ", leaders below the ending-mass bound = " + std::to_string(part.mass_shortfalls.size()));
  for (std::size_t i = 0; i < part.parts.size(); ++i) {
    const Cost bound = max_length - inst.root_dist(part.leaders[i]);
    SolveResult r = solve_rvrp_on(inst, part.parts[i], bound, opt);
    out.lp_certified = out.lp_certified && r.lp_certified;
    for (auto& d : r.parts) out.parts.push_back(std::move(d));
    for (auto& p : r.paths) {
      check(p.cost() <= max_length, ErrorKind::kInternal, "part path exceeds the length bound");
      out.paths.push_back(std::move(p));
    }
  }
  if (partition_out) *partition_out = std::move(part);
  return out;
}

// Per-node regret bounds: nodes with bound 0 get a zero-regret cover, and
// class i = {2^(i-1) <= R_v < 2^i} is solved with the uniform bound 2^(i-1).
inline SolveResult solve_nonuniform(const Instance& inst, std::span<const Cost> bounds, const SolveOptions& opt = {}) {
  using detail::check;
  check(bounds.size() == static_cast<std::size_t>(inst.num_nodes()), ErrorKind::kInvalidArgument,
        "one regret bound per node id required");
  for (NodeId v : inst.customers())
    check(bounds[v] >= 0, ErrorKind::kInvalidArgument, "negative regret bound at node " + std::to_string(v));
  SolveResult out;
  std::map<int, std::vector<NodeId>> classes;
  for (NodeId v : inst.customers()) {
    int i = 0;
    while (i < 62 && (Cost{1} << i) <= bounds[v]) ++i;
    classes[i].push_back(v);
  }
  for (const auto& [i, nodes] : classes) {
    std::vector<RootedPath> paths;
    if (i == 0) {
      for (auto& p : zero_regret_cover(inst, nodes)) paths.push_back(std::move(p));
    } else {
      SolveResult r = solve_rvrp_on(inst, nodes, Cost{1} << (i - 1), opt);
      out.lp_value += r.lp_value;
      out.lp_certified = out.lp_certified && r.lp_certified;
      for (auto& d : r.parts) out.parts.push_back(std::move(d));
      paths = std::move(r.paths);
    }
    out.log.push_back("class " + std::to_string(i) + ": " + std::to_string(nodes.size()) + " nodes, " +
                      std::to_string(paths.size()) + " paths");
    for (auto& p : paths) out.paths.push_back(std::move(p));
  }
  return out;
}

struct KRvrpResult {
  SolveResult solve;
  Cost max_regret = 0;
  Cost total_regret = 0;
};

// Min-sum LP with at most k paths, rounded to at most k paths; the largest
// path regret is the min-max readout.
inline KRvrpResult solve_krvrp_minmax(const Instance& inst, int k, const SolveOptions& opt = {}) {
  detail::check(k >= 1, ErrorKind::kInvalidArgument, "k must be >= 1");
  KRvrpResult out;
  if (inst.num_customers() == 0) return out;
  const FractionalSolution lp = solve_minsum_lp(inst, k, opt.lp);
  out.solve.lp_value = lp.value;
  out.solve.lp_certified = lp.certified;
  RoundingResult r = round_minsum(inst, k, lp);
  out.max_regret = r.diagnostics.max_regret;
  out.total_regret = r.diagnostics.total_regret;
  out.solve.paths = std::move(r.paths);
  out.solve.parts.push_back(std::move(r.diagnostics));
  return out;
}

}  // namespace regret_route
