#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "regret_route/error.hpp"
#include "regret_route/instance.hpp"
#include "regret_route/lp.hpp"
#include "regret_route/min_cost_flow.hpp"
#include "regret_route/path.hpp"
#include "regret_route/rational.hpp"
#include "regret_route/zero_regret.hpp"

namespace regret_route {

// Threshold that minimizes 2/delta + 6/(1-delta).
inline const double kDefaultDelta = (std::sqrt(3.0) - 1.0) / 2.0;
inline constexpr double kThresholdTolerance = 1e-9;

struct BoundCheck {
  std::string name;
  double bound = 0.0;
  double observed = 0.0;
  bool pass = true;
};

inline BoundCheck make_check(std::string name, double bound, double observed) {
  const bool pass = observed <= bound + 1e-6 * std::max(1.0, std::abs(bound));
  return {std::move(name), bound, observed, pass};
}

struct RoundingDiagnostics {
  double lp_value = 0.0;
  double delta = 0.0;
  double forest_cost = 0.0;
  double tour_cost = 0.0;
  double fractional_flow_cost = 0.0;
  double flow_cost = 0.0;
  long long flow_value = 0;
  long long flow_cap = 0;
  int witness_count = 0;
  int component_count = 0;
  double pre_split_regret = 0.0;
  int path_count = 0;
  long long max_regret = 0;
  long long total_regret = 0;
  std::vector<BoundCheck> bound_checks;

  bool all_pass() const {
    return std::all_of(bound_checks.begin(), bound_checks.end(), [](const BoundCheck& c) { return c.pass; });
  }
};

// Support paths of a fractional solution together with their red-interval
// decompositions; answers tau(v, S) queries.
class SupportContext {
 public:
  SupportContext(const Instance& inst, const FractionalSolution& sol) : inst_(&inst) {
    for (std::size_t i = 0; i < sol.columns.size(); ++i) {
      if (sol.weights[i] <= kSupportThreshold) continue;
      paths_.push_back(sol.columns[i]);
      weights_.push_back(sol.weights[i]);
      colorings_.push_back(classify_edges(inst, sol.columns[i]));
    }
    position_.assign(paths_.size(), std::vector<int>(inst.num_nodes(), -1));
    for (std::size_t p = 0; p < paths_.size(); ++p)
      for (std::size_t i = 0; i < paths_[p].size(); ++i) position_[p][paths_[p].nodes()[i]] = static_cast<int>(i);
    mass_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  }

  const Instance& instance() const { return *inst_; }
  const std::vector<RootedPath>& paths() const { return paths_; }
  const std::vector<double>& weights() const { return weights_; }
  const EdgeColoring& coloring(std::size_t p) const { return colorings_[p]; }
  int position(std::size_t p, NodeId v) const { return position_[p][v]; }
  double mass() const { return mass_; }

  // Whether red(v, P) lies inside the set marked by `in_set`.
  bool red_inside(std::size_t p, NodeId v, const std::vector<char>& in_set) const {
    const int i = position_[p][v];
    if (i < 0) return false;
    auto [a, b] = colorings_[p].red_interval(static_cast<std::size_t>(i));
    for (std::size_t j = a; j <= b; ++j)
      if (!in_set[paths_[p].nodes()[j]]) return false;
    return true;
  }

  // tau(v, S): total weight of support paths P with red(v, P) inside S.
  double tau(NodeId v, const std::vector<char>& in_set) const {
    detail::check(in_set[v], ErrorKind::kInvalidArgument, "tau(v, S) needs v in S");
    double s = 0.0;
    for (std::size_t p = 0; p < paths_.size(); ++p)
      if (red_inside(p, v, in_set)) s += weights_[p];
    return s;
  }

  double tau(NodeId v, std::span<const NodeId> set) const { return tau(v, membership(set)); }

  // f(S) = 1 iff tau(v, S) < delta for every v in S.
  int cut_value(const std::vector<char>& in_set, double delta) const {
    bool any = false;
    for (NodeId v = 0; v < inst_->num_nodes(); ++v) {
      if (!in_set[v]) continue;
      any = true;
      if (tau(v, in_set) >= delta - kThresholdTolerance) return 0;
    }
    detail::check(any, ErrorKind::kInvalidArgument, "cut_value of the empty set");
    return 1;
  }

  int cut_value(std::span<const NodeId> set, double delta) const { return cut_value(membership(set), delta); }

  std::vector<char> membership(std::span<const NodeId> set) const {
    std::vector<char> in(inst_->num_nodes(), 0);
    for (NodeId v : set) in[v] = 1;
    return in;
  }

 private:
  const Instance* inst_;
  std::vector<RootedPath> paths_;
  std::vector<double> weights_;
  std::vector<EdgeColoring> colorings_;
  std::vector<std::vector<int>> position_;
  double mass_ = 0.0;
};

// Forest F, its components, one witness per non-root component and the
// doubled-tree tour of each component.
struct WitnessStructure {
  double delta = 0.0;
  std::vector<std::pair<NodeId, NodeId>> forest;
  std::vector<std::vector<NodeId>> components;  // ascending node ids
  std::vector<int> component_of;                // per node id
  int root_component = -1;
  std::vector<NodeId> witness;                  // per component, -1 for the root's
  std::vector<std::vector<NodeId>> tours;       // per component, starts at the witness (root)
  Rational dual_total;                          // sum of grown duals

  Cost forest_cost(const Instance& inst) const {
    Cost c = 0;
    for (auto [u, v] : forest) c += inst.dist(u, v);
    return c;
  }

  Cost tour_cost(const Instance& inst, std::size_t comp) const {
    const auto& t = tours[comp];
    if (t.size() < 2) return 0;
    Cost c = 0;
    for (std::size_t i = 1; i < t.size(); ++i) c += inst.dist(t[i - 1], t[i]);
    return c + inst.dist(t.back(), t.front());
  }

  Cost component_tree_cost(const Instance& inst, std::size_t comp) const {
    Cost c = 0;
    for (auto [u, v] : forest)
      if (component_of[u] == static_cast<int>(comp)) c += inst.dist(u, v);
    return c;
  }

  bool is_witness(NodeId v) const {
    const int c = component_of[v];
    return c >= 0 && witness[c] == v;
  }
};

namespace detail {

inline std::vector<std::vector<NodeId>> forest_components(int n, const std::vector<std::pair<NodeId, NodeId>>& edges,
                                                          std::vector<int>& label) {
  std::vector<std::vector<NodeId>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  label.assign(n, -1);
  std::vector<std::vector<NodeId>> comps;
  for (NodeId s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    const int id = static_cast<int>(comps.size());
    comps.emplace_back();
    std::vector<NodeId> stack{s};
    label[s] = id;
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      comps[id].push_back(u);
      for (NodeId w : adj[u])
        if (label[w] < 0) {
          label[w] = id;
          stack.push_back(w);
        }
    }
    std::sort(comps[id].begin(), comps[id].end());
  }
  return comps;
}

// Preorder walk of the tree on `comp` from `start`, children by ascending id.
inline std::vector<NodeId> tree_preorder(int n, const std::vector<std::pair<NodeId, NodeId>>& edges,
                                         const std::vector<int>& label, int comp, NodeId start) {
  std::vector<std::vector<NodeId>> adj(n);
  for (auto [u, v] : edges)
    if (label[u] == comp) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<NodeId> order;
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{start};
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    if (seen[u]) continue;
    seen[u] = 1;
    order.push_back(u);
    for (auto it = adj[u].rbegin(); it != adj[u].rend(); ++it)
      if (!seen[*it]) stack.push_back(*it);
  }
  return order;
}

}  // namespace detail

// Primal-dual forest for the downwards-monotone requirement f defined by the
// support paths: grow duals uniformly on active components, join components
// along the first edge to go tight (ties in lexicographic edge order), stop when
// nothing is active, then drop edges in reverse order of addition while every
// component stays inactive.
inline WitnessStructure build_forest(const SupportContext& ctx, double delta) {
  using detail::check;
  check(delta > 0.0 && delta < 1.0, ErrorKind::kInvalidArgument, "threshold must lie in (0,1)");
  const Instance& inst = ctx.instance();
  const int n = inst.num_nodes();
  WitnessStructure ws;
  ws.delta = delta;

  std::vector<int> label(n);
  std::iota(label.begin(), label.end(), 0);
  auto members = [&](int lab) {
    std::vector<char> in(n, 0);
    for (NodeId v = 0; v < n; ++v) in[v] = label[v] == lab;
    return in;
  };
  std::vector<char> active(n, 0);
  for (NodeId v = 0; v < n; ++v) active[v] = static_cast<char>(ctx.cut_value(members(v), delta));

  std::vector<Rational> load(n);
  std::vector<std::pair<NodeId, NodeId>> added;
  for (;;) {
    int active_count = 0;
    {
      std::vector<char> counted(n, 0);
      for (NodeId v = 0; v < n; ++v)
        if (active[label[v]] && !counted[label[v]]) {
          counted[label[v]] = 1;
          ++active_count;
        }
    }
    if (active_count == 0) break;
    int bu = -1, bv = -1;
    Rational best;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v) {
        if (label[u] == label[v]) continue;
        const int rate = active[label[u]] + active[label[v]];
        if (rate == 0) continue;
        const Rational slack = (Rational(inst.dist(u, v)) - load[u] - load[v]) / Rational(rate);
        if (bu < 0 || slack < best) {
          bu = u;
          bv = v;
          best = slack;
        }
      }
    check(bu >= 0, ErrorKind::kInternal, "active component with no outgoing edge");
    for (NodeId v = 0; v < n; ++v)
      if (active[label[v]]) load[v] += best;
    ws.dual_total += best * Rational(active_count);
    added.emplace_back(bu, bv);
    const int keep = label[bu], gone = label[bv];
    for (NodeId v = 0; v < n; ++v)
      if (label[v] == gone) label[v] = keep;
    active[keep] = static_cast<char>(ctx.cut_value(members(keep), delta));
  }

  std::vector<std::pair<NodeId, NodeId>> forest = added;
  for (std::size_t i = added.size(); i-- > 0;) {
    std::vector<std::pair<NodeId, NodeId>> trial;
    for (const auto& e : forest)
      if (e != added[i]) trial.push_back(e);
    std::vector<int> lab;
    detail::forest_components(n, trial, lab);
    const int cu = lab[added[i].first], cv = lab[added[i].second];
    std::vector<char> in_u(n, 0), in_v(n, 0);
    for (NodeId v = 0; v < n; ++v) {
      in_u[v] = lab[v] == cu;
      in_v[v] = lab[v] == cv;
    }
    if (ctx.cut_value(in_u, delta) == 0 && ctx.cut_value(in_v, delta) == 0) forest = std::move(trial);
  }
  ws.forest = forest;
  ws.components = detail::forest_components(n, forest, ws.component_of);
  ws.root_component = ws.component_of[inst.root()];
  ws.witness.assign(ws.components.size(), -1);
  ws.tours.resize(ws.components.size());
  for (std::size_t c = 0; c < ws.components.size(); ++c) {
    NodeId start = inst.root();
    if (static_cast<int>(c) != ws.root_component) {
      const auto in = ctx.membership(ws.components[c]);
      for (NodeId v : ws.components[c])
        if (ctx.tau(v, in) >= delta - kThresholdTolerance) {
          ws.witness[c] = v;
          break;
        }
      check(ws.witness[c] >= 0, ErrorKind::kInternal,
            "forest component " + std::to_string(c) + " is still active (no witness)");
      start = ws.witness[c];
    }
    ws.tours[c] = detail::tree_preorder(n, forest, ws.component_of, static_cast<int>(c), start);
  }
  return ws;
}

// phi(P): the witnesses w on P whose red interval lies inside Z_w, in path order.
inline RootedPath shortcut_to_witnesses(const SupportContext& ctx, const WitnessStructure& ws, std::size_t p) {
  const Instance& inst = ctx.instance();
  const RootedPath& path = ctx.paths()[p];
  std::vector<NodeId> keep;
  for (NodeId v : path.nodes()) {
    if (v == inst.root() || !ws.is_witness(v)) continue;
    if (ctx.red_inside(p, v, ctx.membership(ws.components[ws.component_of[v]]))) keep.push_back(v);
  }
  return shortcut(inst, path, keep);
}

struct DagArc {
  NodeId from;
  NodeId to;
  double flow;
};

// Directed union of the shortcut paths with the fractional flow z they carry.
struct ShortcutDag {
  std::vector<RootedPath> paths;  // distinct nontrivial phi(P)
  std::vector<double> weights;
  std::vector<DagArc> arcs;

  double in_flow(NodeId v) const {
    double s = 0.0;
    for (const auto& a : arcs)
      if (a.to == v) s += a.flow;
    return s;
  }

  double regret_cost(const Instance& inst) const {
    double s = 0.0;
    for (const auto& a : arcs) s += a.flow * static_cast<double>(regret_distance(inst, a.from, a.to));
    return s;
  }

  // Every arc strictly increases D, which also makes the digraph acyclic.
  bool distance_increasing(const Instance& inst) const {
    return std::all_of(arcs.begin(), arcs.end(),
                       [&](const DagArc& a) { return inst.root_dist(a.from) < inst.root_dist(a.to); });
  }
};

inline ShortcutDag build_shortcut_dag(const SupportContext& ctx, const WitnessStructure& ws) {
  std::map<std::vector<NodeId>, double> merged;
  for (std::size_t p = 0; p < ctx.paths().size(); ++p) {
    RootedPath phi = shortcut_to_witnesses(ctx, ws, p);
    if (!phi.is_trivial()) merged[phi.nodes()] += ctx.weights()[p];
  }
  ShortcutDag dag;
  std::map<std::pair<NodeId, NodeId>, double> arc_flow;
  for (const auto& [seq, w] : merged) {
    dag.paths.emplace_back(ctx.instance(), seq);
    dag.weights.push_back(w);
    for (std::size_t i = 1; i < seq.size(); ++i) arc_flow[{seq[i - 1], seq[i]}] += w;
  }
  for (const auto& [arc, f] : arc_flow) dag.arcs.push_back({arc.first, arc.second, f});
  return dag;
}

struct FlowArc {
  NodeId from;
  NodeId to;
  long long flow;
};

struct IntegralFlow {
  std::vector<FlowArc> arcs;  // arcs of the DAG carrying positive flow
  long long value = 0;        // flow leaving the root
  Cost cost = 0;              // c^reg cost
};

// Integral min-c^reg-cost flow on the DAG's arcs with value <= cap and at least
// one unit entering every witness. Witnesses are split into in/out copies
// joined by an arc with lower bound 1.
inline IntegralFlow round_flow(const Instance& inst, const ShortcutDag& dag, std::span<const NodeId> witnesses,
                               long long cap) {
  using detail::check;
  check(cap >= 0, ErrorKind::kInvalidArgument, "flow cap must be >= 0");
  IntegralFlow out;
  if (witnesses.empty()) return out;
  const int n = inst.num_nodes();
  // in-copy = v, out-copy = n + v, source 2n, sink 2n+1.
  const int source = 2 * n, sink = 2 * n + 1;
  MinCostCirculation mcf(2 * n + 2);
  auto out_copy = [&](NodeId v) { return v == inst.root() ? v : n + v; };
  mcf.add_arc(source, inst.root(), 0, cap, 0);
  mcf.add_arc(sink, source, 0, cap, 0);
  for (NodeId w : witnesses) {
    mcf.add_arc(w, n + w, 1, cap, 0);
    mcf.add_arc(n + w, sink, 0, cap, 0);
  }
  std::vector<int> arc_ids;
  for (const auto& a : dag.arcs) arc_ids.push_back(mcf.add_arc(out_copy(a.from), a.to, 0, cap, regret_distance(inst, a.from, a.to)));
  check(mcf.solve(), ErrorKind::kInternal,
        "integral flow infeasible: " + std::to_string(witnesses.size()) + " witnesses, cap " + std::to_string(cap) +
            ", fractional witness in-flow below threshold?");
  for (std::size_t i = 0; i < dag.arcs.size(); ++i) {
    const long long f = mcf.flow(arc_ids[i]);
    if (f > 0) {
      out.arcs.push_back({dag.arcs[i].from, dag.arcs[i].to, f});
      out.cost += f * regret_distance(inst, dag.arcs[i].from, dag.arcs[i].to);
      if (dag.arcs[i].from == inst.root()) out.value += f;
    }
  }
  return out;
}

// Peels flow.value rooted paths off an acyclic integral flow, then keeps only
// the first occurrence of every node so each one lies on exactly one path.
inline std::vector<RootedPath> decompose_flow(const Instance& inst, const IntegralFlow& flow) {
  const int n = inst.num_nodes();
  std::vector<long long> in(n, 0), out(n, 0);
  std::vector<std::vector<std::pair<NodeId, long long>>> next(n);
  for (const auto& a : flow.arcs) {
    in[a.to] += a.flow;
    out[a.from] += a.flow;
    next[a.from].push_back({a.to, a.flow});
  }
  for (auto& nx : next) std::sort(nx.begin(), nx.end());
  detail::check(out[inst.root()] == flow.value && in[inst.root()] == 0, ErrorKind::kInternal,
                "flow value does not match root out-flow");
  std::vector<long long> stop(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    if (v == inst.root()) continue;
    detail::check(in[v] >= out[v], ErrorKind::kInternal, "flow conservation violated at node " + std::to_string(v));
    stop[v] = in[v] - out[v];
  }
  std::vector<std::vector<NodeId>> raw;
  for (long long unit = 0; unit < flow.value; ++unit) {
    std::vector<NodeId> seq{inst.root()};
    NodeId cur = inst.root();
    for (;;) {
      auto it = std::find_if(next[cur].begin(), next[cur].end(), [](const auto& e) { return e.second > 0; });
      if (it == next[cur].end()) break;
      --it->second;
      cur = it->first;
      seq.push_back(cur);
      // Prefer to keep walking; stop once no outgoing flow remains.
      if (std::none_of(next[cur].begin(), next[cur].end(), [](const auto& e) { return e.second > 0; })) break;
    }
    if (cur != inst.root()) --stop[cur];
    raw.push_back(std::move(seq));
  }
  std::vector<char> seen(n, 0);
  std::vector<RootedPath> paths;
  for (const auto& seq : raw) {
    std::vector<NodeId> kept{inst.root()};
    for (std::size_t i = 1; i < seq.size(); ++i)
      if (!seen[seq[i]]) {
        seen[seq[i]] = 1;
        kept.push_back(seq[i]);
      }
    paths.emplace_back(inst, std::move(kept));
  }
  return paths;
}

// Splices the component tours into the paths: the root's tour goes first on
// the first path, and each witness is followed by the rest of its tour.
// Trivial results are dropped.
inline std::vector<RootedPath> graft(const Instance& inst, const std::vector<RootedPath>& paths,
                                     const WitnessStructure& ws) {
  std::vector<std::vector<NodeId>> seqs;
  for (const auto& p : paths) seqs.push_back(p.nodes());
  const bool root_tour = ws.root_component >= 0 && ws.components[ws.root_component].size() > 1;
  if (seqs.empty() && root_tour) seqs.push_back({inst.root()});
  std::vector<RootedPath> out;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    std::vector<NodeId> seq{inst.root()};
    if (i == 0 && root_tour) {
      const auto& t = ws.tours[ws.root_component];
      seq.insert(seq.end(), t.begin() + 1, t.end());
    }
    for (std::size_t j = 1; j < seqs[i].size(); ++j) {
      const NodeId w = seqs[i][j];
      seq.push_back(w);
      if (ws.is_witness(w)) {
        const auto& t = ws.tours[ws.component_of[w]];
        seq.insert(seq.end(), t.begin() + 1, t.end());
      }
    }
    if (seq.size() > 1) out.emplace_back(inst, std::move(seq));
  }
  return out;
}

struct RoundingResult {
  std::vector<RootedPath> paths;
  RoundingDiagnostics diagnostics;
};

namespace detail {

struct PipelineOutput {
  std::vector<RootedPath> grafted;
  WitnessStructure ws;
  ShortcutDag dag;
  IntegralFlow flow;
};

inline PipelineOutput run_pipeline(const Instance& inst, const FractionalSolution& sol, double delta, long long cap,
                                   RoundingDiagnostics& diag) {
  for (NodeId v : inst.customers())
    check(sol.coverage(v) >= 1.0 - kCoverageTolerance, ErrorKind::kInvalidArgument,
          "fractional solution does not cover node " + std::to_string(v));
  SupportContext ctx(inst, sol);
  PipelineOutput out;
  out.ws = build_forest(ctx, delta);
  out.dag = build_shortcut_dag(ctx, out.ws);
  check(out.dag.distance_increasing(inst), ErrorKind::kInternal, "shortcut digraph has an arc that does not increase D");
  std::vector<NodeId> witnesses;
  for (NodeId w : out.ws.witness)
    if (w >= 0) witnesses.push_back(w);
  for (NodeId w : witnesses)
    check(out.dag.in_flow(w) >= delta - kThresholdTolerance, ErrorKind::kInternal,
          "witness " + std::to_string(w) + " has fractional in-flow below the threshold");
  out.flow = round_flow(inst, out.dag, witnesses, cap);
  auto decomposed = decompose_flow(inst, out.flow);
  out.grafted = graft(inst, decomposed, out.ws);

  std::vector<char> covered(inst.num_nodes(), 0);
  for (const auto& p : out.grafted)
    for (NodeId v : p.nodes()) covered[v] = 1;
  for (NodeId v : inst.customers()) check(covered[v], ErrorKind::kInternal, "grafted paths miss node " + std::to_string(v));

  diag.delta = delta;
  diag.forest_cost = static_cast<double>(out.ws.forest_cost(inst));
  for (std::size_t c = 0; c < out.ws.components.size(); ++c) {
    diag.tour_cost += static_cast<double>(out.ws.tour_cost(inst, c));
    check(out.ws.tour_cost(inst, c) <= 2 * out.ws.component_tree_cost(inst, c), ErrorKind::kInternal,
          "component tour costs more than twice its tree");
  }
  diag.fractional_flow_cost = out.dag.regret_cost(inst);
  diag.flow_cost = static_cast<double>(out.flow.cost);
  diag.flow_value = out.flow.value;
  diag.flow_cap = cap;
  diag.witness_count = static_cast<int>(witnesses.size());
  diag.component_count = static_cast<int>(out.ws.components.size());
  for (const auto& p : out.grafted) diag.pre_split_regret += static_cast<double>(p.regret());
  return out;
}

inline void summarize(std::span<const RootedPath> paths, RoundingDiagnostics& diag) {
  diag.path_count = static_cast<int>(paths.size());
  diag.max_regret = 0;
  diag.total_regret = 0;
  for (const auto& p : paths) {
    diag.max_regret = std::max<long long>(diag.max_regret, p.regret());
    diag.total_regret += p.regret();
  }
}

}  // namespace detail

// Full rounding for the regret-bounded LP: forest, witnesses, shortcut DAG,
// integral flow of value <= ceil(k*/delta), grafting, then splitting into
// paths of regret <= R.
inline RoundingResult round_rvrp(const Instance& inst, Cost regret_bound, const FractionalSolution& sol,
                                 double delta = kDefaultDelta) {
  using detail::check;
  check(regret_bound >= 0, ErrorKind::kInvalidArgument, "regret bound must be >= 0");
  RoundingResult res;
  auto& diag = res.diagnostics;
  diag.lp_value = sol.value;
  diag.delta = delta;
  if (regret_bound == 0) {
    res.paths = zero_regret_cover(inst);
    detail::summarize(res.paths, diag);
    return res;
  }
  const double k_star = sol.support().path_mass();
  const double kr = k_star * static_cast<double>(regret_bound);
  const long long cap = static_cast<long long>(std::ceil(k_star / delta - kThresholdTolerance));
  auto pipe = detail::run_pipeline(inst, sol, delta, cap, diag);

  for (const auto& p : pipe.grafted) {
    auto pieces = split_by_regret(inst, p, regret_bound);
    for (auto& q : pieces) res.paths.push_back(std::move(q));
  }
  detail::summarize(res.paths, diag);
  for (const auto& p : res.paths)
    check(p.regret() <= regret_bound, ErrorKind::kInternal, "split produced a path above the regret bound");

  diag.bound_checks.push_back(make_check("forest_cost <= 3/(1-delta) k* R", 3.0 / (1.0 - delta) * kr, diag.forest_cost));
  diag.bound_checks.push_back(make_check("integral_flow_cost <= fractional_cost/delta",
                                         diag.fractional_flow_cost / delta, diag.flow_cost));
  diag.bound_checks.push_back(make_check("pre_split_regret <= (1/delta + 6/(1-delta)) k* R",
                                         (1.0 / delta + 6.0 / (1.0 - delta)) * kr, diag.pre_split_regret));
  diag.bound_checks.push_back(make_check("path_count <= (2/delta + 6/(1-delta)) k* + 1",
                                         (2.0 / delta + 6.0 / (1.0 - delta)) * k_star + 1.0, diag.path_count));
  return res;
}

// Min-sum rounding: threshold 1 - 1/(3k+2), flow value capped at k, no
// splitting. The returned paths number at most k.
inline RoundingResult round_minsum(const Instance& inst, int k, const FractionalSolution& sol) {
  using detail::check;
  check(k >= 1, ErrorKind::kInvalidArgument, "k must be >= 1");
  check(sol.support().path_mass() <= k + 1e-7, ErrorKind::kInvalidArgument, "fractional solution uses more than k paths");
  RoundingResult res;
  auto& diag = res.diagnostics;
  const double nu = sol.value;
  diag.lp_value = nu;
  const double delta = 1.0 - 1.0 / (3.0 * k + 2.0);
  auto pipe = detail::run_pipeline(inst, sol, delta, k, diag);
  res.paths = pipe.grafted;
  detail::summarize(res.paths, diag);
  check(diag.path_count <= k, ErrorKind::kInternal, "min-sum rounding produced more than k paths");
  diag.bound_checks.push_back(make_check("forest_cost <= 3(3k+2) nu*", 3.0 * (3.0 * k + 2.0) * nu, diag.forest_cost));
  diag.bound_checks.push_back(make_check("integral_flow_cost <= 4 nu*", 4.0 * nu, diag.flow_cost));
  diag.bound_checks.push_back(
      make_check("total_regret <= (4 + 6(3k+2)) nu*", (4.0 + 6.0 * (3.0 * k + 2.0)) * nu, diag.total_regret));
  diag.bound_checks.push_back(make_check("path_count <= k", k, diag.path_count));
  return res;
}

}  // namespace regret_route
