#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "regret_route/error.hpp"

namespace regret_route {

// Min-cost circulation with lower and upper arc bounds. Lower bounds are moved
// into node imbalances, which are then routed from a super source to a super
// sink by successive shortest augmenting paths (Bellman-Ford, so residual
// arcs with negative cost are fine). Requires nonnegative arc costs, so the
// starting residual network has no negative cycle.
class MinCostCirculation {
 public:
  using Flow = std::int64_t;
  using Weight = std::int64_t;

  explicit MinCostCirculation(int num_nodes) : n_(num_nodes), adj_(num_nodes + 2), excess_(num_nodes + 2, 0) {}

  int add_arc(int from, int to, Flow lower, Flow upper, Weight cost) {
    detail::check(from >= 0 && from < n_ && to >= 0 && to < n_, ErrorKind::kInvalidArgument, "arc endpoint out of range");
    detail::check(0 <= lower && lower <= upper, ErrorKind::kInvalidArgument, "arc bounds must satisfy 0 <= l <= u");
    detail::check(cost >= 0, ErrorKind::kInvalidArgument, "arc costs must be nonnegative");
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({from, to, lower, cost, push_edge(from, to, upper - lower, cost)});
    excess_[to] += lower;
    excess_[from] -= lower;
    return id;
  }

  // Returns false when no circulation satisfies the lower bounds.
  bool solve() {
    const int source = n_, sink = n_ + 1;
    Flow need = 0;
    for (int v = 0; v < n_; ++v) {
      if (excess_[v] > 0) {
        push_edge(source, v, excess_[v], 0);
        need += excess_[v];
      } else if (excess_[v] < 0) {
        push_edge(v, sink, -excess_[v], 0);
      }
    }
    const int total = n_ + 2;
    constexpr Weight kInf = std::numeric_limits<Weight>::max() / 4;
    Flow sent = 0;
    while (sent < need) {
      std::vector<Weight> dist(total, kInf);
      std::vector<int> prev_node(total, -1), prev_edge(total, -1);
      dist[source] = 0;
      for (int iter = 0; iter < total; ++iter) {
        bool changed = false;
        for (int u = 0; u < total; ++u) {
          if (dist[u] == kInf) continue;
          for (int e = 0; e < static_cast<int>(adj_[u].size()); ++e) {
            const Edge& ed = adj_[u][e];
            if (ed.cap > 0 && dist[u] + ed.cost < dist[ed.to]) {
              dist[ed.to] = dist[u] + ed.cost;
              prev_node[ed.to] = u;
              prev_edge[ed.to] = e;
              changed = true;
            }
          }
        }
        if (!changed) break;
      }
      if (dist[sink] == kInf) return false;
      Flow push = need - sent;
      for (int v = sink; v != source; v = prev_node[v]) push = std::min(push, adj_[prev_node[v]][prev_edge[v]].cap);
      for (int v = sink; v != source; v = prev_node[v]) {
        Edge& ed = adj_[prev_node[v]][prev_edge[v]];
        ed.cap -= push;
        adj_[v][ed.rev].cap += push;
      }
      sent += push;
    }
    return true;
  }

  Flow flow(int arc) const {
    const Arc& a = arcs_[arc];
    const Edge& ed = adj_[a.from][a.edge];
    return a.lower + adj_[ed.to][ed.rev].cap;
  }

  Weight total_cost() const {
    Weight c = 0;
    for (int i = 0; i < static_cast<int>(arcs_.size()); ++i) c += flow(i) * arcs_[i].cost;
    return c;
  }

 private:
  struct Edge {
    int to;
    Flow cap;
    Weight cost;
    int rev;
  };
  struct Arc {
    int from;
    int to;
    Flow lower;
    Weight cost;
    int edge;
  };

  int push_edge(int from, int to, Flow cap, Weight cost) {
    adj_[from].push_back({to, cap, cost, static_cast<int>(adj_[to].size()) + (from == to ? 1 : 0)});
    adj_[to].push_back({from, 0, -cost, static_cast<int>(adj_[from].size()) - 1});
    return static_cast<int>(adj_[from].size()) - 1;
  }

  int n_;
  std::vector<std::vector<Edge>> adj_;
  std::vector<Flow> excess_;
  std::vector<Arc> arcs_;
};

}  // namespace regret_route
