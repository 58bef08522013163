#include <gtest/gtest.h>

#include <functional>
#include <sstream>

#include "test_util.hpp"

using namespace regret_route;
using namespace rr_test;

namespace {

// Cheapest order through a block: all permutations, measured either as
// length or as regret at the last node.
Cost best_order(const Instance& inst, std::vector<NodeId> block, bool regret) {
  std::sort(block.begin(), block.end());
  Cost best = kInfiniteCost;
  do {
    std::vector<NodeId> seq{inst.root()};
    seq.insert(seq.end(), block.begin(), block.end());
    best = std::min(best, regret ? seq_regret(inst, seq) : seq_cost(inst, seq));
  } while (std::next_permutation(block.begin(), block.end()));
  return best;
}

// Visits every set partition of the customers.
void for_each_partition(const Instance& inst, const std::function<void(const std::vector<std::vector<NodeId>>&)>& fn) {
  const auto& cust = inst.customers();
  std::vector<std::vector<NodeId>> blocks;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == cust.size()) {
      fn(blocks);
      return;
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      blocks[b].push_back(cust[i]);
      rec(i + 1);
      blocks[b].pop_back();
    }
    blocks.push_back({cust[i]});
    rec(i + 1);
    blocks.pop_back();
  };
  rec(0);
}

}  // namespace

TEST(Generators, Deterministic) {
  EXPECT_EQ(gen_euclidean(8, 3), gen_euclidean(8, 3));
  EXPECT_EQ(gen_random_metric(8, 3), gen_random_metric(8, 3));
  EXPECT_FALSE(gen_random_metric(8, 3) == gen_random_metric(8, 4));
  EXPECT_EQ(gen_ladder(3, 2).instance, gen_ladder(3, 2).instance);
}

TEST(Generators, MetricAuditAndNormalForm) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    for (const Instance& inst : {gen_euclidean(7, seed), gen_random_metric(7, seed)}) {
      const int n = inst.num_nodes();
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
          EXPECT_EQ(inst.dist(u, v), inst.dist(v, u));
          if (u != v) {
            EXPECT_GT(inst.dist(u, v), 0);
          }
          for (int w = 0; w < n; ++w) EXPECT_LE(inst.dist(u, w), inst.dist(u, v) + inst.dist(v, w));
        }
      EXPECT_TRUE(inst.is_normalized());
      EXPECT_EQ(normalize_instance(inst.matrix(), inst.root()), inst);
    }
  }
}

TEST(Generators, RejectBadArguments) {
  EXPECT_THROW(gen_euclidean(1, 0), Error);
  EXPECT_THROW(gen_random_metric(1, 0), Error);
  EXPECT_THROW(gen_ladder(0, 1), Error);
  EXPECT_THROW(gen_line({0, 3, 3}), Error);
  EXPECT_THROW(gen_star(0), Error);
}

TEST(Generators, LadderShape) {
  const Ladder lad = gen_ladder(3, 2);
  EXPECT_EQ(lad.instance.num_nodes(), 1 + 2 * 2 * 5);
  EXPECT_EQ(lad.paths.size(), 2u * 5u);
  for (std::size_t i = 0; i < lad.paths.size(); ++i) {
    EXPECT_DOUBLE_EQ(lad.weights[i], 1.0 / 3.0);
    EXPECT_LE(lad.paths[i].regret(), 1);
  }
  std::vector<double> cov(lad.instance.num_nodes(), 0.0);
  for (std::size_t i = 0; i < lad.paths.size(); ++i)
    for (NodeId v : lad.paths[i].nodes()) cov[v] += lad.weights[i];
  for (NodeId v : lad.instance.customers()) EXPECT_GE(cov[v], 1.0 - 1e-12);
}

TEST(Oracles, AgreeWithPartitionEnumeration) {
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = random_small(trial + 2000, 1 + trial % 5);
    const Cost r = static_cast<Cost>(trial % 7);
    const Cost d = inst.max_root_dist() + static_cast<Cost>(trial % 4) * 2;
    const int k = 1 + trial % 3;
    int best_r = 1 << 20, best_d = 1 << 20;
    Cost best_k = kInfiniteCost;
    for_each_partition(inst, [&](const std::vector<std::vector<NodeId>>& blocks) {
      Cost worst_regret = 0, worst_length = 0;
      for (const auto& b : blocks) {
        worst_regret = std::max(worst_regret, best_order(inst, b, true));
        worst_length = std::max(worst_length, best_order(inst, b, false));
      }
      const int count = static_cast<int>(blocks.size());
      if (worst_regret <= r) best_r = std::min(best_r, count);
      if (worst_length <= d) best_d = std::min(best_d, count);
      if (count <= k) best_k = std::min(best_k, worst_regret);
    });
    EXPECT_EQ(brute_force_rvrp(inst, r), best_r);
    EXPECT_EQ(brute_force_dvrp(inst, d), best_d);
    EXPECT_EQ(brute_force_krvrp(inst, k), best_k);
  }
}

TEST(Oracles, Examples) {
  const Ladder lad = gen_ladder(2, 1);
  EXPECT_EQ(brute_force_rvrp(lad.instance, 1), 2);
  EXPECT_EQ(brute_force_lp(lad.instance, LpOracleKind::kRegret, 1).value, mpq_class(3, 2));
  EXPECT_EQ(brute_force_rvrp(lad.instance, 1000), 1);
  EXPECT_EQ(brute_force_dvrp(gen_star(4), 1), 4);
  EXPECT_THROW(brute_force_rvrp(random_small(1, 14), 1), Error);
}

TEST(Verify, DetectsCorruptions) {
  const Instance inst = random_small(40, 7);
  const Cost r = 4;
  const SolveResult sol = solve_rvrp(inst, r);
  ASSERT_TRUE(verify(inst, sol.paths, RvrpMode{r, std::nullopt}).ok);

  auto raw = expand_paths(inst, sol.paths);
  auto dropped = raw;
  for (auto& p : dropped)
    if (p.size() > 1) {
      const NodeId gone = p.back();
      p.pop_back();
      const VerifyReport v = verify(inst.matrix(), inst.root(), dropped, RvrpMode{r, std::nullopt});
      EXPECT_FALSE(v.ok);
      ASSERT_FALSE(v.failures.empty());
      EXPECT_EQ(v.failures.front(), "node " + std::to_string(gone) + " is not covered");
      break;
    }

  Cost worst = 0;
  for (const auto& p : sol.paths) worst = std::max(worst, p.regret());
  if (worst > 0) {
    EXPECT_FALSE(verify(inst, sol.paths, RvrpMode{worst - 1, std::nullopt}).ok);
  }
  EXPECT_TRUE(verify(inst, sol.paths, RvrpMode{worst, std::nullopt}).ok);

  auto repeated = raw;
  repeated.front().push_back(repeated.front().back());
  EXPECT_FALSE(verify(inst.matrix(), inst.root(), repeated, RvrpMode{r, std::nullopt}).ok);
  EXPECT_FALSE(verify(inst, sol.paths, RvrpMode{r, static_cast<double>(sol.paths.size()) - 1}).ok);
  EXPECT_FALSE(verify(inst, sol.paths, KPathsMode{static_cast<int>(sol.paths.size()) - 1}).ok);
}

TEST(Verify, ModeSemantics) {
  const Instance l = line3();
  const std::vector<RootedPath> one{RootedPath(l, {0, 2, 1})};
  EXPECT_TRUE(verify(l, one, RvrpMode{2, std::nullopt}).ok);
  EXPECT_FALSE(verify(l, one, RvrpMode{1, std::nullopt}).ok);
  EXPECT_TRUE(verify(l, one, DvrpMode{3, std::nullopt}).ok);
  EXPECT_FALSE(verify(l, one, DvrpMode{2, std::nullopt}).ok);
  // a reached at time 3 with D_a = 1.
  EXPECT_TRUE(verify(l, one, MultiplicativeMode{3, 1}).ok);
  EXPECT_FALSE(verify(l, one, MultiplicativeMode{5, 2}).ok);
  EXPECT_TRUE(verify(l, one, NonuniformMode{{0, 2, 0}}).ok);
  EXPECT_FALSE(verify(l, one, NonuniformMode{{0, 1, 0}}).ok);
}

TEST(JsonIo, RoundTrip) {
  const Instance inst = random_small(50, 6);
  const Json j = instance_to_json(inst, Json{{"seed", 50}});
  EXPECT_EQ(instance_from_json(j), inst);
  EXPECT_EQ(instance_from_json(Json::parse(j.dump())), inst);
  EXPECT_THROW(instance_from_json(Json{{"n", 2}}), Error);
  EXPECT_THROW(paths_from_json(Json{{"paths", "x"}}), Error);

  const SolveResult r = solve_rvrp(inst, 3);
  const Json s = solution_to_json(inst, r.paths);
  const auto back = paths_from_json(Json::parse(s.dump()));
  ASSERT_EQ(back.size(), r.paths.size());
  for (std::size_t i = 0; i < back.size(); ++i) EXPECT_EQ(back[i], r.paths[i].nodes());
}

TEST(JsonIo, ExpandPathsRestoresMergedNodes) {
  // Node 3 duplicates the root and node 4 duplicates node 1.
  const std::vector<std::vector<Cost>> raw{
      {0, 2, 3, 0, 2}, {2, 0, 1, 2, 0}, {3, 1, 0, 3, 1}, {0, 2, 3, 0, 2}, {2, 0, 1, 2, 0}};
  const Instance inst = normalize_instance(raw, 0);
  EXPECT_EQ(inst.num_nodes(), 3);
  const SolveResult r = solve_rvrp(inst, 0);
  const auto expanded = expand_paths(inst, r.paths);
  EXPECT_TRUE(verify(raw, 0, expanded, RvrpMode{0, std::nullopt}).ok);
  ASSERT_FALSE(expanded.empty());
  EXPECT_EQ(expanded.front().front(), 0);
  EXPECT_EQ(expanded.front()[1], 3);
}

TEST(Bench, DeterministicAcrossThreadCounts) {
  for (const char* suite : {"ladder", "krvrp"}) {
    std::ostringstream a, b;
    write_json_lines(a, run_experiments(bench_suite(suite, 3), 1));
    write_json_lines(b, run_experiments(bench_suite(suite, 3), 4));
    EXPECT_EQ(a.str(), b.str());
    for (const auto& rep : run_experiments(bench_suite(suite, 3), 2)) EXPECT_TRUE(rep.pass()) << rep.instance;
  }
  EXPECT_THROW(bench_suite("nope", 1), Error);
}
