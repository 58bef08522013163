#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include <gmpxx.h>

#include "test_util.hpp"

using namespace regret_route;
using namespace rr_test;

TEST(Simplex, SmallProgramInDoubleAndRational) {
  // max 3x + 2y  s.t.  x + y <= 4, x + 3y <= 6, x <= 3  ->  x=3, y=1, value 11.
  const std::vector<std::vector<double>> a{{1, 1}, {1, 3}, {1, 0}};
  const auto d = solve_packing_lp<double>(a, {4, 6, 3}, {3, 2});
  ASSERT_EQ(d.status, SimplexStatus::kOptimal);
  EXPECT_NEAR(d.objective, 11.0, 1e-12);
  EXPECT_NEAR(d.primal[0], 3.0, 1e-12);
  EXPECT_NEAR(d.primal[1], 1.0, 1e-12);
  // Strong duality: b . y equals the objective.
  EXPECT_NEAR(4 * d.row_duals[0] + 6 * d.row_duals[1] + 3 * d.row_duals[2], 11.0, 1e-12);

  std::vector<std::vector<mpq_class>> aq{{1, 1}, {1, 3}, {1, 0}};
  const auto q = solve_packing_lp<mpq_class>(aq, {4, 6, 3}, {3, 2});
  EXPECT_EQ(q.objective, mpq_class(11));
}

TEST(Simplex, DetectsUnboundedAndBadInput) {
  const std::vector<std::vector<double>> a{{1, -1}};
  EXPECT_EQ(solve_packing_lp<double>(a, {1}, {0, 1}).status, SimplexStatus::kUnbounded);
  EXPECT_THROW(solve_packing_lp<double>(a, {-1}, {0, 1}), Error);
}

TEST(RestrictedMaster, IdentityCovering) {
  const Instance inst = random_small(3, 5);
  const auto cols = detail::single_hop_columns(inst);
  const auto rm = solve_restricted_master(inst, cols, std::vector<double>(cols.size(), 1.0));
  EXPECT_NEAR(rm.value, 5.0, 1e-9);
  for (double w : rm.weights) EXPECT_NEAR(w, 1.0, 1e-9);
  for (NodeId v : inst.customers()) EXPECT_NEAR(rm.duals[v], 1.0, 1e-9);
}

TEST(RestrictedMaster, DuplicateColumnsKeepTheValue) {
  const Instance l = line3();
  std::vector<RootedPath> cols{RootedPath(l, {0, 1}), RootedPath(l, {0, 2}), RootedPath(l, {0, 2, 1})};
  const double base = solve_restricted_master(l, cols, {1, 1, 1}).value;
  cols.push_back(RootedPath(l, {0, 2, 1}));
  EXPECT_NEAR(solve_restricted_master(l, cols, {1, 1, 1, 1}).value, base, 1e-12);
  EXPECT_THROW(solve_restricted_master(l, {RootedPath(l, {0, 1})}, {1.0}), Error);
}

TEST(RvrpLp, Examples) {
  EXPECT_NEAR(solve_rvrp_lp(gen_ladder(2, 1).instance, 1).value, 1.5, 1e-7);
  EXPECT_NEAR(solve_rvrp_lp(line3(), 0).value, 1.0, 1e-7);
  const Instance inst = random_small(12, 7);
  const HKTable t(inst);
  const FractionalSolution sol = solve_rvrp_lp(inst, t.min_regret(t.full_mask()));
  EXPECT_NEAR(sol.value, 1.0, 1e-7);
  EXPECT_TRUE(sol.certified);
}

TEST(MinSumLp, Examples) {
  EXPECT_NEAR(solve_minsum_lp(line3(), 1).value, 0.0, 1e-9);
  const Instance inst = random_small(5, 6);
  EXPECT_NEAR(solve_minsum_lp(inst, 6).value, 0.0, 1e-9);
  const FractionalSolution lad = solve_minsum_lp(gen_ladder(2, 1).instance, 3);
  EXPECT_LE(lad.value, 3.0 + 1e-9);
  EXPECT_LE(lad.path_mass(), 3.0 + 1e-7);
  EXPECT_GE(lad.budget_dual, 0.0);
}

TEST(DvrpLp, Examples) {
  EXPECT_NEAR(solve_dvrp_lp(line3(), 2).value, 1.0, 1e-7);
  EXPECT_NEAR(solve_dvrp_lp(gen_star(5), 1).value, 5.0, 1e-7);
  EXPECT_NEAR(solve_dvrp_lp(random_small(9, 6), 100000).value, 1.0, 1e-7);
  try {
    solve_dvrp_lp(line3(), 1);
    FAIL() << "expected infeasibility";
  } catch (const InfeasibleError& e) {
    EXPECT_EQ(e.node(), 2);
  }
}

TEST(ColumnGeneration, SolutionInvariants) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = random_small(trial, 3 + trial % 6);
    const Cost r = 1 + static_cast<Cost>(rng() % 8);
    for (const FractionalSolution& sol :
         {solve_rvrp_lp(inst, r), solve_minsum_lp(inst, 1 + trial % 3), solve_dvrp_lp(inst, inst.max_root_dist() + r)}) {
      for (NodeId v : inst.customers()) EXPECT_GE(sol.coverage(v), 1.0 - kCoverageTolerance);
      for (double w : sol.weights) EXPECT_GE(w, 0.0);
      for (double d : sol.duals) EXPECT_GE(d, 0.0);
      EXPECT_GE(sol.budget_dual, 0.0);
      for (std::size_t i = 1; i < sol.history.size(); ++i) EXPECT_LE(sol.history[i], sol.history[i - 1] + 1e-7);
      for (const auto& p : sol.support().columns) {
        if (sol.kind == LpKind::kRvrp) {
          EXPECT_LE(p.regret(), r);
        }
        if (sol.kind == LpKind::kDvrp) {
          EXPECT_LE(p.cost(), sol.budget);
        }
      }
      EXPECT_TRUE(sol.certified);
    }
  }
}

TEST(ColumnGeneration, MatchesEnumerationOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = random_small(trial + 100, 2 + trial % 7);
    const Cost r = static_cast<Cost>(rng() % 10);
    EXPECT_NEAR(solve_rvrp_lp(inst, r).value, brute_force_lp(inst, LpOracleKind::kRegret, r).as_double(), 1e-6);
    const int k = 1 + trial % 3;
    EXPECT_NEAR(solve_minsum_lp(inst, k).value, brute_force_lp(inst, LpOracleKind::kMinSum, k).as_double(), 1e-6);
    const Cost d = inst.max_root_dist() + r;
    EXPECT_NEAR(solve_dvrp_lp(inst, d).value, brute_force_lp(inst, LpOracleKind::kLength, d).as_double(), 1e-6);
  }
}

TEST(ColumnGeneration, HeuristicFallbackIsUncertifiedButFeasible) {
  const Instance inst = random_small(31, 8);
  LpOptions opt;
  opt.exact_threshold = 4;
  const FractionalSolution sol = solve_rvrp_lp(inst, 5, opt);
  EXPECT_FALSE(sol.certified);
  for (NodeId v : inst.customers()) EXPECT_GE(sol.coverage(v), 1.0 - kCoverageTolerance);
  EXPECT_GE(sol.value, solve_rvrp_lp(inst, 5).value - 1e-7);
}

TEST(ColumnGeneration, TraceHasOneLinePerRound) {
  std::ostringstream trace;
  LpOptions opt;
  opt.trace = &trace;
  const FractionalSolution sol = solve_rvrp_lp(gen_ladder(2, 1).instance, 1, opt);
  const std::string text = trace.str();
  EXPECT_EQ(static_cast<int>(std::count(text.begin(), text.end(), '\n')), sol.rounds);
  EXPECT_EQ(text.rfind("round 0 value", 0), 0u);
}

TEST(PreprocessFractional, Examples) {
  const Instance l = line3();
  FractionalSolution sol;
  sol.columns = {RootedPath(l, {0, 2, 1})};
  sol.weights = {0.75};
  sol.value = 0.75;
  const FractionalSolution pre = preprocess_fractional(l, sol);
  ASSERT_EQ(pre.columns.size(), 2u);
  for (const auto& p : pre.columns) EXPECT_EQ(p.end(), 2);
  EXPECT_NEAR(pre.path_mass(), 1.5, 1e-12);

  FractionalSolution ok;
  ok.columns = {RootedPath(l, {0, 1, 2}), RootedPath(l, {0, 2})};
  ok.weights = {0.5, 0.5};
  ok.value = 1.0;
  EXPECT_NEAR(preprocess_fractional(l, ok).value, 1.0, 1e-12);
}

TEST(PreprocessFractional, PreservesCoverageAndAtMostDoubles) {
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = random_small(trial + 40, 4 + trial % 5);
    const FractionalSolution sol = solve_dvrp_lp(inst, inst.max_root_dist() + 3);
    const FractionalSolution pre = preprocess_fractional(inst, sol);
    for (NodeId v : inst.customers()) EXPECT_GE(pre.coverage(v), 1.0 - kCoverageTolerance);
    EXPECT_LE(pre.value, 2.0 * sol.value + 1e-9);
    for (const auto& p : pre.columns) {
      EXPECT_EQ(farthest_index(inst, p) + 1, p.size());
      EXPECT_LE(p.cost(), sol.budget);
    }
  }
}
