#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

using namespace regret_route;
using namespace rr_test;

TEST(RegretDistance, TriangleExamples) {
  const Instance t = tri();
  EXPECT_EQ(regret_distance(t, 1, 2), 0);
  EXPECT_EQ(regret_distance(t, 2, 1), 2);
  for (NodeId v = 0; v < 3; ++v) EXPECT_EQ(regret_distance(t, v, v), 0);
}

TEST(RegretDistance, MetricAxiomsOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = random_small(seed, 7);
    const int n = inst.num_nodes();
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = 0; v < n; ++v) {
        const Cost uv = regret_distance(inst, u, v);
        EXPECT_GE(uv, 0);
        EXPECT_EQ(uv, inst.root_dist(u) + inst.dist(u, v) - inst.root_dist(v));
        for (NodeId w = 0; w < n; ++w) EXPECT_LE(uv, regret_distance(inst, u, w) + regret_distance(inst, w, v));
      }
  }
}

TEST(RootedPath, RegretExamples) {
  const Instance l = line3();
  EXPECT_EQ(RootedPath(l, {0, 2, 1}).regret(), 2);
  EXPECT_EQ(path_regret(l, RootedPath(l, {0, 2, 1})), 2);
  EXPECT_EQ(RootedPath(l, {0, 1, 2}).regret(), 0);
  EXPECT_EQ(RootedPath(tri(), {0, 1, 2}).regret(), 0);
}

TEST(RootedPath, RejectsMalformed) {
  const Instance l = line3();
  EXPECT_THROW(RootedPath(l, {1, 2}), Error);
  EXPECT_THROW(RootedPath(l, {0, 1, 1}), Error);
  EXPECT_THROW(RootedPath(l, {0, 5}), Error);
  EXPECT_THROW(RootedPath(l, {}), Error);
  try {
    RootedPath(l, {0, 2, 2});
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMalformedPath);
  }
}

TEST(RootedPath, RegretEqualsSumOfRegretEdgesAndPrefixIsMonotone) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = random_small(trial, 6);
    const RootedPath p = random_path(inst, rng);
    EXPECT_EQ(p.regret(), path_regret(inst, p));
    EXPECT_EQ(p.regret(), seq_regret(inst, p.nodes()));
    EXPECT_GE(p.regret(), 0);
    for (std::size_t i = 1; i < p.size(); ++i) EXPECT_LE(p.prefix_regret()[i - 1], p.prefix_regret()[i]);
  }
}

TEST(ClassifyEdges, LineExample) {
  const Instance l = line3();
  const RootedPath p(l, {0, 2, 1});
  const EdgeColoring col = classify_edges(l, p);
  ASSERT_EQ(col.red.size(), 2u);
  EXPECT_FALSE(col.red[0]);
  EXPECT_TRUE(col.red[1]);
  EXPECT_EQ(red_edge_cost(l, p, col), 1);
  EXPECT_EQ(col.red_interval(2), (std::pair<std::size_t, std::size_t>{1, 2}));
  EXPECT_EQ(col.red_interval(0), (std::pair<std::size_t, std::size_t>{0, 0}));
}

TEST(ClassifyEdges, IncreasingPathIsBlue) {
  const Instance l = gen_line({0, 3, 5, 9});
  const EdgeColoring col = classify_edges(l, RootedPath(l, {0, 1, 2, 3}));
  for (bool r : col.red) EXPECT_FALSE(r);
  EXPECT_EQ(col.segments.size(), 4u);
}

// Direct reading of the definition: edge i is red iff some x at or before i
// and some y after i have D_x >= D_y.
TEST(ClassifyEdges, MatchesDefinitionAndStructure) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const Instance inst = random_small(trial, 7);
    const RootedPath p = random_path(inst, rng);
    const EdgeColoring col = classify_edges(inst, p);
    const auto& s = p.nodes();
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      bool red = false;
      for (std::size_t x = 0; x <= i; ++x)
        for (std::size_t y = i + 1; y < s.size(); ++y) red = red || inst.root_dist(s[x]) >= inst.root_dist(s[y]);
      EXPECT_EQ(col.red[i], red);
    }
    // Segments partition the nodes; nodes in different segments increase in D.
    std::size_t next = 0;
    for (const auto& [a, b] : col.segments) {
      EXPECT_EQ(a, next);
      next = b + 1;
    }
    EXPECT_EQ(next, s.size());
    for (std::size_t u = 0; u < s.size(); ++u)
      for (std::size_t v = u + 1; v < s.size(); ++v)
        if (col.segment_of[u] != col.segment_of[v]) {
          EXPECT_LT(inst.root_dist(s[u]), inst.root_dist(s[v]));
        }
    EXPECT_LE(2 * red_edge_cost(inst, p, col), 3 * p.regret());
  }
}

TEST(SplitByRegret, LineExample) {
  const Instance l = line3();
  const auto parts = split_by_regret(l, RootedPath(l, {0, 2, 1}), 1);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].nodes(), (std::vector<NodeId>{0, 2}));
  EXPECT_EQ(parts[1].nodes(), (std::vector<NodeId>{0, 1}));
}

TEST(SplitByRegret, UnchangedWithinBound) {
  const Instance l = line3();
  const RootedPath p(l, {0, 2, 1});
  EXPECT_EQ(split_by_regret(l, p, 2), std::vector<RootedPath>{p});
  EXPECT_THROW(split_by_regret(l, p, 0), Error);
}

TEST(SplitByRegret, TwoAndAHalfBoundsGiveThreePaths) {
  // Zigzag on a line with backward steps 2, 2, 1.
  const Instance l = gen_line({0, 10, 8, 20, 18, 30, 29});
  const RootedPath p(l, {0, 1, 2, 3, 4, 5, 6});
  ASSERT_EQ(p.regret(), 10);
  const auto parts = split_by_regret(l, p, 4);  // 10 = 2.5 * 4
  EXPECT_EQ(parts.size(), 3u);
  for (const auto& q : parts) EXPECT_LE(q.regret(), 4);
}

TEST(SplitByRegret, ContractOnRandomPaths) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const Instance inst = random_small(trial, 8);
    const RootedPath p = random_path(inst, rng);
    const Cost bound = 1 + static_cast<Cost>(rng() % 10);
    const auto parts = split_by_regret(inst, p, bound);
    std::vector<NodeId> joined;
    for (const auto& q : parts) {
      EXPECT_LE(q.regret(), bound);
      joined.insert(joined.end(), q.nodes().begin() + 1, q.nodes().end());
    }
    EXPECT_EQ(joined, std::vector<NodeId>(p.nodes().begin() + 1, p.nodes().end()));
    const Cost ceil = (p.regret() + bound - 1) / bound;
    EXPECT_LE(static_cast<Cost>(parts.size()), std::max<Cost>(ceil, 1));
  }
}

TEST(PreprocessPathPair, LineExample) {
  const Instance l = line3();
  const auto [a, b] = preprocess_path_pair(l, RootedPath(l, {0, 2, 1}));
  EXPECT_EQ(a.nodes(), (std::vector<NodeId>{0, 2}));
  EXPECT_EQ(b.nodes(), (std::vector<NodeId>{0, 1, 2}));
}

TEST(PreprocessPathPair, AlreadyEndingAtFarthest) {
  const Instance l = line3();
  const RootedPath p(l, {0, 1, 2});
  const auto [a, b] = preprocess_path_pair(l, p);
  EXPECT_EQ(a, p);
  EXPECT_EQ(b.nodes(), (std::vector<NodeId>{0, 2}));
}

TEST(PreprocessPathPair, ContractOnRandomPaths) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const Instance inst = random_small(trial, 7);
    const RootedPath p = random_path(inst, rng);
    if (p.is_trivial()) continue;
    const auto [a, b] = preprocess_path_pair(inst, p);
    const NodeId far = p.nodes()[farthest_index(inst, p)];
    EXPECT_EQ(a.end(), far);
    EXPECT_EQ(b.end(), far);
    EXPECT_LE(a.cost(), p.cost());
    EXPECT_LE(b.cost(), p.cost());
    EXPECT_LE(a.regret(), p.regret());
    EXPECT_LE(b.regret(), p.regret());
    for (NodeId v : p.nodes()) EXPECT_TRUE(a.contains(v) || b.contains(v));
  }
}

TEST(Shortcut, Basics) {
  const Instance l = line3();
  const RootedPath p(l, {0, 2, 1});
  const std::vector<NodeId> all{1, 2}, none{};
  EXPECT_EQ(shortcut(l, p, all), p);
  EXPECT_TRUE(shortcut(l, p, none).is_trivial());
  EXPECT_THROW(shortcut(l, RootedPath(l, {0, 1}), std::vector<NodeId>{2}), Error);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = random_small(trial, 7);
    const RootedPath q = random_path(inst, rng);
    std::vector<NodeId> keep;
    for (std::size_t i = 1; i < q.size(); ++i)
      if (rng() % 2) keep.push_back(q.nodes()[i]);
    const RootedPath s = shortcut(inst, q, keep);
    EXPECT_LE(s.cost(), q.cost());
    EXPECT_LE(s.regret(), q.regret());
  }
}

TEST(ZeroRegretCover, Examples) {
  const Instance l = line3();
  const auto cover = zero_regret_cover(l);
  ASSERT_EQ(cover.size(), 1u);
  EXPECT_EQ(cover[0].nodes(), (std::vector<NodeId>{0, 1, 2}));
  EXPECT_TRUE(zero_regret_cover(l, std::vector<NodeId>{}).empty());
  EXPECT_EQ(zero_regret_cover(gen_star(5)).size(), 5u);
}

TEST(ZeroRegretCover, MatchesExhaustiveMinimum) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Instance inst = seed % 3 == 0 ? gen_line({0, 2, 3, 5, 7, 8}) : random_small(seed, 6);
    const auto cover = zero_regret_cover(inst);
    for (const auto& p : cover) EXPECT_EQ(p.regret(), 0);
    const auto cov = covered_by(inst, cover);
    for (NodeId v : inst.customers()) EXPECT_TRUE(cov[v]);
    EXPECT_EQ(static_cast<int>(cover.size()), brute_force_rvrp(inst, 0));
  }
}

TEST(NormalizeInstance, MetricUnchanged) {
  const Instance t = tri();
  const Instance again = normalize_instance(t.matrix(), t.root());
  EXPECT_EQ(again, t);
  EXPECT_TRUE(again.is_normalized());
}

TEST(NormalizeInstance, LadderEdgeList) {
  const Ladder lad = gen_ladder(2, 1);
  EXPECT_EQ(lad.instance.num_nodes(), 7);
  EXPECT_EQ(lad.instance.root_dist(Ladder::node(2, 0, 1, 0)), 2);
  EXPECT_EQ(lad.instance.root_dist(Ladder::node(2, 0, 1, 1)), 2);
  EXPECT_EQ(lad.instance.root_dist(Ladder::node(2, 0, 3, 1)), 6);
}

TEST(NormalizeInstance, MergesColocatedNodes) {
  // Node 2 sits on node 1; node 3 sits on the root.
  const std::vector<std::vector<Cost>> raw{{0, 4, 4, 0}, {4, 0, 0, 4}, {4, 0, 0, 4}, {0, 4, 4, 0}};
  const Instance inst = normalize_instance(raw, 0);
  EXPECT_EQ(inst.num_nodes(), 2);
  EXPECT_TRUE(inst.is_normalized());
  EXPECT_EQ(inst.origin(0), (std::vector<NodeId>{0, 3}));
  EXPECT_EQ(inst.origin(1), (std::vector<NodeId>{1, 2}));
  // A root with a larger id still leads its group.
  const Instance rooted = normalize_instance(raw, 3);
  EXPECT_EQ(rooted.origin(rooted.root()).front(), 3);
}

TEST(NormalizeInstance, ClosureAndRejections) {
  const std::vector<std::vector<Cost>> loose{{0, 1, 9}, {1, 0, 1}, {9, 1, 0}};
  EXPECT_EQ(normalize_instance(loose, 0).dist(0, 2), 2);
  EXPECT_THROW(normalize_instance({{0, 1}, {2, 0}}, 0), Error);
  EXPECT_THROW(normalize_instance({{0, -1}, {-1, 0}}, 0), Error);
  const std::vector<WeightedEdge> split{{0, 1, 1}};
  EXPECT_THROW(normalize_instance(3, 0, split), Error);
  EXPECT_THROW(Instance({0, 5, 1, 0}, 2, 0), Error);
}

TEST(Induced, LiftRoundTrip) {
  const Instance inst = random_small(4, 7);
  const std::vector<NodeId> keep{5, 2, 7};
  const SubInstance sub = induced(inst, keep);
  EXPECT_EQ(sub.instance.num_nodes(), 4);
  EXPECT_EQ(sub.to_parent, (std::vector<NodeId>{0, 2, 5, 7}));
  const RootedPath p(sub.instance, {0, 3, 1});
  const RootedPath lifted = lift(inst, sub, p);
  EXPECT_EQ(lifted.nodes(), (std::vector<NodeId>{0, 7, 2}));
  EXPECT_EQ(lifted.regret(), p.regret());
}
