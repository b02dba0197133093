#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "theta/io.hpp"
#include "theta/structure_checks.hpp"
#include "theta/theta_graph.hpp"

using namespace theta;

namespace {

struct LogView {
  const ThetaGraph& g;
  std::map<std::uint32_t, unsigned> logs;
  explicit LogView(const ThetaGraph& graph)
      : g(graph), logs(oracle::discrete_logs(graph.spec().generator(), graph.spec().modulus(), graph.spec().degree())) {}

  std::set<int> labels(const std::vector<Vertex>& vs) const {
    std::set<int> out;
    for (Vertex v : vs) out.insert(v == g.infinity() ? -2 : v == 0 ? -1 : static_cast<int>(logs.at(v)));
    return out;
  }
  Vertex vertex_of_log(unsigned k) const {
    for (auto [x, e] : logs)
      if (e == k) return x;
    return 0;
  }
  std::vector<Vertex> level(const Component& c, unsigned k) const {
    std::vector<Vertex> out;
    for (const auto& tr : c.trees)
      if (k < tr.levels.size()) out.insert(out.end(), tr.levels[k].begin(), tr.levels[k].end());
    return out;
  }
};

const Component& component_with(const ThetaGraph& g, Vertex v) { return g.components()[g.component_of(v)]; }

}  // namespace

TEST(ThetaGraph64, ThetaOfAlpha45IsAlpha27) {
  const Field f = make_field(6);
  const ThetaGraph g(f);
  const LogView lv(g);
  EXPECT_EQ(g.succ(lv.vertex_of_log(45)), lv.vertex_of_log(27));
}

TEST(ThetaGraph64, ThreeCycleAndItsLevels) {
  const ThetaGraph g(make_field(6));
  const LogView lv(g);
  const Component& c = component_with(g, lv.vertex_of_log(45));
  EXPECT_EQ(lv.labels(c.cycle), (std::set<int>{45, 27, 54}));
  EXPECT_EQ(g.succ(lv.vertex_of_log(27)), lv.vertex_of_log(54));
  EXPECT_EQ(g.succ(lv.vertex_of_log(54)), lv.vertex_of_log(45));
  EXPECT_EQ(c.depth, 3u);
  EXPECT_EQ(c.trace_class, TraceClass::A);
  for (const auto& tr : c.trees) {
    ASSERT_EQ(tr.depth(), 3u);
    EXPECT_EQ(tr.levels[1].size(), 1u);
    EXPECT_EQ(tr.levels[2].size(), 2u);
    EXPECT_EQ(tr.levels[3].size(), 4u);
  }
  EXPECT_EQ(lv.labels(lv.level(c, 1)), (std::set<int>{9, 18, 36}));
  EXPECT_EQ(lv.labels(lv.level(c, 2)), (std::set<int>{7, 56, 14, 49, 28, 35}));
  EXPECT_EQ(lv.labels(lv.level(c, 3)), (std::set<int>{41, 22, 50, 13, 19, 44, 26, 37, 38, 25, 52, 11}));
}

TEST(ThetaGraph64, InfinityChain) {
  const ThetaGraph g(make_field(6));
  const LogView lv(g);
  const Component& c = component_with(g, g.infinity());
  EXPECT_EQ(c.cycle, std::vector<Vertex>{g.infinity()});
  EXPECT_EQ(&c, &g.components().back());
  EXPECT_EQ(lv.labels(lv.level(c, 1)), std::set<int>{-1});
  EXPECT_EQ(lv.labels(lv.level(c, 2)), std::set<int>{0});
  EXPECT_EQ(lv.labels(lv.level(c, 3)), (std::set<int>{21, 42}));
  EXPECT_EQ(c.depth, 3u);
}

TEST(ThetaGraph64, NineCyclesWithDepthOneTrees) {
  const ThetaGraph g(make_field(6));
  const LogView lv(g);
  const std::vector<std::pair<std::vector<unsigned>, std::set<int>>> expected = {
      {{48, 53, 47, 12, 29, 59, 3, 23, 62}, {1, 15, 10, 16, 51, 34, 4, 60, 40}},
      {{33, 43, 31, 24, 58, 55, 6, 46, 61}, {2, 30, 20, 32, 39, 5, 8, 57, 17}}};
  for (const auto& [cyc, leaves_expected] : expected) {
    for (std::size_t i = 0; i < cyc.size(); ++i)
      EXPECT_EQ(g.succ(lv.vertex_of_log(cyc[i])), lv.vertex_of_log(cyc[(i + 1) % cyc.size()]));
    const Component& c = component_with(g, lv.vertex_of_log(cyc[0]));
    EXPECT_EQ(c.cycle.size(), 9u);
    EXPECT_EQ(c.depth, 1u);
    EXPECT_EQ(c.trace_class, TraceClass::B);
    EXPECT_EQ(lv.labels(lv.level(c, 1)), leaves_expected);
  }
  EXPECT_EQ(g.components().size(), 4u);
}

TEST(ThetaGraph64, LeavesAndClassification) {
  const ThetaGraph g(make_field(6));
  const LogView lv(g);
  std::set<int> a_leaves;
  for (Vertex v : leaves(g))
    if (g.trace_class(v) == TraceClass::A) a_leaves.insert(*lv.labels({v}).begin());
  EXPECT_EQ(a_leaves, (std::set<int>{41, 22, 50, 13, 19, 44, 26, 37, 38, 25, 52, 11, 21, 42}));
  EXPECT_EQ(classify_AB(g.spec(), ProjPoint::zero()), TraceClass::A);
  EXPECT_EQ(classify_AB(g.spec(), ProjPoint::infinity()), TraceClass::A);
  EXPECT_EQ(classify_AB(g.spec(), ProjPoint::unit(1)), TraceClass::A);
  EXPECT_EQ(g.trace_class(lv.vertex_of_log(41)), TraceClass::A);
  EXPECT_TRUE(is_periodic(g, ProjPoint::infinity()));
  EXPECT_FALSE(is_periodic(g, ProjPoint::unit(1)));
  EXPECT_TRUE(g.is_periodic(lv.vertex_of_log(45)));
}

TEST(ThetaGraphSmall, GF2) {
  const ThetaGraph g(make_field(1));
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.succ(1), 0u);
  EXPECT_EQ(g.succ(0), g.infinity());
  EXPECT_EQ(g.succ(g.infinity()), g.infinity());
  ASSERT_EQ(g.components().size(), 1u);
  EXPECT_EQ(g.components()[0].depth, 2u);
  EXPECT_EQ(leaves(g), std::vector<Vertex>{1});
  const auto& tr = g.components()[0].trees[0];
  EXPECT_EQ(tr.levels[1].size(), 1u);
  EXPECT_EQ(tr.levels[2].size(), 1u);
}

TEST(ThetaGraphProperties, StructureHoldsForSmallFields) {
  for (unsigned t = 1; t <= 14; ++t) {
    const ThetaGraph g(make_field(t), 2);
    const CheckReport rep = verify_structure(g);
    EXPECT_EQ(rep.checks().size(), 6u);
    for (const auto& c : rep.checks()) EXPECT_TRUE(c.pass) << "t=" << t << ' ' << c.name << ": " << c.detail;
  }
}

TEST(ThetaGraphProperties, GraphInvariants) {
  for (unsigned t = 1; t <= 12; ++t) {
    const ThetaGraph g(make_field(t));
    const FieldSpec& f = g.spec();
    ASSERT_EQ(g.vertex_count(), f.size() + 1);
    std::size_t covered = 0;
    Vertex prev_min = 0;
    for (std::size_t ci = 0; ci < g.components().size(); ++ci) {
      const auto& c = g.components()[ci];
      if (ci > 0) {
        EXPECT_LT(prev_min, c.cycle.front());
      }
      prev_min = c.cycle.front();
      EXPECT_EQ(c.cycle.front(), *std::min_element(c.cycle.begin(), c.cycle.end()));
      for (std::size_t i = 0; i < c.cycle.size(); ++i) {
        EXPECT_EQ(g.succ(c.cycle[i]), c.cycle[(i + 1) % c.cycle.size()]);
        EXPECT_EQ(g.level(c.cycle[i]), 0u);
      }
      EXPECT_EQ(c.trees.size(), c.cycle.size());
      for (const auto& tr : c.trees) {
        EXPECT_EQ(tr.depth(), c.depth);
        for (std::size_t k = 0; k < tr.levels.size(); ++k) {
          covered += tr.levels[k].size();
          for (Vertex v : tr.levels[k]) {
            EXPECT_EQ(g.level(v), k);
            EXPECT_EQ(g.component_of(v), ci);
            if (k > 0) {
              EXPECT_EQ(g.level(g.succ(v)), k - 1);
            }
          }
        }
      }
      const unsigned expected_depth = c.trace_class == TraceClass::A ? f.two_adic() + 2 : 1;
      EXPECT_EQ(c.depth, expected_depth) << "t=" << t;
    }
    EXPECT_EQ(covered, g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      EXPECT_LE(g.in_degree(v), 2u + (v == g.infinity()));
      const Vertex w = g.succ(v);
      if (v != 0 && v != g.infinity() && w != 0 && w != g.infinity()) {
        EXPECT_EQ(g.trace_class(v), g.trace_class(w));
      }
      if (w == 0 || w == g.infinity()) {
        EXPECT_EQ(g.trace_class(v), TraceClass::A);
      }
    }
    for (Vertex v : leaves(g)) {
      EXPECT_NE(v, 0u);
      EXPECT_NE(v, g.infinity());
    }
  }
}

TEST(ThetaGraphProperties, InfinityTreeLevelSizes) {
  for (unsigned t = 1; t <= 12; ++t) {
    const ThetaGraph g(make_field(t));
    const auto& tr = g.components().back().trees[0];
    const unsigned d = g.spec().two_adic() + 2;
    ASSERT_EQ(tr.depth(), d);
    for (unsigned k = 1; k <= d; ++k) EXPECT_EQ(tr.levels[k].size(), k < 2 ? 1u : 1u << (k - 2)) << t << ' ' << k;
  }
}

TEST(ThetaGraphProperties, ExtrasHoldWhereDefined) {
  for (unsigned t = 1; t <= 12; ++t) {
    const ThetaGraph g(make_field(t));
    const CheckReport rep = verify_graph_extras(g);
    for (const auto& c : rep.checks()) EXPECT_TRUE(c.pass) << "t=" << t << ' ' << c.name << ": " << c.detail;
    ASSERT_NE(rep.find("beta-power-sums"), nullptr);
    ASSERT_NE(rep.find("a-leaf-lift-traces"), nullptr);
    if (t % 2 == 0) {
      EXPECT_NE(rep.find("a-leaf-iterate-degrees"), nullptr);
    }
  }
}

TEST(ThetaGraphProperties, LiftedLeafTracesByQuadraticSolving) {
  // independent of the embedding: solve gamma^2 + alpha gamma + 1 = 0 in GF(q^2) by search
  for (unsigned t = 1; t <= 6; ++t) {
    const Field f = make_field(t), big = make_field(2 * t);
    const ThetaGraph g(f);
    const Embedding e(f, big);
    for (Vertex v : leaves(g)) {
      if (g.trace_class(v) != TraceClass::A) continue;
      const Word a = e.map(v);
      unsigned roots = 0;
      for (Word gm = 1; gm < big->size(); ++gm) {
        if ((big->mul(gm, gm) ^ big->mul(a, gm) ^ 1) != 0) continue;
        ++roots;
        EXPECT_EQ(big->trace(gm), 1u);
        EXPECT_EQ(big->trace(big->inv(gm)), 1u);
      }
      EXPECT_EQ(roots, 2u);
    }
  }
}

TEST(ThetaGraphProperties, BetaPowerSumsStayInTheBaseField) {
  for (unsigned t = 1; t <= 10; ++t) {
    const Field f = make_field(t), big = make_field(2 * t);
    const auto h = big->subgroup(f->size() + 1);
    const Word beta = h[1];
    ASSERT_EQ(big->order(beta), f->size() + 1);
    Word bk = 1;
    for (std::uint64_t k = 1; k <= f->size(); ++k) {
      bk = big->mul(bk, beta);
      const Word s = bk ^ big->inv(bk);
      ASSERT_NE(s, 0u);
      ASSERT_TRUE(big->in_subfield(s, t));
    }
  }
}

TEST(ThetaGraphProperties, OmegaSizes) {
  for (unsigned t = 1; t <= 12; ++t) {
    const Field f = make_field(t);
    const auto om = omega_sets(*f);
    EXPECT_EQ(om.omega.size() + om.omega_bar.size(), f->group_order());
    EXPECT_EQ(om.omega.size(), f->size() / 2 - 1);
    EXPECT_EQ(om.omega_bar.size(), f->size() / 2);
  }
}

TEST(ThetaGraphProperties, WorkerCountDoesNotChangeTheGraph) {
  const ThetaGraph a(make_field(13), 1), b(make_field(13), 5);
  for (Vertex v = 0; v < a.vertex_count(); ++v) ASSERT_EQ(a.succ(v), b.succ(v));
  EXPECT_EQ(graph_json(a).dump(), graph_json(b).dump());
}

TEST(ThetaGraphExport, DotIsOneDigraphPerComponent) {
  const ThetaGraph g(make_field(6));
  std::ostringstream os;
  write_dot(os, g);
  const std::string dot = os.str();
  std::size_t digraphs = 0;
  for (auto p = dot.find("digraph"); p != std::string::npos; p = dot.find("digraph", p + 1)) ++digraphs;
  EXPECT_EQ(digraphs, 4u);
  EXPECT_NE(dot.find("\"45\" -> \"27\""), std::string::npos);
  EXPECT_NE(dot.find("\"'0'\" -> \"inf\""), std::string::npos);
  EXPECT_NE(dot.find("\"0\" -> \"'0'\""), std::string::npos);
  EXPECT_NE(dot.find("modulus=5b"), std::string::npos);
  const auto j = graph_json(g);
  EXPECT_EQ(j["components"].size(), 4u);
  EXPECT_EQ(j["components"][3]["cycle"][0], "inf");
}
