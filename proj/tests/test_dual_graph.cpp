#include <gtest/gtest.h>

#include "dcover/dcover.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace dcover;

namespace {

struct Built {
  ClusterPicture pic;
  MetricGraph graph;
};

Built build(const CoverSpec& s) {
  auto pic = build_cluster_picture(s.branch);
  auto gr = build_dual_graph(pic);
  return {std::move(pic), std::move(gr)};
}

const Chain& chain(const MetricGraph& g, const std::string& id) { return g.chains().at(*g.find_chain(id)); }

bool connected(const MetricGraph& g) {
  std::vector<bool> seen(g.vertices().size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (const auto& c : g.chains())
      for (auto [x, y] : {std::pair{c.from, c.to}, std::pair{c.to, c.from}})
        if (x == v && !seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

}  // namespace

TEST(BuildDualGraph, ExampleGraph) {
  const Built b = build(fixtures::cp_a());
  const MetricGraph& g = b.graph;
  ASSERT_EQ(g.vertices().size(), 4u);
  ASSERT_EQ(g.chains().size(), 4u);
  EXPECT_EQ(g.first_betti_number(), 1);
  const std::size_t root = g.vertex_of(0, 0);
  const std::size_t a = g.vertex_of(b.pic.at("r1,r5,r6,r7"), 0);
  const std::size_t bb = g.vertex_of(b.pic.at("r1,r6,r7"), 0);
  const std::size_t c = g.vertex_of(b.pic.at("r2,r3,r4"), 0);
  EXPECT_EQ(chain(g, "L(r1,r6,r7)").from, bb);
  EXPECT_EQ(chain(g, "L(r1,r6,r7)").to, a);
  EXPECT_EQ(chain(g, "L(r1,r6,r7)").length, 1);
  for (const char* id : {"L(r1,r5,r6,r7,+)", "L(r1,r5,r6,r7,-)"}) {
    EXPECT_EQ(chain(g, id).from, a);
    EXPECT_EQ(chain(g, id).to, root);
    EXPECT_EQ(chain(g, id).length, 1);
  }
  EXPECT_EQ(chain(g, "L(r2,r3,r4)").from, c);
  EXPECT_EQ(chain(g, "L(r2,r3,r4)").to, root);
  EXPECT_EQ(chain(g, "L(r2,r3,r4)").length, 1);
}

TEST(BuildDualGraph, TrivialPicture) {
  const Built b = build(fixtures::cp_b());
  EXPECT_EQ(b.graph.vertices().size(), 1u);
  EXPECT_TRUE(b.graph.chains().empty());
  EXPECT_EQ(b.graph.first_betti_number(), 0);

  BranchDatum two;
  two.labels = {"x", "y"};
  two.depth = DepthMatrix(2);
  const MetricGraph g = build_dual_graph(build_cluster_picture(two));
  EXPECT_EQ(g.vertices().size(), 1u);
  EXPECT_EQ(g.vertices()[0].id, "v(x,y)");
}

TEST(BuildDualGraph, UeberevenTwinPair) {
  const Built b = build(fixtures::cp_d_swap());
  const MetricGraph& g = b.graph;
  ASSERT_EQ(g.vertices().size(), 2u);
  EXPECT_EQ(g.vertices()[0].id, "v(r1,r2,r3,r4,+)");
  EXPECT_EQ(g.vertices()[1].id, "v(r1,r2,r3,r4,-)");
  ASSERT_EQ(g.chains().size(), 2u);
  for (const auto& c : g.chains()) {
    EXPECT_EQ(c.length, 2);
    EXPECT_EQ(c.from, g.vertex_of(0, -1));
    EXPECT_EQ(c.to, g.vertex_of(0, 1));
  }
}

TEST(BuildDualGraph, TwinUnderNonUeberevenRootIsALoop) {
  const Built b = build(fixtures::cp_c(1));
  ASSERT_EQ(b.graph.chains().size(), 1u);
  const Chain& c = b.graph.chains()[0];
  EXPECT_EQ(c.from, c.to);
  EXPECT_EQ(c.length, 4);
  EXPECT_EQ(b.graph.first_betti_number(), 1);
}

TEST(BuildDualGraph, NonIntegralLengthRejected) {
  // A twin at depth 1/4 would need a chain of length 1/2.
  CoverSpec s = fixtures::base(4);
  s.branch.field_degree_e = 4;
  s.branch.depth.set(0, 1, Rational(1, 4));
  EXPECT_THROW(build_dual_graph(build_cluster_picture(s.branch)), GraphError);
  // An odd child at odd relative depth would need half a chain.
  CoverSpec o = fixtures::base(4);
  for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}}) o.branch.depth.set(i, j, 1);
  EXPECT_THROW(build_dual_graph(build_cluster_picture(o.branch)), GraphError);
}

TEST(FrobeniusAutomorphism, SwapOfTwins) {
  const CoverSpec s = fixtures::cp_d_swap();
  const Built b = build(s);
  const GraphAutomorphism aut = frobenius_automorphism(b.graph, b.pic, s.galois);
  EXPECT_EQ(aut.vertex_map, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(aut.chain_map, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(aut.chain_sign, (std::vector<int>{1, 1}));
}

TEST(FrobeniusAutomorphism, IdentityData) {
  for (const CoverSpec& s : {fixtures::cp_a(), fixtures::cp_b(), fixtures::cp_c(1), fixtures::cp_d_identity()}) {
    const Built b = build(s);
    const GraphAutomorphism aut = frobenius_automorphism(b.graph, b.pic, s.galois);
    const GraphAutomorphism id = identity_automorphism(b.graph);
    EXPECT_EQ(aut.vertex_map, id.vertex_map);
    EXPECT_EQ(aut.chain_map, id.chain_map);
    EXPECT_EQ(aut.chain_sign, id.chain_sign);
  }
}

TEST(FrobeniusAutomorphism, TwinSignReversesLoop) {
  const CoverSpec s = fixtures::cp_c(-1);
  const Built b = build(s);
  const GraphAutomorphism aut = frobenius_automorphism(b.graph, b.pic, s.galois);
  EXPECT_EQ(aut.chain_map, std::vector<std::size_t>{0});
  EXPECT_EQ(aut.chain_sign, std::vector<int>{-1});
}

TEST(FrobeniusAutomorphism, UeberevenSignSwapsVertices) {
  CoverSpec s = fixtures::cp_d_identity();
  s.galois.eps = {{"r1,r2,r3,r4", -1}, {"r1,r2", -1}, {"r3,r4", -1}};
  const Built b = build(s);
  const GraphAutomorphism aut = frobenius_automorphism(b.graph, b.pic, s.galois);
  EXPECT_EQ(aut.vertex_map, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(aut.chain_sign, (std::vector<int>{-1, -1}));
}

TEST(FrobeniusAutomorphism, Errors) {
  CoverSpec s = fixtures::cp_c(1);
  s.galois.eps = {{"r5,r6", -1}};
  Built b = build(s);
  EXPECT_THROW(frobenius_automorphism(b.graph, b.pic, s.galois), GraphError);

  // Root sign -1 swaps v(s0,+) and v(s0,-) but a twin sign +1 keeps its
  // chain's orientation: the endpoints no longer match.
  CoverSpec d = fixtures::cp_d_identity();
  d.galois.eps = {{"r1,r2,r3,r4", -1}, {"r1,r2", 1}, {"r3,r4", 1}};
  Built bd = build(d);
  try {
    frobenius_automorphism(bd.graph, bd.pic, d.galois);
    FAIL() << "expected a graph error";
  } catch (const GraphError& e) {
    EXPECT_NE(std::string(e.what()).find("endpoint mismatch"), std::string::npos) << e.what();
  }

  CoverSpec odd = fixtures::cp_a();
  odd.galois.eps = {{"r1,r2,r3,r4,r5,r6,r7,r8", 1}, {"r1,r5,r6,r7", 1}, {"r2,r3,r4", -1}};
  Built bo = build(odd);
  EXPECT_THROW(frobenius_automorphism(bo.graph, bo.pic, odd.galois), GraphError);

  Permutation bad = identity_permutation(8);
  std::swap(bad[0], bad[1]);
  EXPECT_THROW(frobenius_automorphism(bo.graph, bo.pic, bad, {}), ValidationError);
}

TEST(Subdivide, Examples) {
  const UnitGraph d = subdivide(build(fixtures::cp_d_swap()).graph);
  EXPECT_EQ(d.vertex_count, 4u);
  EXPECT_EQ(d.edges.size(), 4u);

  const UnitGraph c = subdivide(build(fixtures::cp_c(1)).graph);
  EXPECT_EQ(c.vertex_count, 4u);
  EXPECT_EQ(c.edges.size(), 4u);

  const UnitGraph a = subdivide(build(fixtures::cp_a()).graph);
  EXPECT_EQ(a.vertex_count, 4u);
  EXPECT_EQ(a.edges.size(), 4u);
}

TEST(Subdivide, ReversedChainLift) {
  const CoverSpec s = fixtures::cp_c(-1);
  const Built b = build(s);
  const UnitGraph u = subdivide(b.graph);
  const UnitAutomorphism ua = lift_automorphism(b.graph, u, frobenius_automorphism(b.graph, b.pic, s.galois));
  // Loop w0 -> w1 -> w2 -> w3 -> w0 reversed: w1 <-> w3, w2 fixed.
  const auto& w = u.chain_vertices[0];
  EXPECT_EQ(ua.vertex_map[w[1]], w[3]);
  EXPECT_EQ(ua.vertex_map[w[2]], w[2]);
  EXPECT_EQ(ua.edge_map, (std::vector<std::size_t>{3, 2, 1, 0}));
  EXPECT_EQ(ua.edge_sign, (std::vector<int>{-1, -1, -1, -1}));
}

TEST(ExportDot, Examples) {
  const std::string b = export_dot(build(fixtures::cp_b()).graph);
  EXPECT_EQ(std::count(b.begin(), b.end(), '\n'), 3);
  EXPECT_EQ(b.find("--"), std::string::npos);

  const std::string a = export_dot(build(fixtures::cp_a()).graph);
  std::size_t edges = 0, pos = 0;
  while ((pos = a.find(" -- ", pos)) != std::string::npos) ++edges, ++pos;
  EXPECT_EQ(edges, 4u);
  pos = 0;
  std::size_t ones = 0;
  while ((pos = a.find("label=\"1\"", pos)) != std::string::npos) ++ones, ++pos;
  EXPECT_EQ(ones, 4u);

  const std::string d = export_dot(build(fixtures::cp_d_swap()).graph);
  EXPECT_NE(d.find("xlabel=\"+\""), std::string::npos);
  EXPECT_NE(d.find("xlabel=\"-\""), std::string::npos);
  pos = 0;
  std::size_t twos = 0;
  while ((pos = d.find("label=\"2\"", pos)) != std::string::npos) ++twos, ++pos;
  EXPECT_EQ(twos, 2u);
  EXPECT_EQ(d, export_dot(build(fixtures::cp_d_swap()).graph));
}

TEST(DualGraphProperties, ConnectedAndBetti) {
  gen::Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    const CoverSpec s = gen::random_semistable(rng);
    const Built b = build(s);
    EXPECT_TRUE(connected(b.graph));
    const UnitGraph u = subdivide(b.graph);
    const std::int64_t betti = static_cast<std::int64_t>(u.edges.size()) - static_cast<std::int64_t>(u.vertex_count) + 1;
    EXPECT_EQ(betti, b.graph.first_betti_number());
    EXPECT_EQ(b.graph.first_betti_number(),
              static_cast<std::int64_t>(b.graph.chains().size()) - static_cast<std::int64_t>(b.graph.vertices().size()) + 1);
    for (const auto& c : b.graph.chains()) EXPECT_GE(c.length, 1);
  }
}

TEST(DualGraphProperties, FrobeniusSquaredEqualsComposition) {
  gen::Rng rng(13);
  int checked = 0;
  for (int t = 0; t < 400 && checked < 60; ++t) {
    const auto sc = gen::random_symmetric(rng);
    const auto pic = build_cluster_picture(sc.spec.branch);
    if (!check_semistable(pic, sc.spec.galois, sc.spec.branch).semistable) continue;
    const MetricGraph g = build_dual_graph(pic);
    const Permutation& sigma = sc.spec.galois.frobenius;
    const auto eps = gen::random_eps(rng, pic);
    GraphAutomorphism once;
    try {
      once = frobenius_automorphism(g, pic, sigma, eps);
    } catch (const GraphError&) {
      continue;  // inconsistent random signs
    }
    validate_automorphism(g, once);
    // eps_s(sigma^2) = eps_s(sigma) * eps_{sigma(s)}(sigma)
    const auto cmap = apply_label_permutation(pic, sigma);
    const auto e = resolve_eps(pic, eps);
    std::map<std::string, int> eps2;
    for (std::size_t s = 0; s < pic.size(); ++s)
      if (pic.cluster(s).size() % 2 == 0) eps2[pic.cluster(s).id] = e[s] * e[cmap[s]];
    const GraphAutomorphism twice = frobenius_automorphism(g, pic, compose(sigma, sigma), eps2);
    const GraphAutomorphism composed = compose(once, once);
    EXPECT_EQ(twice.vertex_map, composed.vertex_map);
    EXPECT_EQ(twice.chain_map, composed.chain_map);
    EXPECT_EQ(twice.chain_sign, composed.chain_sign);
    for (std::size_t c = 0; c < g.chains().size(); ++c)
      EXPECT_EQ(g.chains()[once.chain_map[c]].length, g.chains()[c].length);
    ++checked;
  }
  EXPECT_GE(checked, 20);
}
