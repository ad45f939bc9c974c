#include <gtest/gtest.h>

#include "hyperfactor/approx.hpp"
#include "hyperfactor/detach.hpp"
#include "hyperfactor/factorize.hpp"
#include "hyperfactor/verify.hpp"

using namespace hyperfactor;

namespace {

// Rebuilds h with hinge x moved to vertex `to`.
Hypergraph with_hinge_moved(const Hypergraph& h, HingeId x, VertexId to) {
  std::vector<VertexId> hv(h.hinge_vertices().begin(), h.hinge_vertices().end());
  std::vector<EdgeId> he(h.hinge_count());
  for (HingeId i = 0; i < h.hinge_count(); ++i) he[i] = h.hinge_edge(i);
  hv[x] = to;
  return Hypergraph(h.vertex_count(), h.edge_count(), std::move(hv), std::move(he));
}

}  // namespace

TEST(Approx, IntervalsAreExact) {
  EXPECT_EQ(ApproxInterval(10, 4).lo(), 2);
  EXPECT_EQ(ApproxInterval(10, 4).hi(), 3);
  EXPECT_EQ(ApproxInterval(12, 4).lo(), 3);
  EXPECT_EQ(ApproxInterval(12, 4).hi(), 3);
  EXPECT_EQ(ApproxInterval(-3, 2).lo(), -2);
  EXPECT_EQ(ApproxInterval(-3, 2).hi(), -1);
  EXPECT_TRUE(ApproxInterval(0, 7).contains(0));
  EXPECT_FALSE(ApproxInterval(0, 7).contains(1));
  // Large values stay exact where a double would round.
  const std::int64_t big = (std::int64_t{1} << 53) + 1;
  EXPECT_EQ(ApproxInterval(big, 1).lo(), big);
  EXPECT_THROW(ApproxInterval(1, 0), std::invalid_argument);
}

TEST(Report, TalliesAndFailures) {
  VerificationReport r;
  r.check("degree", 3, ApproxInterval(5, 2), [] { return std::string("v0"); });
  r.check("degree", 1, ApproxInterval(5, 2), [] { return std::string("v1"); });
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.failures(), 1u);
  EXPECT_EQ(r.checks(), 2u);
  EXPECT_EQ(r.tally("degree").passed, 1u);
  ASSERT_EQ(r.lines().size(), 1u);
  EXPECT_EQ(r.lines()[0].subject, "v1");
  VerificationReport other;
  other.require("coloring", true, [] { return std::string(); });
  other.merge(r);
  EXPECT_EQ(other.checks(), 3u);
  EXPECT_EQ(other.failures(), 1u);
  EXPECT_NE(other.to_table().find("degree"), std::string::npos);
}

TEST(VerifyDetachment, IdentityPasses) {
  const Hypergraph f = complete_3uniform(1, 5);
  const Coloring c = Coloring::uniform(f.edge_count());
  const std::vector<Count> g(5, 1);
  const auto report = verify_detachment(f, c, g, f, c, AmalgamationMap::identity(5));
  EXPECT_TRUE(report.passed()) << report.to_table();
  EXPECT_GT(report.tally("degree").passed, 0u);
  EXPECT_GT(report.tally("multiplicity").passed, 0u);
}

TEST(VerifyDetachment, MismatchedMapThrows) {
  const Hypergraph f = complete_3uniform(1, 5);
  const Coloring c = Coloring::uniform(f.edge_count());
  EXPECT_THROW(verify_detachment(f, c, std::vector<Count>(5, 1), f, c, AmalgamationMap::identity(4)),
               std::invalid_argument);
  EXPECT_THROW(verify_detachment(f, c, std::vector<Count>{2, 1, 1, 1}, f, c, AmalgamationMap::identity(5)),
               std::invalid_argument);
}

// Moving one hinge between two siblings keeps the amalgamation intact but
// breaks the equitable degree or multiplicity sharing.
TEST(VerifyDetachment, SingleHingeMutationsAreDetected) {
  const AmalgamatedSeed seed = amalgamated_seed_single(1, 6);
  const Coloring c = seed_coloring(1, 6, {5, 5});
  const Detachment d = detach_all(seed.graph, c, seed.g);
  ASSERT_TRUE(verify_detachment(seed.graph, c, seed.g, d.graph, d.coloring, d.psi).passed());
  std::size_t detected = 0, tried = 0;
  for (HingeId x = 0; x < d.graph.hinge_count(); x += 7)
    for (VertexId to = 0; to < 6; ++to) {
      if (to == d.graph.hinge_vertex(x)) continue;
      ++tried;
      const Hypergraph bad = with_hinge_moved(d.graph, x, to);
      const auto report = verify_detachment(seed.graph, c, seed.g, bad, d.coloring, d.psi);
      detected += !report.passed();
      EXPECT_FALSE(report.passed()) << "hinge " << x << " to " << to;
      EXPECT_GT(report.tally("degree").failed + report.tally("multiplicity").failed +
                    report.tally("three-uniform").failed,
                0u);
    }
  EXPECT_EQ(detected, tried);
}

TEST(VerifyDetachment, RecoloringIsDetected) {
  const AmalgamatedSeed seed = amalgamated_seed_single(1, 6);
  const Coloring c = seed_coloring(1, 6, {5, 5});
  const Detachment d = detach_all(seed.graph, c, seed.g);
  Coloring recolored = d.coloring;
  recolored.edge_color[0] = recolored.edge_color[0] == 1 ? 2 : 1;
  const auto report = verify_detachment(seed.graph, c, seed.g, d.graph, recolored, d.psi);
  EXPECT_FALSE(report.passed());
  EXPECT_GT(report.tally("coloring").failed, 0u);
}

TEST(VerifyFactorization, RecoloredEdgeBreaksTwoClasses) {
  Factorization fz = factorize_complete(1, 9, std::vector<Count>(28, 1));
  ASSERT_TRUE(verify_factorization(fz).passed());
  fz.coloring.edge_color[0] = fz.coloring.edge_color[0] == 1 ? 2 : 1;
  const auto report = verify_factorization(fz);
  EXPECT_FALSE(report.passed());
  // Three vertices drop to degree 0 in one class and rise to 2 in another.
  EXPECT_EQ(report.tally("class-degree").failed, 6u);
}

TEST(VerifyFactorization, MovedHingeBreaksProfile) {
  Factorization fz = factorize_complete(1, 6, {5, 5});
  fz.graph = with_hinge_moved(fz.graph, 0, fz.graph.hinge_vertex(1));
  EXPECT_FALSE(verify_factorization(fz).passed());
}

TEST(VerifyFactorization, NonTransversalEdgeInMultipartiteTarget) {
  Factorization fz = factorize_multipartite(1, 3, 2, {2, 2});
  ASSERT_TRUE(verify_factorization(fz).passed());
  // Put the first hinge of edge 0 on the other vertex of its part.
  const HingeId x = fz.graph.edge_hinges(0)[0];
  const VertexId v = fz.graph.hinge_vertex(x);
  VertexId twin = 0;
  for (VertexId u = 0; u < fz.part_of.size(); ++u)
    if (u != v && fz.part_of[u] == fz.part_of[v]) twin = u;
  fz.graph = with_hinge_moved(fz.graph, x, twin);
  const auto report = verify_factorization(fz);
  EXPECT_FALSE(report.passed());
}

TEST(VerifyFactorization, WrongSpecIsReported) {
  Factorization fz = factorize_complete(1, 6, {5, 5});
  fz.spec.r = {4, 6};
  EXPECT_FALSE(verify_factorization(fz).passed());
}

TEST(Oracle, EnumeratesAllSolutions) {
  const auto all = oracle_equitable(4, {{0, 1, 2, 3}}, {}, 2);
  EXPECT_EQ(all.size(), 6u);
  EXPECT_EQ(oracle_equitable(0, {}, {}, 3), std::vector<std::uint32_t>{0});
}
