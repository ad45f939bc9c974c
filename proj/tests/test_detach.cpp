#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "hyperfactor/detach.hpp"
#include "hyperfactor/factorize.hpp"
#include "hyperfactor/verify.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace hyperfactor;

namespace {

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// Vertex `alpha` lies on `count` edges {alpha, a_i, b_i} with fresh partners.
Hypergraph fan(std::size_t count) {
  std::vector<std::vector<VertexId>> edges;
  for (VertexId i = 0; i < count; ++i) edges.push_back({0, 1 + 2 * i, 2 + 2 * i});
  return Hypergraph::from_edges(1 + 2 * count, edges);
}

}  // namespace

TEST(Detach, GTildeCountsRepresentativeTriples) {
  const std::vector<Count> g{4, 3, 2};
  EXPECT_EQ(g_tilde(TripleKey::of(0, 0, 0), g), binom(4, 3));
  EXPECT_EQ(g_tilde(TripleKey::of(0, 0, 1), g), binom(4, 2) * 3);
  EXPECT_EQ(g_tilde(TripleKey::of(2, 1, 1), g), binom(3, 2) * 2);
  EXPECT_EQ(g_tilde(TripleKey::of(0, 1, 2), g), 24u);
  EXPECT_EQ(g_tilde(TripleKey::of(2, 0, 1), g), g_tilde(TripleKey::of(1, 2, 0), g));
  EXPECT_EQ(g_tilde(TripleKey::of(2, 2, 2), g), 0u);  // C(2,3)
}

TEST(Detach, UnitNumberFunctionLeavesInputUnchanged) {
  const Hypergraph f = complete_3uniform(2, 5);
  const Coloring c = Coloring::uniform(f.edge_count());
  const std::vector<Count> g(5, 1);
  const Detachment d = detach_all(f, c, g);
  EXPECT_EQ(d.steps, 0u);
  EXPECT_EQ(d.graph, f);
  EXPECT_EQ(d.coloring, c);
  EXPECT_EQ(d.psi.psi(), AmalgamationMap::identity(5).psi());
}

TEST(Detach, EvenSplitOfTenHinges) {
  const Hypergraph f = fan(10);
  std::vector<Count> g(f.vertex_count(), 1);
  g[0] = 2;
  DetachmentState state = DetachmentState::start(f, Coloring::uniform(10), g);
  ASSERT_EQ(state.remaining_steps(), 1u);
  const StepOutcome out = detach_one(state, 0);
  EXPECT_EQ(out.moved, 5u);
  EXPECT_EQ(state.graph.degree(out.new_vertex), 5u);
  EXPECT_EQ(state.graph.degree(0), 5u);
  EXPECT_EQ(state.g[0], 1u);
  EXPECT_EQ(state.g[out.new_vertex], 1u);
  EXPECT_EQ(state.origin[out.new_vertex], 0u);
  EXPECT_TRUE(state.done());
}

TEST(Detach, OddDegreeSplitsWithinOne) {
  const Hypergraph f = fan(7);
  std::vector<Count> g(f.vertex_count(), 1);
  g[0] = 3;
  const Detachment d = detach_all(f, Coloring::uniform(7), g);
  EXPECT_EQ(d.steps, 2u);
  for (VertexId u : d.psi.fiber(0)) {
    EXPECT_GE(d.graph.degree(u), 2u);
    EXPECT_LE(d.graph.degree(u), 3u);
  }
}

// A loop keeps at most one hinge on the new vertex in a single split.
TEST(Detach, LoopsNeverCollapseOntoTheNewVertex) {
  for (Count g0 : {3u, 4u, 5u}) {
    const Hypergraph f = Hypergraph::from_edges(2, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 1}, {0, 1, 1}});
    DetachmentState state = DetachmentState::start(f, Coloring::uniform(5), {g0, 2});
    const VertexId fresh = detach_one(state, 0).new_vertex;
    for (EdgeId e = 0; e < 3; ++e) {
      const TripleKey key = state.graph.edge_key(e);
      EXPECT_TRUE(key == TripleKey::of(0, 0, 0) || key == TripleKey::of(0, 0, fresh)) << "g=" << g0;
    }
    EXPECT_EQ(state.graph.multiplicity(TripleKey::of(fresh, fresh, fresh)), 0u);
    EXPECT_EQ(state.graph.multiplicity(TripleKey::of(0, fresh, fresh)), 0u);
  }
}

TEST(Detach, DoublyAttachedEdgesNeverDoubleOntoTheNewVertex) {
  for (Count g0 : {2u, 3u}) {
    const Hypergraph f = Hypergraph::from_edges(3, {{0, 0, 1}, {0, 0, 1}, {0, 0, 2}, {0, 1, 2}});
    DetachmentState state = DetachmentState::start(f, Coloring::uniform(4), {g0, 1, 1});
    const VertexId fresh = detach_one(state, 0).new_vertex;
    for (EdgeId e = 0; e < 3; ++e) {
      const TripleKey key = state.graph.edge_key(e);
      EXPECT_LE(key.count_of(fresh), 1);
      if (g0 == 2) EXPECT_EQ(key.count_of(0), 1);  // floor(2/2) = ceil(2/2) = 1 moves
    }
  }
}

TEST(Detach, AlphaPolicyLowestOriginalFirst) {
  const Hypergraph f = Hypergraph::from_edges(3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}, {0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
  std::vector<VertexId> chosen;
  DetachOptions options;
  options.observer = [&](const StepRecord& r) { chosen.push_back(r.alpha); };
  const std::vector<Count> g{3, 1, 2};
  const Detachment d = detach_all(f, Coloring::uniform(6), g, options);
  EXPECT_EQ(chosen, (std::vector<VertexId>{0, 0, 2}));
  EXPECT_EQ(d.graph.vertex_count(), 6u);

  DetachmentState state = DetachmentState::start(f, Coloring::uniform(6), g);
  EXPECT_EQ(choose_alpha(state), 0u);
  detach_one(state, 0);
  detach_one(state, 0);
  EXPECT_EQ(choose_alpha(state), 2u);
  detach_one(state, 2);
  EXPECT_EQ(choose_alpha(state), kNoVertex);
}

TEST(Detach, StandingAssumptionViolationsNameTheVertex) {
  const Hypergraph loops = Hypergraph::from_edges(2, {{1, 1, 1}, {0, 1, 1}});
  try {
    detach_all(loops, Coloring::uniform(2), std::vector<Count>{1, 2});
    FAIL() << "loop at a vertex with g = 2 accepted";
  } catch (const InputError& e) {
    EXPECT_EQ(e.vertex(), 1u);
  }
  const Hypergraph degenerate = Hypergraph::from_edges(2, {{0, 0, 1}});
  try {
    detach_all(degenerate, Coloring::uniform(1), std::vector<Count>{1, 3});
    FAIL() << "doubly attached edge at a vertex with g = 1 accepted";
  } catch (const InputError& e) {
    EXPECT_EQ(e.vertex(), 0u);
  }
  EXPECT_NO_THROW(detach_all(loops, Coloring::uniform(2), std::vector<Count>{1, 3}));
  EXPECT_THROW(detach_all(Hypergraph::from_edges(2, {{0, 1}}), Coloring::uniform(1), std::vector<Count>{2, 2}),
               InputError);
  EXPECT_THROW(detach_all(degenerate, Coloring::uniform(1), std::vector<Count>{2}), InputError);
  EXPECT_THROW(detach_all(degenerate, Coloring::uniform(1), std::vector<Count>{0, 2}), InputError);
}

TEST(Detach, PreconditionOnAlpha) {
  DetachmentState state = DetachmentState::start(fan(2), Coloring::uniform(2), std::vector<Count>(5, 1));
  EXPECT_THROW(build_step_families(state, 0), std::invalid_argument);
  EXPECT_THROW(detach_one(state, 0), std::invalid_argument);
}

// Families on the single-vertex seed, enumerated by hand: A holds the whole
// hinge set, the one color class and one three-hinge set per loop; B holds
// the pair {x,x} and its single color restriction.
TEST(Detach, SeedFamiliesByDirectEnumeration) {
  const AmalgamatedSeed seed = amalgamated_seed_single(1, 5);
  DetachmentState state = DetachmentState::start(seed.graph, Coloring::uniform(10), seed.g);
  const StepFamilies fam = build_step_families(state, 0);
  ASSERT_EQ(fam.ground.size(), 30u);
  ASSERT_EQ(fam.a.size(), 2u + 10u);
  EXPECT_EQ(fam.a[0].kind, SetKind::kAtVertex);
  EXPECT_EQ(fam.a[1].kind, SetKind::kColor);
  EXPECT_EQ(fam.a[0].elements, fam.a[1].elements);
  for (std::size_t i = 2; i < fam.a.size(); ++i) {
    EXPECT_EQ(fam.a[i].kind, SetKind::kEdgeColor);
    EXPECT_EQ(fam.a[i].elements.size(), 3u);
    for (ElementId x : fam.a[i].elements) EXPECT_EQ(seed.graph.hinge_edge(fam.ground[x]), fam.a[i].edge);
  }
  ASSERT_EQ(fam.b.size(), 2u);
  EXPECT_EQ(fam.b[0].kind, SetKind::kPair);
  EXPECT_EQ(fam.b[0].u, 0u);
  EXPECT_EQ(fam.b[0].v, 0u);
  EXPECT_EQ(fam.b[1].kind, SetKind::kPairColor);
  EXPECT_EQ(fam.b[0].elements.size(), 30u);
  // k = 1: the color set duplicates the whole set and collapses.
  EXPECT_EQ(LaminarFamily::build(30, fam.a_sets()).size(), 11u);
  EXPECT_EQ(LaminarFamily::build(30, fam.b_sets()).size(), 1u);
}

TEST(Detach, NoDoublyAttachedEdgesMeansNoEdgeSets) {
  const Hypergraph f = complete_3uniform(1, 5);
  Coloring c{2, std::vector<Color>(f.edge_count(), 1)};
  for (EdgeId e = 0; e < f.edge_count(); e += 3) c.edge_color[e] = 2;
  DetachmentState state = DetachmentState::start(f, c, std::vector<Count>{2, 1, 1, 1, 1});
  const StepFamilies fam = build_step_families(state, 0);
  EXPECT_EQ(fam.a.size(), 3u);  // H(alpha), H_1, H_2
  for (const auto& m : fam.a) EXPECT_NE(m.kind, SetKind::kEdgeColor);
  // B: every pair {u,v} of the four other vertices, with its color splits.
  std::size_t pairs = 0, pair_colors = 0;
  for (const auto& m : fam.b) (m.kind == SetKind::kPair ? pairs : pair_colors) += 1;
  EXPECT_EQ(pairs, 6u);
  EXPECT_EQ(pair_colors, 6u);  // one edge per pair, so one color each
}

TEST(Detach, SeedDetachesToCompleteHypergraphWithOneRegularClasses) {
  const AmalgamatedSeed seed = amalgamated_seed_single(1, 9);
  const Coloring c = seed_coloring(1, 9, std::vector<Count>(28, 1));
  DetachOptions options;
  options.step_checks = true;
  const Detachment d = detach_all(seed.graph, c, seed.g, options);
  EXPECT_EQ(d.steps, 8u);
  EXPECT_TRUE(d.step_checks.passed()) << d.step_checks.to_table();
  EXPECT_GT(d.step_checks.checks(), 0u);
  const auto mult = oracle::multiplicities(d.graph);
  EXPECT_EQ(mult.size(), 84u);
  for (const auto& [key, count] : mult) {
    EXPECT_EQ(count, 1u);
    EXPECT_TRUE(key[0] < key[1] && key[1] < key[2]);
  }
  for (Color j = 1; j <= 28; ++j)
    for (std::size_t deg : oracle::class_degrees(d.graph, d.coloring, j)) EXPECT_EQ(deg, 1u);
  EXPECT_TRUE(verify_detachment(seed.graph, c, seed.g, d.graph, d.coloring, d.psi).passed());
}

TEST(Detach, MultipartiteSeedIntoTwoSixRegularClasses) {
  const AmalgamatedSeed seed = amalgamated_seed_multipartite(1, 4, 2);
  // Four of the eight parallel edges on every triple go to each class.
  Coloring c{2, std::vector<Color>(seed.graph.edge_count(), 1)};
  for (EdgeId e = 0; e < seed.graph.edge_count(); ++e) c.edge_color[e] = (e % 8) < 4 ? 1 : 2;
  EXPECT_EQ(c.class_sizes(), (std::vector<std::size_t>{16, 16}));
  const Detachment d = detach_all(seed.graph, c, seed.g);
  EXPECT_EQ(d.graph.vertex_count(), 8u);
  std::vector<VertexId> part(8);
  for (VertexId u = 0; u < 8; ++u) part[u] = d.psi(u);
  Factorization fz{FactorizationSpec::multipartite(1, 4, 2, {6, 6}), d.graph, d.coloring, part};
  EXPECT_EQ(oracle::factorization_problem(d.graph, d.coloring, part, 1, 4, 2, {6, 6}), "");
  EXPECT_TRUE(verify_factorization(fz).passed());
}

TEST(Detach, AmalgamatingTheResultRestoresTheProfile) {
  const AmalgamatedSeed seed = amalgamated_seed_single(2, 6);
  const Coloring c = seed_coloring(2, 6, {10, 10});
  const Detachment d = detach_all(seed.graph, c, seed.g);
  const Hypergraph back = amalgamate(d.graph, d.psi);
  EXPECT_EQ(MultiplicityProfile::of(back, d.coloring), MultiplicityProfile::of(seed.graph, c));
  EXPECT_EQ(degrees(back), degrees(seed.graph));
  EXPECT_EQ(d.coloring, c);
}

TEST(Detach, TraceHasOneJsonLinePerStep) {
  const AmalgamatedSeed seed = amalgamated_seed_single(1, 6);
  std::ostringstream trace;
  DetachOptions options;
  options.trace = &trace;
  const Detachment d = detach_all(seed.graph, seed_coloring(1, 6, {10}), seed.g, options);
  std::istringstream lines(trace.str());
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j.at("step").get<std::size_t>(), count);
    EXPECT_EQ(j.at("g_alpha").get<Count>(), 6u - count);
    for (const char* key : {"alpha", "a_sets", "b_sets", "z"}) EXPECT_TRUE(j.contains(key));
    ++count;
  }
  EXPECT_EQ(count, d.steps);
}

// Random detachable inputs: every step's subset satisfies both families,
// lies in the exhaustively enumerated solution set when small enough, and
// the end result passes the detachment verifier and the step checks.
TEST(Detach, RandomInstancesSatisfyEveryRelation) {
  std::mt19937 rng(77);
  std::size_t oracle_steps = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    std::vector<Count> g(n);
    for (auto& x : g) x = 1 + rng() % 4;
    std::vector<std::vector<VertexId>> edges;
    const std::size_t want = 1 + rng() % 8;
    for (std::size_t tries = 0; edges.size() < want && tries < 200; ++tries) {
      std::vector<VertexId> e{static_cast<VertexId>(rng() % n), static_cast<VertexId>(rng() % n),
                              static_cast<VertexId>(rng() % n)};
      const TripleKey key = TripleKey::of(e[0], e[1], e[2]);
      bool ok = true;
      for (VertexId v : e) {
        const auto c = key.count_of(v);
        if ((c == 3 && g[v] < 3) || (c == 2 && g[v] < 2)) ok = false;
      }
      if (ok) edges.push_back(e);
    }
    if (edges.empty()) continue;
    const Hypergraph f = Hypergraph::from_edges(n, edges);
    Coloring c{1 + static_cast<Count>(rng() % 3), {}};
    for (std::size_t e = 0; e < edges.size(); ++e) c.edge_color.push_back(1 + rng() % c.k);

    DetachOptions options;
    options.step_checks = true;
    options.observer = [&](const StepRecord& r) {
      EXPECT_TRUE(verify_equitable(r.a, r.b, r.g_alpha, r.z).empty());
      if (r.families.ground.size() <= 12) {
        const auto all = oracle_equitable(r.families.ground.size(), r.families.a_sets(), r.families.b_sets(), r.g_alpha);
        EXPECT_TRUE(std::binary_search(all.begin(), all.end(), subset_mask(r.z)));
        ++oracle_steps;
      }
    };
    const Detachment d = detach_all(f, c, g, options);
    std::size_t expected_steps = 0;
    for (Count x : g) expected_steps += x - 1;
    EXPECT_EQ(d.steps, expected_steps);
    EXPECT_TRUE(d.step_checks.passed()) << "trial " << trial << "\n" << d.step_checks.to_table();
    const auto report = verify_detachment(f, c, g, d.graph, d.coloring, d.psi);
    EXPECT_TRUE(report.passed()) << "trial " << trial << "\n" << report.to_table();
  }
  EXPECT_GT(oracle_steps, 100u);
}
