#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "hyperfactor/detach.hpp"
#include "hyperfactor/factorize.hpp"
#include "hyperfactor/io.hpp"
#include "hyperfactor/verify.hpp"

using namespace hyperfactor;
using nlohmann::json;

TEST(Io, HypergraphRoundTripKeepsHingeOrder) {
  const Hypergraph h = Hypergraph::from_edges(7, {{0}, {1, 1, 2, 3, 3}, {3, 4, 5}});
  const json doc = to_json(h);
  EXPECT_EQ(doc.at("vertices"), 7);
  EXPECT_EQ(doc.at("edges")[1].at("hinges"), json::array({1, 1, 2, 3, 3}));
  EXPECT_FALSE(doc.at("edges")[0].contains("color"));
  const ColoredHypergraph back = hypergraph_from_json(doc);
  EXPECT_EQ(back.graph, h);
  EXPECT_EQ(back.coloring, Coloring::uniform(3));
}

TEST(Io, ColoredHypergraphRoundTrip) {
  const Hypergraph h = complete_3uniform(1, 5);
  Coloring c{4, std::vector<Color>(h.edge_count(), 2)};
  c.edge_color[3] = 1;
  const ColoredHypergraph back = hypergraph_from_json(to_json(h, &c));
  EXPECT_EQ(back.graph, h);
  EXPECT_EQ(back.coloring, c);  // k = 4 survives even though color 4 is unused
}

TEST(Io, BareVertexListsAndDerivedColorCount) {
  const json doc = json::parse(R"({"vertices": 3, "edges": [[0, 1, 2], {"hinges": [2, 2, 1]}]})");
  const ColoredHypergraph g = hypergraph_from_json(doc);
  EXPECT_EQ(g.graph.edge_key(1), TripleKey::of(1, 2, 2));
  const json colored = json::parse(R"({"vertices": 3, "edges": [{"hinges": [0, 1, 2], "color": 3}]})");
  EXPECT_EQ(hypergraph_from_json(colored).coloring.k, 3u);
}

TEST(Io, MalformedHypergraphsAreRejected) {
  for (const char* text : {
           R"([])",
           R"({"edges": []})",
           R"({"vertices": -1, "edges": []})",
           R"({"vertices": 2, "edges": [[0, 2, 1]]})",
           R"({"vertices": 2, "edges": [[]]})",
           R"({"vertices": 2, "edges": [{"id": 1, "hinges": [0, 1, 1]}]})",
           R"({"vertices": 2, "edges": [{"hinges": [0, 1, 1], "color": 1}, [0, 0, 1]]})",
           R"({"vertices": 2, "edges": [{"hinges": [0, 1, 1], "color": 0}]})",
           R"({"vertices": 2, "colors": 1, "edges": [{"hinges": [0, 1, 1], "color": 2}]})",
           R"({"vertices": 99999999999, "edges": []})",
           R"({"vertices": 2, "edges": "none"})",
       })
    EXPECT_THROW(hypergraph_from_json(json::parse(text)), FormatError) << text;
}

TEST(Io, SpecRoundTrip) {
  for (const FactorizationSpec& s : {FactorizationSpec::complete(2, 9, {1, 2, 3}),
                                     FactorizationSpec::multipartite(1, 4, 2, {6, 6}),
                                     FactorizationSpec{1, 3, 0, {2, 2, 2}, {2, 2}}}) {
    const FactorizationSpec back = spec_from_json(to_json(s));
    EXPECT_EQ(back.lambda, s.lambda);
    EXPECT_EQ(back.n, s.n);
    EXPECT_EQ(back.m, s.m);
    EXPECT_EQ(back.part_sizes, s.part_sizes);
    EXPECT_EQ(back.r, s.r);
  }
}

// Round trips of random feasible factorizations: the reloaded object has the
// same multiset of colored triples and still verifies.
TEST(Io, RandomFactorizationRoundTrips) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const Count n = 3 + rng() % 5;
    const Count step = n % 3 == 0 ? 1 : 3;
    Count left = (n - 1) * (n - 2) / 2;
    if (left % step) continue;
    std::vector<Count> r;
    while (left) {
      Count x = step * (1 + rng() % (left / step));
      r.push_back(x);
      left -= x;
    }
    const Factorization fz = factorize_complete(1, n, r);
    const json doc = to_json(fz);
    const Factorization back = factorization_from_json(json::parse(doc.dump()));
    EXPECT_EQ(MultiplicityProfile::of(back.graph, back.coloring), MultiplicityProfile::of(fz.graph, fz.coloring));
    EXPECT_EQ(back.part_of, fz.part_of);
    EXPECT_EQ(back.spec.r, r);
    EXPECT_TRUE(verify_factorization(back).passed());
    EXPECT_EQ(to_json(back).at("factors"), doc.at("factors"));
  }
}

TEST(Io, MalformedFactorizationsAreRejected) {
  const json good = to_json(factorize_complete(1, 3, {1}));
  EXPECT_NO_THROW(factorization_from_json(good));
  json missing = good;
  missing.erase("factors");
  EXPECT_THROW(factorization_from_json(missing), FormatError);
  json bad_vertex = good;
  bad_vertex["factors"][0]["edges"][0][0] = 17;
  EXPECT_THROW(factorization_from_json(bad_vertex), FormatError);
  json no_spec = good;
  no_spec.erase("spec");
  EXPECT_THROW(factorization_from_json(no_spec), FormatError);
}

TEST(Io, DetachmentRoundTrip) {
  const AmalgamatedSeed seed = amalgamated_seed_single(1, 6);
  const Coloring c = seed_coloring(1, 6, {5, 5});
  const Detachment d = detach_all(seed.graph, c, seed.g);
  const DetachedDocument back = detachment_from_json(to_json(d));
  EXPECT_EQ(back.detached.graph, d.graph);
  EXPECT_EQ(back.detached.coloring, d.coloring);
  EXPECT_EQ(back.psi.psi(), d.psi.psi());
  EXPECT_TRUE(verify_detachment(seed.graph, c, seed.g, back.detached.graph, back.detached.coloring, back.psi)
                  .passed());
  json bad = to_json(d);
  bad["amalgamation"]["psi"].erase(0);
  EXPECT_THROW(detachment_from_json(bad), FormatError);
}

TEST(Io, ReportSerialization) {
  VerificationReport r;
  r.check("degree", 1, ApproxInterval(5, 2), [] { return std::string("v1"); });
  const json doc = to_json(r);
  EXPECT_EQ(doc.at("passed"), false);
  EXPECT_EQ(doc.at("failed"), 1);
  EXPECT_EQ(doc.at("failures")[0].at("subject"), "v1");
}

TEST(Io, CountListsExpandRepeats) {
  EXPECT_EQ(parse_count_list("2,2,1x3"), (std::vector<Count>{2, 2, 1, 1, 1}));
  EXPECT_EQ(parse_count_list(" 5 "), std::vector<Count>{5});
  EXPECT_EQ(parse_count_list("1x28").size(), 28u);
  for (const char* bad : {"", "a", "1,,2", "1x0", "-1", "2x", "1x999999999"})
    EXPECT_THROW(parse_count_list(bad), std::invalid_argument) << bad;
}

TEST(Io, NumberFunctionDefaultsToOne) {
  EXPECT_EQ(parse_number_function("0:3,2:2", 4), (std::vector<Count>{3, 1, 2, 1}));
  EXPECT_EQ(parse_number_function("", 2), (std::vector<Count>{1, 1}));
  EXPECT_THROW(parse_number_function("5:2", 4), std::invalid_argument);
  EXPECT_THROW(parse_number_function("0=2", 4), std::invalid_argument);
}

TEST(Io, FilesRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "hyperfactor_io_test.json";
  const json doc = to_json(complete_3uniform(1, 4));
  write_json_file(path.string(), doc);
  EXPECT_EQ(read_json_file(path.string()), doc);
  std::filesystem::remove(path);
  EXPECT_THROW(read_json_file(path.string()), std::runtime_error);
}
