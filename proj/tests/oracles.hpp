#ifndef HYPERFACTOR_TESTS_ORACLES_HPP
#define HYPERFACTOR_TESTS_ORACLES_HPP

// Brute-force reference computations used to derive expected values. They
// deliberately avoid the library's indexes and profiles: everything is
// recomputed from the raw hinge arrays.

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "hyperfactor/hypergraph.hpp"
#include "hyperfactor/laminar.hpp"

namespace oracle {

using namespace hyperfactor;

// Vertex list of every edge, read straight from hinge_vertex/hinge_edge.
inline std::vector<std::vector<VertexId>> edge_lists(const Hypergraph& h) {
  std::vector<std::vector<VertexId>> out(h.edge_count());
  for (HingeId x = 0; x < h.hinge_count(); ++x) out[h.hinge_edge(x)].push_back(h.hinge_vertex(x));
  for (auto& e : out) std::sort(e.begin(), e.end());
  return out;
}

inline std::vector<std::size_t> degrees(const Hypergraph& h) {
  std::vector<std::size_t> d(h.vertex_count(), 0);
  for (HingeId x = 0; x < h.hinge_count(); ++x) ++d[h.hinge_vertex(x)];
  return d;
}

// Multiset of vertices -> number of edges, optionally restricted to a color.
inline std::map<std::vector<VertexId>, std::size_t> multiplicities(const Hypergraph& h, const Coloring* c = nullptr,
                                                                   Color j = 0) {
  std::map<std::vector<VertexId>, std::size_t> m;
  const auto lists = edge_lists(h);
  for (EdgeId e = 0; e < lists.size(); ++e)
    if (!c || (*c)[e] == j) ++m[lists[e]];
  return m;
}

// Degree of every vertex in color class j.
inline std::vector<std::size_t> class_degrees(const Hypergraph& h, const Coloring& c, Color j) {
  std::vector<std::size_t> d(h.vertex_count(), 0);
  for (HingeId x = 0; x < h.hinge_count(); ++x)
    if (c[h.hinge_edge(x)] == j) ++d[h.hinge_vertex(x)];
  return d;
}

// Partitions of `total` into at most `max_parts` positive multiples of
// `step`, by plain recursion on the largest part.
inline unsigned long long partitions(long long total, long long step, long long max_parts, long long largest) {
  if (total == 0) return 1;
  if (max_parts == 0) return 0;
  unsigned long long n = 0;
  for (long long p = std::min(total, largest) / step * step; p >= step; p -= step)
    n += partitions(total - p, step, max_parts - 1, p);
  return n;
}

// Checks every clause of an (r_1..r_k)-factorization of lambda K_n^3 or of
// lambda K^3_{m,...,m} directly from the definition. Returns an empty
// string on success, otherwise the first problem found.
inline std::string factorization_problem(const Hypergraph& h, const Coloring& c, const std::vector<VertexId>& part,
                                         Count lambda, Count n, Count m, const std::vector<Count>& r) {
  if (h.vertex_count() != n * m) return "vertex count";
  if (part.size() != h.vertex_count()) return "part labels";
  std::vector<Count> part_size(n, 0);
  for (VertexId p : part) {
    if (p >= n) return "part label out of range";
    ++part_size[p];
  }
  for (Count s : part_size)
    if (s != m) return "part size";
  const auto lists = edge_lists(h);
  for (const auto& e : lists) {
    if (e.size() != 3) return "edge size";
    if (part[e[0]] == part[e[1]] || part[e[1]] == part[e[2]] || part[e[0]] == part[e[2]]) return "non-transversal edge";
  }
  for (Color j = 1; j <= r.size(); ++j) {
    const auto d = class_degrees(h, c, j);
    for (std::size_t v = 0; v < d.size(); ++v)
      if (d[v] != r[j - 1]) return "class " + std::to_string(j) + " degree at vertex " + std::to_string(v);
  }
  for (EdgeId e = 0; e < lists.size(); ++e)
    if (c[e] < 1 || c[e] > r.size()) return "color out of range";
  // Every transversal triple exactly lambda times.
  const auto mult = multiplicities(h);
  std::size_t transversal = 0;
  const auto V = static_cast<VertexId>(h.vertex_count());
  for (VertexId a = 0; a < V; ++a)
    for (VertexId b = a + 1; b < V; ++b)
      for (VertexId d = b + 1; d < V; ++d) {
        const bool across = part[a] != part[b] && part[b] != part[d] && part[a] != part[d];
        auto it = mult.find({a, b, d});
        const std::size_t got = it == mult.end() ? 0 : it->second;
        if (got != (across ? lambda : 0)) return "multiplicity of {" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(d) + "}";
        transversal += across;
      }
  if (lists.size() != lambda * transversal) return "edge count";
  return {};
}

// Random laminar family over {0..ground-1}: recursively split random
// blocks, keeping a random selection of the blocks produced.
inline std::vector<Subset> random_laminar(std::size_t ground, std::mt19937& rng) {
  std::vector<Subset> out;
  std::vector<ElementId> all(ground);
  for (ElementId i = 0; i < ground; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  std::uniform_int_distribution<int> coin(0, 2);
  std::vector<std::vector<ElementId>> stack{all};
  while (!stack.empty()) {
    auto block = std::move(stack.back());
    stack.pop_back();
    if (block.empty()) continue;
    if (coin(rng) != 0) {
      Subset s = block;
      std::sort(s.begin(), s.end());
      out.push_back(s);
    }
    if (block.size() == 1) continue;
    std::uniform_int_distribution<std::size_t> cut(1, block.size() - 1);
    const std::size_t k = cut(rng);
    // Drop a random tail sometimes so siblings need not cover the parent.
    std::vector<ElementId> left(block.begin(), block.begin() + k), right(block.begin() + k, block.end());
    if (coin(rng) == 0 && right.size() > 1) right.pop_back();
    stack.push_back(left);
    stack.push_back(right);
  }
  return out;
}

}  // namespace oracle

#endif  // HYPERFACTOR_TESTS_ORACLES_HPP
