#include "hyperfactor/hypergraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hyperfactor {

std::string TripleKey::to_string() const {
  return "{" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) + "}";
}

Hypergraph::Hypergraph(std::size_t vertex_count, std::size_t edge_count,
                       std::vector<VertexId> hinge_vertex, std::vector<EdgeId> hinge_edge)
    : hinge_vertex_(std::move(hinge_vertex)), hinge_edge_(std::move(hinge_edge)) {
  if (hinge_vertex_.size() != hinge_edge_.size())
    throw std::invalid_argument("hinge maps have different lengths");
  for (HingeId h = 0; h < hinge_vertex_.size(); ++h) {
    if (hinge_vertex_[h] >= vertex_count)
      throw std::invalid_argument("hinge " + std::to_string(h) + " attached to unknown vertex");
    if (hinge_edge_[h] >= edge_count)
      throw std::invalid_argument("hinge " + std::to_string(h) + " attached to unknown edge");
  }
  build_indexes(vertex_count, edge_count);
  for (EdgeId e = 0; e < edge_count; ++e) {
    if (edge_offset_[e] == edge_offset_[e + 1])
      throw std::invalid_argument("edge " + std::to_string(e) + " has no hinge");
  }
}

Hypergraph Hypergraph::from_edges(std::size_t vertex_count,
                                  const std::vector<std::vector<VertexId>>& edges) {
  std::vector<VertexId> hv;
  std::vector<EdgeId> he;
  for (EdgeId e = 0; e < edges.size(); ++e) {
    for (VertexId v : edges[e]) {
      hv.push_back(v);
      he.push_back(e);
    }
  }
  return Hypergraph(vertex_count, edges.size(), std::move(hv), std::move(he));
}

void Hypergraph::build_indexes(std::size_t vertex_count, std::size_t edge_count) {
  vertex_hinges_.assign(vertex_count, {});
  edge_offset_.assign(edge_count + 1, 0);
  std::vector<std::size_t> degree(vertex_count, 0);
  for (VertexId v : hinge_vertex_) ++degree[v];
  for (VertexId v = 0; v < vertex_count; ++v) vertex_hinges_[v].reserve(degree[v]);
  for (HingeId h = 0; h < hinge_vertex_.size(); ++h) {
    vertex_hinges_[hinge_vertex_[h]].push_back(h);
    ++edge_offset_[hinge_edge_[h] + 1];
  }
  for (std::size_t e = 0; e < edge_count; ++e) edge_offset_[e + 1] += edge_offset_[e];
  edge_hinge_list_.assign(hinge_vertex_.size(), 0);
  std::vector<std::size_t> fill(edge_offset_.begin(), edge_offset_.end() - 1);
  for (HingeId h = 0; h < hinge_edge_.size(); ++h) edge_hinge_list_[fill[hinge_edge_[h]]++] = h;
}

std::size_t Hypergraph::degree(VertexId v) const {
  if (v >= vertex_count())
    throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
  return vertex_hinges_[v].size();
}

bool Hypergraph::is_three_hinge() const {
  for (std::size_t e = 0; e < edge_count(); ++e)
    if (edge_offset_[e + 1] - edge_offset_[e] != 3) return false;
  return true;
}

void Hypergraph::require_three_hinge() const {
  for (std::size_t e = 0; e < edge_count(); ++e) {
    const std::size_t n = edge_offset_[e + 1] - edge_offset_[e];
    if (n != 3)
      throw InputError("edge " + std::to_string(e) + " has " + std::to_string(n) +
                       " hinges; every edge needs exactly 3");
  }
}

TripleKey Hypergraph::edge_key(EdgeId e) const {
  auto hs = edge_hinges(e);
  if (hs.size() != 3)
    throw std::invalid_argument("edge " + std::to_string(e) + " does not have 3 hinges");
  return TripleKey::of(hinge_vertex_[hs[0]], hinge_vertex_[hs[1]], hinge_vertex_[hs[2]]);
}

std::size_t Hypergraph::multiplicity(const TripleKey& key) const {
  for (VertexId x : key.v)
    if (x >= vertex_count()) throw std::out_of_range("vertex " + std::to_string(x) + " out of range");
  std::size_t count = 0;
  for (EdgeId e = 0; e < edge_count(); ++e)
    if (edge_key(e) == key) ++count;
  return count;
}

VertexId Hypergraph::split_vertex(VertexId v, std::span<const HingeId> moved) {
  if (v >= vertex_count()) throw std::out_of_range("split_vertex: vertex out of range");
  const auto fresh = static_cast<VertexId>(vertex_hinges_.size());
  for (HingeId h : moved) {
    if (h >= hinge_count() || hinge_vertex_[h] != v)
      throw std::invalid_argument("split_vertex: hinge " + std::to_string(h) +
                                  " is not incident with vertex " + std::to_string(v));
    hinge_vertex_[h] = fresh;
  }
  std::vector<HingeId> kept;
  std::vector<HingeId> taken;
  kept.reserve(vertex_hinges_[v].size() - moved.size());
  taken.reserve(moved.size());
  for (HingeId h : vertex_hinges_[v]) (hinge_vertex_[h] == fresh ? taken : kept).push_back(h);
  if (taken.size() != moved.size())
    throw std::invalid_argument("split_vertex: duplicate hinge in moved set");
  vertex_hinges_[v] = std::move(kept);
  vertex_hinges_.push_back(std::move(taken));
  return fresh;
}

void Hypergraph::check_consistency() const {
  std::size_t seen = 0;
  for (VertexId v = 0; v < vertex_hinges_.size(); ++v) {
    const auto& hs = vertex_hinges_[v];
    if (!std::is_sorted(hs.begin(), hs.end()))
      throw std::logic_error("vertex index not sorted at " + std::to_string(v));
    for (HingeId h : hs)
      if (hinge_vertex_[h] != v) throw std::logic_error("vertex index mismatch at hinge " + std::to_string(h));
    seen += hs.size();
  }
  if (seen != hinge_count()) throw std::logic_error("vertex index does not cover every hinge");
  for (EdgeId e = 0; e < edge_count(); ++e) {
    auto hs = edge_hinges(e);
    if (hs.empty()) throw std::logic_error("edge " + std::to_string(e) + " has no hinge");
    for (HingeId h : hs)
      if (hinge_edge_[h] != e) throw std::logic_error("edge index mismatch at hinge " + std::to_string(h));
  }
}

void Coloring::validate(std::size_t edge_count) const {
  if (edge_color.size() != edge_count)
    throw std::invalid_argument("coloring covers " + std::to_string(edge_color.size()) +
                                " edges, expected " + std::to_string(edge_count));
  if (k == 0) throw std::invalid_argument("coloring needs at least one color");
  for (std::size_t e = 0; e < edge_color.size(); ++e) {
    if (edge_color[e] < 1 || edge_color[e] > k)
      throw std::invalid_argument("edge " + std::to_string(e) + " has color " +
                                  std::to_string(edge_color[e]) + " outside 1.." + std::to_string(k));
  }
}

std::vector<std::size_t> Coloring::class_sizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (Color c : edge_color) ++sizes[c - 1];
  return sizes;
}

AmalgamationMap::AmalgamationMap(std::vector<VertexId> psi, std::size_t target_count)
    : psi_(std::move(psi)), g_(target_count, 0) {
  for (VertexId u = 0; u < psi_.size(); ++u) {
    if (psi_[u] >= target_count)
      throw std::invalid_argument("amalgamation maps vertex " + std::to_string(u) + " outside target");
    ++g_[psi_[u]];
  }
  for (VertexId w = 0; w < target_count; ++w)
    if (g_[w] == 0)
      throw std::invalid_argument("amalgamation is not surjective: vertex " + std::to_string(w) +
                                  " has empty preimage");
}

AmalgamationMap AmalgamationMap::identity(std::size_t n) {
  std::vector<VertexId> psi(n);
  for (VertexId v = 0; v < n; ++v) psi[v] = v;
  return AmalgamationMap(std::move(psi), n);
}

std::vector<VertexId> AmalgamationMap::fiber(VertexId w) const {
  std::vector<VertexId> out;
  for (VertexId u = 0; u < psi_.size(); ++u)
    if (psi_[u] == w) out.push_back(u);
  return out;
}

ColorClass color_class(const Hypergraph& h, const Coloring& c, Color j) {
  if (j < 1 || j > c.k) throw std::invalid_argument("color " + std::to_string(j) + " out of range");
  ColorClass out;
  std::vector<EdgeId> new_id(h.edge_count(), 0);
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    if (c[e] == j) {
      new_id[e] = static_cast<EdgeId>(out.parent_edge.size());
      out.parent_edge.push_back(e);
    }
  }
  std::vector<VertexId> hv;
  std::vector<EdgeId> he;
  for (EdgeId e : out.parent_edge) {
    for (HingeId hg : h.edge_hinges(e)) {
      out.parent_hinge.push_back(hg);
      hv.push_back(h.hinge_vertex(hg));
      he.push_back(new_id[e]);
    }
  }
  out.graph = Hypergraph(h.vertex_count(), out.parent_edge.size(), std::move(hv), std::move(he));
  return out;
}

Hypergraph amalgamate(const Hypergraph& h, const AmalgamationMap& psi) {
  if (psi.source_count() != h.vertex_count())
    throw std::invalid_argument("amalgamation map domain does not match vertex count");
  std::vector<VertexId> hv(h.hinge_count());
  std::vector<EdgeId> he(h.hinge_count());
  for (HingeId x = 0; x < h.hinge_count(); ++x) {
    hv[x] = psi(h.hinge_vertex(x));
    he[x] = h.hinge_edge(x);
  }
  return Hypergraph(psi.target_count(), h.edge_count(), std::move(hv), std::move(he));
}

std::vector<std::size_t> degrees(const Hypergraph& h) {
  std::vector<std::size_t> d(h.vertex_count());
  for (VertexId v = 0; v < h.vertex_count(); ++v) d[v] = h.vertex_hinges(v).size();
  return d;
}

std::vector<std::size_t> color_degrees(const Hypergraph& h, const Coloring& c) {
  std::vector<std::size_t> d(h.vertex_count() * c.k, 0);
  for (HingeId x = 0; x < h.hinge_count(); ++x)
    ++d[h.hinge_vertex(x) * c.k + (c[h.hinge_edge(x)] - 1)];
  return d;
}

namespace {

template <typename KeyOf>
std::vector<MultiplicityProfile::Entry> tally(std::size_t n, KeyOf key_of) {
  std::vector<std::pair<TripleKey, Color>> keys;
  keys.reserve(n);
  for (std::size_t i = 0; i < n; ++i) key_of(i, keys);
  std::sort(keys.begin(), keys.end());
  std::vector<MultiplicityProfile::Entry> out;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    out.push_back({keys[i].first, keys[i].second, j - i});
    i = j;
  }
  return out;
}

}  // namespace

MultiplicityProfile MultiplicityProfile::of(const Hypergraph& h) {
  MultiplicityProfile p;
  p.entries_ = tally(h.edge_count(), [&](std::size_t e, auto& keys) {
    keys.emplace_back(h.edge_key(static_cast<EdgeId>(e)), kAllColors);
  });
  return p;
}

MultiplicityProfile MultiplicityProfile::of(const Hypergraph& h, const Coloring& c) {
  c.validate(h.edge_count());
  MultiplicityProfile p;
  p.entries_ = tally(h.edge_count(), [&](std::size_t e, auto& keys) {
    const TripleKey key = h.edge_key(static_cast<EdgeId>(e));
    keys.emplace_back(key, kAllColors);
    keys.emplace_back(key, c[static_cast<EdgeId>(e)]);
  });
  return p;
}

std::size_t MultiplicityProfile::count(const TripleKey& key, Color color) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{key, color},
                             [](const Entry& e, const std::pair<TripleKey, Color>& k) {
                               return std::pair{e.key, e.color} < k;
                             });
  return (it != entries_.end() && it->key == key && it->color == color) ? it->count : 0;
}

Hypergraph complete_3uniform(Count lambda, std::size_t n) {
  if (n < 3) throw std::invalid_argument("complete_3uniform needs n >= 3");
  if (lambda < 1) throw std::invalid_argument("complete_3uniform needs lambda >= 1");
  const std::size_t edges = lambda * binomial(n, 3);
  std::vector<VertexId> hv;
  std::vector<EdgeId> he(3 * edges);
  hv.reserve(3 * edges);
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b)
      for (VertexId c = b + 1; c < n; ++c)
        for (Count copy = 0; copy < lambda; ++copy) hv.insert(hv.end(), {a, b, c});
  for (std::size_t i = 0; i < he.size(); ++i) he[i] = static_cast<EdgeId>(i / 3);
  return Hypergraph(n, edges, std::move(hv), std::move(he));
}

AmalgamatedSeed amalgamated_seed_single(Count lambda, std::size_t n) {
  if (n < 3) throw std::invalid_argument("seed needs n >= 3");
  if (lambda < 1) throw std::invalid_argument("seed needs lambda >= 1");
  const std::size_t loops = lambda * binomial(n, 3);
  std::vector<EdgeId> he(3 * loops);
  for (std::size_t i = 0; i < he.size(); ++i) he[i] = static_cast<EdgeId>(i / 3);
  return {Hypergraph(1, loops, std::vector<VertexId>(3 * loops, 0), std::move(he)), {n}};
}

AmalgamatedSeed amalgamated_seed_multipartite(Count lambda, std::size_t n, Count m) {
  if (m < 1) throw std::invalid_argument("seed needs m >= 1");
  return {complete_3uniform(lambda * m * m * m, n), std::vector<Count>(n, m)};
}

}  // namespace hyperfactor
