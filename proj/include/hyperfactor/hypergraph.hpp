#ifndef HYPERFACTOR_HYPERGRAPH_HPP
#define HYPERFACTOR_HYPERGRAPH_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "hyperfactor/types.hpp"

namespace hyperfactor {

/**
 * Incidence structure in which every edge is attached to its vertices through
 * individually addressable hinges. A hinge h attaches edge `hinge_edge(h)` to
 * vertex `hinge_vertex(h)`; an edge may meet the same vertex through several
 * hinges, which is how loops and doubly-attached edges are encoded.
 *
 * Parallel edges are distinct EdgeIds. Edges and hinges never change once
 * constructed; only `split_vertex` moves hinges onto a freshly appended vertex.
 */
class Hypergraph {
 public:
  Hypergraph() = default;

  // hinge_vertex[h] and hinge_edge[h] describe hinge h. Every edge in
  // [0, edge_count) needs at least one hinge.
  Hypergraph(std::size_t vertex_count, std::size_t edge_count,
             std::vector<VertexId> hinge_vertex, std::vector<EdgeId> hinge_edge);

  // One entry per edge listing the vertex of each of its hinges, in order.
  // Hinge ids are assigned consecutively edge by edge.
  static Hypergraph from_edges(std::size_t vertex_count,
                               const std::vector<std::vector<VertexId>>& edges);

  std::size_t vertex_count() const { return vertex_hinges_.size(); }
  std::size_t edge_count() const { return edge_offset_.empty() ? 0 : edge_offset_.size() - 1; }
  std::size_t hinge_count() const { return hinge_vertex_.size(); }

  VertexId hinge_vertex(HingeId h) const { return hinge_vertex_[h]; }
  EdgeId hinge_edge(HingeId h) const { return hinge_edge_[h]; }
  std::span<const VertexId> hinge_vertices() const { return hinge_vertex_; }

  // Hinges at v in increasing id order.
  std::span<const HingeId> vertex_hinges(VertexId v) const { return vertex_hinges_[v]; }
  // Hinges of e in increasing id order.
  std::span<const HingeId> edge_hinges(EdgeId e) const {
    return {edge_hinge_list_.data() + edge_offset_[e], edge_hinge_list_.data() + edge_offset_[e + 1]};
  }

  // Number of hinges incident with v. Throws std::out_of_range.
  std::size_t degree(VertexId v) const;

  // True when every edge has exactly three hinges.
  bool is_three_hinge() const;
  // Throws InputError naming the first edge without three hinges.
  void require_three_hinge() const;

  // Attachment multiset of a three-hinge edge.
  TripleKey edge_key(EdgeId e) const;

  // Number of edges whose hinge multiset equals `key`. O(edge_count).
  std::size_t multiplicity(const TripleKey& key) const;

  // Appends a vertex and moves the listed hinges of v onto it. Every moved
  // hinge must currently be incident with v. Returns the new vertex id.
  VertexId split_vertex(VertexId v, std::span<const HingeId> moved);

  // Re-derives the reverse indexes and throws std::logic_error on mismatch.
  void check_consistency() const;

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.vertex_hinges_.size() == b.vertex_hinges_.size() &&
           a.edge_offset_ == b.edge_offset_ && a.hinge_vertex_ == b.hinge_vertex_ &&
           a.hinge_edge_ == b.hinge_edge_;
  }

 private:
  void build_indexes(std::size_t vertex_count, std::size_t edge_count);

  std::vector<VertexId> hinge_vertex_;
  std::vector<EdgeId> hinge_edge_;
  std::vector<std::vector<HingeId>> vertex_hinges_;
  std::vector<std::size_t> edge_offset_;
  std::vector<HingeId> edge_hinge_list_;
};

// Total map edge -> color in {1..k}.
struct Coloring {
  std::size_t k = 1;
  std::vector<Color> edge_color;

  static Coloring uniform(std::size_t edge_count) {
    return Coloring{1, std::vector<Color>(edge_count, 1)};
  }

  Color operator[](EdgeId e) const { return edge_color[e]; }
  // Throws std::invalid_argument if not total over `edge_count` edges or a
  // color is outside {1..k}.
  void validate(std::size_t edge_count) const;
  std::vector<std::size_t> class_sizes() const;

  friend bool operator==(const Coloring&, const Coloring&) = default;
};

// Surjection from detached vertices onto amalgamated vertices together with
// its number function g(w) = |psi^-1(w)|.
class AmalgamationMap {
 public:
  AmalgamationMap() = default;
  // Throws std::invalid_argument when psi is not onto [0, target_count).
  AmalgamationMap(std::vector<VertexId> psi, std::size_t target_count);

  static AmalgamationMap identity(std::size_t n);

  std::size_t source_count() const { return psi_.size(); }
  std::size_t target_count() const { return g_.size(); }
  VertexId operator()(VertexId u) const { return psi_[u]; }
  const std::vector<VertexId>& psi() const { return psi_; }
  const std::vector<Count>& number_function() const { return g_; }
  Count g(VertexId w) const { return g_[w]; }
  // Preimage of w in increasing id order.
  std::vector<VertexId> fiber(VertexId w) const;

 private:
  std::vector<VertexId> psi_;
  std::vector<Count> g_;
};

// Edges of one color class re-densified, with back-maps into the parent.
struct ColorClass {
  Hypergraph graph;
  std::vector<EdgeId> parent_edge;
  std::vector<HingeId> parent_hinge;
};

ColorClass color_class(const Hypergraph& h, const Coloring& c, Color j);

Hypergraph amalgamate(const Hypergraph& h, const AmalgamationMap& psi);

std::vector<std::size_t> degrees(const Hypergraph& h);
// Flat table: entry [v * k + (j - 1)] is the degree of v in color class j.
std::vector<std::size_t> color_degrees(const Hypergraph& h, const Coloring& c);

/**
 * Edge counts per attachment multiset, optionally split by color. Entries are
 * sorted by (key, color); color 0 means the uncolored count. Requires every
 * edge to have three hinges.
 */
class MultiplicityProfile {
 public:
  struct Entry {
    TripleKey key;
    Color color;
    std::size_t count;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  static MultiplicityProfile of(const Hypergraph& h);
  // Holds both the uncolored counts and one entry per (key, color).
  static MultiplicityProfile of(const Hypergraph& h, const Coloring& c);

  std::size_t count(const TripleKey& key, Color color = kAllColors) const;
  const std::vector<Entry>& entries() const { return entries_; }

  friend bool operator==(const MultiplicityProfile&, const MultiplicityProfile&) = default;

 private:
  std::vector<Entry> entries_;
};

// Complete 3-uniform hypergraph with every triple carried by lambda parallel
// edges. Triples in lexicographic order, copies consecutive.
Hypergraph complete_3uniform(Count lambda, std::size_t n);

// A single vertex carrying lambda * C(n,3) three-hinge loops, with g(x) = n.
struct AmalgamatedSeed {
  Hypergraph graph;
  std::vector<Count> g;
};

AmalgamatedSeed amalgamated_seed_single(Count lambda, std::size_t n);
// lambda * m^3 parallel edges on every triple of n vertices, with g = m.
AmalgamatedSeed amalgamated_seed_multipartite(Count lambda, std::size_t n, Count m);

}  // namespace hyperfactor

#endif  // HYPERFACTOR_HYPERGRAPH_HPP
