#ifndef HYPERFACTOR_DETACH_HPP
#define HYPERFACTOR_DETACH_HPP

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hyperfactor/hypergraph.hpp"
#include "hyperfactor/laminar.hpp"
#include "hyperfactor/report.hpp"

namespace hyperfactor {

// Number of detached representative triples of an amalgamated triple:
// C(g(x),3) for {x,x,x}, C(g(x),2) g(y) for {x,x,y}, g(x) g(y) g(z) otherwise.
Count g_tilde(const TripleKey& key, std::span<const Count> g);

enum class SetKind {
  kAtVertex,   // every hinge at alpha
  kColor,      // hinges at alpha on edges of one color
  kEdgeColor,  // hinges at alpha of one edge meeting alpha at least twice
  kPair,       // hinges at alpha on edges {alpha,u,v}
  kPairColor,  // the same, restricted to one color
};

struct FamilyMember {
  SetKind kind;
  Color color = 0;
  EdgeId edge = 0;
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;
  Subset elements;  // indices into StepFamilies::ground

  std::string label() const;
};

// The two laminar families used to split alpha, over the hinges at alpha.
struct StepFamilies {
  VertexId alpha = kNoVertex;
  std::vector<HingeId> ground;  // hinges at alpha, increasing
  std::vector<FamilyMember> a;
  std::vector<FamilyMember> b;

  std::vector<Subset> a_sets() const;
  std::vector<Subset> b_sets() const;
};

/**
 * Working state of an iterated detachment. `g` is the remaining number
 * function of each current vertex and `origin` its image in the original
 * hypergraph. Every step lowers sum(g - 1) by exactly one.
 */
struct DetachmentState {
  Hypergraph graph;
  Coloring coloring;
  std::vector<Count> g;
  std::vector<VertexId> origin;
  std::size_t step = 0;

  // Validates the input (see validate_detachable) and sets origin = identity.
  static DetachmentState start(Hypergraph f, Coloring c, std::vector<Count> g);

  std::size_t remaining_steps() const;
  bool done() const { return remaining_steps() == 0; }
};

struct StepRecord {
  std::size_t step;
  VertexId alpha;
  Count g_alpha;
  VertexId new_vertex;
  const StepFamilies& families;
  const LaminarFamily& a;
  const LaminarFamily& b;
  const EquitableSubset& z;
};

// Called after every split. Must be thread-safe when shared across workers.
using StepObserver = std::function<void(const StepRecord&)>;

struct DetachOptions {
  // Check the per-step split relations after each step.
  bool step_checks = false;
  StepObserver observer;
  // JSON-lines step trace, one object per step.
  std::ostream* trace = nullptr;

  // step_checks enabled by HYPERFACTOR_DEBUG_CHECKS=1.
  static DetachOptions from_environment();
};

// Throws InputError unless every edge has three hinges, g is positive on
// every vertex, no loop sits at a vertex with g <= 2 and no doubly-attached
// edge sits at a vertex with g = 1.
void validate_detachable(const Hypergraph& f, const Coloring& c, std::span<const Count> g);

// Lowest (origin, current id) among vertices with g >= 2; kNoVertex if none.
VertexId choose_alpha(const DetachmentState& state);

StepFamilies build_step_families(const DetachmentState& state, VertexId alpha);

struct StepOutcome {
  VertexId new_vertex;
  std::size_t moved;
};

// Splits one vertex off alpha, moving an equitable subset of its hinges.
// With options.step_checks the split relations are appended to `checks`.
StepOutcome detach_one(DetachmentState& state, VertexId alpha, const DetachOptions& options = {},
                       VerificationReport* checks = nullptr);

struct Detachment {
  Hypergraph graph;
  Coloring coloring;
  AmalgamationMap psi;
  // Position of each vertex within its fiber (0 for the lowest id).
  std::vector<Count> copy_index;
  std::size_t steps = 0;
  VerificationReport step_checks;
};

// Full g-detachment: repeats detach_one until every g is 1.
Detachment detach_all(const Hypergraph& f, const Coloring& c, std::span<const Count> g,
                      const DetachOptions& options = {});

}  // namespace hyperfactor

#endif  // HYPERFACTOR_DETACH_HPP
