#ifndef HYPERFACTOR_VERIFY_HPP
#define HYPERFACTOR_VERIFY_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "hyperfactor/factorize.hpp"
#include "hyperfactor/hypergraph.hpp"
#include "hyperfactor/laminar.hpp"
#include "hyperfactor/report.hpp"

namespace hyperfactor {

// Degrees and edge multiplicities around alpha, taken just before a split.
struct StepSnapshot {
  VertexId alpha = kNoVertex;
  Count g_alpha = 0;
  std::size_t degree = 0;
  std::vector<std::size_t> color_degree;  // index j-1
  // Keys containing alpha; color 0 holds the uncolored count.
  std::vector<MultiplicityProfile::Entry> around;
};

StepSnapshot capture_step(const Hypergraph& h, const Coloring& c, VertexId alpha, Count g_alpha);

// Checks the relations between the hypergraph before a split (the snapshot)
// and after it, where `new_vertex` received the hinges split off alpha.
// Uncolored and per-color versions are recorded under separate names.
void check_step(const StepSnapshot& before, const Hypergraph& after, const Coloring& c,
                VertexId new_vertex, VerificationReport& report);

/**
 * Checks that `detached` with amalgamation `psi` is a 3-uniform g-detachment
 * of `source` with degrees and multiplicities equitably shared out:
 *   degree, degree/color             d(u) ≈ d(x)/g(x)
 *   multiplicity, multiplicity/color m(u,v,w) ≈ m(x,y,z)/g̃(x,y,z)
 * plus three-uniformity, edge correspondence under psi, identical coloring,
 * and zero source multiplicity on triples that have no representatives.
 * Throws std::invalid_argument if psi does not match the two vertex sets or
 * has fibers of the wrong size.
 */
VerificationReport verify_detachment(const Hypergraph& source, const Coloring& source_coloring,
                                     std::span<const Count> g, const Hypergraph& detached,
                                     const Coloring& detached_coloring, const AmalgamationMap& psi,
                                     bool keep_passing = false);

// Regularity of every class, edge partition and exact multiplicity profile
// of lambda K_n^3 (parts of size 1) or lambda K^3_{m,...,m}.
VerificationReport verify_factorization(const Factorization& fz, bool keep_passing = false);

inline constexpr std::size_t kOracleMaxGround = 20;

// All subsets Z (as bit masks) meeting every member within [floor, ceil] of
// |P|/parts, by exhaustive enumeration. Throws std::invalid_argument when the
// ground set exceeds kOracleMaxGround.
std::vector<std::uint32_t> oracle_equitable(std::size_t ground_size, const std::vector<Subset>& a,
                                            const std::vector<Subset>& b, Count parts);

std::uint32_t subset_mask(const EquitableSubset& z);

}  // namespace hyperfactor

#endif  // HYPERFACTOR_VERIFY_HPP
