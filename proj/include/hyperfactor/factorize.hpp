#ifndef HYPERFACTOR_FACTORIZE_HPP
#define HYPERFACTOR_FACTORIZE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "hyperfactor/detach.hpp"
#include "hyperfactor/hypergraph.hpp"

namespace hyperfactor {

/**
 * A requested (r_1, ..., r_k)-factorization. With m == 0 and no part sizes
 * the target is lambda K_n^3; otherwise it is the complete n-partite
 * lambda K^3_{m_1,...,m_n}, where `part_sizes` (if given) lists m_1..m_n and
 * otherwise every part has size m.
 */
struct FactorizationSpec {
  Count lambda = 1;
  Count n = 3;
  Count m = 0;
  std::vector<Count> part_sizes;
  std::vector<Count> r;

  static FactorizationSpec complete(Count lambda, Count n, std::vector<Count> r) {
    return {lambda, n, 0, {}, std::move(r)};
  }
  static FactorizationSpec multipartite(Count lambda, Count n, Count m, std::vector<Count> r) {
    return {lambda, n, m, {}, std::move(r)};
  }

  bool is_multipartite() const { return m > 0 || !part_sizes.empty(); }
  // Common part size: m, the first listed size, or 1 in the complete case.
  Count part_size() const;
  // Degree of every vertex of the target: lambda C(n-1,2) m^2.
  Count degree() const;
  std::string to_string() const;
};

enum class Condition {
  kDomain,        // lambda, n, k, r_i, m out of range
  kEqualParts,    // m_i = m_j
  kDivisibility,  // 3 | r_i n  (3 | r_i m n)
  kDegreeSum,     // sum r_i = lambda C(n-1,2) (times m^2)
};

const char* to_string(Condition c);

struct Violation {
  Condition condition;
  std::string message;
};

// Empty iff the spec is realizable.
std::vector<Violation> check_feasible(const FactorizationSpec& spec);

class InfeasibleSpec : public std::invalid_argument {
 public:
  explicit InfeasibleSpec(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

struct Factorization {
  FactorizationSpec spec;
  Hypergraph graph;
  Coloring coloring;  // class j is the r_j-factor
  // Part of each vertex. In the complete case every vertex is its own part.
  std::vector<VertexId> part_of;
  std::size_t steps = 0;
  VerificationReport step_checks;
};

// Throws InfeasibleSpec before building anything if check_feasible fails.
Factorization factorize_complete(Count lambda, Count n, const std::vector<Count>& r,
                                 const DetachOptions& options = {});
Factorization factorize_multipartite(Count lambda, Count n, Count m, const std::vector<Count>& r,
                                     const DetachOptions& options = {});
Factorization factorize(const FactorizationSpec& spec, const DetachOptions& options = {});

// Colors the loops of the single-vertex seed in consecutive blocks of
// r_j n / 3 loops per color j.
Coloring seed_coloring(Count lambda, Count n, const std::vector<Count>& r);

}  // namespace hyperfactor

#endif  // HYPERFACTOR_FACTORIZE_HPP
