#ifndef HYPERFACTOR_SWEEP_HPP
#define HYPERFACTOR_SWEEP_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "hyperfactor/detach.hpp"
#include "hyperfactor/factorize.hpp"
#include "hyperfactor/report.hpp"

namespace hyperfactor {

// Enumerates the non-increasing sequences of positive multiples of `step`
// summing to `total` with at most `max_parts` entries, in reverse
// lexicographic order. A class-degree vector and any permutation of it give
// the same factorization with classes relabelled, so one representative per
// multiset suffices.
class PartitionEnumerator {
 public:
  PartitionEnumerator(Count total, Count step, std::size_t max_parts);

  // Writes the next partition into `out`; false when exhausted.
  bool next(std::vector<Count>& out);

 private:
  bool advance();

  Count total_;
  Count step_;
  std::size_t max_parts_;
  std::vector<Count> parts_;  // in units of step_
  bool started_ = false;
  bool done_ = false;
};

// Number of partitions the enumerator would produce, by dynamic programming.
Count count_partitions(Count total, Count step, std::size_t max_parts);

// Smallest step such that every multiple of it is a feasible class degree:
// 3 / gcd(3, n m).
Count class_degree_step(Count n, Count m);

struct SweepOptions {
  Count min_n = 3;
  Count max_n = 9;
  Count min_lambda = 1;
  Count max_lambda = 2;
  bool multipartite = false;
  Count min_m = 1;
  Count max_m = 1;
  std::size_t max_k = 30;
  // Wall-clock budget over the whole sweep in seconds; 0 means none. Cells
  // cut short are reported as incomplete.
  double time_budget = 0;
  // Per-cell cap on instances; 0 means none.
  std::size_t cell_limit = 0;
  unsigned threads = 1;
  DetachOptions detach;
  // Called for every constructed instance, possibly from several threads.
  std::function<void(const Factorization&, const VerificationReport&)> on_instance;
};

struct SweepCell {
  Count lambda = 0;
  Count n = 0;
  Count m = 0;  // 0 in the complete case
  Count expected = 0;  // feasible r-vectors in the cell
  Count built = 0;
  Count passed = 0;
  Count failed = 0;
  Count steps = 0;
  double seconds = 0;
  bool complete() const { return built == expected; }
  std::vector<std::string> failures;  // first few failing specs
};

struct SweepResult {
  std::vector<SweepCell> cells;
  VerificationReport step_checks;  // merged, when step checks are on
  double seconds = 0;

  bool passed() const;
  bool complete() const;
  Count instances() const;
  std::string to_table() const;
};

SweepResult run_sweep(const SweepOptions& options);

}  // namespace hyperfactor

#endif  // HYPERFACTOR_SWEEP_HPP
