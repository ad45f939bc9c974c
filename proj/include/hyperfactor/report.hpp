#ifndef HYPERFACTOR_REPORT_HPP
#define HYPERFACTOR_REPORT_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hyperfactor/approx.hpp"

namespace hyperfactor {

struct CheckLine {
  std::string check;
  std::string subject;
  std::int64_t observed = 0;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  bool pass = false;
};

/**
 * Outcome of a batch of interval checks. Every check is tallied under its
 * name; individual lines are kept for failures (up to a cap) and, when
 * requested, for passes as well. Overall pass iff no check failed.
 */
class VerificationReport {
 public:
  struct Tally {
    std::string check;
    std::size_t passed = 0;
    std::size_t failed = 0;
  };

  static constexpr std::size_t kMaxStoredFailures = 200;

  explicit VerificationReport(bool keep_passing = false) : keep_passing_(keep_passing) {}

  // `subject` is only invoked when a line is stored.
  template <typename SubjectFn>
  bool check(std::string_view name, std::int64_t observed, const ApproxInterval& allowed,
             SubjectFn&& subject) {
    const bool ok = allowed.contains(observed);
    Tally& t = tally_for(name);
    (ok ? t.passed : t.failed) += 1;
    if (!ok) ++failures_;
    if ((!ok && stored_failures_ < kMaxStoredFailures) || (ok && keep_passing_)) {
      if (!ok) ++stored_failures_;
      lines_.push_back({std::string(name), subject(), observed, allowed.lo(), allowed.hi(), ok});
    }
    return ok;
  }

  bool check(std::string_view name, std::int64_t observed, const ApproxInterval& allowed) {
    return check(name, observed, allowed, [] { return std::string(); });
  }

  // Boolean condition recorded as observed 1 against [1,1].
  template <typename SubjectFn>
  bool require(std::string_view name, bool condition, SubjectFn&& subject) {
    return check(name, condition ? 1 : 0, ApproxInterval::exactly(1), subject);
  }

  void merge(const VerificationReport& other);

  bool passed() const { return failures_ == 0; }
  std::size_t failures() const { return failures_; }
  std::size_t checks() const;
  const std::vector<CheckLine>& lines() const { return lines_; }
  const std::vector<Tally>& tallies() const { return tallies_; }
  // Tally for `name`, or zeros.
  Tally tally(std::string_view name) const;

  // Human-readable table: one row per check name, then stored failures.
  std::string to_table() const;

 private:
  Tally& tally_for(std::string_view name);

  bool keep_passing_;
  std::size_t last_tally_ = 0;
  std::size_t failures_ = 0;
  std::size_t stored_failures_ = 0;
  std::vector<Tally> tallies_;
  std::vector<CheckLine> lines_;
};

}  // namespace hyperfactor

#endif  // HYPERFACTOR_REPORT_HPP
