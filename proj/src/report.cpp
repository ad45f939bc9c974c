#include "hyperfactor/report.hpp"

#include <iomanip>
#include <sstream>

namespace hyperfactor {

VerificationReport::Tally& VerificationReport::tally_for(std::string_view name) {
  // Checks usually arrive in runs of the same name.
  if (last_tally_ < tallies_.size() && tallies_[last_tally_].check == name) return tallies_[last_tally_];
  for (std::size_t i = 0; i < tallies_.size(); ++i) {
    if (tallies_[i].check == name) {
      last_tally_ = i;
      return tallies_[i];
    }
  }
  last_tally_ = tallies_.size();
  tallies_.push_back({std::string(name), 0, 0});
  return tallies_.back();
}

VerificationReport::Tally VerificationReport::tally(std::string_view name) const {
  for (const auto& t : tallies_)
    if (t.check == name) return t;
  return {std::string(name), 0, 0};
}

std::size_t VerificationReport::checks() const {
  std::size_t n = 0;
  for (const auto& t : tallies_) n += t.passed + t.failed;
  return n;
}

void VerificationReport::merge(const VerificationReport& other) {
  for (const auto& t : other.tallies_) {
    Tally& mine = tally_for(t.check);
    mine.passed += t.passed;
    mine.failed += t.failed;
  }
  failures_ += other.failures_;
  for (const auto& line : other.lines_) {
    if (!line.pass) {
      if (stored_failures_ >= kMaxStoredFailures) continue;
      ++stored_failures_;
    } else if (!keep_passing_) {
      continue;
    }
    lines_.push_back(line);
  }
}

std::string VerificationReport::to_table() const {
  std::ostringstream os;
  os << std::left << std::setw(34) << "check" << std::right << std::setw(10) << "passed" << std::setw(10)
     << "failed" << "\n";
  for (const auto& t : tallies_)
    os << std::left << std::setw(34) << t.check << std::right << std::setw(10) << t.passed << std::setw(10)
       << t.failed << "\n";
  for (const auto& line : lines_) {
    if (line.pass) continue;
    os << "FAIL " << line.check << " " << line.subject << ": observed " << line.observed << ", allowed ["
       << line.lo << "," << line.hi << "]\n";
  }
  os << (passed() ? "PASS" : "FAIL") << " (" << checks() << " checks, " << failures_ << " failed)\n";
  return os.str();
}

}  // namespace hyperfactor
