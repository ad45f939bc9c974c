#ifndef HYPERFACTOR_APPROX_HPP
#define HYPERFACTOR_APPROX_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hyperfactor {

// The relation x ≈ p/q, i.e. floor(p/q) <= x <= ceil(p/q), in exact integer
// arithmetic. Numerators may be negative (only ever in malformed inputs), the
// denominator must be positive.
class ApproxInterval {
 public:
  constexpr ApproxInterval(std::int64_t numerator, std::int64_t denominator)
      : num_(numerator), den_(denominator) {
    if (den_ <= 0) throw std::invalid_argument("ApproxInterval: denominator must be positive");
  }

  static constexpr ApproxInterval exactly(std::int64_t value) { return {value, 1}; }

  constexpr std::int64_t numerator() const { return num_; }
  constexpr std::int64_t denominator() const { return den_; }

  constexpr std::int64_t lo() const {
    std::int64_t q = num_ / den_;
    return (num_ % den_ != 0 && num_ < 0) ? q - 1 : q;
  }
  constexpr std::int64_t hi() const {
    std::int64_t q = num_ / den_;
    return (num_ % den_ != 0 && num_ > 0) ? q + 1 : q;
  }

  constexpr bool contains(std::int64_t x) const { return lo() <= x && x <= hi(); }

  std::string to_string() const {
    return "[" + std::to_string(lo()) + "," + std::to_string(hi()) + "] ~ " +
           std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace hyperfactor

#endif  // HYPERFACTOR_APPROX_HPP
