#ifndef HYPERFACTOR_TYPES_HPP
#define HYPERFACTOR_TYPES_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace hyperfactor {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using HingeId = std::uint32_t;

// Colors are 1-based; 0 is reserved for "all colors" in profiles.
using Color = std::uint32_t;
using Count = std::uint64_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr Color kAllColors = 0;

// Raised when an input violates a structural precondition (three-hinge
// edges, number-function thresholds). `vertex` names the offender when known.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what, VertexId vertex = kNoVertex)
      : std::invalid_argument(what), vertex_(vertex) {}
  VertexId vertex() const { return vertex_; }

 private:
  VertexId vertex_;
};

enum class EdgeShape { kLoop, kDegenerate, kDistinct };

// Sorted vertex multiset {x,y,z} identifying the attachment pattern of a
// three-hinge edge.
struct TripleKey {
  std::array<VertexId, 3> v{};

  static constexpr TripleKey of(VertexId a, VertexId b, VertexId c) {
    TripleKey k{{a, b, c}};
    if (k.v[0] > k.v[1]) std::swap(k.v[0], k.v[1]);
    if (k.v[1] > k.v[2]) std::swap(k.v[1], k.v[2]);
    if (k.v[0] > k.v[1]) std::swap(k.v[0], k.v[1]);
    return k;
  }

  constexpr EdgeShape shape() const {
    if (v[0] == v[2]) return EdgeShape::kLoop;
    if (v[0] == v[1] || v[1] == v[2]) return EdgeShape::kDegenerate;
    return EdgeShape::kDistinct;
  }

  constexpr int count_of(VertexId x) const {
    return (v[0] == x) + (v[1] == x) + (v[2] == x);
  }

  constexpr bool contains(VertexId x) const { return count_of(x) > 0; }

  // Replaces every occurrence of `from` by `to` and re-sorts.
  constexpr TripleKey substituted(VertexId from, VertexId to) const {
    return of(v[0] == from ? to : v[0], v[1] == from ? to : v[1],
              v[2] == from ? to : v[2]);
  }

  std::string to_string() const;

  friend constexpr auto operator<=>(const TripleKey&, const TripleKey&) = default;
};

constexpr Count binomial(Count n, Count k) {
  if (k > n) return 0;
  Count r = 1;
  for (Count i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace hyperfactor

#endif  // HYPERFACTOR_TYPES_HPP
