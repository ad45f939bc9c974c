#ifndef HYPERFACTOR_LAMINAR_HPP
#define HYPERFACTOR_LAMINAR_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperfactor/types.hpp"

namespace hyperfactor {

using ElementId = std::uint32_t;
using Subset = std::vector<ElementId>;

inline constexpr std::size_t kNoSet = static_cast<std::size_t>(-1);

// Two members of a family that properly cross. Indices refer to the input list.
class LaminarError : public std::invalid_argument {
 public:
  LaminarError(std::size_t first, std::size_t second)
      : std::invalid_argument("sets " + std::to_string(first) + " and " + std::to_string(second) +
                              " cross (neither nested nor disjoint)"),
        first_(first),
        second_(second) {}
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

/**
 * A laminar family over the ground set {0, ..., ground_size-1} stored as a
 * forest. Duplicate and empty members are dropped; each remaining node keeps
 * the indices of the input sets it stands for.
 */
class LaminarFamily {
 public:
  struct Node {
    Subset members;                    // sorted
    std::size_t parent = kNoSet;       // smallest strict superset in the family
    std::vector<std::size_t> sources;  // input indices collapsed into this node
  };

  LaminarFamily() = default;

  // validate_laminar: throws LaminarError on a crossing pair and
  // std::out_of_range on an element outside the ground set.
  static LaminarFamily build(std::size_t ground_size, std::vector<Subset> sets);

  std::size_t ground_size() const { return ground_size_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  // Deepest node containing element e, or kNoSet.
  std::size_t owner(ElementId e) const { return owner_[e]; }

  // Nodes are ordered so that every parent precedes its children.
  void check_forest() const;

 private:
  std::size_t ground_size_ = 0;
  std::vector<Node> nodes_;
  std::vector<std::size_t> owner_;
};

struct EquitableSubset {
  Subset members;  // sorted
  std::vector<bool> mask;

  bool contains(ElementId e) const { return mask[e]; }
  std::size_t size() const { return members.size(); }
};

/**
 * Chooses Z with floor(|P|/parts) <= |Z ∩ P| <= ceil(|P|/parts) for every
 * member P of both families. Solved as an integral feasible circulation on
 * the network formed by the two forests; the fractional point 1/parts is
 * always feasible, so failure indicates a bug and raises std::logic_error.
 */
EquitableSubset equitable_subset(std::size_t ground_size, const LaminarFamily& a,
                                 const LaminarFamily& b, Count parts);

struct EquitableViolation {
  char family;  // 'A' or 'B'
  std::size_t node;
  std::size_t set_size;
  std::size_t hits;
  std::size_t lo;
  std::size_t hi;

  std::string to_string() const;
};

std::vector<EquitableViolation> verify_equitable(const LaminarFamily& a, const LaminarFamily& b,
                                                 Count parts, const EquitableSubset& z);

// The circulation network in Graphviz DOT form, arcs labelled [lo,hi].
std::string constraint_network_dot(std::size_t ground_size, const LaminarFamily& a,
                                   const LaminarFamily& b, Count parts);

}  // namespace hyperfactor

#endif  // HYPERFACTOR_LAMINAR_HPP
