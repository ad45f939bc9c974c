#include "hyperfactor/laminar.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "flow.hpp"

namespace hyperfactor {

LaminarFamily LaminarFamily::build(std::size_t ground_size, std::vector<Subset> sets) {
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!s.empty() && s.back() >= ground_size)
      throw std::out_of_range("element " + std::to_string(s.back()) + " outside ground set of size " +
                              std::to_string(ground_size));
  }

  std::vector<std::size_t> order;
  order.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (!sets[i].empty()) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (sets[x].size() != sets[y].size()) return sets[x].size() > sets[y].size();
    return sets[x] < sets[y];
  });

  LaminarFamily fam;
  fam.ground_size_ = ground_size;
  fam.nodes_.reserve(order.size());
  fam.owner_.assign(ground_size, kNoSet);

  auto is_ancestor_or_self = [&](std::size_t anc, std::size_t node) {
    for (; node != kNoSet; node = fam.nodes_[node].parent)
      if (node == anc) return true;
    return false;
  };

  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t idx = order[pos];
    if (!fam.nodes_.empty() && fam.nodes_.back().members == sets[idx]) {
      fam.nodes_.back().sources.push_back(idx);
      continue;
    }
    const Subset& members = sets[idx];
    const std::size_t here = fam.nodes_.size();
    const std::size_t first_owner = fam.owner_[members.front()];
    for (ElementId e : members) {
      const std::size_t o = fam.owner_[e];
      if (o == first_owner) continue;
      // Two elements of the new set sit in different deepest sets: one of
      // those sets crosses the new one.
      std::size_t o1 = first_owner;
      std::size_t o2 = o;
      if (o1 == kNoSet) std::swap(o1, o2);
      // If o1 also holds the other element, o2 sits strictly inside o1 and
      // misses the element owned by o1.
      const std::size_t other = (o2 != kNoSet && is_ancestor_or_self(o1, o2)) ? o2 : o1;
      throw LaminarError(fam.nodes_[other].sources.front(), idx);
    }
    for (ElementId e : members) fam.owner_[e] = here;
    Node& node = fam.nodes_.emplace_back();
    node.members = std::move(sets[idx]);
    node.parent = first_owner;
    node.sources.push_back(idx);
  }
  return fam;
}

void LaminarFamily::check_forest() const {
  std::vector<bool> in_parent(ground_size_);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (n.parent == kNoSet) continue;
    if (n.parent >= i) throw std::logic_error("laminar forest: parent after child");
    const Node& p = nodes_[n.parent];
    if (p.members.size() <= n.members.size() ||
        !std::includes(p.members.begin(), p.members.end(), n.members.begin(), n.members.end()))
      throw std::logic_error("laminar forest: node " + std::to_string(i) + " not strictly inside its parent");
  }
  for (ElementId e = 0; e < ground_size_; ++e) {
    const std::size_t o = owner_[e];
    if (o != kNoSet && !std::binary_search(nodes_[o].members.begin(), nodes_[o].members.end(), e))
      throw std::logic_error("laminar forest: owner of " + std::to_string(e) + " does not contain it");
  }
}

namespace {

struct BoundedArc {
  std::size_t from;
  std::size_t to;
  std::int64_t lo;
  std::int64_t hi;
  std::string label;
};

constexpr std::size_t kRootA = 0;
constexpr std::size_t kRootB = 1;

// The circulation: rootA -> A-forest (downwards) -> element arcs -> B-forest
// (upwards) -> rootB -> rootA. Flow through a forest node equals |Z ∩ P|.
std::vector<BoundedArc> circulation_arcs(std::size_t ground_size, const LaminarFamily& a,
                                         const LaminarFamily& b, Count parts, bool labels) {
  const std::size_t a_base = 2;
  const std::size_t b_base = a_base + a.size();
  const auto lo_of = [&](std::size_t n) { return static_cast<std::int64_t>(n / parts); };
  const auto hi_of = [&](std::size_t n) { return static_cast<std::int64_t>((n + parts - 1) / parts); };

  std::vector<BoundedArc> arcs;
  arcs.reserve(ground_size + a.size() + b.size() + 1);
  for (ElementId e = 0; e < ground_size; ++e) {
    const std::size_t oa = a.owner(e);
    const std::size_t ob = b.owner(e);
    arcs.push_back({oa == kNoSet ? kRootA : a_base + oa, ob == kNoSet ? kRootB : b_base + ob, 0, 1,
                    labels ? "e" + std::to_string(e) : std::string()});
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& n = a.nodes()[i];
    arcs.push_back({n.parent == kNoSet ? kRootA : a_base + n.parent, a_base + i, lo_of(n.members.size()),
                    hi_of(n.members.size()), {}});
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto& n = b.nodes()[i];
    arcs.push_back({b_base + i, n.parent == kNoSet ? kRootB : b_base + n.parent, lo_of(n.members.size()),
                    hi_of(n.members.size()), {}});
  }
  arcs.push_back({kRootB, kRootA, 0, detail::Circulation::kUnbounded, {}});
  return arcs;
}

}  // namespace

EquitableSubset equitable_subset(std::size_t ground_size, const LaminarFamily& a,
                                 const LaminarFamily& b, Count parts) {
  if (parts < 1) throw std::invalid_argument("equitable_subset: parts must be >= 1");
  if (a.ground_size() != ground_size || b.ground_size() != ground_size)
    throw std::invalid_argument("equitable_subset: families over a different ground set");

  // Elements with the same deepest A set and deepest B set are
  // interchangeable, so they share one arc of capacity equal to their number.
  const std::size_t a_base = 2;
  const std::size_t b_base = a_base + a.size();
  std::vector<std::pair<std::size_t, std::size_t>> ends(ground_size);
  std::vector<ElementId> order(ground_size);
  for (ElementId e = 0; e < ground_size; ++e) {
    const std::size_t oa = a.owner(e);
    const std::size_t ob = b.owner(e);
    ends[e] = {oa == kNoSet ? kRootA : a_base + oa, ob == kNoSet ? kRootB : b_base + ob};
    order[e] = e;
  }
  std::sort(order.begin(), order.end(), [&](ElementId x, ElementId y) {
    return ends[x] != ends[y] ? ends[x] < ends[y] : x < y;
  });

  const std::size_t circ_nodes = 2 + a.size() + b.size();
  detail::Circulation circ;
  circ.reset(circ_nodes);

  const auto lo_of = [&](std::size_t n) { return static_cast<std::int64_t>(n / parts); };
  const auto hi_of = [&](std::size_t n) { return static_cast<std::int64_t>((n + parts - 1) / parts); };
  struct Bundle {
    std::size_t begin, end, arc;
  };
  std::vector<Bundle> bundles;
  for (std::size_t i = 0; i < ground_size;) {
    std::size_t j = i + 1;
    while (j < ground_size && ends[order[j]] == ends[order[i]]) ++j;
    const auto [from, to] = ends[order[i]];
    bundles.push_back({i, j, circ.add_arc(from, to, 0, static_cast<std::int64_t>(j - i), lo_of(j - i))});
    i = j;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& n = a.nodes()[i];
    circ.add_arc(n.parent == kNoSet ? kRootA : a_base + n.parent, a_base + i, lo_of(n.members.size()),
                 hi_of(n.members.size()));
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto& n = b.nodes()[i];
    circ.add_arc(b_base + i, n.parent == kNoSet ? kRootB : b_base + n.parent, lo_of(n.members.size()),
                 hi_of(n.members.size()));
  }
  circ.add_arc(kRootB, kRootA, 0, detail::Circulation::kUnbounded, lo_of(ground_size));
  if (!circ.solve())
    throw std::logic_error("equitable_subset: no feasible circulation (families not laminar?)");

  EquitableSubset z;
  z.mask.assign(ground_size, false);
  for (const Bundle& bundle : bundles) {
    const auto take = static_cast<std::size_t>(circ.flow(bundle.arc, 0));
    for (std::size_t i = bundle.begin; i < bundle.begin + take; ++i) z.mask[order[i]] = true;
  }
  for (ElementId e = 0; e < ground_size; ++e)
    if (z.mask[e]) z.members.push_back(e);
#ifndef NDEBUG
  if (!verify_equitable(a, b, parts, z).empty())
    throw std::logic_error("equitable_subset: solver output violates a constraint");
#endif
  return z;
}

std::string EquitableViolation::to_string() const {
  std::ostringstream os;
  os << family << node << ": |P|=" << set_size << " |Z∩P|=" << hits << " not in [" << lo << "," << hi << "]";
  return os.str();
}

std::vector<EquitableViolation> verify_equitable(const LaminarFamily& a, const LaminarFamily& b,
                                                 Count parts, const EquitableSubset& z) {
  std::vector<EquitableViolation> out;
  auto scan = [&](const LaminarFamily& fam, char tag) {
    for (std::size_t i = 0; i < fam.size(); ++i) {
      const auto& members = fam.nodes()[i].members;
      std::size_t hits = 0;
      for (ElementId e : members) hits += (e < z.mask.size() && z.mask[e]) ? 1 : 0;
      const std::size_t lo = members.size() / parts;
      const std::size_t hi = (members.size() + parts - 1) / parts;
      if (hits < lo || hits > hi) out.push_back({tag, i, members.size(), hits, lo, hi});
    }
  };
  scan(a, 'A');
  scan(b, 'B');
  return out;
}

std::string constraint_network_dot(std::size_t ground_size, const LaminarFamily& a,
                                   const LaminarFamily& b, Count parts) {
  const auto arcs = circulation_arcs(ground_size, a, b, parts, true);
  std::ostringstream os;
  os << "digraph equitable {\n  rankdir=LR;\n";
  os << "  n0 [label=\"rootA\"];\n  n1 [label=\"rootB\"];\n";
  for (std::size_t i = 0; i < a.size(); ++i)
    os << "  n" << 2 + i << " [label=\"A" << i << " |P|=" << a.nodes()[i].members.size() << "\"];\n";
  for (std::size_t i = 0; i < b.size(); ++i)
    os << "  n" << 2 + a.size() + i << " [label=\"B" << i << " |P|=" << b.nodes()[i].members.size()
       << "\"];\n";
  for (const auto& arc : arcs) {
    os << "  n" << arc.from << " -> n" << arc.to << " [label=\"";
    if (!arc.label.empty()) os << arc.label << " ";
    os << "[" << arc.lo << ",";
    if (arc.hi == detail::Circulation::kUnbounded)
      os << "inf";
    else
      os << arc.hi;
    os << "]\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace hyperfactor
