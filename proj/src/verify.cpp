#include "hyperfactor/verify.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <tuple>

#include "hyperfactor/detach.hpp"

namespace hyperfactor {

namespace {

using Entry = MultiplicityProfile::Entry;

// Uncolored and colored counts of the edges incident with any of `centers`.
std::vector<Entry> local_profile(const Hypergraph& h, const Coloring& c,
                                 std::initializer_list<VertexId> centers) {
  // Hinge ids of one edge are consecutive, so each center's edge list comes
  // out sorted; merging keeps the whole list sorted.
  std::vector<EdgeId> edges, next;
  for (VertexId x : centers) {
    next.clear();
    for (HingeId hg : h.vertex_hinges(x)) next.push_back(h.hinge_edge(hg));
    if (!std::is_sorted(next.begin(), next.end())) std::sort(next.begin(), next.end());
    const std::size_t mid = edges.size();
    edges.insert(edges.end(), next.begin(), next.end());
    std::inplace_merge(edges.begin(), edges.begin() + mid, edges.end());
  }
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  struct Key {
    TripleKey key;
    Color color;
    bool operator<(const Key& o) const {
      return std::tie(key.v[0], key.v[1], key.v[2], color) < std::tie(o.key.v[0], o.key.v[1], o.key.v[2], o.color);
    }
    bool operator==(const Key& o) const { return key == o.key && color == o.color; }
  };
  std::vector<Key> keys;
  keys.reserve(2 * edges.size());
  for (EdgeId e : edges) {
    const TripleKey key = h.edge_key(e);
    keys.push_back({key, kAllColors});
    keys.push_back({key, c[e]});
  }
  std::sort(keys.begin(), keys.end());
  std::vector<Entry> out;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    out.push_back({keys[i].key, keys[i].color, j - i});
    i = j;
  }
  return out;
}

std::size_t count_in(const std::vector<Entry>& entries, const TripleKey& key, Color color) {
  auto it = std::lower_bound(entries.begin(), entries.end(), std::pair{key, color},
                             [](const Entry& e, const std::pair<TripleKey, Color>& k) {
                               return std::pair{e.key, e.color} < k;
                             });
  return (it != entries.end() && it->key == key && it->color == color) ? it->count : 0;
}


auto as_signed(std::size_t x) { return static_cast<std::int64_t>(x); }

}  // namespace

StepSnapshot capture_step(const Hypergraph& h, const Coloring& c, VertexId alpha, Count g_alpha) {
  StepSnapshot s;
  s.alpha = alpha;
  s.g_alpha = g_alpha;
  s.degree = h.degree(alpha);
  s.color_degree.assign(c.k, 0);
  for (HingeId hg : h.vertex_hinges(alpha)) ++s.color_degree[c[h.hinge_edge(hg)] - 1];
  s.around = local_profile(h, c, {alpha});
  return s;
}

namespace {

// Check names in uncolored and per-color form.
struct StepName {
  std::string_view plain, colored;
  std::string_view operator()(Color c) const { return c == kAllColors ? plain : colored; }
};
constexpr StepName kAlphaUV{"step.m(alpha,u,v)", "step.m(alpha,u,v)/color"};
constexpr StepName kAlphaVV{"step.m(alpha,v,v)", "step.m(alpha,v,v)/color"};
constexpr StepName kNewUV{"step.m(new,u,v)", "step.m(new,u,v)/color"};
constexpr StepName kNewVV{"step.m(new,v,v)", "step.m(new,v,v)/color"};
constexpr StepName kAlphaAlphaY{"step.m(alpha,alpha,y)", "step.m(alpha,alpha,y)/color"};
constexpr StepName kAlphaNewY{"step.m(alpha,new,y)", "step.m(alpha,new,y)/color"};
constexpr StepName kNewNewY{"step.m(new,new,y)", "step.m(new,new,y)/color"};
constexpr StepName kAlphaCubed{"step.m(alpha^3)", "step.m(alpha^3)/color"};
constexpr StepName kAlphaAlphaNew{"step.m(alpha,alpha,new)", "step.m(alpha,alpha,new)/color"};
constexpr StepName kNewCubed{"step.m(new^3)", "step.m(new^3)/color"};
constexpr StepName kAlphaNewNew{"step.m(alpha,new,new)", "step.m(alpha,new,new)/color"};
constexpr StepName kConservation{"step.conservation", "step.conservation/color"};
constexpr StepName kMultiplicity{"multiplicity", "multiplicity/color"};

}  // namespace

void check_step(const StepSnapshot& before, const Hypergraph& after, const Coloring& c,
                VertexId new_vertex, VerificationReport& report) {
  const VertexId alpha = before.alpha;
  const auto g = static_cast<std::int64_t>(before.g_alpha);
  const std::int64_t g_next = g - 1;
  // Subjects are only formatted for stored lines.
  auto prefix = [&] { return "alpha=" + std::to_string(alpha) + " new=" + std::to_string(new_vertex) + " "; };
  auto uncolored = [&] { return prefix() + "uncolored"; };

  report.check("step.degree-alpha", as_signed(after.degree(alpha)),
               ApproxInterval(as_signed(before.degree) * g_next, g), uncolored);
  report.check("step.degree-new", as_signed(after.degree(new_vertex)),
               ApproxInterval(as_signed(before.degree), g), uncolored);
  std::vector<std::size_t> alpha_color(c.k, 0), new_color(c.k, 0);
  for (HingeId hg : after.vertex_hinges(alpha)) ++alpha_color[c[after.hinge_edge(hg)] - 1];
  for (HingeId hg : after.vertex_hinges(new_vertex)) ++new_color[c[after.hinge_edge(hg)] - 1];
  for (Color j = 1; j <= c.k; ++j) {
    const auto d = as_signed(before.color_degree[j - 1]);
    auto what = [&] { return prefix() + "color " + std::to_string(j); };
    report.check("step.degree-alpha/color", as_signed(alpha_color[j - 1]), ApproxInterval(d * g_next, g), what);
    report.check("step.degree-new/color", as_signed(new_color[j - 1]), ApproxInterval(d, g), what);
  }

  const std::vector<Entry> now = local_profile(after, c, {alpha, new_vertex});
  const VertexId nv = new_vertex;

  for (const Entry& entry : before.around) {
    const TripleKey& key = entry.key;
    const Color col = entry.color;
    const auto m = as_signed(entry.count);
    auto what = [&] { return prefix() + "key " + key.to_string() + (col ? " color " + std::to_string(col) : ""); };
    auto look = [&](VertexId x, VertexId y, VertexId z) {
      return as_signed(count_in(now, TripleKey::of(x, y, z), col));
    };

    std::int64_t derived = 0;
    switch (key.count_of(alpha)) {
      case 1: {
        VertexId u = kNoVertex, v = kNoVertex;
        for (VertexId x : key.v) {
          if (x == alpha) continue;
          (u == kNoVertex ? u : v) = x;
        }
        const bool twin = (u == v);
        const std::int64_t stay = look(alpha, u, v);
        const std::int64_t moved = look(nv, u, v);
        report.check((twin ? kAlphaVV : kAlphaUV)(col), stay, ApproxInterval(m * g_next, g), what);
        report.check((twin ? kNewVV : kNewUV)(col), moved, ApproxInterval(m, g), what);
        derived = stay + moved;
        break;
      }
      case 2: {
        const VertexId y = (key.v[0] == alpha) ? key.v[2] : key.v[0];
        const std::int64_t stay = look(alpha, alpha, y);
        const std::int64_t shared = look(alpha, nv, y);
        const std::int64_t doubled = look(nv, nv, y);
        report.check(kAlphaAlphaY(col), stay, ApproxInterval(m * (g_next - 1), g), what);
        report.check(kAlphaNewY(col), shared, ApproxInterval(2 * m, g), what);
        report.check(kNewNewY(col), doubled, ApproxInterval::exactly(0), what);
        derived = stay + shared + doubled;
        break;
      }
      case 3: {
        const std::int64_t stay = look(alpha, alpha, alpha);
        const std::int64_t once = look(alpha, alpha, nv);
        const std::int64_t twice = look(alpha, nv, nv);
        const std::int64_t all = look(nv, nv, nv);
        report.check(kAlphaCubed(col), stay, ApproxInterval(m * (g_next - 2), g), what);
        report.check(kAlphaAlphaNew(col), once, ApproxInterval(3 * m, g), what);
        report.check(kNewCubed(col), all, ApproxInterval::exactly(0), what);
        report.check(kAlphaNewNew(col), twice, ApproxInterval::exactly(0), what);
        derived = stay + once + twice + all;
        break;
      }
      default:
        break;
    }
    report.check(kConservation(col), derived, ApproxInterval::exactly(m), what);
  }

  for (const Entry& entry : now) {
    const TripleKey back = entry.key.substituted(nv, alpha);
    report.require("step.coverage", count_in(before.around, back, entry.color) > 0, [&] {
      return "key " + entry.key.to_string() + " has no source edge at alpha=" + std::to_string(alpha);
    });
  }
}

VerificationReport verify_detachment(const Hypergraph& source, const Coloring& source_coloring,
                                     std::span<const Count> g, const Hypergraph& detached,
                                     const Coloring& detached_coloring, const AmalgamationMap& psi,
                                     bool keep_passing) {
  if (psi.source_count() != detached.vertex_count() || psi.target_count() != source.vertex_count())
    throw std::invalid_argument("amalgamation map does not match the two vertex sets");
  if (g.size() != source.vertex_count() ||
      !std::equal(g.begin(), g.end(), psi.number_function().begin()))
    throw std::invalid_argument("amalgamation fibers do not have the sizes given by g");

  VerificationReport report(keep_passing);
  const std::size_t k = source_coloring.k;

  const bool same_edges = report.require("amalgamation.edge-count",
                                         source.edge_count() == detached.edge_count(), [&] {
                                           return std::to_string(detached.edge_count()) + " edges vs " +
                                                  std::to_string(source.edge_count());
                                         });
  report.require("coloring", detached_coloring.k == k &&
                                 detached_coloring.edge_color.size() == detached.edge_count(),
                 [] { return std::string("color count or coverage differs"); });
  if (!same_edges || !report.passed()) return report;

  for (EdgeId e = 0; e < detached.edge_count(); ++e) {
    const auto subj = [&] { return "edge " + std::to_string(e); };
    const bool three = detached.edge_hinges(e).size() == 3;
    report.require("three-uniform", three && detached.edge_key(e).shape() == EdgeShape::kDistinct, subj);
    if (!three || source.edge_hinges(e).size() != 3) continue;
    const TripleKey key = detached.edge_key(e);
    const TripleKey image = TripleKey::of(psi(key.v[0]), psi(key.v[1]), psi(key.v[2]));
    report.require("amalgamation", image == source.edge_key(e), subj);
    report.require("excluded-triple", g_tilde(image, g) > 0, subj);
    report.require("coloring", detached_coloring[e] == source_coloring[e], subj);
  }
  if (!report.passed()) return report;

  const auto src_deg = color_degrees(source, source_coloring);
  const auto det_deg = color_degrees(detached, detached_coloring);
  for (VertexId u = 0; u < detached.vertex_count(); ++u) {
    const VertexId x = psi(u);
    const auto gx = static_cast<std::int64_t>(g[x]);
    const auto subj = [&] { return "u=" + std::to_string(u) + " x=" + std::to_string(x); };
    report.check("degree", as_signed(detached.degree(u)), ApproxInterval(as_signed(source.degree(x)), gx), subj);
    for (std::size_t j = 0; j < k; ++j) {
      report.check("degree/color", as_signed(det_deg[u * k + j]), ApproxInterval(as_signed(src_deg[x * k + j]), gx),
                   [&] { return subj() + " color " + std::to_string(j + 1); });
    }
  }

  // Every representative triple of every source key; keys with no source
  // edge have no detached edge on any representative (amalgamation check).
  const auto src_profile = MultiplicityProfile::of(source, source_coloring);
  const auto det_profile = MultiplicityProfile::of(detached, detached_coloring);
  std::vector<std::vector<VertexId>> fibers(source.vertex_count());
  for (VertexId u = 0; u < detached.vertex_count(); ++u) fibers[psi(u)].push_back(u);

  for (const auto& entry : src_profile.entries()) {
    const Count reps = g_tilde(entry.key, g);
    const std::string_view name = kMultiplicity(entry.color);
    if (reps == 0) {
      report.check("excluded-triple", as_signed(entry.count), ApproxInterval::exactly(0),
                   [&] { return "source key " + entry.key.to_string(); });
      continue;
    }
    const ApproxInterval allowed(as_signed(entry.count), static_cast<std::int64_t>(reps));
    auto visit = [&](VertexId a, VertexId b, VertexId c) {
      const TripleKey rep = TripleKey::of(a, b, c);
      report.check(name, as_signed(det_profile.count(rep, entry.color)), allowed, [&] {
        return "rep " + rep.to_string() + " of " + entry.key.to_string() +
               (entry.color ? " color " + std::to_string(entry.color) : "");
      });
    };
    const auto& v = entry.key.v;
    switch (entry.key.shape()) {
      case EdgeShape::kLoop: {
        const auto& f = fibers[v[0]];
        for (std::size_t i = 0; i < f.size(); ++i)
          for (std::size_t j = i + 1; j < f.size(); ++j)
            for (std::size_t l = j + 1; l < f.size(); ++l) visit(f[i], f[j], f[l]);
        break;
      }
      case EdgeShape::kDegenerate: {
        const VertexId twice = v[1];
        const VertexId once = (v[0] == twice) ? v[2] : v[0];
        const auto& f = fibers[twice];
        for (std::size_t i = 0; i < f.size(); ++i)
          for (std::size_t j = i + 1; j < f.size(); ++j)
            for (VertexId w : fibers[once]) visit(f[i], f[j], w);
        break;
      }
      case EdgeShape::kDistinct:
        for (VertexId a : fibers[v[0]])
          for (VertexId b : fibers[v[1]])
            for (VertexId c : fibers[v[2]]) visit(a, b, c);
        break;
    }
  }
  return report;
}

VerificationReport verify_factorization(const Factorization& fz, bool keep_passing) {
  VerificationReport report(keep_passing);
  const FactorizationSpec& spec = fz.spec;
  const Hypergraph& h = fz.graph;

  report.require("spec", check_feasible(spec).empty(), [&] { return spec.to_string() + " is infeasible"; });
  if (!report.passed()) return report;

  const Count m = spec.part_size();
  const Count n = spec.n;
  const std::size_t k = spec.r.size();
  report.check("vertex-count", as_signed(h.vertex_count()), ApproxInterval::exactly(static_cast<std::int64_t>(n * m)),
               [] { return std::string("|V| = n m"); });
  report.require("parts", fz.part_of.size() == h.vertex_count(), [] {
    return std::string("part labels do not cover the vertices");
  });
  report.require("coloring", fz.coloring.k == k && fz.coloring.edge_color.size() == h.edge_count(), [] {
    return std::string("coloring does not match r");
  });
  if (!report.passed()) return report;
  for (Color c : fz.coloring.edge_color)
    report.require("coloring", c >= 1 && c <= k, [&] { return "color " + std::to_string(c) + " out of range"; });

  std::vector<Count> part_sizes(n, 0);
  for (VertexId u = 0; u < h.vertex_count(); ++u) {
    const bool ok = fz.part_of[u] < n;
    report.require("parts", ok, [&] { return "vertex " + std::to_string(u) + " has no valid part"; });
    if (ok) ++part_sizes[fz.part_of[u]];
  }
  for (VertexId p = 0; p < n; ++p)
    report.check("parts", as_signed(part_sizes[p]), ApproxInterval::exactly(static_cast<std::int64_t>(m)),
                 [&] { return "part " + std::to_string(p); });
  if (!report.passed()) return report;

  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    const bool three = h.edge_hinges(e).size() == 3;
    bool transversal = false;
    if (three) {
      const TripleKey key = h.edge_key(e);
      const VertexId a = fz.part_of[key.v[0]], b = fz.part_of[key.v[1]], c = fz.part_of[key.v[2]];
      transversal = key.shape() == EdgeShape::kDistinct && a != b && b != c && a != c;
    }
    report.require("transversal", transversal, [&] { return "edge " + std::to_string(e); });
  }
  if (!report.passed()) return report;

  const auto deg = color_degrees(h, fz.coloring);
  for (VertexId u = 0; u < h.vertex_count(); ++u)
    for (std::size_t j = 0; j < k; ++j)
      report.check("class-degree", as_signed(deg[u * k + j]), ApproxInterval::exactly(static_cast<std::int64_t>(spec.r[j])),
                   [&] { return "vertex " + std::to_string(u) + " class " + std::to_string(j + 1); });
  const auto sizes = fz.coloring.class_sizes();
  for (std::size_t j = 0; j < k; ++j)
    report.check("class-size", as_signed(3 * sizes[j]),
                 ApproxInterval::exactly(static_cast<std::int64_t>(spec.r[j] * h.vertex_count())),
                 [&] { return "class " + std::to_string(j + 1) + " (3|E_j| = r_j |V|)"; });

  const auto profile = MultiplicityProfile::of(h);
  for (const auto& entry : profile.entries())
    report.check("multiplicity", as_signed(entry.count), ApproxInterval::exactly(static_cast<std::int64_t>(spec.lambda)),
                 [&] { return "triple " + entry.key.to_string(); });
  report.check("triple-coverage", as_signed(profile.entries().size()),
               ApproxInterval::exactly(static_cast<std::int64_t>(binomial(n, 3) * m * m * m)),
               [] { return std::string("distinct transversal triples present"); });
  return report;
}

std::vector<std::uint32_t> oracle_equitable(std::size_t ground_size, const std::vector<Subset>& a,
                                            const std::vector<Subset>& b, Count parts) {
  if (ground_size > kOracleMaxGround)
    throw std::invalid_argument("oracle_equitable: ground set of " + std::to_string(ground_size) +
                                " elements is too large for enumeration");
  if (parts < 1) throw std::invalid_argument("oracle_equitable: parts must be >= 1");
  struct Constraint {
    std::uint32_t mask;
    int lo, hi;
  };
  std::vector<Constraint> cons;
  for (const auto* fam : {&a, &b}) {
    for (const Subset& s : *fam) {
      std::uint32_t mask = 0;
      for (ElementId e : s) {
        if (e >= ground_size) throw std::out_of_range("oracle_equitable: element outside ground set");
        mask |= 1u << e;
      }
      const int size = std::popcount(mask);
      cons.push_back({mask, static_cast<int>(size / parts), static_cast<int>((size + parts - 1) / parts)});
    }
  }
  std::vector<std::uint32_t> out;
  const std::uint32_t limit = 1u << ground_size;
  for (std::uint32_t z = 0; z < limit; ++z) {
    bool ok = true;
    for (const auto& c : cons) {
      const int hits = std::popcount(z & c.mask);
      if (hits < c.lo || hits > c.hi) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(z);
  }
  return out;
}

std::uint32_t subset_mask(const EquitableSubset& z) {
  std::uint32_t mask = 0;
  for (ElementId e : z.members) {
    if (e >= 32) throw std::out_of_range("subset_mask: element does not fit in 32 bits");
    mask |= 1u << e;
  }
  return mask;
}

}  // namespace hyperfactor
