#include "hyperfactor/detach.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string_view>
#include <tuple>

#include "flow.hpp"
#include "hyperfactor/verify.hpp"

namespace hyperfactor {

Count g_tilde(const TripleKey& key, std::span<const Count> g) {
  const auto& v = key.v;
  switch (key.shape()) {
    case EdgeShape::kLoop:
      return binomial(g[v[0]], 3);
    case EdgeShape::kDegenerate: {
      const VertexId twice = v[1];  // the repeated vertex sits in the middle
      const VertexId once = (v[0] == twice) ? v[2] : v[0];
      return binomial(g[twice], 2) * g[once];
    }
    case EdgeShape::kDistinct:
      return g[v[0]] * g[v[1]] * g[v[2]];
  }
  return 0;
}

std::string FamilyMember::label() const {
  auto vtx = [](VertexId x) { return std::to_string(x); };
  switch (kind) {
    case SetKind::kAtVertex:
      return "H(alpha)";
    case SetKind::kColor:
      return "H_" + std::to_string(color);
    case SetKind::kEdgeColor:
      return "H^e" + std::to_string(edge) + "_" + std::to_string(color);
    case SetKind::kPair:
      return "H^{" + vtx(u) + "," + vtx(v) + "}";
    case SetKind::kPairColor:
      return "H^{" + vtx(u) + "," + vtx(v) + "}_" + std::to_string(color);
  }
  return {};
}

namespace {

std::vector<Subset> sets_of(const std::vector<FamilyMember>& members) {
  std::vector<Subset> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.elements);
  return out;
}

}  // namespace

std::vector<Subset> StepFamilies::a_sets() const { return sets_of(a); }
std::vector<Subset> StepFamilies::b_sets() const { return sets_of(b); }

void validate_detachable(const Hypergraph& f, const Coloring& c, std::span<const Count> g) {
  f.require_three_hinge();
  c.validate(f.edge_count());
  if (g.size() != f.vertex_count())
    throw InputError("number function has " + std::to_string(g.size()) + " entries for " +
                     std::to_string(f.vertex_count()) + " vertices");
  for (VertexId v = 0; v < g.size(); ++v)
    if (g[v] < 1) throw InputError("g(" + std::to_string(v) + ") must be at least 1", v);
  for (EdgeId e = 0; e < f.edge_count(); ++e) {
    const TripleKey key = f.edge_key(e);
    if (key.shape() == EdgeShape::kLoop && g[key.v[0]] <= 2)
      throw InputError("standing assumption violated at vertex " + std::to_string(key.v[0]) +
                           ": g(x) <= 2 implies m(x^3) = 0, but g = " + std::to_string(g[key.v[0]]) +
                           " and edge " + std::to_string(e) + " is a loop",
                       key.v[0]);
    if (key.shape() == EdgeShape::kDegenerate && g[key.v[1]] == 1)
      throw InputError("standing assumption violated at vertex " + std::to_string(key.v[1]) +
                           ": g(x) = 1 implies m(x^2,y) = 0, but edge " + std::to_string(e) +
                           " meets it twice",
                       key.v[1]);
  }
}

DetachmentState DetachmentState::start(Hypergraph f, Coloring c, std::vector<Count> g) {
  validate_detachable(f, c, g);
  DetachmentState s;
  s.origin.resize(f.vertex_count());
  for (VertexId v = 0; v < s.origin.size(); ++v) s.origin[v] = v;
  s.graph = std::move(f);
  s.coloring = std::move(c);
  s.g = std::move(g);
  return s;
}

std::size_t DetachmentState::remaining_steps() const {
  std::size_t n = 0;
  for (Count x : g) n += x - 1;
  return n;
}

DetachOptions DetachOptions::from_environment() {
  DetachOptions o;
  if (const char* v = std::getenv("HYPERFACTOR_DEBUG_CHECKS"))
    o.step_checks = std::string_view(v) == "1";
  return o;
}

VertexId choose_alpha(const DetachmentState& state) {
  VertexId best = kNoVertex;
  for (VertexId v = 0; v < state.g.size(); ++v) {
    if (state.g[v] < 2) continue;
    if (best == kNoVertex || state.origin[v] < state.origin[best]) best = v;
  }
  return best;
}

StepFamilies build_step_families(const DetachmentState& state, VertexId alpha) {
  if (alpha >= state.g.size() || state.g[alpha] < 2)
    throw std::invalid_argument("build_step_families: g(alpha) must be at least 2");
  const Hypergraph& h = state.graph;

  StepFamilies fam;
  fam.alpha = alpha;
  const auto hinges = h.vertex_hinges(alpha);
  fam.ground.assign(hinges.begin(), hinges.end());

  struct Slot {
    VertexId u, v;
    Color color;
    EdgeId edge;
    ElementId index;
    bool multi;  // edge meets alpha at least twice
  };
  std::vector<Slot> slots;
  slots.reserve(fam.ground.size());
  for (ElementId i = 0; i < fam.ground.size(); ++i) {
    const EdgeId e = h.hinge_edge(fam.ground[i]);
    const TripleKey key = h.edge_key(e);
    // Drop one occurrence of alpha; the remaining two vertices name the pair.
    VertexId rest[2];
    int n = 0;
    bool dropped = false;
    for (VertexId x : key.v) {
      if (x == alpha && !dropped) {
        dropped = true;
        continue;
      }
      rest[n++] = x;
    }
    slots.push_back({rest[0], rest[1], state.coloring[e], e, i, key.count_of(alpha) >= 2});
  }

  // A: all hinges, one set per color, one set per multiply attached edge.
  FamilyMember all{SetKind::kAtVertex};
  all.elements.resize(fam.ground.size());
  for (ElementId i = 0; i < fam.ground.size(); ++i) all.elements[i] = i;
  fam.a.push_back(std::move(all));

  std::vector<std::size_t> color_count(state.coloring.k + 1, 0);
  for (const Slot& s : slots) ++color_count[s.color];
  std::vector<Subset> by_color(state.coloring.k + 1);
  for (Color j = 1; j <= state.coloring.k; ++j) by_color[j].reserve(color_count[j]);
  for (const Slot& s : slots) by_color[s.color].push_back(s.index);
  for (Color j = 1; j <= state.coloring.k; ++j) {
    if (by_color[j].empty()) continue;
    FamilyMember m{SetKind::kColor, j};
    m.elements = std::move(by_color[j]);
    fam.a.push_back(std::move(m));
  }

  std::sort(slots.begin(), slots.end(), [](const Slot& x, const Slot& y) {
    return std::tie(x.u, x.v, x.color, x.edge, x.index) < std::tie(y.u, y.v, y.color, y.edge, y.index);
  });

  // B: one set per pair {u,v}, followed by its per-color subsets. Slots are
  // sorted by (pair, color, edge), so every group is a contiguous run.
  std::vector<FamilyMember> edge_sets;
  auto run_end = [&](std::size_t i, auto same) {
    std::size_t j = i + 1;
    while (j < slots.size() && same(slots[i], slots[j])) ++j;
    return j;
  };
  auto collect = [&](FamilyMember& m, std::size_t i, std::size_t j) {
    m.elements.reserve(j - i);
    for (std::size_t t = i; t < j; ++t) m.elements.push_back(slots[t].index);
  };
  for (std::size_t i = 0; i < slots.size();) {
    const std::size_t pair_end =
        run_end(i, [](const Slot& x, const Slot& y) { return x.u == y.u && x.v == y.v; });
    FamilyMember& pair = fam.b.emplace_back(FamilyMember{SetKind::kPair, 0, 0, slots[i].u, slots[i].v});
    collect(pair, i, pair_end);
    for (std::size_t c = i; c < pair_end;) {
      const std::size_t color_end = run_end(c, [](const Slot& x, const Slot& y) {
        return x.u == y.u && x.v == y.v && x.color == y.color;
      });
      FamilyMember& pc =
          fam.b.emplace_back(FamilyMember{SetKind::kPairColor, slots[c].color, 0, slots[c].u, slots[c].v});
      collect(pc, c, color_end);
      for (std::size_t e = c; e < color_end;) {
        const std::size_t edge_end = run_end(e, [](const Slot& x, const Slot& y) { return x.edge == y.edge; });
        if (slots[e].multi) {
          auto& m = edge_sets.emplace_back(FamilyMember{SetKind::kEdgeColor, slots[e].color, slots[e].edge});
          collect(m, e, edge_end);
        }
        e = edge_end;
      }
      c = color_end;
    }
    i = pair_end;
  }
  for (auto& m : fam.b) std::sort(m.elements.begin(), m.elements.end());
  for (auto& m : edge_sets) std::sort(m.elements.begin(), m.elements.end());
  std::sort(edge_sets.begin(), edge_sets.end(),
            [](const FamilyMember& x, const FamilyMember& y) { return x.edge < y.edge; });
  for (auto& m : edge_sets) fam.a.push_back(std::move(m));
  return fam;
}

namespace {

// One edge at alpha together with the number of its hinges there.
struct Unit {
  Color color;
  EdgeId edge;
  HingeId at[3];  // its hinges at alpha, increasing
  std::uint32_t size;
  // The edge's vertices with one occurrence of alpha removed, as an
  // unordered pair of step-local vertex ids.
  std::uint64_t pair;
};

// A run of units with the same pair and color.
struct Group {
  std::size_t first, last;
  std::uint32_t size;  // hinges per unit at alpha
  std::size_t total;
  Color color;
  std::uint32_t pair;  // index of the pair run
  std::int64_t start = 0;
};

struct SplitWorkspace {
  std::vector<Unit> units, sorted;
  std::vector<std::uint32_t> local;  // vertex -> step-local id, kNoVertex if unseen
  std::vector<VertexId> touched;
  std::vector<std::uint32_t> bucket;
  std::vector<std::size_t> color_degree;
  std::vector<std::size_t> color_node;
  std::vector<std::size_t> group_arc;
  std::vector<Group> groups;
  std::vector<std::size_t> by_color;
  std::vector<std::uint32_t> order;
  std::vector<std::int64_t> color_start;
  detail::Circulation circ;
};

struct SplitPlan {
  std::vector<HingeId> moved;  // increasing
  std::size_t a_sets = 0;
  std::size_t b_sets = 0;
};

// Solves the equitable split of the hinges at alpha on a compressed network.
// Edges of one color with the same attachment are interchangeable, so each
// (pair, color) class is a single node: its arc from the color node carries
// the class total, bounded by c * [floor(s/g), ceil(s/g)] for c edges that
// meet alpha s times each. This is the two-forest circulation of
// equitable_subset with twin leaves merged; any integral class total splits
// back into per-edge amounts that meet every per-edge bound.
SplitPlan plan_split(const DetachmentState& state, VertexId alpha, Count parts) {
  thread_local SplitWorkspace ws;
  const Hypergraph& h = state.graph;
  const Coloring& c = state.coloring;
  const auto g = static_cast<std::int64_t>(parts);
  const auto lo = [g](std::size_t n) { return static_cast<std::int64_t>(n) / g; };
  const auto hi = [g](std::size_t n) { return (static_cast<std::int64_t>(n) + g - 1) / g; };

  if (ws.local.size() < h.vertex_count()) ws.local.resize(h.vertex_count(), kNoVertex);
  ws.touched.clear();
  auto local_of = [&](VertexId x) {
    if (ws.local[x] == kNoVertex) {
      ws.local[x] = static_cast<std::uint32_t>(ws.touched.size());
      ws.touched.push_back(x);
    }
    return ws.local[x];
  };
  local_of(alpha);

  auto& units = ws.units;
  units.clear();
  ws.color_degree.assign(c.k + 1, 0);
  const auto hinges = h.vertex_hinges(alpha);
  for (HingeId hg : hinges) {
    const EdgeId e = h.hinge_edge(hg);
    ++ws.color_degree[c[e]];
    // Edge hinges are listed in increasing order; the edge is counted once,
    // at its lowest hinge on alpha.
    const auto eh = h.edge_hinges(e);
    bool first = true;
    for (HingeId x : eh) {
      if (x == hg) break;
      if (h.hinge_vertex(x) == alpha) first = false;
    }
    if (!first) continue;
    Unit unit{c[e], e, {0, 0, 0}, 0, 0};
    std::uint32_t rest[3];
    std::size_t n_rest = 0;
    for (HingeId x : eh) {
      const VertexId y = h.hinge_vertex(x);
      if (y == alpha)
        unit.at[unit.size++] = x;
      else
        rest[n_rest++] = local_of(y);
    }
    for (std::uint32_t i = 1; i < unit.size; ++i) rest[n_rest++] = 0;  // alpha is local 0
    unit.pair = (std::uint64_t{std::min(rest[0], rest[1])} << 32) | std::max(rest[0], rest[1]);
    units.push_back(unit);
  }
  const std::uint64_t width = ws.touched.size();
  for (VertexId x : ws.touched) ws.local[x] = kNoVertex;

  // Group by (pair, color), keeping hinge order inside each class. A
  // counting sort serves the usual case of few distinct classes.
  const std::uint64_t colors = c.k + 1;
  auto class_of = [&](const Unit& x) { return ((x.pair >> 32) * width + (x.pair & 0xffffffffu)) * colors + x.color; };
  const std::uint64_t classes = width * width * colors;
  if (classes <= 4 * units.size() + 4096) {
    ws.bucket.assign(classes + 1, 0);
    for (const Unit& x : units) ++ws.bucket[class_of(x) + 1];
    for (std::size_t i = 1; i <= classes; ++i) ws.bucket[i] += ws.bucket[i - 1];
    ws.sorted.resize(units.size());
    for (const Unit& x : units) ws.sorted[ws.bucket[class_of(x)]++] = x;
    units.swap(ws.sorted);
  } else {
    std::stable_sort(units.begin(), units.end(),
                     [&](const Unit& x, const Unit& y) { return class_of(x) < class_of(y); });
  }
  // One entry per (pair, color) class, in the order of `units`.
  auto& groups = ws.groups;
  groups.clear();
  std::size_t pairs = 0;
  SplitPlan plan;
  for (std::size_t i = 0; i < units.size();) {
    const bool new_pair = groups.empty() || units[i].pair != units[groups.back().first].pair;
    pairs += new_pair;
    Group gr{i, 0, units[i].size, 0, units[i].color, static_cast<std::uint32_t>(pairs - 1)};
    while (i < units.size() && units[i].pair == units[gr.first].pair && units[i].color == gr.color) {
      plan.a_sets += units[i].size > 1;
      gr.total += units[i++].size;
    }
    gr.last = i;
    groups.push_back(gr);
  }

  // Warm start: walking the classes color by color, each takes the rounded
  // difference of the running hinge count, so the color nodes and the root
  // balance exactly and only the pair nodes can be off.
  ws.by_color.assign(c.k + 2, 0);
  for (const Group& gr : groups) ++ws.by_color[gr.color + 1];
  for (std::size_t j = 1; j < ws.by_color.size(); ++j) ws.by_color[j] += ws.by_color[j - 1];
  ws.order.resize(groups.size());
  for (std::size_t x = 0; x < groups.size(); ++x) ws.order[ws.by_color[groups[x].color]++] = static_cast<std::uint32_t>(x);
  ws.color_start.assign(c.k + 1, 0);
  std::int64_t running = 0;
  for (std::uint32_t x : ws.order) {
    Group& gr = groups[x];
    const std::int64_t before = running / g;
    running += static_cast<std::int64_t>(gr.total);
    gr.start = running / g - before;
    ws.color_start[gr.color] += gr.start;
  }

  constexpr std::size_t kRootA = 0, kRootB = 1, kAll = 2;
  std::size_t next = 3;
  ws.color_node.assign(c.k + 1, 0);
  for (Color j = 1; j <= c.k; ++j)
    if (ws.color_degree[j] > 0) ws.color_node[j] = next++;
  plan.a_sets += 1 + (next - 3);
  plan.b_sets = pairs + groups.size();

  auto& circ = ws.circ;
  circ.reset(next + pairs + groups.size());
  const std::size_t d = hinges.size();
  circ.add_arc(kRootA, kAll, lo(d), hi(d), lo(d));
  for (Color j = 1; j <= c.k; ++j)
    if (ws.color_node[j])
      circ.add_arc(kAll, ws.color_node[j], lo(ws.color_degree[j]), hi(ws.color_degree[j]), ws.color_start[j]);

  ws.group_arc.resize(groups.size());
  std::int64_t returned = 0;
  for (std::size_t x = 0; x < groups.size();) {
    const std::size_t pair_node = next++;
    const std::uint32_t pair = groups[x].pair;
    std::size_t pair_size = 0;
    std::int64_t pair_in = 0;
    for (; x < groups.size() && groups[x].pair == pair; ++x) {
      const Group& gr = groups[x];
      const std::size_t group_node = next++;
      const auto count = static_cast<std::int64_t>(gr.last - gr.first);
      ws.group_arc[x] =
          circ.add_arc(ws.color_node[gr.color], group_node, count * lo(gr.size), count * hi(gr.size), gr.start);
      circ.add_arc(group_node, pair_node, lo(gr.total), hi(gr.total), gr.start);
      pair_size += gr.total;
      pair_in += gr.start;
    }
    const std::int64_t out = std::clamp(pair_in, lo(pair_size), hi(pair_size));
    circ.add_arc(pair_node, kRootB, lo(pair_size), hi(pair_size), out);
    returned += out;
  }
  circ.add_arc(kRootB, kRootA, 0, detail::Circulation::kUnbounded, returned);
  if (!circ.solve()) throw std::logic_error("detach_one: no equitable split exists (input not detachable?)");

  // Class totals back to edges: every edge takes floor(s/g), and the first
  // (total - c floor(s/g)) edges of the class take one more.
  for (std::size_t x = 0; x < groups.size(); ++x) {
    const Group& gr = groups[x];
    const std::int64_t base = lo(gr.size);
    const auto count = static_cast<std::int64_t>(gr.last - gr.first);
    std::int64_t extra = circ.flow(ws.group_arc[x], count * base) - count * base;
    for (std::size_t u = gr.first; u < gr.last; ++u, --extra) {
      const std::int64_t take = base + (extra > 0 ? 1 : 0);
      for (std::int64_t y = 0; y < take; ++y) plan.moved.push_back(units[u].at[y]);
    }
  }
  std::sort(plan.moved.begin(), plan.moved.end());
  return plan;
}

}  // namespace

StepOutcome detach_one(DetachmentState& state, VertexId alpha, const DetachOptions& options,
                       VerificationReport* checks) {
  if (alpha >= state.g.size() || state.g[alpha] < 2)
    throw std::invalid_argument("detach_one: g(alpha) must be at least 2");
  const Count g_alpha = state.g[alpha];
  SplitPlan plan = plan_split(state, alpha, g_alpha);

  // The explicit families are only materialized for an observer.
  std::optional<StepFamilies> fam;
  std::optional<LaminarFamily> a, b;
  EquitableSubset z;
  if (options.observer) {
    fam = build_step_families(state, alpha);
    a = LaminarFamily::build(fam->ground.size(), fam->a_sets());
    b = LaminarFamily::build(fam->ground.size(), fam->b_sets());
    z.mask.assign(fam->ground.size(), false);
    for (ElementId i = 0, m = 0; i < fam->ground.size(); ++i) {
      if (m < plan.moved.size() && plan.moved[m] == fam->ground[i]) {
        z.mask[i] = true;
        z.members.push_back(i);
        ++m;
      }
    }
  }

  StepSnapshot snapshot;
  const bool checking = options.step_checks && checks != nullptr;
  if (checking) snapshot = capture_step(state.graph, state.coloring, alpha, g_alpha);

  const VertexId fresh = state.graph.split_vertex(alpha, plan.moved);
  state.g[alpha] -= 1;
  state.g.push_back(1);
  state.origin.push_back(state.origin[alpha]);
  const std::size_t step = state.step++;

  if (checking) check_step(snapshot, state.graph, state.coloring, fresh, *checks);
  if (options.observer) options.observer(StepRecord{step, alpha, g_alpha, fresh, *fam, *a, *b, z});
  if (options.trace) {
    *options.trace << "{\"step\":" << step << ",\"alpha\":" << alpha << ",\"g_alpha\":" << g_alpha
                   << ",\"a_sets\":" << plan.a_sets << ",\"b_sets\":" << plan.b_sets
                   << ",\"z\":" << plan.moved.size() << "}\n";
  }
  return {fresh, plan.moved.size()};
}

Detachment detach_all(const Hypergraph& f, const Coloring& c, std::span<const Count> g,
                      const DetachOptions& options) {
  DetachmentState state =
      DetachmentState::start(f, c, std::vector<Count>(g.begin(), g.end()));
  Detachment out;
  for (VertexId alpha = choose_alpha(state); alpha != kNoVertex; alpha = choose_alpha(state))
    detach_one(state, alpha, options, &out.step_checks);

  for (EdgeId e = 0; e < state.graph.edge_count(); ++e) {
    if (state.graph.edge_key(e).shape() != EdgeShape::kDistinct)
      throw std::logic_error("detach_all: edge " + std::to_string(e) + " is not 3-uniform after detachment");
  }
  out.copy_index.assign(state.origin.size(), 0);
  std::vector<Count> seen(f.vertex_count(), 0);
  for (VertexId v = 0; v < state.origin.size(); ++v) out.copy_index[v] = seen[state.origin[v]]++;
  out.psi = AmalgamationMap(state.origin, f.vertex_count());
  out.steps = state.step;
  out.graph = std::move(state.graph);
  out.coloring = std::move(state.coloring);
  return out;
}

}  // namespace hyperfactor
