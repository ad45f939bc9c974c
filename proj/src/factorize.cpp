#include "hyperfactor/factorize.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace hyperfactor {

Count FactorizationSpec::part_size() const {
  if (m > 0) return m;
  if (!part_sizes.empty()) return part_sizes.front();
  return 1;
}

Count FactorizationSpec::degree() const {
  const Count p = part_size();
  return lambda * binomial(n - 1, 2) * p * p;
}

std::string FactorizationSpec::to_string() const {
  std::ostringstream os;
  os << "lambda=" << lambda << " n=" << n;
  if (!part_sizes.empty()) {
    os << " parts=(";
    for (std::size_t i = 0; i < part_sizes.size(); ++i) os << (i ? "," : "") << part_sizes[i];
    os << ")";
  } else if (m > 0) {
    os << " m=" << m;
  }
  os << " r=(";
  for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
  os << ")";
  return os.str();
}

const char* to_string(Condition c) {
  switch (c) {
    case Condition::kDomain:
      return "domain";
    case Condition::kEqualParts:
      return "equal-parts";
    case Condition::kDivisibility:
      return "divisibility";
    case Condition::kDegreeSum:
      return "degree-sum";
  }
  return "unknown";
}

std::vector<Violation> check_feasible(const FactorizationSpec& spec) {
  std::vector<Violation> out;
  auto add = [&](Condition c, std::string msg) { out.push_back({c, std::move(msg)}); };

  if (spec.lambda < 1) add(Condition::kDomain, "lambda must be at least 1");
  if (spec.n < 3) add(Condition::kDomain, "n must be at least 3, got " + std::to_string(spec.n));
  if (spec.r.empty()) add(Condition::kDomain, "r must list at least one class");
  for (std::size_t i = 0; i < spec.r.size(); ++i)
    if (spec.r[i] < 1) add(Condition::kDomain, "r_" + std::to_string(i + 1) + " must be at least 1");

  const bool partite = spec.is_multipartite();
  if (!spec.part_sizes.empty()) {
    if (spec.part_sizes.size() != spec.n)
      add(Condition::kDomain, std::to_string(spec.part_sizes.size()) + " part sizes given for n = " +
                                  std::to_string(spec.n) + " parts");
    for (std::size_t i = 0; i < spec.part_sizes.size(); ++i) {
      if (spec.part_sizes[i] < 1)
        add(Condition::kDomain, "m_" + std::to_string(i + 1) + " must be at least 1");
    }
    const Count first = spec.part_sizes.front();
    for (std::size_t i = 1; i < spec.part_sizes.size(); ++i) {
      if (spec.part_sizes[i] != first) {
        add(Condition::kEqualParts, "m_i = m_j fails: m_1 = " + std::to_string(first) + " but m_" +
                                        std::to_string(i + 1) + " = " + std::to_string(spec.part_sizes[i]));
        break;
      }
    }
    if (spec.m > 0 && spec.m != first)
      add(Condition::kEqualParts,
          "m_i = m_j fails: m = " + std::to_string(spec.m) + " but m_1 = " + std::to_string(first));
  }
  if (!out.empty()) return out;

  const Count m = spec.part_size();
  const Count mult = partite ? m * spec.n : spec.n;
  const std::string what = partite ? "r_i m n" : "r_i n";
  for (std::size_t i = 0; i < spec.r.size(); ++i) {
    const Count value = spec.r[i] * mult;
    if (value % 3 != 0)
      add(Condition::kDivisibility, "3 | " + what + " fails for i=" + std::to_string(i + 1) + ": " + what +
                                        " = " + std::to_string(value) + " is not a multiple of 3");
  }
  const Count sum = std::accumulate(spec.r.begin(), spec.r.end(), Count{0});
  const Count need = spec.degree();
  if (sum != need) {
    add(Condition::kDegreeSum, std::string("sum r_i = lambda C(n-1,2)") + (partite ? " m^2" : "") +
                                   " fails: sum r_i = " + std::to_string(sum) + ", required " +
                                   std::to_string(need));
  }
  return out;
}

namespace {

std::string describe(const std::vector<Violation>& v) {
  std::string s = "infeasible factorization spec:";
  for (const auto& x : v) s += std::string(" [") + to_string(x.condition) + "] " + x.message + ";";
  return s;
}

void require_feasible(const FactorizationSpec& spec) {
  auto violations = check_feasible(spec);
  if (!violations.empty()) throw InfeasibleSpec(std::move(violations));
}

}  // namespace

InfeasibleSpec::InfeasibleSpec(std::vector<Violation> violations)
    : std::invalid_argument(describe(violations)), violations_(std::move(violations)) {}

Coloring seed_coloring(Count lambda, Count n, const std::vector<Count>& r) {
  Coloring c;
  c.k = r.size();
  c.edge_color.reserve(lambda * binomial(n, 3));
  for (Color j = 1; j <= r.size(); ++j) c.edge_color.insert(c.edge_color.end(), r[j - 1] * n / 3, j);
  if (c.edge_color.size() != lambda * binomial(n, 3))
    throw std::invalid_argument("seed_coloring: class sizes r_j n / 3 do not sum to lambda C(n,3)");
  return c;
}

Factorization factorize_complete(Count lambda, Count n, const std::vector<Count>& r,
                                 const DetachOptions& options) {
  const FactorizationSpec spec = FactorizationSpec::complete(lambda, n, r);
  require_feasible(spec);
  AmalgamatedSeed seed = amalgamated_seed_single(lambda, n);
  Detachment d = detach_all(seed.graph, seed_coloring(lambda, n, r), seed.g, options);

  Factorization fz;
  fz.spec = spec;
  fz.part_of.resize(d.graph.vertex_count());
  std::iota(fz.part_of.begin(), fz.part_of.end(), VertexId{0});
  fz.graph = std::move(d.graph);
  fz.coloring = std::move(d.coloring);
  fz.steps = d.steps;
  fz.step_checks = std::move(d.step_checks);
  return fz;
}

Factorization factorize_multipartite(Count lambda, Count n, Count m, const std::vector<Count>& r,
                                     const DetachOptions& options) {
  const FactorizationSpec spec = FactorizationSpec::multipartite(lambda, n, m, r);
  require_feasible(spec);

  // Color lambda m^3 K_n^3 with class degrees m r_j, then carry the colors
  // over to the seed's parallel edges triple by triple.
  std::vector<Count> inner_r(r);
  for (Count& x : inner_r) x *= m;
  const Count inner_lambda = lambda * m * m * m;
  const Factorization inner = factorize_complete(inner_lambda, n, inner_r, options);

  AmalgamatedSeed seed = amalgamated_seed_multipartite(lambda, n, m);
  std::map<TripleKey, std::vector<Color>> colors_of;
  for (EdgeId e = 0; e < inner.graph.edge_count(); ++e)
    colors_of[inner.graph.edge_key(e)].push_back(inner.coloring[e]);
  Coloring c;
  c.k = r.size();
  c.edge_color.resize(seed.graph.edge_count());
  std::map<TripleKey, std::size_t> used;
  for (EdgeId e = 0; e < seed.graph.edge_count(); ++e) {
    const TripleKey key = seed.graph.edge_key(e);
    const auto& list = colors_of.at(key);
    c.edge_color[e] = list.at(used[key]++);
  }

  Detachment d = detach_all(seed.graph, c, seed.g, options);
  Factorization fz;
  fz.spec = spec;
  fz.part_of = d.psi.psi();
  fz.graph = std::move(d.graph);
  fz.coloring = std::move(d.coloring);
  fz.steps = inner.steps + d.steps;
  fz.step_checks = inner.step_checks;
  fz.step_checks.merge(d.step_checks);
  return fz;
}

Factorization factorize(const FactorizationSpec& spec, const DetachOptions& options) {
  if (!spec.is_multipartite()) return factorize_complete(spec.lambda, spec.n, spec.r, options);
  require_feasible(spec);
  Factorization fz = factorize_multipartite(spec.lambda, spec.n, spec.part_size(), spec.r, options);
  fz.spec = spec;
  return fz;
}

}  // namespace hyperfactor
