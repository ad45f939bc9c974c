// hyperfactor: build, detach and verify hypergraph factorizations.
//
// Exit codes: 0 ok, 1 usage, 2 infeasible or invalid input, 3 a
// verification failed (or a sweep did not cover every instance).

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <thread>

#include "CLI11.hpp"
#include "hyperfactor/detach.hpp"
#include "hyperfactor/factorize.hpp"
#include "hyperfactor/io.hpp"
#include "hyperfactor/laminar.hpp"
#include "hyperfactor/sweep.hpp"
#include "hyperfactor/verify.hpp"

using namespace hyperfactor;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kVerifyFailed = 3 };

void emit(const std::string& path, const json& doc) {
  if (path.empty() || path == "-")
    std::cout << doc.dump(1) << "\n";
  else
    write_json_file(path, doc);
}

struct FactorizeArgs {
  Count lambda = 1;
  Count n = 0;
  Count m = 0;
  std::string parts;
  std::string r;
  std::string out;
  std::string trace;
  bool verify = false;
};

int cmd_factorize(const FactorizeArgs& a) {
  FactorizationSpec spec;
  spec.lambda = a.lambda;
  spec.n = a.n;
  spec.m = a.m;
  spec.r = parse_count_list(a.r);
  if (!a.parts.empty()) spec.part_sizes = parse_count_list(a.parts);

  if (auto violations = check_feasible(spec); !violations.empty()) {
    std::cerr << "infeasible: " << spec.to_string() << "\n";
    for (const auto& v : violations) std::cerr << "  [" << to_string(v.condition) << "] " << v.message << "\n";
    return kInvalid;
  }

  DetachOptions options = DetachOptions::from_environment();
  std::ofstream trace;
  if (!a.trace.empty()) {
    trace.open(a.trace);
    if (!trace) throw std::runtime_error("cannot write " + a.trace);
    options.trace = &trace;
  }
  const Factorization fz = factorize(spec, options);
  emit(a.out, to_json(fz));

  int code = kOk;
  if (options.step_checks) {
    std::cerr << fz.step_checks.to_table();
    if (!fz.step_checks.passed()) code = kVerifyFailed;
  }
  if (a.verify) {
    const VerificationReport report = verify_factorization(fz);
    std::cerr << report.to_table();
    if (!report.passed()) code = kVerifyFailed;
  }
  std::cerr << spec.to_string() << ": " << fz.graph.vertex_count() << " vertices, " << fz.graph.edge_count()
            << " edges, " << spec.r.size() << " factors, " << fz.steps << " steps\n";
  return code;
}

struct DetachArgs {
  std::string in;
  std::string g;
  std::string out;
  std::string trace;
  bool colors = false;
};

int cmd_detach(const DetachArgs& a) {
  ColoredHypergraph input = hypergraph_from_json(read_json_file(a.in));
  if (!a.colors) input.coloring = Coloring::uniform(input.graph.edge_count());
  const std::vector<Count> g = parse_number_function(a.g, input.graph.vertex_count());

  DetachOptions options = DetachOptions::from_environment();
  std::ofstream trace;
  if (!a.trace.empty()) {
    trace.open(a.trace);
    if (!trace) throw std::runtime_error("cannot write " + a.trace);
    options.trace = &trace;
  }
  const Detachment d = detach_all(input.graph, input.coloring, g, options);
  const VerificationReport report =
      verify_detachment(input.graph, input.coloring, g, d.graph, d.coloring, d.psi);
  json doc = to_json(d);
  doc["report"] = to_json(report);
  emit(a.out, doc);
  std::cerr << report.to_table();
  if (options.step_checks) std::cerr << d.step_checks.to_table();
  return report.passed() && d.step_checks.passed() ? kOk : kVerifyFailed;
}

struct VerifyArgs {
  std::string json_path;
  std::string source;
  bool colors = false;
};

int cmd_verify(const VerifyArgs& a) {
  const json doc = read_json_file(a.json_path);
  VerificationReport report;
  if (doc.contains("factors")) {
    report = verify_factorization(factorization_from_json(doc));
  } else if (doc.contains("amalgamation")) {
    if (a.source.empty()) throw std::invalid_argument("verifying a detachment needs --source");
    ColoredHypergraph source = hypergraph_from_json(read_json_file(a.source));
    const DetachedDocument d = detachment_from_json(doc);
    if (!a.colors) source.coloring = Coloring::uniform(source.graph.edge_count());
    Coloring detached_coloring = d.detached.coloring;
    if (!a.colors) detached_coloring = Coloring::uniform(d.detached.graph.edge_count());
    const auto& g = d.psi.number_function();
    report = verify_detachment(source.graph, source.coloring, g, d.detached.graph, detached_coloring, d.psi);
  } else {
    throw FormatError("document is neither a factorization nor a detachment");
  }
  std::cout << report.to_table();
  return report.passed() ? kOk : kVerifyFailed;
}

struct SweepArgs {
  SweepOptions options;
  bool debug_checks = false;
};

int cmd_sweep(SweepArgs a) {
  if (!a.options.multipartite) a.options.max_m = a.options.min_m = 1;
  a.options.detach = DetachOptions::from_environment();
  if (a.debug_checks) a.options.detach.step_checks = true;
  const SweepResult result = run_sweep(a.options);
  std::cout << result.to_table();
  if (a.options.detach.step_checks) std::cout << result.step_checks.to_table();
  return result.passed() && result.complete() ? kOk : kVerifyFailed;
}

struct OracleArgs {
  std::string in;
  bool dot = false;
};

// {"ground": N, "parts": g, "a": [[...], ...], "b": [[...], ...]}
int cmd_oracle(const OracleArgs& a) {
  const json doc = read_json_file(a.in);
  const auto ground = doc.at("ground").get<std::size_t>();
  const auto parts = doc.at("parts").get<Count>();
  const auto a_sets = doc.at("a").get<std::vector<Subset>>();
  const auto b_sets = doc.at("b").get<std::vector<Subset>>();
  const LaminarFamily fa = LaminarFamily::build(ground, a_sets);
  const LaminarFamily fb = LaminarFamily::build(ground, b_sets);
  if (a.dot) {
    std::cout << constraint_network_dot(ground, fa, fb, parts);
    return kOk;
  }
  const EquitableSubset z = equitable_subset(ground, fa, fb, parts);
  const auto violations = verify_equitable(fa, fb, parts, z);
  json out = {{"z", z.members}, {"violations", violations.size()}};
  bool member = true;
  if (ground <= kOracleMaxGround) {
    const auto all = oracle_equitable(ground, a_sets, b_sets, parts);
    member = std::binary_search(all.begin(), all.end(), subset_mask(z));
    out["oracle_solutions"] = all.size();
    out["z_in_oracle_set"] = member;
  }
  std::cout << out.dump() << "\n";
  return violations.empty() && member ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct and verify factorizations of complete 3-uniform hypergraphs by detachment"};
  app.require_subcommand(1);

  FactorizeArgs fa;
  auto* factorize_cmd = app.add_subcommand("factorize", "build an (r_1,...,r_k)-factorization");
  factorize_cmd->add_option("--lambda", fa.lambda, "edge multiplicity")->default_val(1);
  factorize_cmd->add_option("--n", fa.n, "number of vertices (or parts)")->required();
  factorize_cmd->add_option("--m", fa.m, "part size for the n-partite target");
  factorize_cmd->add_option("--parts", fa.parts, "explicit part sizes m_1,...,m_n (must be equal)");
  factorize_cmd->add_option("--r", fa.r, "class degrees, e.g. \"2,2\" or \"1x28\"")->required();
  factorize_cmd->add_option("--out", fa.out, "output JSON file (default stdout)");
  factorize_cmd->add_option("--trace", fa.trace, "JSON-lines step trace file");
  factorize_cmd->add_flag("--verify", fa.verify, "verify the result");

  DetachArgs da;
  auto* detach_cmd = app.add_subcommand("detach", "g-detach a hypergraph given as JSON");
  detach_cmd->add_option("--in", da.in, "input hypergraph JSON")->required();
  detach_cmd->add_option("--g", da.g, "number function, \"v:count,...\" (unlisted vertices get 1)");
  detach_cmd->add_option("--out", da.out, "output JSON file (default stdout)");
  detach_cmd->add_option("--trace", da.trace, "JSON-lines step trace file");
  detach_cmd->add_flag("--colors", da.colors, "respect edge colors from the input");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "verify a factorization or detachment JSON");
  verify_cmd->add_option("--json", va.json_path, "artifact to verify")->required();
  verify_cmd->add_option("--source", va.source, "amalgamated hypergraph, for detachments");
  verify_cmd->add_flag("--colors", va.colors, "check per-color relations too");

  SweepArgs sa;
  auto* sweep_cmd = app.add_subcommand("sweep", "construct and verify every feasible spec in range");
  sweep_cmd->add_option("--min-n", sa.options.min_n)->default_val(3);
  sweep_cmd->add_option("--max-n", sa.options.max_n)->default_val(9);
  sweep_cmd->add_option("--max-lambda", sa.options.max_lambda)->default_val(2);
  sweep_cmd->add_flag("--multipartite", sa.options.multipartite);
  sweep_cmd->add_option("--max-m", sa.options.max_m)->default_val(1);
  sweep_cmd->add_option("--max-k", sa.options.max_k, "largest number of classes")->default_val(30);
  sweep_cmd->add_option("--time-budget", sa.options.time_budget, "seconds; 0 = unlimited")->default_val(0);
  sweep_cmd->add_option("--cell-limit", sa.options.cell_limit, "instances per cell; 0 = all")->default_val(0);
  sweep_cmd->add_option("--threads", sa.options.threads)->default_val(std::max(1u, std::thread::hardware_concurrency()));
  sweep_cmd->add_flag("--debug-checks", sa.debug_checks, "check every detachment step");

  OracleArgs oa;
  auto* oracle_cmd = app.add_subcommand("oracle", "solve one equitable-subset instance and compare with enumeration");
  oracle_cmd->add_option("--in", oa.in, "laminar pair JSON")->required();
  oracle_cmd->add_flag("--dot", oa.dot, "print the circulation network in DOT form");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*factorize_cmd) return cmd_factorize(fa);
    if (*detach_cmd) return cmd_detach(da);
    if (*verify_cmd) return cmd_verify(va);
    if (*sweep_cmd) return cmd_sweep(sa);
    if (*oracle_cmd) return cmd_oracle(oa);
  } catch (const InfeasibleSpec& e) {
    std::cerr << e.what() << "\n";
    return kInvalid;
  } catch (const InputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kVerifyFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kUsage;
}
