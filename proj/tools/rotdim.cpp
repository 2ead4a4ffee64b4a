// rotdim: optimal edge weights, embeddings and certificates for graphs.
//
//   rotdim analyze GRAPH.json [--out FILE] [--export-embedding FILE.csv] ...
//   rotdim family {complete|kn-minus-e|gmk|g23} [--n N] [--m M] [--k K]
//   rotdim verify {GRAPH.json | REPORT.json | family NAME ...} [--cert-tol T] [--separator "1,2,3"]
//
// Exit codes: 0 ok, 2 input/usage error, 3 disconnected graph, 4 solver did
// not converge, 5 parameter out of range, 6 certification failed.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rotdim/rotdim.hpp"

namespace {

using namespace rotdim;

enum Exit : int {
  kOk = 0,
  kInputError = 2,
  kDisconnected = 3,
  kNoProgress = 4,
  kOutOfRange = 5,
  kCertFailed = 6,
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Disconnected:
      return kDisconnected;
    case ErrorCode::ParameterOutOfRange:
      return kOutOfRange;
    case ErrorCode::NoConvergence:
    case ErrorCode::DisconnectedSupport:
    case ErrorCode::LPInfeasible:
    case ErrorCode::DegenerateSpectrum:
      return kNoProgress;
    default:
      return kInputError;
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Parse, "cannot write " + path);
  out << text;
}

struct Flags {
  double tol = 1e-6;
  std::size_t max_iters = 20000;
  double step_scale = 0.0;
  std::uint64_t seed = 0;
  double rank_tol = 1e-7;
  double cluster_tol = kDefaultClusterTol;

  AnalysisOptions options() const {
    AnalysisOptions o;
    o.solver.tol = tol;
    o.solver.max_iters = max_iters;
    o.solver.step_scale = step_scale;
    o.solver.seed = seed;
    o.solver.cluster_tol = cluster_tol;
    o.rank_tol = rank_tol;
    return o;
  }
};

void add_solver_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--tol", f.tol, "stopping tolerance on lambda1 progress")->capture_default_str();
  cmd->add_option("--max-iters", f.max_iters, "iteration cap")->capture_default_str();
  cmd->add_option("--step-scale", f.step_scale, "initial step (0 = 1/max degree)");
  cmd->add_option("--seed", f.seed, "starting-point jitter seed (0 = uniform start)")
      ->capture_default_str();
  cmd->add_option("--rank-tol", f.rank_tol, "numerical rank tolerance")->capture_default_str();
  cmd->add_option("--cluster-tol", f.cluster_tol, "eigenvalue clustering tolerance")
      ->capture_default_str();
}

struct FamilyArgs {
  std::string name;
  std::size_t n = 0, m = 0, k = 0;

  FamilySpec spec() const {
    if (name != "complete" && name != "kn-minus-e" && name != "gmk" && name != "g23") {
      throw Error(ErrorCode::ParameterOutOfRange, "unknown family '" + name + "'");
    }
    if ((name == "complete" || name == "kn-minus-e") && n == 0) {
      throw Error(ErrorCode::ParameterOutOfRange, name + " needs --n");
    }
    if (name == "gmk" && (m == 0 || k == 0)) {
      throw Error(ErrorCode::ParameterOutOfRange, "gmk needs --m and --k");
    }
    return FamilySpec{name, n, m, k};
  }
};

void add_family_params(CLI::App* cmd, FamilyArgs& f) {
  cmd->add_option("--n", f.n, "vertex count (complete, kn-minus-e)");
  cmd->add_option("--m", f.m, "common clique size (gmk)");
  cmd->add_option("--k", f.k, "number of satellites (gmk)");
}

std::vector<Vertex> parse_separator(const std::string& text, std::size_t n) {
  std::vector<Vertex> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    long long id = 0;
    try {
      id = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, "bad separator entry '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) {
      throw Error(ErrorCode::Parse, "bad separator entry '" + item + "'");
    }
    if (id < 1 || static_cast<std::size_t>(id) > n) {
      throw Error(ErrorCode::VertexOutOfRange, "separator vertex " + std::to_string(id));
    }
    out.push_back(static_cast<Vertex>(id - 1));
  }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_analyze(const std::string& path, const Flags& flags, const std::string& out,
                const std::string& csv) {
  const Graph g = graph_from_json(read_json_file(path));
  const auto report = analyze_graph(g, flags.options());
  write_text(out, dump_json(report_to_json(report)));
  if (!csv.empty()) {
    std::ostringstream text;
    write_embedding_csv(text, report.extraction.embedding);
    write_text(csv, text.str());
  }
  if (!report.solve.converged) {
    std::cerr << "rotdim: NoProgress: solver stopped after " << report.solve.iterations
              << " iterations without converging\n";
    return kNoProgress;
  }
  return kOk;
}

int cmd_family(const FamilyArgs& args, const Flags& flags, const std::string& out) {
  const auto sol = analytic_solution(args.spec());
  const auto report = analyze_graph(sol.graph, flags.options());
  Json j = report_to_json(report);
  j["analytic"] = analytic_to_json(sol, flags.rank_tol);
  write_text(out, dump_json(j));
  if (!report.solve.converged) {
    std::cerr << "rotdim: NoProgress: numeric solve did not converge\n";
    return kNoProgress;
  }
  return kOk;
}

struct Certificate {
  Graph graph;
  EdgeWeightVector w;
  Embedding v;
  double lambda1 = 0.0;
  bool analytic = false;
};

Certificate certificate_from_report(const Json& doc) {
  Certificate c;
  try {
    c.graph = graph_from_json(doc.at("input").at("graph"));
    c.w = EdgeWeightVector(doc.at("solver").at("w").get<Vector>());
    c.v = embedding_from_json(doc.at("embedding").at("coords"));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::Parse, std::string("report: ") + ex.what());
  }
  require_connected(c.graph);
  if (c.v.coords.size() != c.graph.vertex_count() || c.w.size() != c.graph.edge_count()) {
    throw Error(ErrorCode::Parse, "report sizes do not match its graph");
  }
  c.lambda1 = first_nonzero_eigenvalue(c.graph, c.w).lambda1;
  return c;
}

int cmd_verify(const std::vector<std::string>& target, const FamilyArgs& fam_flags,
               const Flags& flags, std::optional<double> cert_tol,
               const std::string& separator) {
  Certificate c;
  if (target.front() == "family") {
    if (target.size() != 2) throw Error(ErrorCode::Parse, "usage: verify family NAME [--n/--m/--k]");
    FamilyArgs args = fam_flags;
    args.name = target[1];
    const auto sol = analytic_solution(args.spec());
    c = Certificate{sol.graph, sol.w, sol.embedding, sol.lambda1, true};
  } else {
    if (target.size() != 1) throw Error(ErrorCode::Parse, "verify takes one file");
    const Json doc = read_json_file(target.front());
    if (doc.is_object() && doc.contains("schema")) {
      c = certificate_from_report(doc);
    } else {
      const Graph g = graph_from_json(doc);
      const auto report = analyze_graph(g, flags.options());
      c = Certificate{g, report.solve.w_star, report.extraction.embedding, report.spectrum.lambda1,
                      false};
    }
  }
  const double tol = cert_tol.value_or(c.analytic ? 1e-10 : 1e-3);

  std::optional<Separator> sep;
  if (!separator.empty()) {
    sep = components_after_removal(c.graph, parse_separator(separator, c.graph.vertex_count()));
  }

  const auto kkt = kkt_residuals(c.graph, c.w, c.v, c.lambda1);
  const std::pair<const char*, double> residuals[] = {
      {"slackness_residual", kkt.slackness_residual},
      {"stationarity_residual", kkt.stationarity_residual},
      {"equilibrium_residual", kkt.equilibrium_residual},
      {"distance_violation", kkt.distance_violation},
      {"weight_feasibility_residual", kkt.weight_feasibility_residual},
  };
  bool ok = true;
  for (const auto& [name, value] : residuals) {
    const bool pass = value < tol;
    std::cout << name << ' ' << format_g17(value) << (pass ? " ok" : " FAIL") << '\n';
    if (!pass) {
      std::cerr << "rotdim: certification failed: " << name << " = " << format_g17(value)
                << " >= " << format_g17(tol) << '\n';
      ok = false;
    }
  }
  if (sep) {
    const auto hit = separator_shadow_check(c.graph, *sep, c.v);
    if (hit) {
      std::cout << "separator_shadow component " << (*hit + 1) << " of " << sep->components.size()
                << " ok\n";
    } else {
      std::cout << "separator_shadow none FAIL\n";
      std::cerr << "rotdim: certification failed: separator_shadow found no shadowed component\n";
      ok = false;
    }
  }
  std::cout << "lambda1 " << format_g17(c.lambda1) << '\n';
  return ok ? kOk : kCertFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph Laplacian eigenvalue maximization, optimal embeddings and certificates"};
  app.require_subcommand(1);

  Flags analyze_flags, family_flags, verify_flags;
  std::string analyze_path, analyze_out, analyze_csv, family_out, separator;
  FamilyArgs family_args, verify_family;
  std::vector<std::string> verify_target;
  double cert_tol_value = 0.0;

  auto* analyze = app.add_subcommand("analyze", "solve, extract and certify a graph file");
  analyze->add_option("path", analyze_path, "graph JSON file")->required();
  add_solver_flags(analyze, analyze_flags);
  analyze->add_option("--out", analyze_out, "write the report here instead of stdout");
  analyze->add_option("--export-embedding", analyze_csv, "write embedding coordinates as CSV");

  auto* family = app.add_subcommand("family", "analytic and numeric solution of a named family");
  family->add_option("name", family_args.name, "complete | kn-minus-e | gmk | g23")->required();
  add_family_params(family, family_args);
  add_solver_flags(family, family_flags);
  family->add_option("--out", family_out, "write the report here instead of stdout");

  auto* verify = app.add_subcommand("verify", "check optimality conditions");
  verify->add_option("target", verify_target, "graph file, report file, or: family NAME")
      ->required();
  add_family_params(verify, verify_family);
  add_solver_flags(verify, verify_flags);
  auto* cert_opt = verify->add_option("--cert-tol", cert_tol_value,
                                      "residual threshold (default 1e-3 numeric, 1e-10 analytic)");
  verify->add_option("--separator", separator, "1-based separator vertices, e.g. \"1,2,3\"");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(analyze_path, analyze_flags, analyze_out, analyze_csv);
    if (family->parsed()) return cmd_family(family_args, family_flags, family_out);
    std::optional<double> cert_tol;
    if (cert_opt->count() > 0) cert_tol = cert_tol_value;
    return cmd_verify(verify_target, verify_family, verify_flags, cert_tol, separator);
  } catch (const Error& e) {
    std::cerr << "rotdim: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "rotdim: " << e.what() << '\n';
    return kInputError;
  }
}
