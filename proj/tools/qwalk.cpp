// qwalk: command-line front end for the quantum walk analysis library.
//
// Exit codes: 0 success, 1 numerical or detection failure, 2 input error.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qwalk/detectors.hpp"
#include "qwalk/error.hpp"
#include "qwalk/json.hpp"
#include "qwalk/kernels.hpp"
#include "qwalk/oracle.hpp"

namespace {

using namespace qwalk;
using json::Json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;

struct RunConfig {
  std::string format = "edge-list";
  bool oriented = false;
  double tol = kDefaultSpectralTol;
  double cert_tol = 1e-7;
  double accept_tol = 1e-8;
  double flat_tol = 1e-9;
  long long max_den = kDefaultMaxDenominator;
  double t_max = 20.0;
  double grid_step = 0.0;
  std::string emit = "report";
  std::uint64_t seed = 0;

  DetectorOptions detector() const {
    DetectorOptions opt;
    opt.accept_tol = accept_tol;
    opt.flat_tol = flat_tol;
    opt.t_max = t_max;
    opt.grid_step = grid_step;
    opt.ratio.max_den = max_den;
    opt.ratio.cert_tol = cert_tol;
    return opt;
  }
};

void validate(const RunConfig& c) {
  if (!(c.tol > 0) || !(c.cert_tol > 0) || !(c.accept_tol > 0) || !(c.flat_tol > 0))
    throw InvalidArgument("tolerances must be positive");
  if (c.max_den < 1) throw InvalidArgument("--max-den must be at least 1");
  if (!(c.t_max > 0)) throw InvalidArgument("--t-max must be positive");
  if (c.grid_step < 0) throw InvalidArgument("--grid-step must be non-negative");
}

int max_order() {
  const char* env = std::getenv("QWALK_MAX_N");
  if (env == nullptr || *env == '\0') return kDefaultMaxOrder;
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (*end != '\0' || value < 1) throw InvalidArgument("QWALK_MAX_N must be a positive integer");
  return static_cast<int>(value);
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Input {
  std::optional<Graph> graph;
  std::optional<OrientedGraph> oriented;
  std::vector<long long> labels;
  CMatrix h;

  int order() const { return static_cast<int>(h.rows()); }
  GraphStats stats() const { return graph ? graph_stats(*graph) : graph_stats(*oriented); }
  int max_valency() const { return stats().max_valency; }
};

Input load(const std::string& path, const RunConfig& c) {
  const std::string text = read_input(path);
  const GraphFormat format = parse_format_name(c.format);
  Input in;
  if (c.oriented) {
    auto parsed = parse_oriented(text, format);
    in.h = hermitian_matrix(parsed.graph);
    in.oriented = std::move(parsed.graph);
    in.labels = std::move(parsed.labels);
  } else {
    auto parsed = parse_graph(text, format);
    in.h = hermitian_matrix(parsed.graph);
    in.graph = std::move(parsed.graph);
    in.labels = std::move(parsed.labels);
  }
  if (in.order() > max_order()) throw InvalidArgument("graph order exceeds QWALK_MAX_N");
  if (in.order() == 0) throw InvalidArgument("graph has no vertices");
  return in;
}

SpectralDecomposition decompose(const Input& in, const RunConfig& c) { return spectral_decompose(in.h, c.tol, max_order()); }

int vertex_index(const Input& in, long long label) {
  const auto it = std::find(in.labels.begin(), in.labels.end(), label);
  if (it == in.labels.end()) throw InvalidArgument("unknown vertex label " + std::to_string(label));
  return static_cast<int>(it - in.labels.begin());
}

int parse_vertex(const Input& in, const std::string& text) {
  try {
    std::size_t used = 0;
    const long long label = std::stoll(text, &used);
    if (used != text.size()) throw InvalidArgument("");
    return vertex_index(in, label);
  } catch (const std::logic_error&) {
    throw InvalidArgument("bad vertex label '" + text + "'");
  }
}

/// "vertex:a", an inline JSON density, or a path to one.
CMatrix raw_state(const Input& in, const std::string& state_arg) {
  if (state_arg.rfind("vertex:", 0) == 0) return vertex_state(in.order(), parse_vertex(in, state_arg.substr(7))).matrix();
  const std::string text = !state_arg.empty() && state_arg.front() == '{' ? state_arg : read_input(state_arg);
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("state JSON: ") + e.what());
  }
  CMatrix m = json::matrix_from_json(doc);
  if (m.rows() != in.order()) throw InvalidArgument("state dimension does not match the graph order");
  return m;
}

DensityMatrix parse_state(const Input& in, const std::string& state_arg, const RunConfig& c) {
  return DensityMatrix::from_matrix(raw_state(in, state_arg), kDefaultStateTol, c.max_den);
}

std::optional<int> vertex_of(const std::string& state_arg, const Input& in) {
  if (state_arg.rfind("vertex:", 0) != 0) return std::nullopt;
  return parse_vertex(in, state_arg.substr(7));
}

Json state_flags(const DensityMatrix& p) {
  return {{"real", p.is_real()}, {"pure", p.is_pure()}, {"rational", p.is_rational()}};
}

// --- commands ----------------------------------------------------------------

int cmd_spectra(const Input& in, const RunConfig& c) {
  std::cout << json::dump(json::to_json(decompose(in, c)));
  return kExitOk;
}

int cmd_analyze(const Input& in, const std::string& state_arg, const RunConfig& c) {
  const DensityMatrix p = parse_state(in, state_arg, c);
  const SpectralDecomposition d = decompose(in, c);
  const DetectorOptions opt = c.detector();
  const BlockDecomposition blocks = block_decompose(p, d, opt.block_tol);

  if (c.emit == "blocks") {
    std::cout << json::dump(json::to_json(blocks));
    return kExitOk;
  }
  if (c.emit == "scan") {
    const double step = c.grid_step > 0 ? c.grid_step : oracle::kDefaultScanStep;
    const auto scans = oracle::scan_objectives(in.h, {0.0, c.t_max}, step,
                                               {oracle::return_objective(p.matrix(), in.h),
                                                oracle::imaginary_objective(p.matrix(), in.h)});
    std::cout << json::dump({{"return", json::to_json(scans[0])}, {"imaginary", json::to_json(scans[1])}});
    return kExitOk;
  }

  Json out;
  out["order"] = in.order();
  out["oriented"] = c.oriented;
  out["state"] = state_flags(p);
  out["theta"] = d.eigenvalues();
  out["warnings"] = d.warnings();

  const DetectionReport period = detect_periodicity(p, d, opt);
  out["periodicity"] = json::to_json(period);
  out["certificate"] = period.certificate ? json::to_json(*period.certificate) : Json(nullptr);
  if (p.is_real()) {
    DetectionReport pst = detect_pst(p, d, opt);
    if (pst.target_vertex) pst.target_vertex = static_cast<int>(in.labels[*pst.target_vertex]);
    out["pst"] = json::to_json(pst);
    if (d.real_source()) out["pgst_candidates"] = json::to_json(pgst_candidates(p, blocks, d, opt));
  }
  out["uniform_mixing"] = json::to_json(detect_uniform_mixing(d, opt));
  if (const auto a = vertex_of(state_arg, in)) {
    out["local_mixing"] = json::to_json(detect_local_uniform_mixing(d, *a, opt));
    if (in.stats().connected)
      out["bounds"] = in.graph ? json::to_json(periodic_vertex_bounds(*in.graph, d, *a, opt))
                               : json::to_json(periodic_vertex_bounds(*in.oriented, d, *a, opt));
  }
  std::cout << json::dump(out);
  return kExitOk;
}

int cmd_evolve(const Input& in, const std::string& state_arg, double t, const RunConfig& c) {
  const DensityMatrix p = parse_state(in, state_arg, c);
  const SpectralDecomposition d = decompose(in, c);
  const DensityMatrix q = evolve(block_decompose(p, d), t);
  std::cout << json::dump({{"t", t}, {"state", json::matrix_to_json(q.matrix())}, {"flags", state_flags(q)}});
  return kExitOk;
}

int cmd_scan(const Input& in, const std::string& kind, const std::string& state_arg, const std::string& target,
             const std::string& vertex, const RunConfig& c) {
  const double step = c.grid_step > 0 ? c.grid_step : oracle::kDefaultScanStep;
  const oracle::Window window{0.0, c.t_max};
  oracle::ScanResult result;
  if (kind == "return") {
    result = oracle::scan_return(parse_state(in, state_arg, c).matrix(), in.h, window, step);
  } else if (kind == "transfer") {
    if (target.empty()) throw InvalidArgument("scan transfer needs --target");
    result = oracle::scan_transfer(parse_state(in, state_arg, c).matrix(), parse_state(in, target, c).matrix(), in.h,
                                   window, step);
  } else if (kind == "flatness") {
    result = oracle::scan_flatness(in.h, parse_vertex(in, vertex), window, step);
  } else {
    throw InvalidArgument("unknown scan kind '" + kind + "'");
  }
  std::cout << json::dump(json::to_json(result));
  return kExitOk;
}

int cmd_orient(const Input& in, const RunConfig& c) {
  if (!in.graph) throw InvalidArgument("orient expects an undirected graph");
  const auto parts = bipartition(*in.graph);
  if (!parts) throw InvalidArgument("graph is not bipartite");
  std::cout << serialize_oriented(natural_orientation(*in.graph, *parts), parse_format_name(c.format));
  return kExitOk;
}

// --- verify --------------------------------------------------------------------

struct Suite {
  Json checks = Json::array();
  bool pass = true;

  void record(const std::string& name, double residual, double bound) {
    const bool ok = std::isfinite(residual) && residual <= bound;
    checks.push_back({{"name", name}, {"pass", ok}, {"residual", residual}, {"bound", bound}});
    pass = pass && ok;
  }
  void record_flag(const std::string& name, bool ok) {
    checks.push_back({{"name", name}, {"pass", ok}});
    pass = pass && ok;
  }
};

void verify_state(Suite& suite, const std::string& label, const DensityMatrix& p, const SpectralDecomposition& d,
                  const RunConfig& c, std::mt19937_64& rng) {
  const DetectorOptions opt = c.detector();
  const BlockDecomposition blocks = block_decompose(p, d);
  suite.record(label + ".blocks.reconstruction", (blocks.reconstruct() - p.matrix()).norm(), 1e-8);

  std::uniform_real_distribution<double> time(0.0, c.t_max);
  const DensityMatrix other = vertex_state(d.order(), d.order() - 1);
  double symmetry = 0.0;
  double evolution = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double t = time(rng);
    symmetry = std::max(symmetry, std::abs(verify_transfer(p, other, d, t) - verify_transfer(other, p, d, t)));
    const CMatrix u = oracle::walk_matrix(d.source(), t);
    evolution = std::max(evolution, (evolve_matrix(blocks, t) - u * p.matrix() * u.adjoint()).norm());
  }
  suite.record(label + ".transfer_symmetry", symmetry, 1e-10);
  suite.record(label + ".evolution_vs_oracle", evolution, 1e-8);

  if (!p.is_real()) return;
  const DetectionReport period = detect_periodicity(p, d, opt);
  if (period.verdict == Verdict::yes && *period.witness_time > 0) {
    const double sigma = *period.witness_time;
    const CMatrix u = oracle::walk_matrix(d.source(), sigma);
    suite.record(label + ".period_return_oracle", (u * p.matrix() * u.adjoint() - p.matrix()).norm(), 1e-8);
    if (p.is_rational() && period.certificate)
      suite.record(label + ".rational_period_bound", std::max(0.0, sigma - 2.0 * std::numbers::pi), 1e-9);
  }
  const DetectionReport pst = detect_pst(p, d, opt);
  if (pst.verdict == Verdict::yes) {
    const CMatrix& q = pst.target->matrix();
    const double tau = *pst.witness_time;
    const CMatrix u = oracle::walk_matrix(d.source(), tau);
    suite.record(label + ".pst_oracle", (u * p.matrix() * u.adjoint() - q).norm(), 10.0 * c.accept_tol);
    if (std::abs((p.matrix() * q).trace()) <= 1e-9)
      suite.record(label + ".pst_time_lower_bound", std::max(0.0, pst_time_lower_bound(d) - tau), 1e-9);
  }
}

int cmd_verify(const Input& in, const std::string& state_arg, const RunConfig& c) {
  Suite suite;
  std::mt19937_64 rng(c.seed);

  if (!state_arg.empty()) {
    const DensityCheck check = check_density(raw_state(in, state_arg));
    suite.record("state.hermitian", check.hermitian_residual, kDefaultStateTol);
    suite.record("state.trace", check.trace_residual, kDefaultStateTol);
    suite.record("state.psd", std::max(0.0, -check.min_eigenvalue), kDefaultStateTol);
    if (!suite.pass) {
      std::cout << json::dump({{"pass", false}, {"checks", suite.checks}});
      return kExitFailure;
    }
  }

  const SpectralDecomposition d = decompose(in, c);
  const Json spectra = json::to_json(d);
  const double scale = 1e-8 * std::max(1.0, d.norm());
  for (const auto& [name, value] : spectra["residuals"].items()) suite.record("spectra." + name, value.get<double>(), scale);

  std::uniform_real_distribution<double> time(0.0, c.t_max);
  double path = 0.0;
  double unitarity = 0.0;
  const int n = in.order();
  for (int i = 0; i < 10; ++i) {
    const double t = time(rng);
    const CMatrix u = transition_matrix(d, t);
    path = std::max(path, (u - oracle::walk_matrix(in.h, t)).norm());
    unitarity = std::max(unitarity, (u * u.adjoint() - CMatrix::Identity(n, n)).norm());
  }
  suite.record("oracle.path_independence", path, 1e-8);
  suite.record("walk.unitarity", unitarity, 1e-10);

  if (in.oriented) {
    const double spread = std::max(std::abs(d.eigenvalues().front()), std::abs(d.eigenvalues().back()));
    suite.record("oriented.spectral_radius_le_max_valency",
                 std::max(0.0, spread - static_cast<double>(in.max_valency())), 1e-9);
  }

  const GraphStats stats = in.stats();
  for (int a = 0; a < n; ++a) {
    const std::string label = "vertex" + std::to_string(in.labels[a]);
    verify_state(suite, label, vertex_state(n, a), d, c, rng);
    if (stats.connected) {
      const VertexBounds b = in.graph ? periodic_vertex_bounds(*in.graph, d, a, c.detector())
                                      : periodic_vertex_bounds(*in.oriented, d, a, c.detector());
      suite.record_flag(label + ".bounds_consistent", b.consistent);
    }
  }
  if (!state_arg.empty()) verify_state(suite, "state", parse_state(in, state_arg, c), d, c, rng);

  std::cout << json::dump({{"pass", suite.pass}, {"checks", suite.checks}, {"isa", kernels::isa_name(kernels::active_isa())}});
  return suite.pass ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous quantum walk analysis on graphs and oriented graphs"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig c;
  app.add_option("--format", c.format, "Input format: edge-list, graph6, json");
  app.add_flag("--oriented", c.oriented, "Read an oriented graph (arc list or JSON with \"arcs\")");
  app.add_option("--tol", c.tol, "Eigenvalue grouping tolerance");
  app.add_option("--cert-tol", c.cert_tol, "Ratio certificate tolerance");
  app.add_option("--accept-tol", c.accept_tol, "Frobenius acceptance tolerance");
  app.add_option("--flat-tol", c.flat_tol, "Per-entry flatness tolerance");
  app.add_option("--max-den", c.max_den, "Largest denominator in rational approximations");
  app.add_option("--t-max", c.t_max, "Search horizon");
  app.add_option("--grid-step", c.grid_step, "Time grid step (0 picks a default)");
  app.add_option("--emit", c.emit, "analyze output: report, scan, blocks")
      ->check(CLI::IsMember({"report", "scan", "blocks"}));
  app.add_option("--seed", c.seed, "Seed for randomized checks");

  std::string input;
  std::string state;
  std::string target;
  std::string vertex = "0";
  std::string kind = "return";
  double t = 0.0;

  auto* spectra = app.add_subcommand("spectra", "Eigenvalues, multiplicities and idempotent residuals");
  spectra->add_option("input", input, "Graph file or - for stdin")->required();

  auto* analyze = app.add_subcommand("analyze", "Run every detector on a state");
  analyze->add_option("input", input, "Graph file or - for stdin")->required();
  analyze->add_option("--state", state, "vertex:<label>, inline JSON density, or a JSON file")->required();

  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  verify->add_option("input", input, "Graph file or - for stdin")->required();
  verify->add_option("--state", state, "Optional extra state to check");

  auto* evolve_cmd = app.add_subcommand("evolve", "State at time t");
  evolve_cmd->add_option("input", input, "Graph file or - for stdin")->required();
  evolve_cmd->add_option("--state", state, "Initial state")->required();
  evolve_cmd->add_option("--time,-t", t, "Time")->required();

  auto* scan = app.add_subcommand("scan", "Oracle time scans");
  scan->add_option("input", input, "Graph file or - for stdin")->required();
  scan->add_option("--kind", kind, "return, transfer or flatness")
      ->check(CLI::IsMember({"return", "transfer", "flatness"}));
  scan->add_option("--state", state, "Initial state (return, transfer)");
  scan->add_option("--target", target, "Target state (transfer)");
  scan->add_option("--vertex", vertex, "Vertex label (flatness)");

  auto* orient = app.add_subcommand("orient", "Natural orientation of a bipartite graph");
  orient->add_option("input", input, "Graph file or - for stdin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    validate(c);
    const Input in = load(input, c);
    if (*spectra) return cmd_spectra(in, c);
    if (*analyze) return cmd_analyze(in, state, c);
    if (*verify) return cmd_verify(in, state, c);
    if (*evolve_cmd) return cmd_evolve(in, state, t, c);
    if (*scan) {
      if (kind != "flatness" && state.empty()) throw InvalidArgument("scan needs --state");
      return cmd_scan(in, kind, state, target, vertex, c);
    }
    if (*orient) return cmd_orient(in, c);
  } catch (const ParseError& e) {
    std::cerr << "qwalk: parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvalidArgument& e) {
    std::cerr << "qwalk: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "qwalk: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
