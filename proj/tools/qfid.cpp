// qfid: fidelities, the fidelity SDPs, qubit sweeps, geodesic data and the
// property suite from the command line.
//
// Exit codes: 0 ok, 1 property violation (suite), 2 parse/usage error,
// 3 invalid state or failed computation.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qfid/errors.hpp"
#include "qfid/fidelity.hpp"
#include "qfid/geometry.hpp"
#include "qfid/io.hpp"
#include "qfid/kernels.hpp"
#include "qfid/sdp.hpp"
#include "qfid/suite.hpp"

namespace {

using namespace qfid;

struct Globals {
  std::uint64_t seed = 20240611;
  double gap_tol = 1e-8;
  int max_iter = 200;
  std::optional<double> regularize;
  std::string out;
  std::string format;  // empty: the subcommand's default
};

// Writes to --out when given, stdout otherwise.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw std::runtime_error("cannot write " + g.out);
  f << text;
}

std::string format_or(const Globals& g, const char* fallback) { return g.format.empty() ? fallback : g.format; }

DensityMatrix load_state(const std::string& path, const Globals& g) {
  DensityMatrix rho = read_density(path);
  if (g.regularize && *g.regularize > 0.0) return rho.regularized(*g.regularize);
  return rho;
}

int cmd_compute(const Globals& g, const std::string& rho_path, const std::string& sigma_path) {
  const DensityMatrix rho = load_state(rho_path, g), sigma = load_state(sigma_path, g);
  const FidelityReport r = fidelity_report(rho, sigma);
  if (format_or(g, "json") == "csv") {
    emit(g, "uhlmann,holevo,matsumoto,trace_distance\n" + format_sig(r.uhlmann) + "," + format_sig(r.holevo) + "," +
                format_sig(r.matsumoto) + "," + format_sig(r.trace_distance) + "\n");
  } else {
    json j = to_json(r);
    j["regularization"] = g.regularize.value_or(0.0);
    emit(g, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_sweep(const Globals& g, const std::string& fixed, std::size_t n_theta, std::size_t n_lambda) {
  const SweepConfig cfg = SweepConfig::uniform(fixed == "mixed" ? FixedState::mixed : FixedState::pure, n_theta, n_lambda);
  const std::vector<SweepRow> rows = sweep_grid(cfg, Exec::parallel);
  if (format_or(g, "csv") == "json") {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"theta", r.theta}, {"lambda", r.lambda}, {"uhlmann", r.uhlmann}, {"holevo", r.holevo}, {"matsumoto", r.matsumoto}});
    emit(g, arr.dump(2) + "\n");
    return 0;
  }
  std::string csv = "theta,lambda,uhlmann,holevo,matsumoto\n";
  for (const auto& r : rows)
    csv += format_sig(r.theta) + "," + format_sig(r.lambda) + "," + format_sig(r.uhlmann) + "," + format_sig(r.holevo) + "," +
           format_sig(r.matsumoto) + "\n";
  emit(g, csv);
  return 0;
}

int cmd_sdp(const Globals& g, const std::string& rho_path, const std::string& sigma_path, const std::string& kind) {
  const DensityMatrix rho = read_density(rho_path), sigma = read_density(sigma_path);
  SdpOptions opts;
  opts.gap_tol = g.gap_tol;
  opts.max_iter = g.max_iter;
  if (g.regularize) opts.regularize = *g.regularize;
  const FidelitySdp problem{kind == "uhlmann" ? SdpKind::uhlmann : SdpKind::matsumoto, rho, sigma};
  const SdpSolution sol = solve(problem, opts);
  const VerificationReport ver = verify_solution(problem, sol);
  if (format_or(g, "json") == "csv") {
    emit(g, "kind,primal_value,dual_value,gap,iterations,regularization,verified\n" + std::string(to_string(sol.kind)) + "," +
                format_sig(sol.primal_value) + "," + format_sig(sol.dual_value) + "," + format_sig(sol.gap) + "," +
                std::to_string(sol.iterations) + "," + format_sig(sol.regularization) + "," + (ver.ok() ? "true" : "false") + "\n");
  } else {
    json j = to_json(sol);
    j["verification"] = to_json(ver);
    emit(g, j.dump(2) + "\n");
  }
  return ver.ok() ? 0 : 3;
}

int cmd_geodesic(const Globals& g, double r0, double dphi, int samples) {
  if (samples < 2) throw InvalidArgument("--samples must be >= 2");
  std::string csv = "phi,r\n";
  double min_r = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    const double phi = k == samples - 1 ? dphi : dphi * k / (samples - 1);
    const double r = hyperbolic_geodesic_r(phi, r0, dphi);
    min_r = std::min(min_r, r);
    csv += format_sig(phi) + "," + format_sig(r) + "\n";
  }
  const json summary = {{"r0", r0},
                        {"dphi", dphi},
                        {"samples", samples},
                        {"midpoint_radius", midpoint_radius(r0, dphi)},
                        {"min_sampled_r", min_r},
                        {"fgm_asymptotic", fgm_asymptotic(r0, dphi)}};
  emit(g, csv);
  (g.out.empty() ? std::cerr : std::cout) << summary.dump(2) << "\n";
  return 0;
}

int cmd_suite(const Globals& g, int trials, std::size_t min_dim, std::size_t max_dim, bool serial) {
  SuiteOptions opts;
  opts.seed = g.seed;
  opts.trials = trials;
  opts.min_dim = min_dim;
  opts.max_dim = max_dim;
  opts.exec = serial ? Exec::serial : Exec::parallel;
  const SuiteReport report = run_suite(opts);
  if (format_or(g, "json") == "csv") {
    std::string csv = "name,group,trials,pass\n";
    for (const auto& r : report.rows)
      csv += "\"" + r.name + "\"," + r.group + "," + std::to_string(r.trials) + "," + (r.pass ? "true" : "false") + "\n";
    emit(g, csv);
  } else {
    emit(g, to_json(report).dump(2) + "\n");
  }
  std::cerr << format_table(report);
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fidelities of positive semidefinite matrices: closed forms, SDP, geometry, property suite"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for all random ensembles");
  app.add_option("--gap-tol", g.gap_tol, "SDP duality-gap tolerance")->check(CLI::PositiveNumber);
  app.add_option("--max-iter", g.max_iter, "SDP iteration cap")->check(CLI::PositiveNumber);
  app.add_option("--regularize", g.regularize, "Apply (rho + eps I)/(1 + n eps) to the inputs")->check(CLI::NonNegativeNumber);
  app.add_option("--out", g.out, "Output file (default: standard output)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::string rho_path, sigma_path;
  auto* compute = app.add_subcommand("compute", "Uhlmann, Holevo, Matsumoto fidelities and trace distance");
  compute->add_option("rho", rho_path, "Matrix JSON file")->required();
  compute->add_option("sigma", sigma_path, "Matrix JSON file")->required();

  std::string fixed = "pure";
  std::size_t n_theta = 101, n_lambda = 101;
  auto* sweep = app.add_subcommand("sweep", "Qubit fidelity sweep over (theta, lambda) as CSV");
  sweep->add_option("--fixed", fixed, "Fixed state: pure |0><0| or mixed diag(3/4,1/4)")->check(CLI::IsMember({"pure", "mixed"}));
  sweep->add_option("--theta-points", n_theta, "Grid points in theta over [0, pi/2]")->check(CLI::PositiveNumber);
  sweep->add_option("--lambda-points", n_lambda, "Grid points in lambda over [0, 1]")->check(CLI::PositiveNumber);

  std::string kind = "matsumoto";
  auto* sdp = app.add_subcommand("sdp", "Solve a fidelity SDP and verify the certificate");
  sdp->add_option("rho", rho_path, "Matrix JSON file")->required();
  sdp->add_option("sigma", sigma_path, "Matrix JSON file")->required();
  sdp->add_option("--kind", kind, "Which SDP")->check(CLI::IsMember({"matsumoto", "uhlmann"}));

  double r0 = 10.0, dphi = 0.1;
  int samples = 201;
  auto* geodesic = app.add_subcommand("geodesic", "Hyperbolic geodesic r(phi) as CSV, midpoint and asymptotic summary");
  geodesic->add_option("--r0", r0, "Endpoint radius")->check(CLI::PositiveNumber);
  geodesic->add_option("--dphi", dphi, "Angular separation");
  geodesic->add_option("--samples", samples, "CSV rows");

  int trials = 200;
  std::size_t min_dim = 2, max_dim = 6;
  bool serial = false;
  auto* suite = app.add_subcommand("suite", "Run the property suite");
  suite->add_option("--trials", trials, "Trials per property")->check(CLI::NonNegativeNumber);
  suite->add_option("--min-dim", min_dim, "Smallest dimension");
  suite->add_option("--max-dim", max_dim, "Largest dimension");
  suite->add_flag("--serial", serial, "Run trials without OpenMP");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*compute) return cmd_compute(g, rho_path, sigma_path);
    if (*sweep) return cmd_sweep(g, fixed, n_theta, n_lambda);
    if (*sdp) return cmd_sdp(g, rho_path, sigma_path, kind);
    if (*geodesic) return cmd_geodesic(g, r0, dphi, samples);
    if (*suite) return cmd_suite(g, trials, min_dim, max_dim, serial);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const InvalidState& e) {
    std::cerr << "invalid state: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
