// qfluid: command-line front end for the Schroedinger-fluid and spin-vortex checks.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qfluid/linear_core.hpp"
#include "qfluid/projective_geometry.hpp"
#include "qfluid/schrodinger_fluid.hpp"
#include "qfluid/spin_vortex.hpp"
#include "qfluid/verification.hpp"

namespace {

using nlohmann::json;
using namespace qfluid;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

/// Bad input file, malformed JSON or a precondition on the input.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string output;
  std::string contour;
  int grid = 64;
  std::uint64_t seed = 7;
  double tol_euler = 1e-5;
  double tol_killing = 1e-5;
  std::vector<int> pair;
  double t = 0.1;
  int n = 1;
  int steps = 1000;
  int samples = 100;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

/// The JSON report goes to stdout, and to --output when a command has no CSV.
void emit(const json& report, const std::string& output) {
  const std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (!output.empty()) write_text(output, text);
}

HermitianOperator load_hamiltonian(const json& j) {
  try {
    return hermitian_from_json(j);
  } catch (const json::exception& e) {
    throw InputError(std::string("hamiltonian: ") + e.what());
  }
}

/// Optional "state" entry next to the matrix; `fallback` otherwise.
StateVector load_state(const json& j, const StateVector& fallback) {
  if (!j.contains("state")) return fallback;
  try {
    return StateVector::normalized(state_from_json(j.at("state")).amplitudes());
  } catch (const json::exception& e) {
    throw InputError(std::string("state: ") + e.what());
  }
}

StateVector equal_pair(const HermitianOperator& h, int i, int j) {
  return StateVector::normalized(h.eigenvectors().col(i) + h.eigenvectors().col(j));
}

std::pair<int, int> select_pair(const Options& o, const HermitianOperator& h) {
  const int dim = static_cast<int>(h.dim());
  if (o.pair.empty()) return {dim - 1, 0};
  const int i = o.pair[0], j = o.pair[1];
  if (i <= j || j < 0 || i >= dim) {
    throw InputError("--pair needs i > j >= 0 and i < " + std::to_string(dim));
  }
  return {i, j};
}

json critical_json(const std::vector<CriticalPoint>& cps) {
  json out = json::array();
  for (const auto& cp : cps) {
    out.push_back({{"kind", to_string(cp.kind)},
                   {"indices", cp.indices},
                   {"pressure", cp.pressure},
                   {"gradient_norm", cp.gradient_norm},
                   {"phase_orbit", cp.phase_orbit},
                   {"state", state_to_json(cp.representative.representative())}});
  }
  return out;
}

int run_verify(const Options& o) {
  const json in = read_json(o.input);
  const HermitianOperator h = load_hamiltonian(in);
  VerifyOptions v;
  v.seed = o.seed;
  v.samples = o.samples;
  v.tol_euler = o.tol_euler;
  v.tol_killing = o.tol_killing;
  const auto checks = verify_schrodinger_fluid(h, v);
  bool passed = true;
  json list = json::array();
  for (const auto& c : checks) {
    passed = passed && c.passed;
    list.push_back(to_json(c));
  }
  emit({{"command", "verify"}, {"seed", o.seed}, {"samples", o.samples}, {"checks", list}, {"passed", passed}},
       o.output);
  return passed ? kExitPass : kExitCheckFailed;
}

int run_pressure(const Options& o) {
  const json in = read_json(o.input);
  const HermitianOperator h = load_hamiltonian(in);
  const auto [i, j] = select_pair(o, h);
  const GeodesicSphere sphere(h, i, j);
  const double omega = sphere.omega();

  std::ostringstream csv;
  csv << "theta,phi,numeric,analytic,abs_err\n";
  double worst = 0.0;
  for (int a = 0; a < o.grid; ++a) {
    const double theta = std::numbers::pi * a / (o.grid - 1);
    for (int b = 0; b < o.grid; ++b) {
      const double phi = 2.0 * std::numbers::pi * b / o.grid;
      const double numeric = 0.5 * dispersion_via_metric(h, ProjectivePoint(sphere.state(theta, phi)));
      const double s = std::sin(theta);
      const double analytic = omega * omega * s * s / 8.0;
      const double err = std::abs(numeric - analytic);
      worst = std::max(worst, err);
      csv << num(theta) << ',' << num(phi) << ',' << num(numeric) << ',' << num(analytic) << ','
          << num(err) << '\n';
    }
  }
  const std::string path = o.output.empty() ? "pressure_landscape.csv" : o.output;
  write_text(path, csv.str());

  const double tolerance = 1e-8;
  json report{{"command", "pressure"},
              {"pair", {i, j}},
              {"grid", o.grid},
              {"csv", path},
              {"max_abs_error", worst},
              {"threshold", tolerance}};
  bool passed = worst < tolerance;
  if (h.is_nondegenerate()) {
    const auto cps = critical_points(h);
    for (const auto& cp : cps) passed = passed && cp.gradient_norm < 1e-8;
    report["critical_points"] = critical_json(cps);
  } else {
    report["critical_points"] = nullptr;
    report["note"] = "degenerate spectrum: critical set not enumerated";
  }
  report["passed"] = passed;
  std::cout << report.dump(2) << "\n";
  return passed ? kExitPass : kExitCheckFailed;
}

int run_critical_points(const Options& o) {
  const json in = read_json(o.input);
  const HermitianOperator h = load_hamiltonian(in);
  if (!h.is_nondegenerate()) {
    throw InputError(
        "critical-points assumes a nondegenerate spectrum (distinct eigenvalues); smallest gap " +
        num(h.min_gap()));
  }
  const auto cps = critical_points(h);
  bool passed = true;
  for (const auto& cp : cps) passed = passed && cp.gradient_norm < 1e-8;
  json report{{"command", "critical-points"}, {"critical_points", critical_json(cps)}, {"threshold", 1e-8}};
  if (h.dim() == 3) {
    const auto search = critical_grid_search(h);
    report["grid_search"] = {{"grid_points", search.grid_points},
                             {"critical_hits", search.critical_hits},
                             {"unexplained", search.unexplained}};
    passed = passed && search.unexplained == 0;
  }
  report["passed"] = passed;
  emit(report, o.output);
  return passed ? kExitPass : kExitCheckFailed;
}

int run_vorticity(const Options& o) {
  const json in = read_json(o.input);
  const HermitianOperator h = load_hamiltonian(in);
  const auto [i, j] = select_pair(o, h);
  const auto profile = vorticity_on_sphere(h, i, j, o.grid, o.grid);

  std::ostringstream csv;
  csv << "theta,phi,numeric,analytic,abs_err\n";
  double transport = 0.0;
  for (const auto& s : profile.samples) {
    csv << num(s.theta) << ',' << num(s.phi) << ',' << num(s.numeric) << ',' << num(s.analytic) << ','
        << num(s.abs_err) << '\n';
    transport = std::max(transport, vorticity_transport_residual(h, i, j, s.theta, s.phi));
  }
  const std::string path = o.output.empty() ? "vorticity_profile.csv" : o.output;
  write_text(path, csv.str());

  const bool passed = profile.max_relative_error < 1e-4 && transport < 1e-8;
  const json report{{"command", "vorticity"},
                    {"pair", {i, j}},
                    {"omega", profile.omega},
                    {"grid", o.grid},
                    {"csv", path},
                    {"max_abs_error", profile.max_abs_error},
                    {"max_relative_error", profile.max_relative_error},
                    {"relative_threshold", 1e-4},
                    {"transport_residual", transport},
                    {"transport_threshold", 1e-8},
                    {"passed", passed}};
  std::cout << report.dump(2) << "\n";
  return passed ? kExitPass : kExitCheckFailed;
}

int run_trajectory(const Options& o) {
  const json in = read_json(o.input);
  const HermitianOperator h = load_hamiltonian(in);
  const int last = static_cast<int>(h.dim()) - 1;
  const StateVector start = load_state(in, equal_pair(h, last, 0));
  if (start.dim() != h.dim()) throw InputError("state dimension does not match the Hamiltonian");
  const auto report = schrodinger_trajectory(h, ProjectivePoint(start), o.t, o.steps);
  const ProjectivePoint p(start);
  const double grad = pressure_gradient(h, p).norm();
  const bool geodesic = report.max_deviation < 1e-6;
  const bool critical = grad < 1e-8;
  // Integral curves are geodesics exactly where dp vanishes.
  const bool consistent = geodesic == critical || report.flow.exited || report.geodesic.exited;
  emit({{"command", "trajectory"},
        {"t", o.t},
        {"steps", o.steps},
        {"chart", report.chart},
        {"max_deviation", report.max_deviation},
        {"pressure_gradient_norm", grad},
        {"geodesic", geodesic},
        {"exited_chart", report.flow.exited || report.geodesic.exited},
        {"passed", consistent}},
       o.output);
  return consistent ? kExitPass : kExitCheckFailed;
}

int run_zeno(const Options& o) {
  const json in = read_json(o.input);
  const HermitianOperator h = load_hamiltonian(in);
  const StateVector v = load_state(in, equal_pair(h, 1, 0));
  if (v.dim() != h.dim()) throw InputError("state dimension does not match the Hamiltonian");
  const double survival = zeno_decay(h, v, o.t, o.n);
  const double deficit = 1.0 - survival;
  const double predicted = dispersion_squared(h, v) * o.t * o.t / o.n;
  const double relative = predicted > 0 ? std::abs(deficit - predicted) / predicted : std::abs(deficit);
  const bool quadratic = zeno_quadratic_regime(h, v, o.t);
  const bool passed = !quadratic || relative < 0.02;
  emit({{"command", "zeno"},
        {"t", o.t},
        {"N", o.n},
        {"survival", survival},
        {"deficit", deficit},
        {"predicted_deficit", predicted},
        {"relative_error", relative},
        {"quadratic_regime", quadratic},
        {"passed", passed}},
       o.output);
  return passed ? kExitPass : kExitCheckFailed;
}

int run_spin_circulation(const Options& o) {
  const auto chi = spin::wavefunction_from_json(read_json(o.input));
  json report{{"command", "spin-circulation"}, {"two_s", chi.two_s()}};
  double value = 0.0;
  bool passed = true;
  if (o.contour.empty()) {
    const auto total = spin::total_spin_circulation(chi);
    value = total.value;
    report["contour"] = "total";
    report["deficit"] = total.deficit;
    if (!total.warning.empty()) {
      report["warning"] = total.warning;
      std::cerr << "warning: " << total.warning << "\n";
    }
    passed = std::abs(value - total.effective_degree) < 1e-8;
  } else {
    const auto contour = spin::contour_from_json(read_json(o.contour));
    value = spin::circulation(chi, contour);
    report["contour"] = o.contour;
    passed = std::abs(value - std::round(value)) < 1e-8;
  }
  report["circulation"] = value;
  report["integral"] = passed;
  char line[64];
  std::snprintf(line, sizeof line, "%.9f\n", value);
  std::cout << line;
  if (!o.output.empty()) write_text(o.output, report.dump(2) + "\n");
  return passed ? kExitPass : kExitCheckFailed;
}

int run_spin_divisor(const Options& o) {
  const auto chi = spin::wavefunction_from_json(read_json(o.input));
  const auto divisor = spin::vorticity_divisor(chi);
  int total = 0;
  for (const auto& e : divisor) total += e.multiplicity;
  emit({{"command", "spin-divisor"},
        {"two_s", chi.two_s()},
        {"effective_degree", chi.effective_degree()},
        {"multiplicity_sum", total},
        {"divisor", spin::divisor_to_json(divisor)}},
       o.output);
  return total == chi.effective_degree() ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schroedinger-fluid and spin-vortex numerical checks"};
  app.require_subcommand(1);
  Options o;

  auto input = [&](CLI::App* sub) { sub->add_option("--input", o.input, "input JSON")->required()->check(CLI::ExistingFile); };
  auto output = [&](CLI::App* sub, const std::string& what) { sub->add_option("--output", o.output, what); };
  auto grid = [&](CLI::App* sub) { sub->add_option("--grid", o.grid, "grid points per axis")->check(CLI::Range(2, 4096)); };
  auto pair = [&](CLI::App* sub) { sub->add_option("--pair", o.pair, "eigenstate pair i j, i > j")->expected(2); };

  auto* verify = app.add_subcommand("verify", "randomized Killing/Euler/orthogonality residual sweep");
  input(verify);
  output(verify, "report JSON path");
  verify->add_option("--seed", o.seed, "random seed");
  verify->add_option("--samples", o.samples, "random states")->check(CLI::Range(1, 100000));
  verify->add_option("--tol-euler", o.tol_euler, "Euler residual threshold")->check(CLI::PositiveNumber);
  verify->add_option("--tol-killing", o.tol_killing, "Killing residual threshold")->check(CLI::PositiveNumber);

  auto* pressure = app.add_subcommand("pressure", "pressure landscape on a geodesic sphere and critical points");
  input(pressure);
  output(pressure, "landscape CSV path");
  grid(pressure);
  pair(pressure);

  auto* critical = app.add_subcommand("critical-points", "enumerate critical points of the pressure");
  input(critical);
  output(critical, "report JSON path");

  auto* vorticity = app.add_subcommand("vorticity", "vorticity profile on a geodesic sphere");
  input(vorticity);
  output(vorticity, "profile CSV path");
  grid(vorticity);
  pair(vorticity);

  auto* trajectory = app.add_subcommand("trajectory", "Schroedinger trajectory against the geodesic");
  input(trajectory);
  output(trajectory, "report JSON path");
  trajectory->add_option("--t", o.t, "total time")->check(CLI::PositiveNumber);
  trajectory->add_option("--steps", o.steps, "RK4 steps")->check(CLI::Range(1, 10000000));

  auto* zeno = app.add_subcommand("zeno", "survival under N equally spaced measurements");
  input(zeno);
  output(zeno, "report JSON path");
  zeno->add_option("--t", o.t, "total time")->check(CLI::NonNegativeNumber);
  zeno->add_option("--N", o.n, "number of measurements")->check(CLI::Range(1, 100000000));

  auto* circulation = app.add_subcommand("spin-circulation", "circulation of the Madelung velocity");
  input(circulation);
  output(circulation, "report JSON path");
  circulation->add_option("--contour", o.contour, "contour JSON (total circulation if omitted)")
      ->check(CLI::ExistingFile);

  auto* divisor = app.add_subcommand("spin-divisor", "zeros of the wavefunction with multiplicities");
  input(divisor);
  output(divisor, "report JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInputError;
  }

  try {
    if (*verify) return run_verify(o);
    if (*pressure) return run_pressure(o);
    if (*critical) return run_critical_points(o);
    if (*vorticity) return run_vorticity(o);
    if (*trajectory) return run_trajectory(o);
    if (*zeno) return run_zeno(o);
    if (*circulation) return run_spin_circulation(o);
    if (*divisor) return run_spin_divisor(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const spin::NearRootError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const spin::DivisorAmbiguity& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitInputError;
}
