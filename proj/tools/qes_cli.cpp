// qes: exact eigenstates of the sextic anharmonic oscillator under the QES constraint.
#include <CLI11.hpp>

#include <iostream>
#include <map>

#include "qes/cli.hpp"

namespace {

qes::cli::Range parse_range(const std::string& text) {
  // lo:hi:step
  qes::cli::Range r;
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw CLI::ValidationError("range", "expected lo:hi:step, got '" + text + "'");
  }
  r.lo = std::stod(text.substr(0, c1));
  r.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  r.step = std::stod(text.substr(c2 + 1));
  return r;
}

struct Options {
  std::optional<double> omega2, lambda, eta;
  int n_cap = 0;
  std::string parity = "even";
  std::string format = "human";
  std::optional<std::string> out;
  std::optional<int> grid_points;
  std::optional<double> half_width;
  bool force_general = false;
  bool paper_caption_omega = false;
  std::optional<std::string> solve_for;
  std::optional<std::string> samples, samples_out;
  std::optional<std::string> omega2_range, lambda_range, eta_range;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--omega2", o.omega2, "quadratic coupling omega^2");
  cmd->add_option("--lambda", o.lambda, "quartic coupling lambda");
  cmd->add_option("--eta", o.eta, "sextic coupling eta (> 0)");
  cmd->add_option("--N", o.n_cap, "polynomial degree N in x^2")->check(CLI::NonNegativeNumber);
  cmd->add_option("--parity", o.parity, "even|odd")->check(CLI::IsMember({"even", "odd"}));
  cmd->add_option("--format", o.format, "human|csv|json")->check(CLI::IsMember({"human", "csv", "json"}));
  cmd->add_option("--out", o.out, "write data to this path instead of stdout");
  cmd->add_option("--grid-points", o.grid_points, "oracle coarse grid points (odd, >= 201)");
  cmd->add_option("--half-width", o.half_width, "oracle half-width L");
  cmd->add_flag("--force-general", o.force_general, "use the tridiagonal solver even for N <= 3");
  cmd->add_flag("--paper-caption-omega", o.paper_caption_omega,
                "odd parity: use the even-constraint omega^2 instead of solving gamma=4N+5");
  cmd->add_option("--solve-for", o.solve_for, "coupling fixed by the constraint: omega2|lambda|eta")
      ->check(CLI::IsMember({"omega2", "lambda", "eta"}));
}

}  // namespace

int main(int argc, char** argv) {
  using namespace qes::cli;
  CLI::App app{"Quasi-exactly-solvable states of the sextic anharmonic oscillator"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1, 1);

  Options o;
  const std::map<std::string, Command> commands{
      {"table", Command::table},        {"spectrum", Command::spectrum},
      {"constraint", Command::constraint}, {"export", Command::export_data},
      {"verify", Command::verify},      {"scan", Command::scan}};
  const std::map<std::string, std::string> help{
      {"table", "coefficient/eigenvalue table, 6 decimals"},
      {"spectrum", "all N+1 states with node counts"},
      {"constraint", "solve gamma = 4N+3+2eps for the missing coupling"},
      {"export", "per-state records and optional psi samples"},
      {"verify", "check QES energies against a finite-difference Hamiltonian"},
      {"scan", "sweep one or two couplings, CSV rows of QES energies"}};
  for (const auto& [name, cmd] : commands) {
    auto* sub = app.add_subcommand(name, help.at(name));
    add_common(sub, o);
    if (name == "export") {
      sub->add_option("--samples", o.samples, "psi sample grid lo:hi:step");
      sub->add_option("--samples-out", o.samples_out, "CSV path for psi samples");
    }
    if (name == "scan") {
      sub->add_option("--omega2-range", o.omega2_range, "lo:hi:step");
      sub->add_option("--lambda-range", o.lambda_range, "lo:hi:step");
      sub->add_option("--eta-range", o.eta_range, "lo:hi:step");
    }
  }

  CLI11_PARSE(app, argc, argv);

  RunConfig cfg;
  for (const auto& [name, cmd] : commands) {
    if (app.got_subcommand(name)) cfg.command = cmd;
  }
  cfg.couplings = {o.omega2, o.lambda, o.eta};
  cfg.index = {o.n_cap, o.parity == "odd" ? 1 : 0};
  cfg.format = o.format == "csv" ? OutputFormat::csv : o.format == "json" ? OutputFormat::json : OutputFormat::human;
  cfg.output_path = o.out;
  cfg.grid_points = o.grid_points;
  cfg.half_width = o.half_width;
  cfg.force_general = o.force_general;
  cfg.paper_caption_omega = o.paper_caption_omega;
  if (o.solve_for) {
    cfg.solve_for = *o.solve_for == "omega2"   ? qes::Coupling::omega_sq
                    : *o.solve_for == "lambda" ? qes::Coupling::lambda
                                               : qes::Coupling::eta;
  }
  try {
    if (o.samples) cfg.samples = parse_range(*o.samples);
    if (o.omega2_range) cfg.omega2_range = parse_range(*o.omega2_range);
    if (o.lambda_range) cfg.lambda_range = parse_range(*o.lambda_range);
    if (o.eta_range) cfg.eta_range = parse_range(*o.eta_range);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  cfg.samples_path = o.samples_out;

  const auto res = run(cfg);
  std::cout << res.output;
  std::cerr << res.diagnostics;
  return res.exit_code;
}
