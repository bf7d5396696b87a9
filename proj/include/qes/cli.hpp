#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qes/oracle.hpp"
#include "qes/params.hpp"
#include "qes/spectrum.hpp"

namespace qes::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { table, spectrum, constraint, export_data, verify, scan };
enum class OutputFormat { human, csv, json };

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kConstraintViolation = 2,
  kSolverFailure = 3,
  kVerificationMismatch = 4,
  kIoError = 5,
};

/// Inclusive lo, lo+step, ..., hi (count rounded from (hi-lo)/step).
struct Range {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;
  [[nodiscard]] std::vector<double> values() const;
};

struct RunConfig {
  Command command = Command::table;
  PartialCouplings couplings;
  QesIndex index;
  OutputFormat format = OutputFormat::human;
  std::optional<int> grid_points;
  std::optional<double> half_width;
  std::optional<std::string> output_path;
  bool force_general = false;
  bool paper_caption_omega = false;
  std::optional<Coupling> solve_for;

  // export
  std::optional<Range> samples;
  std::optional<std::string> samples_path;

  // scan
  std::optional<Range> omega2_range;
  std::optional<Range> lambda_range;
  std::optional<Range> eta_range;
};

/// Fully determined couplings plus how they were obtained.
struct ResolvedCouplings {
  CouplingParams params;
  std::optional<Coupling> solved;  // coupling filled in from the constraint
  bool constraint_satisfied = true;
  std::vector<std::string> notes;
};

ResolvedCouplings resolve_couplings(const RunConfig& cfg);

QesSpectrum compute_spectrum(const ReducedParams& r, const QesIndex& idx, bool force_general);

struct CommandResult {
  int exit_code = kOk;
  std::string output;       // stdout (data)
  std::string diagnostics;  // stderr
};

/// Runs one command; data that targets --out / --samples-out is written there,
/// everything else is returned. Library errors are mapped onto exit codes.
CommandResult run(const RunConfig& cfg);

// Individual commands, exposed for tests. They throw qes::Error subclasses.
std::string cmd_table(const RunConfig& cfg);
std::string cmd_spectrum(const RunConfig& cfg);
std::string cmd_constraint(const RunConfig& cfg);
std::string cmd_export(const RunConfig& cfg);
std::string cmd_verify(const RunConfig& cfg, bool* all_matched);
std::string cmd_scan(const RunConfig& cfg);

/// Shortest round-trip decimal form of x ("." separator, locale independent).
std::string format_shortest(double x);
/// printf-style fixed with `decimals` digits; negative zero prints as zero.
std::string format_fixed(double x, int decimals, bool explicit_plus = false);

}  // namespace qes::cli
