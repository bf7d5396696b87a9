#pragma once

#include <optional>
#include <vector>

#include "qes/params.hpp"
#include "qes/spectrum.hpp"

namespace qes {

/// Full-line grid on [-L, L] with an odd number of points so x = 0 is a node.
struct GridSpec {
  double half_width = 0.0;
  int points = 2001;

  [[nodiscard]] double spacing() const { return 2.0 * half_width / (points - 1); }
};

void validate(const GridSpec& g);

/// V(x) = omega^2 x^2/2 + lambda x^4/4 + eta x^6/6.
double potential(const CouplingParams& p, double x);

/// Half-width with V(L) >= e_max + 25 and WKB decay action >= 20 beyond the outer
/// turning point of e_max.
GridSpec auto_grid(const CouplingParams& p, double e_max, int points = 2001,
                   std::optional<double> half_width = std::nullopt);

enum class ParitySector { even, odd, both };

/// Lowest-k levels on grids h and h/2 (points and 2*points-1) and their
/// Richardson combination (4 E_{h/2} - E_h) / 3.
struct LevelEstimates {
  std::vector<double> coarse;
  std::vector<double> fine;
  std::vector<double> richardson;
};

/// Eigenvalues of H = (-d^2/dx^2 + 2V) / 2 discretized by second-order central
/// differences with Dirichlet walls at +-L. Parity sectors are solved on [0, L]
/// with a Neumann (even) or Dirichlet (odd) condition at 0; `both` merges them.
/// Throws NonConvergence when the two grids disagree by more than 1e-2 (relative).
LevelEstimates lowest_eigenvalues(const CouplingParams& p, std::size_t k, const GridSpec& g,
                                  ParitySector sector = ParitySector::both);

/// Raw single-grid levels for one parity sector.
std::vector<double> grid_levels(const CouplingParams& p, std::size_t k, const GridSpec& g,
                                ParitySector sector);

struct LevelMatch {
  double qes_energy = 0.0;
  double oracle_energy = 0.0;  // Richardson value
  double abs_error = 0.0;
  bool converged = false;  // abs_error < tolerance
  int oracle_index = -1;   // position within the parity sector
};

struct OracleReport {
  std::vector<double> eigenvalues;  // Richardson values, QES parity sector
  std::vector<double> coarse;
  std::vector<double> fine;
  std::vector<LevelMatch> matches;
  std::vector<double> richardson_estimate;
  GridSpec grid;
  double tolerance = 1e-5;

  [[nodiscard]] int matched_count() const;
  [[nodiscard]] bool all_matched() const { return matched_count() == static_cast<int>(matches.size()); }
  [[nodiscard]] double max_error() const;
};

/// Throws ConstraintViolation unless gamma(p) = 4N+3+2eps for s.index.
void require_constraint(const CouplingParams& p, const QesIndex& idx);

/// Matches every QES energy to a distinct oracle level of the same parity.
OracleReport verify_qes(const QesSpectrum& s, const CouplingParams& p,
                        std::optional<GridSpec> grid = std::nullopt, double tolerance = 1e-5);

/// Throws VerificationMismatch when any level of the report is unmatched.
void require_all_matched(const OracleReport& r);

}  // namespace qes
