#pragma once

#include <optional>
#include <vector>

namespace qes {

/// Couplings of V(x) = omega^2 x^2/2 + lambda x^4/4 + eta x^6/6.
struct CouplingParams {
  double omega_sq = 0.0;
  double lambda = 0.0;
  double eta = 1.0;  // must be > 0
};

/// Derived quantities of the gauge transform psi = exp(-a x^2/2 - b x^4/4) y(x).
struct ReducedParams {
  double a = 0.0;
  double b = 1.0;
  double c = 0.0;
  double gamma = 0.0;
};

/// Polynomial degree N in x^2 and parity eps of the ansatz x^eps * sum A_n x^{2n}.
struct QesIndex {
  int n_cap = 0;
  int parity = 0;
};

void validate(const CouplingParams& p);
void validate(const QesIndex& idx);

ReducedParams reduce(const CouplingParams& p);

/// 4N + 3 + 2 eps.
double constraint_gamma(const QesIndex& idx);

/// Closure form c + 2b(2N + eps) of the same constraint; zero when it holds.
double closure_residual(const ReducedParams& r, const QesIndex& idx);

/// Couplings consistent with (a, b) and the closure for idx. Inverse of reduce().
CouplingParams couplings_from_reduced(double a, double b, const QesIndex& idx);

enum class Coupling { omega_sq, lambda, eta };

/// Two known couplings; the third is left empty.
struct PartialCouplings {
  std::optional<double> omega_sq;
  std::optional<double> lambda;
  std::optional<double> eta;

  [[nodiscard]] int known_count() const;
  [[nodiscard]] Coupling unknown() const;
};

/// Solves gamma(p) = 4N+3+2eps for the single missing coupling.
///
/// omega^2 follows from an exact linear formula and yields one solution. lambda
/// enters squared, so both signs are returned when lambda != 0. eta is found by a
/// sign-change scan plus bisection; every positive root is returned in ascending
/// order. Throws NoSolution when nothing admissible exists.
std::vector<CouplingParams> solve_constraint(const PartialCouplings& known, const QesIndex& idx);

}  // namespace qes
