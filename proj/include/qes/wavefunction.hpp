#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qes/params.hpp"
#include "qes/spectrum.hpp"

namespace qes {

/// psi(x) = norm * x^eps * sum_n A_n x^{2n} * exp(-a x^2/2 - b x^4/4)
struct Eigenfunction {
  QesState state;
  ReducedParams reduced;
  std::optional<double> norm_constant;

  [[nodiscard]] int n_cap() const { return static_cast<int>(state.coeffs.size()) - 1; }
  [[nodiscard]] QesIndex index() const { return {n_cap(), state.parity}; }
};

Eigenfunction make_eigenfunction(const QesSpectrum& s, std::size_t m);

double eval_psi(const Eigenfunction& f, double x);

/// psi and its first two derivatives, analytic (product rule on polynomial x weight).
struct PsiJet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d2_magnitude = 0.0;  // sum of |terms| entering d2
};
PsiJet eval_psi_jet(const Eigenfunction& f, double x);

struct NodeReport {
  int count = 0;
  std::vector<double> locations;  // positive nodes ascending; 0 first when eps = 1
  bool multiple_root_warning = false;
};

/// Sturm count of positive roots of the polynomial in t = x^2.
NodeReport count_nodes(const Eigenfunction& f);

/// Integration half-width: max(6, L) with a L^2/2 + b L^4/4 = 40.
double quadrature_half_width(const ReducedParams& r);

/// Integral of f g over the real line (norm constants applied when set).
double norm_and_inner(const Eigenfunction& f, const Eigenfunction& g);

/// Copy of f with norm_constant set so that <f, f> = 1.
Eigenfunction normalized(const Eigenfunction& f);

/// psi'' + (2E - omega^2 x^2 - lambda x^4/2 - eta x^6/3) psi at each x, with couplings
/// rebuilt from (a, b) and the closure for f's index.
std::vector<double> ode_residual(const Eigenfunction& f, double energy, std::span<const double> xs);

/// |residual| / (1 + sum of magnitudes of the terms that cancel), per x.
std::vector<double> ode_residual_scaled(const Eigenfunction& f, double energy,
                                        std::span<const double> xs);

}  // namespace qes
