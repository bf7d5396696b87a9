#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "qes/params.hpp"
#include "qes/recurrence.hpp"

namespace qes {

/// One QES eigenpair. coeffs[0] == 1.
struct QesState {
  double energy = 0.0;
  std::vector<double> coeffs;
  int parity = 0;
  int expected_nodes = 0;  // 2m + eps
  int label = 0;           // m, position in ascending energy order
};

enum class SpectrumSource {
  general,            // tridiagonal eigen-decomposition
  closed_form,        // N <= 3 explicit formulas
  closed_form_fallback,  // closed form requested, validation failed, general used
};

std::string_view to_string(SpectrumSource s);

struct QesSpectrum {
  QesIndex index;
  ReducedParams reduced;
  std::vector<QesState> states;  // ascending energy, N+1 members
  SpectrumSource source = SpectrumSource::general;
};

/// Any N. Energies are half the eigenvalues of the symmetrized recurrence matrix.
QesSpectrum spectrum_general(const ReducedParams& r, const QesIndex& idx);

/// N <= 3 via explicit formulas: linear (N=0), quadratic (N=1), trigonometric
/// cubic (N=2), reduced quartic with rational back-substitution (N=3).
/// For N=2 with a < 0 the sign pattern attached to each chi_k is checked and the
/// general solver is used when it fails; likewise for near-singular denominators.
QesSpectrum spectrum_closed_form(const ReducedParams& r, const QesIndex& idx);

/// A_0 = 1, A_1 from the constant-term condition, A_2..A_N by forward recurrence.
/// Throws NotAnEigenvalue when the final (closure) row residual exceeds
/// rel_tol * max|A_n|.
std::vector<double> coefficients_from_energy(double energy, const ReducedParams& r,
                                             const QesIndex& idx, double rel_tol = 1e-8);

/// Energy from A_1 via E = a(1+2eps)/2 - (1+eps)(2+eps) A_1 / 2.
double energy_from_first_coefficient(double a1, const ReducedParams& r, int parity);

/// Rational back-substitution for N = 2 or 3 given A_1:
///   N=2:  A_2 = 2b A_1 / ((1+2eps) A_1 + 4a)
///   N=3:  A_2 = 4b A_1 (s A_1 + 6a) / ((s A_1 + 4a)(s A_1 + 6a) - 30b - 12 eps b),
///         A_3 = 2b A_2 / (s A_1 + 6a),   s = 1 + 2eps
/// Throws NearSingularDenominator when a denominator is tiny relative to its terms.
std::vector<double> back_substitute_rational(double a1, const ReducedParams& r, const QesIndex& idx);

/// Monic quartic in w (w = A_1 even, w = 3A_1 odd) whose roots give the N=3 states:
/// returns {B, C, D, E} of w^4 + B w^3 + C w^2 + D w + E.
std::array<double, 4> n3_quartic(const ReducedParams& r, int parity);

}  // namespace qes
