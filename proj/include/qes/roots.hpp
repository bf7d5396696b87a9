#pragma once

#include <array>
#include <vector>

namespace qes {

/// Roots of the depressed cubic chi^3 + p chi + q = 0 with three real roots (p < 0,
/// -4p^3 - 27q^2 > 0), in the sine parameterization
///   chi_k = P sin(theta + 2 pi k / 3),  P = sqrt(-4p/3),  theta = asin(sign(q) Q) / 3,
/// where Q = sqrt(-27 q^2 / (4 p^3)). The k-order is preserved (not sorted).
struct TrigCubicRoots {
  double amplitude = 0.0;  // P
  double phase = 0.0;      // theta
  std::array<double, 3> chi{};
};

TrigCubicRoots solve_cubic_trig(double p, double q);

/// All real roots of the monic cubic x^3 + c2 x^2 + c1 x + c0, ascending.
std::vector<double> real_cubic_roots(double c2, double c1, double c0);

/// Depressed form of a monic quartic x^4 + B x^3 + C x^2 + D x + E under x = chi - B/4.
struct DepressedQuartic {
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
  double shift = 0.0;  // x = chi + shift, shift = -B/4
};

DepressedQuartic depress_quartic(double B, double C, double D, double E);

/// Four real roots of chi^4 + p chi^2 + q chi + r = 0, descending.
/// Ferrari's resolvent cubic and two quadratics; throws ComplexRoots when the
/// quadratic discriminants are genuinely negative.
std::array<double, 4> solve_quartic_real(double p, double q, double r);

/// One Newton step per root on x^4 + B x^3 + C x^2 + D x + E.
double newton_polish_quartic(double x, double B, double C, double D, double E);

}  // namespace qes
