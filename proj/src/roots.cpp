#include "qes/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qes/errors.hpp"

namespace qes {

TrigCubicRoots solve_cubic_trig(double p, double q) {
  const double disc = -4.0 * p * p * p - 27.0 * q * q;
  if (!(p < 0.0) || !(disc > 0.0)) {
    throw ComplexRoots("cubic discriminant is not positive (p=" + std::to_string(p) +
                       ", q=" + std::to_string(q) + ")");
  }
  TrigCubicRoots out;
  out.amplitude = std::sqrt(-4.0 * p / 3.0);
  // Q * sign(q); clamp guards the last ulp when disc is tiny
  const double sin3theta = std::clamp(4.0 * q / (out.amplitude * out.amplitude * out.amplitude), -1.0, 1.0);
  out.phase = std::asin(sin3theta) / 3.0;
  for (int k = 0; k < 3; ++k) {
    out.chi[k] = out.amplitude * std::sin(out.phase + 2.0 * std::numbers::pi * k / 3.0);
  }
  return out;
}

std::vector<double> real_cubic_roots(double c2, double c1, double c0) {
  const double shift = -c2 / 3.0;
  const double p = c1 - c2 * c2 / 3.0;
  const double q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
  const double disc = -4.0 * p * p * p - 27.0 * q * q;
  std::vector<double> roots;
  if (p < 0.0 && disc > 0.0) {
    for (double chi : solve_cubic_trig(p, q).chi) roots.push_back(chi + shift);
  } else if (p == 0.0 && q == 0.0) {
    roots.push_back(shift);
  } else {
    // one real root (or a double root at disc == 0); Cardano with a stable sign choice
    const double half_q = 0.5 * q;
    const double inner = half_q * half_q + p * p * p / 27.0;
    double chi;
    if (inner >= 0.0) {
      const double s = std::sqrt(inner);
      const double u = std::cbrt(-half_q + (half_q > 0 ? -s : s));
      chi = (u != 0.0) ? u - p / (3.0 * u) : 0.0;
    } else {
      // disc <= 0 but inner < 0 only through rounding; fall back to the trig form edge
      const double amp = std::sqrt(-4.0 * p / 3.0);
      chi = amp * std::sin(std::asin(std::clamp(4.0 * q / (amp * amp * amp), -1.0, 1.0)) / 3.0);
    }
    roots.push_back(chi + shift);
    if (disc == 0.0 && p != 0.0) roots.push_back(-0.5 * chi + shift);
  }
  // polish against the original monic cubic
  for (double& x : roots) {
    const double f = ((x + c2) * x + c1) * x + c0;
    const double df = (3.0 * x + 2.0 * c2) * x + c1;
    if (df != 0.0) x -= f / df;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

DepressedQuartic depress_quartic(double B, double C, double D, double E) {
  DepressedQuartic out;
  const double B2 = B * B;
  out.p = C - 3.0 * B2 / 8.0;
  out.q = D - B * C / 2.0 + B2 * B / 8.0;
  out.r = E - B * D / 4.0 + B2 * C / 16.0 - 3.0 * B2 * B2 / 256.0;
  out.shift = -B / 4.0;
  return out;
}

namespace {

// Real roots of x^2 + beta x + delta; throws when clearly complex.
std::array<double, 2> real_quadratic(double beta, double delta, double scale) {
  double disc = beta * beta - 4.0 * delta;
  if (disc < 0.0) {
    if (disc < -1e-10 * std::max(1.0, scale)) {
      throw ComplexRoots("quartic has a complex-conjugate root pair (quadratic discriminant " +
                         std::to_string(disc) + ")");
    }
    disc = 0.0;
  }
  const double s = std::sqrt(disc);
  const double t = -0.5 * (beta + (beta >= 0 ? s : -s));
  if (t == 0.0) return {0.0, 0.0};
  return {t, delta / t};
}

double quartic_value(double x, double p, double q, double r) {
  return ((x * x + p) * x + q) * x + r;
}

}  // namespace

std::array<double, 4> solve_quartic_real(double p, double q, double r) {
  const double scale = std::max({std::abs(p) * std::abs(p), std::abs(q), std::abs(r), 1.0});
  std::array<double, 4> roots{};
  // resolvent: 8m^3 + 8p m^2 + (2p^2 - 8r) m - q^2 = 0
  const auto ms = real_cubic_roots(p, (p * p - 4.0 * r) / 4.0, -q * q / 8.0);
  const double m = ms.back();
  if (m <= 0.0 || std::abs(q) <= std::numeric_limits<double>::epsilon() * scale) {
    // biquadratic: chi^2 = (-p +- sqrt(p^2 - 4r)) / 2
    const auto t = real_quadratic(p, r, scale);
    for (int i = 0; i < 2; ++i) {
      if (t[i] < 0.0) {
        if (t[i] < -1e-10 * std::sqrt(scale)) {
          throw ComplexRoots("biquadratic quartic has imaginary roots");
        }
      }
      const double s = std::sqrt(std::max(t[i], 0.0));
      roots[2 * i] = s;
      roots[2 * i + 1] = -s;
    }
  } else {
    const double s = std::sqrt(2.0 * m);
    const double base = 0.5 * p + m;
    const double skew = q / (2.0 * s);
    const auto r1 = real_quadratic(-s, base + skew, scale);
    const auto r2 = real_quadratic(s, base - skew, scale);
    roots = {r1[0], r1[1], r2[0], r2[1]};
  }
  for (double& x : roots) {
    const double df = (4.0 * x * x + 2.0 * p) * x + q;
    if (df != 0.0) x -= quartic_value(x, p, q, r) / df;
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

double newton_polish_quartic(double x, double B, double C, double D, double E) {
  const double f = (((x + B) * x + C) * x + D) * x + E;
  const double df = ((4.0 * x + 3.0 * B) * x + 2.0 * C) * x + D;
  return df != 0.0 ? x - f / df : x;
}

}  // namespace qes
