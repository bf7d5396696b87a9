#include "qes/wavefunction.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "qes/errors.hpp"
#include "qes/sturm.hpp"

namespace qes {

Eigenfunction make_eigenfunction(const QesSpectrum& s, std::size_t m) {
  if (m >= s.states.size()) throw InvalidParams("state label out of range");
  return Eigenfunction{s.states[m], s.reduced, std::nullopt};
}

namespace {

double scale_of(const Eigenfunction& f) { return f.norm_constant.value_or(1.0); }

double log_weight(const ReducedParams& r, double x) {
  const double x2 = x * x;
  return -0.5 * r.a * x2 - 0.25 * r.b * x2 * x2;
}

// Horner in t = x^2 over the ansatz polynomial
double poly_t(const std::vector<double>& A, double t) {
  double acc = 0.0;
  for (auto it = A.rbegin(); it != A.rend(); ++it) acc = acc * t + *it;
  return acc;
}

}  // namespace

double eval_psi(const Eigenfunction& f, double x) {
  const double x2 = x * x;
  const double prefactor = f.state.parity == 1 ? x : 1.0;
  return scale_of(f) * prefactor * poly_t(f.state.coeffs, x2) * std::exp(log_weight(f.reduced, x));
}

PsiJet eval_psi_jet(const Eigenfunction& f, double x) {
  // y = sum A_n x^k, k = 2n + eps
  const int eps = f.state.parity;
  double y = 0.0, y1 = 0.0, y2 = 0.0;
  double y1_abs = 0.0, y2_abs = 0.0;
  for (std::size_t n = 0; n < f.state.coeffs.size(); ++n) {
    const int k = 2 * static_cast<int>(n) + eps;
    const double A = f.state.coeffs[n];
    y += A * std::pow(x, k);
    if (k >= 1) {
      const double t = A * k * std::pow(x, k - 1);
      y1 += t;
      y1_abs += std::abs(t);
    }
    if (k >= 2) {
      const double t = A * k * (k - 1) * std::pow(x, k - 2);
      y2 += t;
      y2_abs += std::abs(t);
    }
  }
  const double w = scale_of(f) * std::exp(log_weight(f.reduced, x));
  const double a = f.reduced.a, b = f.reduced.b;
  const double g1 = -a * x - b * x * x * x;
  const double g2 = -a - 3.0 * b * x * x;
  PsiJet out;
  out.value = w * y;
  out.d1 = w * (y1 + y * g1);
  out.d2 = w * (y2 + 2.0 * y1 * g1 + y * (g2 + g1 * g1));
  out.d2_magnitude = std::abs(w) * (y2_abs + 2.0 * y1_abs * std::abs(g1) +
                                    std::abs(y) * (std::abs(g2) + g1 * g1));
  return out;
}

NodeReport count_nodes(const Eigenfunction& f) {
  NodeReport out;
  const SturmSequence sturm{Polynomial(f.state.coeffs)};
  out.multiple_root_warning = sturm.degenerate();
  if (f.state.parity == 1) out.locations.push_back(0.0);
  for (double t : sturm.roots_above(0.0)) out.locations.push_back(std::sqrt(t));
  const int positive = static_cast<int>(out.locations.size()) - f.state.parity;
  out.count = 2 * positive + f.state.parity;
  return out;
}

double quadrature_half_width(const ReducedParams& r) {
  // b t^2/4 + a t/2 - 40 = 0 with t = L^2
  const double t = (-0.5 * r.a + std::sqrt(0.25 * r.a * r.a + 40.0 * r.b)) / (0.5 * r.b);
  return std::max(6.0, std::sqrt(t));
}

double norm_and_inner(const Eigenfunction& f, const Eigenfunction& g) {
  if (f.reduced.a != g.reduced.a || f.reduced.b != g.reduced.b) {
    throw InvalidParams("inner product requires eigenfunctions with the same weight (a, b)");
  }
  if (f.state.parity != g.state.parity) return 0.0;
  const double L = quadrature_half_width(f.reduced);
  auto integrand = [&](double x) { return eval_psi(f, x) * eval_psi(g, x); };
  // same parity: integrand is even
  double err = 0.0;
  const double half = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, L, 15, 1e-14, &err);
  return 2.0 * half;
}

Eigenfunction normalized(const Eigenfunction& f) {
  Eigenfunction out = f;
  out.norm_constant.reset();
  out.norm_constant = 1.0 / std::sqrt(norm_and_inner(out, out));
  return out;
}

namespace {

struct ResidualTerms {
  double residual;
  double magnitude;
};

ResidualTerms residual_at(const Eigenfunction& f, const CouplingParams& p, double energy, double x) {
  const auto jet = eval_psi_jet(f, x);
  const double x2 = x * x;
  const double x4 = x2 * x2;
  const double pot = p.omega_sq * x2 + 0.5 * p.lambda * x4 + p.eta * x4 * x2 / 3.0;
  const double pot_abs = std::abs(p.omega_sq) * x2 + 0.5 * std::abs(p.lambda) * x4 + p.eta * x4 * x2 / 3.0;
  return {jet.d2 + (2.0 * energy - pot) * jet.value,
          jet.d2_magnitude + (2.0 * std::abs(energy) + pot_abs) * std::abs(jet.value)};
}

}  // namespace

std::vector<double> ode_residual(const Eigenfunction& f, double energy, std::span<const double> xs) {
  const auto p = couplings_from_reduced(f.reduced.a, f.reduced.b, f.index());
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(residual_at(f, p, energy, x).residual);
  return out;
}

std::vector<double> ode_residual_scaled(const Eigenfunction& f, double energy,
                                        std::span<const double> xs) {
  const auto p = couplings_from_reduced(f.reduced.a, f.reduced.b, f.index());
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    const auto t = residual_at(f, p, energy, x);
    out.push_back(std::abs(t.residual) / (1.0 + t.magnitude));
  }
  return out;
}

}  // namespace qes
