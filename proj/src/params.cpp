#include "qes/params.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qes/errors.hpp"

namespace qes {

void validate(const CouplingParams& p) {
  if (!(p.eta > 0.0) || !std::isfinite(p.eta)) {
    throw InvalidParams("eta must be finite and > 0, got " + std::to_string(p.eta));
  }
  if (!std::isfinite(p.omega_sq) || !std::isfinite(p.lambda)) {
    throw InvalidParams("omega^2 and lambda must be finite");
  }
}

void validate(const QesIndex& idx) {
  if (idx.n_cap < 0) throw InvalidParams("N must be nonnegative");
  if (idx.parity != 0 && idx.parity != 1) throw InvalidParams("parity must be 0 or 1");
}

ReducedParams reduce(const CouplingParams& p) {
  validate(p);
  const double root3_over_eta = std::sqrt(3.0 / p.eta);
  const double quartic_shift = 3.0 * p.lambda * p.lambda / (16.0 * p.eta);
  ReducedParams r;
  r.a = 0.25 * p.lambda * root3_over_eta;
  r.b = std::sqrt(p.eta / 3.0);
  r.c = p.omega_sq + std::sqrt(3.0 * p.eta) - quartic_shift;
  r.gamma = root3_over_eta * (quartic_shift - p.omega_sq);
  return r;
}

double constraint_gamma(const QesIndex& idx) {
  return 4.0 * idx.n_cap + 3.0 + 2.0 * idx.parity;
}

double closure_residual(const ReducedParams& r, const QesIndex& idx) {
  return r.c + 2.0 * r.b * (2.0 * idx.n_cap + idx.parity);
}

CouplingParams couplings_from_reduced(double a, double b, const QesIndex& idx) {
  if (!(b > 0.0)) throw InvalidParams("b must be > 0");
  // eta = 3b^2, lambda = 4ab, and c = omega^2 + 3b - a^2 = -2b(2N+eps).
  CouplingParams p;
  p.eta = 3.0 * b * b;
  p.lambda = 4.0 * a * b;
  p.omega_sq = a * a - b * constraint_gamma(idx);
  return p;
}

int PartialCouplings::known_count() const {
  return int(omega_sq.has_value()) + int(lambda.has_value()) + int(eta.has_value());
}

Coupling PartialCouplings::unknown() const {
  if (known_count() != 2) throw InvalidParams("exactly two couplings must be given");
  if (!omega_sq) return Coupling::omega_sq;
  if (!lambda) return Coupling::lambda;
  return Coupling::eta;
}

namespace {

// With u = eta^{-1/2} the constraint reads
//   (3 sqrt3 lambda^2 / 16) u^3 - sqrt3 omega^2 u - gamma = 0,  u > 0.
double eta_residual(double u, double omega_sq, double lambda, double gamma) {
  const double s3 = std::sqrt(3.0);
  return (3.0 * s3 * lambda * lambda / 16.0) * u * u * u - s3 * omega_sq * u - gamma;
}

std::vector<double> positive_u_roots(double omega_sq, double lambda, double gamma) {
  constexpr double log_lo = -8.0;
  constexpr double log_hi = 8.0;
  constexpr int scan_points = 4000;
  std::vector<double> roots;
  double u_prev = std::pow(10.0, log_lo);
  double f_prev = eta_residual(u_prev, omega_sq, lambda, gamma);
  for (int i = 1; i <= scan_points; ++i) {
    const double u = std::pow(10.0, log_lo + (log_hi - log_lo) * i / scan_points);
    const double f = eta_residual(u, omega_sq, lambda, gamma);
    if (f == 0.0) {
      roots.push_back(u);
    } else if (f_prev != 0.0 && std::signbit(f) != std::signbit(f_prev)) {
      double lo = u_prev, hi = u, f_lo = f_prev;
      for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = eta_residual(mid, omega_sq, lambda, gamma);
        if (f_mid == 0.0) {
          lo = hi = mid;
          break;
        }
        if (std::signbit(f_mid) == std::signbit(f_lo)) {
          lo = mid;
          f_lo = f_mid;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    u_prev = u;
    f_prev = f;
  }
  return roots;
}

}  // namespace

std::vector<CouplingParams> solve_constraint(const PartialCouplings& known, const QesIndex& idx) {
  validate(idx);
  const double gamma = constraint_gamma(idx);
  switch (known.unknown()) {
    case Coupling::omega_sq: {
      CouplingParams p{0.0, *known.lambda, *known.eta};
      validate(p);
      p.omega_sq = 3.0 * p.lambda * p.lambda / (16.0 * p.eta) - gamma * std::sqrt(p.eta / 3.0);
      return {p};
    }
    case Coupling::lambda: {
      const double eta = *known.eta;
      validate(CouplingParams{*known.omega_sq, 0.0, eta});
      const double lambda_sq = 16.0 * eta / 3.0 * (*known.omega_sq + gamma * std::sqrt(eta / 3.0));
      if (lambda_sq < 0.0) {
        throw NoSolution("no real lambda satisfies gamma = " + std::to_string(gamma) +
                         " for the given omega^2 and eta");
      }
      const double lam = std::sqrt(lambda_sq);
      if (lam == 0.0) return {CouplingParams{*known.omega_sq, 0.0, eta}};
      return {CouplingParams{*known.omega_sq, -lam, eta}, CouplingParams{*known.omega_sq, lam, eta}};
    }
    case Coupling::eta: {
      const double omega_sq = *known.omega_sq;
      const double lambda = *known.lambda;
      if (!std::isfinite(omega_sq) || !std::isfinite(lambda)) {
        throw InvalidParams("omega^2 and lambda must be finite");
      }
      auto us = positive_u_roots(omega_sq, lambda, gamma);
      if (us.empty()) {
        throw NoSolution("no eta > 0 satisfies gamma = " + std::to_string(gamma) +
                         " for the given omega^2 and lambda");
      }
      std::vector<CouplingParams> out;
      // descending u is ascending eta
      for (auto it = us.rbegin(); it != us.rend(); ++it) {
        out.push_back(CouplingParams{omega_sq, lambda, 1.0 / (*it * *it)});
      }
      return out;
    }
  }
  throw InvalidParams("unreachable coupling selector");
}

}  // namespace qes
