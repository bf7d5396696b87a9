#include "qes/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qes/errors.hpp"
#include "qes/roots.hpp"

namespace qes {

std::string_view to_string(SpectrumSource s) {
  switch (s) {
    case SpectrumSource::general: return "general";
    case SpectrumSource::closed_form: return "closed-form";
    case SpectrumSource::closed_form_fallback: return "general-fallback";
  }
  return "unknown";
}

namespace {

void finalize(QesSpectrum& s) {
  std::sort(s.states.begin(), s.states.end(),
            [](const QesState& x, const QesState& y) { return x.energy < y.energy; });
  for (std::size_t m = 0; m < s.states.size(); ++m) {
    s.states[m].label = static_cast<int>(m);
    s.states[m].parity = s.index.parity;
    s.states[m].expected_nodes = 2 * static_cast<int>(m) + s.index.parity;
  }
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Relative eigen-residual |M A - 2E A| / (|M| |A|).
double eigen_residual(const RecurrenceMatrix& m, const QesState& st) {
  const auto ma = m.apply(st.coeffs);
  double norm_m = 0.0;
  for (int i = 0; i < m.dim(); ++i) {
    norm_m = std::max(norm_m, std::abs(m.diag[i]) + (i < m.dim() - 1 ? std::abs(m.super[i]) : 0.0) +
                                  (i > 0 ? std::abs(m.sub[i - 1]) : 0.0));
  }
  double res = 0.0;
  for (std::size_t i = 0; i < ma.size(); ++i) {
    res = std::max(res, std::abs(ma[i] - 2.0 * st.energy * st.coeffs[i]));
  }
  return res / (std::max(norm_m, 1e-300) * std::max(max_abs(st.coeffs), 1e-300));
}

void check_denominator(double den, double term_scale, const char* what) {
  if (std::abs(den) <= 1e-10 * std::max(term_scale, 1e-300)) {
    throw NearSingularDenominator(std::string("near-singular denominator in ") + what);
  }
}

}  // namespace

QesSpectrum spectrum_general(const ReducedParams& r, const QesIndex& idx) {
  const auto m = build_recurrence_matrix(r, idx);
  std::vector<double> scale;
  const auto sym = m.symmetrized(&scale);
  const auto eig = eigen_symmetric_tridiagonal(sym);

  QesSpectrum out;
  out.index = idx;
  out.reduced = r;
  out.source = SpectrumSource::general;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    QesState st;
    st.energy = 0.5 * eig.values[k];
    const auto& y = eig.vectors[k];
    st.coeffs.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) st.coeffs[i] = y[i] / scale[i];
    const double a0 = st.coeffs[0];
    if (a0 == 0.0) throw SolverFailure("eigenvector has vanishing A_0 component");
    for (double& c : st.coeffs) c /= a0;
    st.coeffs[0] = 1.0;
    out.states.push_back(std::move(st));
  }
  finalize(out);
  return out;
}

double energy_from_first_coefficient(double a1, const ReducedParams& r, int parity) {
  return 0.5 * r.a * (1.0 + 2.0 * parity) - 0.5 * (1.0 + parity) * (2.0 + parity) * a1;
}

std::vector<double> coefficients_from_energy(double energy, const ReducedParams& r,
                                             const QesIndex& idx, double rel_tol) {
  const auto m = build_recurrence_matrix(r, idx);
  const int N = idx.n_cap;
  std::vector<double> A(N + 1, 0.0);
  A[0] = 1.0;
  const double two_e = 2.0 * energy;
  // row n: super[n] A_{n+1} + (diag[n] - 2E) A_n + sub[n-1] A_{n-1} = 0
  for (int n = 0; n < N; ++n) {
    double rest = (m.diag[n] - two_e) * A[n];
    if (n > 0) rest += m.sub[n - 1] * A[n - 1];
    A[n + 1] = -rest / m.super[n];
  }
  double closure = (m.diag[N] - two_e) * A[N];
  if (N > 0) closure += m.sub[N - 1] * A[N - 1];
  if (std::abs(closure) > rel_tol * max_abs(A)) {
    throw NotAnEigenvalue(closure, "E = " + std::to_string(energy) +
                                       " is not an eigenvalue: closure residual " +
                                       std::to_string(closure));
  }
  return A;
}

std::vector<double> back_substitute_rational(double a1, const ReducedParams& r, const QesIndex& idx) {
  const double a = r.a, b = r.b;
  const double s = 1.0 + 2.0 * idx.parity;
  const double sa1 = s * a1;
  switch (idx.n_cap) {
    case 2: {
      const double den = sa1 + 4.0 * a;
      check_denominator(den, std::abs(sa1) + 4.0 * std::abs(a), "A_2 = 2bA_1/(sA_1+4a)");
      return {1.0, a1, 2.0 * b * a1 / den};
    }
    case 3: {
      const double p4 = sa1 + 4.0 * a;
      const double p6 = sa1 + 6.0 * a;
      const double shift = (30.0 + 12.0 * idx.parity) * b;
      const double den2 = p4 * p6 - shift;
      check_denominator(den2, std::abs(p4 * p6) + shift, "A_2 (N=3)");
      check_denominator(p6, std::abs(sa1) + 6.0 * std::abs(a), "A_3 = 2bA_2/(sA_1+6a)");
      const double a2 = 4.0 * b * a1 * p6 / den2;
      return {1.0, a1, a2, 2.0 * b * a2 / p6};
    }
    default:
      throw InvalidParams("rational back-substitution is defined for N = 2, 3 only");
  }
}

std::array<double, 4> n3_quartic(const ReducedParams& r, int parity) {
  const double a = r.a, b = r.b, a2 = a * a;
  if (parity == 0) {
    return {12.0 * a, 4.0 * (11.0 * a2 - 15.0 * b), 24.0 * a * (2.0 * a2 - 11.0 * b),
            -36.0 * b * (4.0 * a2 - 5.0 * b)};
  }
  return {12.0 * a, 44.0 * a2 - 100.0 * b, 24.0 * a * (2.0 * a2 - 21.0 * b),
          -108.0 * b * (4.0 * a2 - 7.0 * b)};
}

namespace {

QesState state_from_a1(double a1, const ReducedParams& r, const QesIndex& idx) {
  QesState st;
  st.energy = energy_from_first_coefficient(a1, r, idx.parity);
  switch (idx.n_cap) {
    case 0: st.coeffs = {1.0}; break;
    case 1: st.coeffs = {1.0, a1}; break;
    default: st.coeffs = back_substitute_rational(a1, r, idx); break;
  }
  return st;
}

// N=2: sign pattern attached to chi_k; k=1 ground (+,+), k=0 (-,-), k=2 (-,+).
bool n2_pattern_holds(const std::array<QesState, 3>& by_k) {
  const auto& g = by_k[1].coeffs;
  const auto& e1 = by_k[0].coeffs;
  const auto& e2 = by_k[2].coeffs;
  const bool signs = g[1] > 0 && g[2] > 0 && e1[1] < 0 && e1[2] < 0 && e2[1] < 0 && e2[2] > 0;
  const bool order = by_k[1].energy < by_k[0].energy && by_k[0].energy < by_k[2].energy;
  return signs && order;
}

QesSpectrum closed_form_unchecked(const ReducedParams& r, const QesIndex& idx) {
  const double a = r.a, b = r.b;
  const int eps = idx.parity;
  QesSpectrum out;
  out.index = idx;
  out.reduced = r;
  out.source = SpectrumSource::closed_form;

  switch (idx.n_cap) {
    case 0:
      out.states.push_back(state_from_a1(0.0, r, idx));
      break;
    case 1: {
      // w^2 + 2a w - k = 0 with w = A_1, k = 2b (even) or w = 3A_1, k = 6b (odd)
      const double k = eps == 0 ? 2.0 * b : 6.0 * b;
      const double root = std::sqrt(a * a + k);
      // root - a = k / (root + a) avoids cancellation for a > 0
      const double w_minus = -a - root;
      const double w_plus = (a >= 0.0) ? k / (a + root) : -a + root;
      const double s = eps == 0 ? 1.0 : 3.0;
      out.states.push_back(state_from_a1(w_plus / s, r, idx));
      out.states.push_back(state_from_a1(w_minus / s, r, idx));
      break;
    }
    case 2: {
      const double p = eps == 0 ? -4.0 * (a * a + 4.0 * b) : -4.0 * (a * a + 8.0 * b);
      const double q = 16.0 * a * b;
      const auto cubic = solve_cubic_trig(p, q);
      const double s = eps == 0 ? 1.0 : 3.0;
      std::array<QesState, 3> by_k;
      for (int k = 0; k < 3; ++k) by_k[k] = state_from_a1((cubic.chi[k] - 2.0 * a) / s, r, idx);
      if (a < 0.0 && !n2_pattern_holds(by_k)) {
        throw SolverFailure("N=2 trigonometric root identification fails for a < 0");
      }
      out.states.assign(by_k.begin(), by_k.end());
      break;
    }
    case 3: {
      const auto [B, C, D, E] = n3_quartic(r, eps);
      const auto dq = depress_quartic(B, C, D, E);
      const auto chis = solve_quartic_real(dq.p, dq.q, dq.r);
      const double s = eps == 0 ? 1.0 : 3.0;
      for (double chi : chis) {
        const double w = newton_polish_quartic(chi + dq.shift, B, C, D, E);
        out.states.push_back(state_from_a1(w / s, r, idx));
      }
      break;
    }
    default:
      throw InvalidParams("closed forms exist for N <= 3 only, got N = " + std::to_string(idx.n_cap));
  }
  finalize(out);
  return out;
}

}  // namespace

QesSpectrum spectrum_closed_form(const ReducedParams& r, const QesIndex& idx) {
  validate(idx);
  if (idx.n_cap > 3) {
    throw InvalidParams("closed forms exist for N <= 3 only, got N = " + std::to_string(idx.n_cap));
  }
  try {
    auto out = closed_form_unchecked(r, idx);
    const auto m = build_recurrence_matrix(r, idx);
    for (const auto& st : out.states) {
      if (eigen_residual(m, st) > 1e-10) throw SolverFailure("closed-form eigen-residual too large");
    }
    return out;
  } catch (const ComplexRoots&) {
    throw;
  } catch (const SolverFailure&) {
    auto out = spectrum_general(r, idx);
    out.source = SpectrumSource::closed_form_fallback;
    return out;
  }
}

}  // namespace qes
