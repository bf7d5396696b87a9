#include "qes/recurrence.hpp"

#include <cmath>
#include <numeric>

#include "qes/errors.hpp"

namespace qes {

double RecurrenceMatrix::trace() const {
  return std::accumulate(diag.begin(), diag.end(), 0.0);
}

std::vector<double> RecurrenceMatrix::apply(const std::vector<double>& x) const {
  const std::size_t n = diag.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = diag[i] * x[i];
    if (i + 1 < n) y[i] += super[i] * x[i + 1];
    if (i > 0) y[i] += sub[i - 1] * x[i - 1];
  }
  return y;
}

SymTridiagonal RecurrenceMatrix::symmetrized(std::vector<double>* scale) const {
  const std::size_t n = diag.size();
  SymTridiagonal t;
  t.diag = diag;
  t.off.resize(n > 0 ? n - 1 : 0);
  std::vector<double> d(n, 1.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double prod = super[i] * sub[i];
    if (!(prod > 0.0)) {
      throw SolverFailure("recurrence off-diagonal product is not positive; b must be > 0");
    }
    // S_{i,i+1} = d_i M_{i,i+1} / d_{i+1}; both off-diagonal signs are negative
    t.off[i] = -std::sqrt(prod);
    d[i + 1] = d[i] * std::sqrt(super[i] / sub[i]);
  }
  if (scale != nullptr) *scale = std::move(d);
  return t;
}

RecurrenceMatrix build_recurrence_matrix(const ReducedParams& r, const QesIndex& idx) {
  validate(idx);
  const int N = idx.n_cap;
  const int eps = idx.parity;
  const double c = -2.0 * r.b * (2.0 * N + eps);
  RecurrenceMatrix m;
  m.diag.resize(N + 1);
  m.super.resize(N);
  m.sub.resize(N);
  for (int n = 0; n <= N; ++n) {
    m.diag[n] = r.a * (4.0 * n + 2.0 * eps + 1.0);
    if (n < N) m.super[n] = -double(2 * n + 1 + eps) * double(2 * n + 2 + eps);
    if (n >= 1) m.sub[n - 1] = c + 2.0 * r.b * (2.0 * n - 2.0 + eps);
  }
  return m;
}

}  // namespace qes
