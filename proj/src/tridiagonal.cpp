#include "qes/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qes/errors.hpp"

namespace qes {

EigenDecomposition eigen_symmetric_tridiagonal(const SymTridiagonal& t) {
  const std::size_t n = t.size();
  if (n == 0) return {};
  if (t.off.size() + 1 != n) throw InvalidParams("off-diagonal must have n-1 entries");

  std::vector<double> d = t.diag;
  std::vector<double> e(n, 0.0);
  std::copy(t.off.begin(), t.off.end(), e.begin());
  // z is stored column-major: z[k * n + i] is component i of eigenvector k.
  std::vector<double> z(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) z[i * n + i] = 1.0;

  constexpr double eps = std::numeric_limits<double>::epsilon();
  double f = 0.0;
  double tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > 60) {
          throw NonConvergence("tridiagonal QL failed to converge for eigenvalue " +
                               std::to_string(l));
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t i = m; i-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          for (std::size_t k = 0; k < n; ++k) {
            h = z[(i + 1) * n + k];
            z[(i + 1) * n + k] = s * z[i * n + k] + c * h;
            z[i * n + k] = c * z[i * n + k] - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });

  EigenDecomposition out;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (std::size_t k : order) {
    out.values.push_back(d[k]);
    out.vectors.emplace_back(z.begin() + static_cast<std::ptrdiff_t>(k * n),
                             z.begin() + static_cast<std::ptrdiff_t>((k + 1) * n));
  }
  return out;
}

std::size_t count_below(const SymTridiagonal& t, double x) {
  const std::size_t n = t.size();
  constexpr double tiny = std::numeric_limits<double>::min();
  std::size_t count = 0;
  double q = t.diag[0] - x;
  if (q < 0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(q) < tiny) q = -tiny;
    q = t.diag[i] - x - t.off[i - 1] * t.off[i - 1] / q;
    if (q < 0) ++count;
  }
  return count;
}

std::vector<double> lowest_eigenvalues_bisection(const SymTridiagonal& t, std::size_t k,
                                                 double tol) {
  const std::size_t n = t.size();
  k = std::min(k, n);
  // Gershgorin bounds
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double rad = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(t.off[i]) : 0.0);
    lo = std::min(lo, t.diag[i] - rad);
    hi = std::max(hi, t.diag[i] + rad);
  }
  const double span = std::max(hi - lo, 1.0);
  lo -= 1e-3 * span;
  hi += 1e-3 * span;

  std::vector<double> out;
  out.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    // find x with count_below(x) == j ... j+1 boundary
    double left = lo, right = hi;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (left + right);
      if (mid <= left || mid >= right) break;
      if (right - left <= std::max(tol, 2.0 * std::numeric_limits<double>::epsilon() *
                                            std::max(std::abs(left), std::abs(right)))) {
        break;
      }
      if (count_below(t, mid) > j) {
        right = mid;
      } else {
        left = mid;
      }
    }
    out.push_back(0.5 * (left + right));
    lo = left;
  }
  return out;
}

}  // namespace qes
