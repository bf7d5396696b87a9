#pragma once

#include <vector>

#include "qes/params.hpp"
#include "qes/tridiagonal.hpp"

namespace qes {

/// Tridiagonal M with M A = 2E A for the ansatz coefficients A_0..A_N.
///   diag[n]  = a (4n + 2eps + 1)
///   super[n] = -(2n+1+eps)(2n+2+eps)          (entry (n, n+1), n < N)
///   sub[n-1] = c + 2b(2n-2+eps) = -4b(N-n+1)   (entry (n, n-1), n >= 1, closure imposed)
struct RecurrenceMatrix {
  std::vector<double> diag;
  std::vector<double> super;
  std::vector<double> sub;

  [[nodiscard]] int dim() const { return static_cast<int>(diag.size()); }
  [[nodiscard]] double trace() const;
  /// y = M x
  [[nodiscard]] std::vector<double> apply(const std::vector<double>& x) const;
  /// Diagonal similarity S = D M D^{-1} with D = diag(scale); requires super[n]*sub[n] > 0.
  [[nodiscard]] SymTridiagonal symmetrized(std::vector<double>* scale = nullptr) const;
};

/// c is replaced by -2b(2N+eps) whatever the input value.
RecurrenceMatrix build_recurrence_matrix(const ReducedParams& r, const QesIndex& idx);

}  // namespace qes
