#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qes {

/// Real symmetric tridiagonal matrix: diagonal d (size n), off-diagonal e (size n-1).
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  [[nodiscard]] std::size_t size() const { return diag.size(); }
};

struct EigenDecomposition {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k], unit norm
};

/// Full decomposition by implicit-shift QL (tql2). Throws NonConvergence after 60
/// sweeps on a single eigenvalue.
EigenDecomposition eigen_symmetric_tridiagonal(const SymTridiagonal& t);

/// Number of eigenvalues strictly below x (Sturm count via LDL^T pivots).
std::size_t count_below(const SymTridiagonal& t, double x);

/// Lowest k eigenvalues by Sturm bisection, ascending, to absolute accuracy tol.
std::vector<double> lowest_eigenvalues_bisection(const SymTridiagonal& t, std::size_t k,
                                                 double tol = 0.0);

}  // namespace qes
