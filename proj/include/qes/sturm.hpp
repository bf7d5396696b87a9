#pragma once

#include <vector>

namespace qes {

/// Dense real polynomial, coefficients in ascending powers.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] const std::vector<double>& coeffs() const { return coeffs_; }
  [[nodiscard]] double operator()(double t) const;
  [[nodiscard]] Polynomial derivative() const;
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }

  /// Remainder of *this divided by d.
  [[nodiscard]] Polynomial remainder(const Polynomial& d) const;

 private:
  void trim(double rel_tol);
  std::vector<double> coeffs_;
};

/// Sturm chain p, p', -rem(p, p'), ... Degeneracy (a chain ending before degree 0)
/// indicates a repeated root and is reported through `degenerate`.
class SturmSequence {
 public:
  explicit SturmSequence(const Polynomial& p);

  /// Sign changes of the chain at t (zeros skipped).
  [[nodiscard]] int sign_changes(double t) const;
  [[nodiscard]] int sign_changes_at_infinity() const;
  /// Distinct real roots in (lo, hi].
  [[nodiscard]] int count_roots(double lo, double hi) const;
  [[nodiscard]] bool degenerate() const { return degenerate_; }

  /// Distinct real roots in (lo, +inf), ascending, isolated by Sturm bisection
  /// and then refined by sign bisection on p.
  [[nodiscard]] std::vector<double> roots_above(double lo) const;

 private:
  std::vector<Polynomial> chain_;
  bool degenerate_ = false;
};

}  // namespace qes
