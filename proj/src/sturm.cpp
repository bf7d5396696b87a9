#include "qes/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qes {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(0.0); }

void Polynomial::trim(double rel_tol) {
  double scale = 0.0;
  for (double c : coeffs_) scale = std::max(scale, std::abs(c));
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= rel_tol * scale) coeffs_.pop_back();
}

double Polynomial::operator()(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<double> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(double(i) * coeffs_[i]);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::remainder(const Polynomial& d) const {
  std::vector<double> r = coeffs_;
  const int dd = d.degree();
  const double lead = d.coeffs_.back();
  double scale = 0.0;
  for (double c : coeffs_) scale = std::max(scale, std::abs(c));
  for (int k = static_cast<int>(r.size()) - 1; k >= dd; --k) {
    const double f = r[k] / lead;
    for (int j = 0; j <= dd; ++j) r[k - dd + j] -= f * d.coeffs_[j];
    r.pop_back();
  }
  Polynomial out;
  out.coeffs_ = std::move(r);
  // cancellation leaves roundoff where exact arithmetic gives zero
  out.trim(64.0 * std::numeric_limits<double>::epsilon());
  double rscale = 0.0;
  for (double c : out.coeffs_) rscale = std::max(rscale, std::abs(c));
  if (rscale <= 1e-13 * std::max(scale, 1.0)) out.coeffs_.clear();
  return out;
}

SturmSequence::SturmSequence(const Polynomial& p) {
  if (p.is_zero()) return;
  chain_.push_back(p);
  if (p.degree() == 0) return;
  chain_.push_back(p.derivative());
  while (chain_.back().degree() > 0) {
    const auto& prev = chain_[chain_.size() - 2];
    Polynomial r = prev.remainder(chain_.back());
    if (r.is_zero()) {
      degenerate_ = true;
      break;
    }
    std::vector<double> neg = r.coeffs();
    for (double& c : neg) c = -c;
    chain_.emplace_back(std::move(neg));
  }
}

namespace {

int changes(const std::vector<double>& values) {
  int n = 0;
  double last = 0.0;
  for (double v : values) {
    if (v == 0.0) continue;
    if (last != 0.0 && std::signbit(v) != std::signbit(last)) ++n;
    last = v;
  }
  return n;
}

}  // namespace

int SturmSequence::sign_changes(double t) const {
  std::vector<double> v;
  v.reserve(chain_.size());
  for (const auto& p : chain_) v.push_back(p(t));
  return changes(v);
}

int SturmSequence::sign_changes_at_infinity() const {
  std::vector<double> v;
  for (const auto& p : chain_) v.push_back(p.coeffs().back());
  return changes(v);
}

int SturmSequence::count_roots(double lo, double hi) const {
  const int at_hi = std::isinf(hi) ? sign_changes_at_infinity() : sign_changes(hi);
  return sign_changes(lo) - at_hi;
}

std::vector<double> SturmSequence::roots_above(double lo) const {
  std::vector<double> roots;
  if (chain_.empty() || chain_.front().degree() < 1) return roots;
  const Polynomial& p = chain_.front();
  const int total = count_roots(lo, std::numeric_limits<double>::infinity());
  if (total <= 0) return roots;

  // Cauchy bound
  const auto& c = p.coeffs();
  double bound = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) bound = std::max(bound, std::abs(c[i] / c.back()));
  double hi = std::max(lo, 0.0) + 1.0 + bound;

  struct Interval {
    double lo, hi;
    int n;
  };
  std::vector<Interval> work{{lo, hi, total}};
  std::vector<Interval> isolated;
  while (!work.empty()) {
    Interval iv = work.back();
    work.pop_back();
    if (iv.n == 0) continue;
    if (iv.n == 1 || iv.hi - iv.lo <= 1e-15 * std::max(1.0, std::abs(iv.hi))) {
      isolated.push_back(iv);
      continue;
    }
    const double mid = 0.5 * (iv.lo + iv.hi);
    const int left = count_roots(iv.lo, mid);
    work.push_back({iv.lo, mid, left});
    work.push_back({mid, iv.hi, iv.n - left});
  }

  for (const auto& iv : isolated) {
    double a = iv.lo, b = iv.hi;
    double fa = p(a);
    double fb = p(b);
    if (fa != 0.0 && fb != 0.0 && std::signbit(fa) != std::signbit(fb)) {
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double fm = p(mid);
        if (fm == 0.0) {
          a = b = mid;
          break;
        }
        if (std::signbit(fm) == std::signbit(fa)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
    } else {
      // root of even multiplicity or at an endpoint: bisect on the Sturm count
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        if (count_roots(a, mid) > 0) {
          b = mid;
        } else {
          a = mid;
        }
      }
    }
    roots.push_back(0.5 * (a + b));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace qes
