#include <doctest.h>

#include <cmath>
#include <random>

#include "qes/errors.hpp"
#include "qes/roots.hpp"

using namespace qes;

TEST_CASE("solve_cubic_trig: chi(chi^2 - 3) = 0") {
  const auto r = solve_cubic_trig(-3.0, 0.0);
  CHECK(r.phase == 0.0);
  CHECK(r.chi[0] == doctest::Approx(0.0));
  CHECK(r.chi[1] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r.chi[2] == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("solve_cubic_trig: N=2 even cubic at a=1.25, b=0.1") {
  const double a = 1.25, b = 0.1;
  const double p = -4.0 * (a * a + 4.0 * b), q = 16.0 * a * b;
  const auto r = solve_cubic_trig(p, q);
  double sum = 0.0, pair = 0.0, prod = 1.0;
  for (int i = 0; i < 3; ++i) {
    const double x = r.chi[i];
    CHECK(std::abs(x * x * x + p * x + q) <= 1e-12 * std::max(1.0, std::abs(x * x * x)));
    sum += x;
    prod *= x;
    for (int j = i + 1; j < 3; ++j) pair += x * r.chi[j];
  }
  CHECK(std::abs(sum) < 1e-13);
  CHECK(pair == doctest::Approx(p).epsilon(1e-13));
  CHECK(prod == doctest::Approx(-q).epsilon(1e-13));
  // paper's P and Q
  CHECK(r.amplitude == doctest::Approx(4.0 * std::sqrt((a * a + 4 * b) / 3.0)).epsilon(1e-15));
  CHECK(std::sin(3.0 * r.phase) ==
        doctest::Approx(a * b * std::pow((a * a + 4 * b) / 3.0, -1.5)).epsilon(1e-13));
}

TEST_CASE("solve_cubic_trig: negative q keeps residuals small") {
  const auto r = solve_cubic_trig(-7.0, -3.0);
  for (double x : r.chi) CHECK(std::abs(x * x * x - 7.0 * x - 3.0) < 1e-12 * std::max(1.0, std::abs(x * x * x)));
  CHECK_THROWS_AS(solve_cubic_trig(1.0, 1.0), ComplexRoots);
  CHECK_THROWS_AS(solve_cubic_trig(-3.0, 5.0), ComplexRoots);
}

TEST_CASE("real_cubic_roots: one and three real roots") {
  auto r = real_cubic_roots(-6.0, 11.0, -6.0);  // (x-1)(x-2)(x-3)
  REQUIRE(r.size() == 3);
  CHECK(r[0] == doctest::Approx(1.0));
  CHECK(r[1] == doctest::Approx(2.0));
  CHECK(r[2] == doctest::Approx(3.0));
  r = real_cubic_roots(0.0, 1.0, -2.0);  // x^3 + x - 2 = (x-1)(x^2+x+2)
  REQUIRE(r.size() == 1);
  CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("depress_quartic reproduces the N=3 reduced coefficients") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ua(-2.0, 3.0), ub(0.01, 2.0);
  for (int i = 0; i < 50; ++i) {
    const double a = ua(rng), b = ub(rng), a2 = a * a;
    const auto d = depress_quartic(12 * a, 4 * (11 * a2 - 15 * b), 24 * a * (2 * a2 - 11 * b), -36 * b * (4 * a2 - 5 * b));
    CHECK(d.shift == doctest::Approx(-3 * a));
    const double s = 1.0 + a2 * a2 + b * b;
    CHECK(std::abs(d.p + 10 * (a2 + 6 * b)) <= 1e-12 * s);
    CHECK(std::abs(d.q - 96 * a * b) <= 1e-12 * s);
    CHECK(std::abs(d.r - 9 * (a2 * a2 + 12 * a2 * b + 20 * b * b)) <= 1e-12 * s);
  }
}

TEST_CASE("solve_quartic_real: even reference w-roots and Vieta") {
  const double a = 1.25, b = 0.1, a2 = a * a;
  const double B = 12 * a, C = 4 * (11 * a2 - 15 * b), D = 24 * a * (2 * a2 - 11 * b), E = -36 * b * (4 * a2 - 5 * b);
  const auto d = depress_quartic(B, C, D, E);
  const auto chi = solve_quartic_real(d.p, d.q, d.r);
  const double expected[] = {0.264080, -1.887128, -4.899957, -8.476994};
  double sum_w = 0.0, sum_chi = 0.0, pairs = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double w = newton_polish_quartic(chi[i] + d.shift, B, C, D, E);
    CHECK(std::abs(w - expected[i]) < 1e-6);
    const double x = chi[i];
    CHECK(std::abs(((x * x + d.p) * x + d.q) * x + d.r) < 1e-10 * std::max(1.0, x * x * x * x));
    sum_w += w;
    sum_chi += x;
    for (int j = i + 1; j < 4; ++j) pairs += x * chi[j];
  }
  CHECK(sum_w == doctest::Approx(-12 * a).epsilon(1e-12));
  CHECK(std::abs(sum_chi) < 1e-12);
  CHECK(pairs == doctest::Approx(d.p).epsilon(1e-12));
}

TEST_CASE("solve_quartic_real: biquadratic and complex cases") {
  // (x^2-1)(x^2-4)
  const auto r = solve_quartic_real(-5.0, 0.0, 4.0);
  CHECK(r[0] == doctest::Approx(2.0));
  CHECK(r[1] == doctest::Approx(1.0));
  CHECK(r[2] == doctest::Approx(-1.0));
  CHECK(r[3] == doctest::Approx(-2.0));
  // x^4 + 1 has no real roots
  CHECK_THROWS_AS(solve_quartic_real(0.0, 0.0, 1.0), ComplexRoots);
  // (x^2+1)(x-1)(x+1) = x^4 - 1: two real, two complex
  CHECK_THROWS_AS(solve_quartic_real(0.0, 1.0, 2.0), ComplexRoots);
}

TEST_CASE("solve_quartic_real: random products of four real roots") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    double x[4];
    double mean = 0.0;
    for (double& v : x) mean += (v = u(rng)) / 4.0;
    for (double& v : x) v -= mean;  // depressed
    const double p = x[0] * x[1] + x[0] * x[2] + x[0] * x[3] + x[1] * x[2] + x[1] * x[3] + x[2] * x[3];
    const double q = -(x[0] * x[1] * x[2] + x[0] * x[1] * x[3] + x[0] * x[2] * x[3] + x[1] * x[2] * x[3]);
    const double rr = x[0] * x[1] * x[2] * x[3];
    std::sort(x, x + 4, std::greater<>());
    // near-double roots are ill-conditioned; only well separated draws are checked tightly
    double gap = 1e9;
    for (int k = 0; k < 3; ++k) gap = std::min(gap, x[k] - x[k + 1]);
    if (gap < 0.05) continue;
    const auto r = solve_quartic_real(p, q, rr);
    for (int k = 0; k < 4; ++k) CHECK(r[k] == doctest::Approx(x[k]).epsilon(1e-9).scale(1.0));
  }
}
