#include "qes/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qes/errors.hpp"
#include "qes/roots.hpp"
#include "qes/tridiagonal.hpp"

namespace qes {

void validate(const GridSpec& g) {
  if (g.points < 201 || g.points % 2 == 0) {
    throw InvalidParams("grid points must be odd and >= 201, got " + std::to_string(g.points));
  }
  if (!(g.half_width > 0.0) || !std::isfinite(g.half_width)) {
    throw InvalidParams("grid half-width must be positive");
  }
}

double potential(const CouplingParams& p, double x) {
  const double x2 = x * x;
  return 0.5 * p.omega_sq * x2 + 0.25 * p.lambda * x2 * x2 + p.eta * x2 * x2 * x2 / 6.0;
}

namespace {

// Largest x >= 0 with V(x) = level (0 if V stays above level).
double outer_crossing(const CouplingParams& p, double level) {
  const double lead = p.eta / 6.0;
  const auto ts = real_cubic_roots(0.25 * p.lambda / lead, 0.5 * p.omega_sq / lead, -level / lead);
  const double t = ts.empty() ? 0.0 : std::max(ts.back(), 0.0);
  return std::sqrt(t);
}

}  // namespace

GridSpec auto_grid(const CouplingParams& p, double e_max, int points, std::optional<double> half_width) {
  validate(p);
  GridSpec g;
  g.points = points;
  if (half_width) {
    g.half_width = *half_width;
  } else {
    // V(L) >= e_max + 25, and WKB decay exp(-S) past the outer turning point with S >= 20
    constexpr double kMinAction = 20.0;
    const double wall = outer_crossing(p, e_max + 25.0);
    double x = outer_crossing(p, e_max);
    double action = 0.0;
    const double dx = 1e-3 * std::max(1.0, x);
    while (action < kMinAction) {
      const double v0 = std::max(0.0, 2.0 * (potential(p, x) - e_max));
      const double v1 = std::max(0.0, 2.0 * (potential(p, x + dx) - e_max));
      action += 0.5 * dx * (std::sqrt(v0) + std::sqrt(v1));
      x += dx;
    }
    g.half_width = std::max(wall, x);
  }
  validate(g);
  return g;
}

std::vector<double> grid_levels(const CouplingParams& p, std::size_t k, const GridSpec& g,
                                ParitySector sector) {
  validate(g);
  if (sector == ParitySector::both) {
    auto even = grid_levels(p, k, g, ParitySector::even);
    auto odd = grid_levels(p, k, g, ParitySector::odd);
    even.insert(even.end(), odd.begin(), odd.end());
    std::sort(even.begin(), even.end());
    even.resize(std::min(k, even.size()));
    return even;
  }
  const int n = (g.points - 1) / 2;  // intervals on [0, L]
  const double h = g.half_width / n;
  const double kinetic = 1.0 / (h * h);
  SymTridiagonal t;
  const int first = sector == ParitySector::even ? 0 : 1;
  for (int j = first; j < n; ++j) t.diag.push_back(kinetic + potential(p, j * h));
  t.off.assign(t.diag.size() - 1, -0.5 * kinetic);
  if (sector == ParitySector::even) t.off[0] = -kinetic / std::sqrt(2.0);
  return lowest_eigenvalues_bisection(t, k, 1e-13);
}

LevelEstimates lowest_eigenvalues(const CouplingParams& p, std::size_t k, const GridSpec& g,
                                  ParitySector sector) {
  validate(p);
  validate(g);
  if (k > static_cast<std::size_t>(g.points / 4)) throw InvalidParams("k must be <= points/4");
  GridSpec fine_grid = g;
  fine_grid.points = 2 * g.points - 1;
  LevelEstimates out;
  out.coarse = grid_levels(p, k, g, sector);
  out.fine = grid_levels(p, k, fine_grid, sector);
  for (std::size_t i = 0; i < out.coarse.size(); ++i) {
    const double ec = out.coarse[i], ef = out.fine[i];
    if (std::abs(ec - ef) > 1e-2 * std::max(1.0, std::abs(ef))) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "oracle level " << i << " not converged: h -> " << ec << ", h/2 -> " << ef;
      throw NonConvergence(msg.str());
    }
    out.richardson.push_back((4.0 * ef - ec) / 3.0);
  }
  return out;
}

int OracleReport::matched_count() const {
  return static_cast<int>(std::count_if(matches.begin(), matches.end(),
                                        [](const LevelMatch& m) { return m.converged; }));
}

double OracleReport::max_error() const {
  double e = 0.0;
  for (const auto& m : matches) e = std::max(e, m.abs_error);
  return e;
}

void require_constraint(const CouplingParams& p, const QesIndex& idx) {
  const double required = constraint_gamma(idx);
  const double actual = reduce(p).gamma;
  if (!(std::abs(actual - required) <= 1e-10 * required)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "couplings violate the QES constraint: gamma = " << actual << ", required "
        << required << " (N=" << idx.n_cap << ", parity=" << idx.parity << ")";
    throw ConstraintViolation(required, actual, msg.str());
  }
}

OracleReport verify_qes(const QesSpectrum& s, const CouplingParams& p, std::optional<GridSpec> grid,
                        double tolerance) {
  require_constraint(p, s.index);
  double e_max = 0.0;
  for (const auto& st : s.states) e_max = std::max(e_max, st.energy);
  const GridSpec g = grid ? *grid : auto_grid(p, e_max);
  const auto sector = s.index.parity == 0 ? ParitySector::even : ParitySector::odd;
  const std::size_t k = s.states.size() + 2;
  const auto levels = lowest_eigenvalues(p, k, g, sector);

  OracleReport rep;
  rep.grid = g;
  rep.tolerance = tolerance;
  rep.eigenvalues = levels.richardson;
  rep.richardson_estimate = levels.richardson;
  rep.coarse = levels.coarse;
  rep.fine = levels.fine;
  std::vector<bool> used(levels.richardson.size(), false);
  for (const auto& st : s.states) {
    LevelMatch m;
    m.qes_energy = st.energy;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < levels.richardson.size(); ++i) {
      const double d = std::abs(levels.richardson[i] - st.energy);
      if (!used[i] && d < best) {
        best = d;
        m.oracle_index = static_cast<int>(i);
      }
    }
    if (m.oracle_index >= 0) {
      used[m.oracle_index] = true;
      m.oracle_energy = levels.richardson[m.oracle_index];
      m.abs_error = best;
      m.converged = best < tolerance;
    } else {
      m.abs_error = std::numeric_limits<double>::infinity();
    }
    rep.matches.push_back(m);
  }
  return rep;
}

void require_all_matched(const OracleReport& r) {
  if (!r.all_matched()) {
    std::ostringstream msg;
    msg << r.matched_count() << "/" << r.matches.size()
        << " QES levels matched the oracle; max error " << r.max_error();
    throw VerificationMismatch(msg.str());
  }
}

}  // namespace qes
