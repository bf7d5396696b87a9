#include "qes/cli.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qes/errors.hpp"
#include "qes/wavefunction.hpp"

namespace qes::cli {

using nlohmann::json;

std::vector<double> Range::values() const {
  if (!(step > 0.0)) throw InvalidParams("range step must be > 0");
  std::vector<double> out;
  if (hi < lo) return out;
  const auto count = static_cast<long>(std::llround((hi - lo) / step)) + 1;
  for (long i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

std::string format_shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_fixed(double x, int decimals, bool explicit_plus) {
  char buf[64];
  std::snprintf(buf, sizeof buf, explicit_plus ? "%+.*f" : "%.*f", decimals, x);
  std::string s(buf);
  // -0.000000 -> 0.000000
  if (s.find_first_not_of("+-0.") == std::string::npos) {
    std::snprintf(buf, sizeof buf, explicit_plus ? "%+.*f" : "%.*f", decimals, 0.0);
    s = buf;
  }
  return s;
}

namespace {

std::string fmt_g(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x == 0.0 ? 0.0 : x);
  return buf;
}

const char* coupling_name(Coupling c) {
  switch (c) {
    case Coupling::omega_sq: return "omega2";
    case Coupling::lambda: return "lambda";
    case Coupling::eta: return "eta";
  }
  return "?";
}

const char* parity_name(int parity) { return parity == 0 ? "even" : "odd"; }

}  // namespace

ResolvedCouplings resolve_couplings(const RunConfig& cfg) {
  validate(cfg.index);
  const auto& k = cfg.couplings;
  ResolvedCouplings out;
  const double gamma_req = constraint_gamma(cfg.index);

  if (cfg.paper_caption_omega) {
    if (!k.lambda || !k.eta) throw InvalidParams("--paper-caption-omega needs --lambda and --eta");
    // odd parity, but omega^2 taken from the even constraint of the same N
    QesIndex even{cfg.index.n_cap, 0};
    out.params = solve_constraint(PartialCouplings{std::nullopt, k.lambda, k.eta}, even).front();
    out.solved = Coupling::omega_sq;
    out.constraint_satisfied = cfg.index.parity == 0;
    if (cfg.index.parity == 1) {
      out.notes.push_back("omega2 = " + fmt_g(out.params.omega_sq) +
                          " taken from the even constraint gamma=" +
                          fmt_g(constraint_gamma(even)) + "; it does not satisfy gamma=" +
                          fmt_g(gamma_req) + " (coefficients depend on a and b only)");
    }
    return out;
  }

  if (k.known_count() == 3) {
    out.params = CouplingParams{*k.omega_sq, *k.lambda, *k.eta};
    validate(out.params);
    const double g = reduce(out.params).gamma;
    out.constraint_satisfied = std::abs(g - gamma_req) <= 1e-10 * gamma_req;
    return out;
  }
  if (k.known_count() != 2) {
    throw InvalidParams("give at least two of --omega2, --lambda, --eta");
  }
  const Coupling unknown = k.unknown();
  if (unknown != Coupling::omega_sq && cfg.solve_for != unknown) {
    throw InvalidParams(std::string("solving for ") + coupling_name(unknown) +
                        " requires --solve-for " + coupling_name(unknown));
  }
  if (cfg.solve_for && *cfg.solve_for != unknown) {
    throw InvalidParams(std::string("--solve-for ") + coupling_name(*cfg.solve_for) +
                        " but that coupling was given");
  }
  auto sols = solve_constraint(k, cfg.index);
  out.solved = unknown;
  out.params = sols.back();  // lambda: the positive root; eta: the largest root
  if (sols.size() > 1) {
    out.notes.push_back(std::to_string(sols.size()) + " solutions for " + coupling_name(unknown) +
                        "; using " + fmt_g(unknown == Coupling::lambda ? out.params.lambda : out.params.eta));
  }
  out.notes.push_back(std::string(coupling_name(unknown)) + " solved from constraint gamma=" + fmt_g(gamma_req));
  return out;
}

QesSpectrum compute_spectrum(const ReducedParams& r, const QesIndex& idx, bool force_general) {
  if (force_general || idx.n_cap > 3) return spectrum_general(r, idx);
  return spectrum_closed_form(r, idx);
}

namespace {

struct Resolved {
  ResolvedCouplings couplings;
  ReducedParams reduced;
  QesSpectrum spectrum;
};

Resolved resolve_all(const RunConfig& cfg, bool require_constraint_hold) {
  Resolved r;
  r.couplings = resolve_couplings(cfg);
  r.reduced = reduce(r.couplings.params);
  if (require_constraint_hold && !r.couplings.constraint_satisfied && !cfg.paper_caption_omega) {
    const double req = constraint_gamma(cfg.index);
    std::ostringstream msg;
    msg << "couplings violate the QES constraint: gamma = " << fmt_g(r.reduced.gamma) << ", required "
        << fmt_g(req) << " for N=" << cfg.index.n_cap << " parity=" << parity_name(cfg.index.parity);
    throw ConstraintViolation(req, r.reduced.gamma, msg.str());
  }
  r.spectrum = compute_spectrum(r.reduced, cfg.index, cfg.force_general);
  return r;
}

json config_json(const RunConfig& cfg) {
  json j;
  static const char* names[] = {"table", "spectrum", "constraint", "export", "verify", "scan"};
  j["command"] = names[static_cast<int>(cfg.command)];
  j["N"] = cfg.index.n_cap;
  j["parity"] = parity_name(cfg.index.parity);
  j["omega2"] = cfg.couplings.omega_sq ? json(*cfg.couplings.omega_sq) : json(nullptr);
  j["lambda"] = cfg.couplings.lambda ? json(*cfg.couplings.lambda) : json(nullptr);
  j["eta"] = cfg.couplings.eta ? json(*cfg.couplings.eta) : json(nullptr);
  j["force_general"] = cfg.force_general;
  j["paper_caption_omega"] = cfg.paper_caption_omega;
  return j;
}

json constraint_json(const RunConfig& cfg, const ResolvedCouplings& rc, const ReducedParams& r) {
  json j;
  j["gamma_required"] = constraint_gamma(cfg.index);
  j["gamma"] = r.gamma;
  j["satisfied"] = rc.constraint_satisfied;
  j["solved_for"] = rc.solved ? json(coupling_name(*rc.solved)) : json(nullptr);
  j["omega2"] = rc.params.omega_sq;
  j["lambda"] = rc.params.lambda;
  j["eta"] = rc.params.eta;
  j["a"] = r.a;
  j["b"] = r.b;
  j["c"] = r.c;
  j["notes"] = rc.notes;
  return j;
}

std::string header_lines(const RunConfig& cfg, const Resolved& r) {
  std::ostringstream os;
  os << "# qes " << kVersion << "\n";
  const auto& p = r.couplings.params;
  os << "# lambda=" << fmt_g(p.lambda) << " eta=" << fmt_g(p.eta) << " omega2=" << fmt_g(p.omega_sq)
     << " N=" << cfg.index.n_cap << " parity=" << parity_name(cfg.index.parity) << "\n";
  os << "# gamma=" << fmt_g(constraint_gamma(cfg.index)) << " a=" << fmt_g(r.reduced.a)
     << " b=" << fmt_g(r.reduced.b) << " source=" << to_string(r.spectrum.source) << "\n";
  for (const auto& n : r.couplings.notes) os << "# note: " << n << "\n";
  return os.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << data;
  if (!f) throw IoError("write failed for " + path);
}

json state_json(const QesState& st, std::optional<int> nodes, std::optional<double> norm) {
  json j;
  j["m"] = st.label;
  j["E"] = st.energy;
  j["coeffs"] = st.coeffs;
  j["expected_nodes"] = st.expected_nodes;
  if (nodes) j["nodes"] = *nodes;
  if (norm) j["norm"] = *norm;
  return j;
}

}  // namespace

std::string cmd_table(const RunConfig& cfg) {
  const auto r = resolve_all(cfg, true);
  const int N = cfg.index.n_cap;
  std::ostringstream os;
  switch (cfg.format) {
    case OutputFormat::json: {
      json j;
      j["config"] = config_json(cfg);
      j["constraint"] = constraint_json(cfg, r.couplings, r.reduced);
      j["source"] = to_string(r.spectrum.source);
      j["states"] = json::array();
      for (const auto& st : r.spectrum.states) j["states"].push_back(state_json(st, std::nullopt, std::nullopt));
      os << j.dump(2) << "\n";
      break;
    }
    case OutputFormat::csv: {
      os << "m";
      for (int n = 1; n <= N; ++n) os << ",A" << n;
      os << ",E\r\n";
      for (const auto& st : r.spectrum.states) {
        os << st.label;
        for (int n = 1; n <= N; ++n) os << "," << format_fixed(st.coeffs[n], 6, true);
        os << "," << format_fixed(st.energy, 6) << "\r\n";
      }
      break;
    }
    case OutputFormat::human: {
      os << header_lines(cfg, r);
      char buf[64];
      os << " m";
      for (int n = 1; n <= N; ++n) {
        std::snprintf(buf, sizeof buf, " %12s", ("A" + std::to_string(n)).c_str());
        os << buf;
      }
      std::snprintf(buf, sizeof buf, " %12s", "E");
      os << buf << "\n";
      for (const auto& st : r.spectrum.states) {
        std::snprintf(buf, sizeof buf, "%2d", st.label);
        os << buf;
        for (int n = 1; n <= N; ++n) {
          std::snprintf(buf, sizeof buf, " %12s", format_fixed(st.coeffs[n], 6, true).c_str());
          os << buf;
        }
        std::snprintf(buf, sizeof buf, " %12s", format_fixed(st.energy, 6).c_str());
        os << buf << "\n";
      }
      break;
    }
  }
  return os.str();
}

std::string cmd_spectrum(const RunConfig& cfg) {
  const auto r = resolve_all(cfg, true);
  std::vector<int> nodes;
  for (std::size_t m = 0; m < r.spectrum.states.size(); ++m) {
    nodes.push_back(count_nodes(make_eigenfunction(r.spectrum, m)).count);
  }
  std::ostringstream os;
  switch (cfg.format) {
    case OutputFormat::json: {
      json j;
      j["config"] = config_json(cfg);
      j["constraint"] = constraint_json(cfg, r.couplings, r.reduced);
      j["source"] = to_string(r.spectrum.source);
      j["states"] = json::array();
      for (std::size_t m = 0; m < nodes.size(); ++m) {
        j["states"].push_back(state_json(r.spectrum.states[m], nodes[m], std::nullopt));
      }
      os << j.dump(2) << "\n";
      break;
    }
    case OutputFormat::csv: {
      os << "m,E,nodes";
      for (int n = 0; n <= cfg.index.n_cap; ++n) os << ",A" << n;
      os << "\r\n";
      for (std::size_t m = 0; m < nodes.size(); ++m) {
        const auto& st = r.spectrum.states[m];
        os << st.label << "," << format_shortest(st.energy) << "," << nodes[m];
        for (double c : st.coeffs) os << "," << format_shortest(c);
        os << "\r\n";
      }
      break;
    }
    case OutputFormat::human: {
      os << header_lines(cfg, r);
      for (std::size_t m = 0; m < nodes.size(); ++m) {
        const auto& st = r.spectrum.states[m];
        os << "m=" << st.label << " E=" << fmt_g(st.energy) << " nodes=" << nodes[m] << " A=[";
        for (std::size_t n = 0; n < st.coeffs.size(); ++n) os << (n ? ", " : "") << fmt_g(st.coeffs[n]);
        os << "]\n";
      }
      break;
    }
  }
  return os.str();
}

std::string cmd_constraint(const RunConfig& cfg) {
  if (cfg.couplings.known_count() != 2) throw InvalidParams("constraint needs exactly two couplings");
  RunConfig c = cfg;
  if (!c.solve_for) c.solve_for = c.couplings.unknown();
  const auto rc = resolve_couplings(c);
  const auto r = reduce(rc.params);
  std::ostringstream os;
  switch (cfg.format) {
    case OutputFormat::json: {
      json j;
      j["config"] = config_json(cfg);
      j["constraint"] = constraint_json(cfg, rc, r);
      auto all = solve_constraint(cfg.couplings, cfg.index);
      j["solutions"] = json::array();
      for (const auto& s : all) j["solutions"].push_back({{"omega2", s.omega_sq}, {"lambda", s.lambda}, {"eta", s.eta}});
      os << j.dump(2) << "\n";
      break;
    }
    case OutputFormat::csv:
      os << "omega2,lambda,eta,gamma,a,b,c\r\n";
      for (const auto& s : solve_constraint(cfg.couplings, cfg.index)) {
        const auto rs = reduce(s);
        os << format_shortest(s.omega_sq) << "," << format_shortest(s.lambda) << ","
           << format_shortest(s.eta) << "," << format_shortest(constraint_gamma(cfg.index)) << ","
           << format_shortest(rs.a) << "," << format_shortest(rs.b) << "," << format_shortest(rs.c) << "\r\n";
      }
      break;
    case OutputFormat::human:
      os << "# qes " << kVersion << "\n";
      os << "solved: " << coupling_name(*rc.solved) << " = "
         << fmt_g(*rc.solved == Coupling::omega_sq ? rc.params.omega_sq
                  : *rc.solved == Coupling::lambda ? rc.params.lambda
                                                   : rc.params.eta)
         << "\n";
      os << "omega2 = " << fmt_g(rc.params.omega_sq) << "\n";
      os << "lambda = " << fmt_g(rc.params.lambda) << "\n";
      os << "eta = " << fmt_g(rc.params.eta) << "\n";
      os << "gamma = " << fmt_g(constraint_gamma(cfg.index)) << "\n";
      os << "a = " << fmt_g(r.a) << "\n";
      os << "b = " << fmt_g(r.b) << "\n";
      os << "c = " << fmt_g(r.c) << "\n";
      for (const auto& n : rc.notes) os << "# note: " << n << "\n";
      break;
  }
  return os.str();
}

std::string cmd_export(const RunConfig& cfg) {
  const auto r = resolve_all(cfg, true);
  const std::size_t count = r.spectrum.states.size();
  std::vector<int> nodes;
  std::vector<double> norms;
  std::vector<Eigenfunction> fns;
  for (std::size_t m = 0; m < count; ++m) {
    fns.push_back(make_eigenfunction(r.spectrum, m));
    nodes.push_back(count_nodes(fns.back()).count);
    norms.push_back(std::sqrt(norm_and_inner(fns.back(), fns.back())));
  }
  const std::vector<double> xs = cfg.samples ? cfg.samples->values() : std::vector<double>{};

  std::ostringstream os;
  if (cfg.format == OutputFormat::json) {
    json j;
    j["config"] = config_json(cfg);
    j["constraint"] = constraint_json(cfg, r.couplings, r.reduced);
    j["source"] = to_string(r.spectrum.source);
    j["states"] = json::array();
    for (std::size_t m = 0; m < count; ++m) j["states"].push_back(state_json(r.spectrum.states[m], nodes[m], norms[m]));
    if (cfg.samples) {
      json s;
      s["x"] = xs;
      s["psi"] = json::array();
      for (const auto& f : fns) {
        std::vector<double> ys;
        for (double x : xs) ys.push_back(eval_psi(f, x));
        s["psi"].push_back(ys);
      }
      j["samples"] = s;
    }
    os << j.dump(2) << "\n";
  } else {
    os << "m,E,nodes,norm";
    for (int n = 0; n <= cfg.index.n_cap; ++n) os << ",A" << n;
    os << "\r\n";
    for (std::size_t m = 0; m < count; ++m) {
      const auto& st = r.spectrum.states[m];
      os << st.label << "," << format_shortest(st.energy) << "," << nodes[m] << "," << format_shortest(norms[m]);
      for (double c : st.coeffs) os << "," << format_shortest(c);
      os << "\r\n";
    }
    if (cfg.samples) {
      if (!cfg.samples_path) throw InvalidParams("CSV sample export needs --samples-out");
      std::ostringstream ss;
      ss << "x";
      for (std::size_t m = 0; m < count; ++m) ss << ",psi_" << m;
      ss << "\r\n";
      for (double x : xs) {
        ss << format_shortest(x);
        for (const auto& f : fns) ss << "," << format_shortest(eval_psi(f, x));
        ss << "\r\n";
      }
      write_file(*cfg.samples_path, ss.str());
    }
  }
  return os.str();
}

std::string cmd_verify(const RunConfig& cfg, bool* all_matched) {
  const auto r = resolve_all(cfg, false);
  std::optional<GridSpec> grid;
  if (cfg.grid_points || cfg.half_width) {
    double e_max = 0.0;
    for (const auto& st : r.spectrum.states) e_max = std::max(e_max, st.energy);
    grid = auto_grid(r.couplings.params, e_max, cfg.grid_points.value_or(2001), cfg.half_width);
  }
  const auto rep = verify_qes(r.spectrum, r.couplings.params, grid);
  if (all_matched) *all_matched = rep.all_matched();

  std::ostringstream os;
  if (cfg.format == OutputFormat::json) {
    json j;
    j["config"] = config_json(cfg);
    j["constraint"] = constraint_json(cfg, r.couplings, r.reduced);
    j["states"] = json::array();
    for (const auto& st : r.spectrum.states) j["states"].push_back(state_json(st, std::nullopt, std::nullopt));
    json o;
    o["grid"] = {{"half_width", rep.grid.half_width}, {"points", rep.grid.points}, {"fine_points", 2 * rep.grid.points - 1}};
    o["eigenvalues"] = rep.eigenvalues;
    o["coarse"] = rep.coarse;
    o["fine"] = rep.fine;
    o["tolerance"] = rep.tolerance;
    o["matches"] = json::array();
    for (const auto& m : rep.matches) {
      o["matches"].push_back({{"qes_energy", m.qes_energy}, {"oracle_energy", m.oracle_energy},
                              {"abs_error", m.abs_error}, {"converged", m.converged},
                              {"oracle_index", m.oracle_index}});
    }
    o["matched"] = rep.matched_count();
    j["oracle"] = o;
    os << j.dump(2) << "\n";
  } else if (cfg.format == OutputFormat::csv) {
    os << "m,qes_energy,oracle_energy,abs_error,matched\r\n";
    for (std::size_t m = 0; m < rep.matches.size(); ++m) {
      const auto& x = rep.matches[m];
      os << m << "," << format_shortest(x.qes_energy) << "," << format_shortest(x.oracle_energy) << ","
         << format_shortest(x.abs_error) << "," << (x.converged ? "true" : "false") << "\r\n";
    }
  } else {
    os << header_lines(cfg, r);
    char buf[160];
    std::snprintf(buf, sizeof buf, "# grid: L=%.6g points=%d and %d (Richardson)\n", rep.grid.half_width,
                  rep.grid.points, 2 * rep.grid.points - 1);
    os << buf;
    os << " m        E_qes          E_oracle       |error|  status\n";
    for (std::size_t m = 0; m < rep.matches.size(); ++m) {
      const auto& x = rep.matches[m];
      std::snprintf(buf, sizeof buf, "%2zu %14.9f %17.9f %13.3e  %s\n", m, x.qes_energy, x.oracle_energy,
                    x.abs_error, x.converged ? "ok" : "UNMATCHED");
      os << buf;
    }
    std::snprintf(buf, sizeof buf, "%d/%zu matched, max err %.3e (tolerance %.0e)\n", rep.matched_count(),
                  rep.matches.size(), rep.max_error(), rep.tolerance);
    os << buf;
  }
  return os.str();
}

std::string cmd_scan(const RunConfig& cfg) {
  validate(cfg.index);
  const Coupling solved = cfg.solve_for.value_or(Coupling::omega_sq);
  auto axis = [&](Coupling c, const std::optional<Range>& range, const std::optional<double>& value) {
    if (c == solved) {
      if (range || value) throw InvalidParams(std::string(coupling_name(c)) + " is solved and cannot be given");
      return std::vector<std::optional<double>>{std::nullopt};
    }
    if (range) {
      std::vector<std::optional<double>> v;
      for (double x : range->values()) v.emplace_back(x);
      return v;
    }
    if (!value) throw InvalidParams(std::string("scan needs a value or range for ") + coupling_name(c));
    return std::vector<std::optional<double>>{*value};
  };
  const auto omegas = axis(Coupling::omega_sq, cfg.omega2_range, cfg.couplings.omega_sq);
  const auto lambdas = axis(Coupling::lambda, cfg.lambda_range, cfg.couplings.lambda);
  const auto etas = axis(Coupling::eta, cfg.eta_range, cfg.couplings.eta);

  std::ostringstream os;
  os << "omega2,lambda,eta,gamma,a,b,source";
  for (int m = 0; m <= cfg.index.n_cap; ++m) os << ",E_" << m;
  os << ",error\r\n";
  const double gamma = constraint_gamma(cfg.index);
  for (const auto& w : omegas) {
    for (const auto& l : lambdas) {
      for (const auto& e : etas) {
        const PartialCouplings pc{w, l, e};
        auto blank_row = [&](const std::string& err) {
          os << (w ? format_shortest(*w) : "") << "," << (l ? format_shortest(*l) : "") << ","
             << (e ? format_shortest(*e) : "") << "," << format_shortest(gamma) << ",,,";
          for (int m = 0; m <= cfg.index.n_cap; ++m) os << ",";
          std::string clean = err;
          for (char& ch : clean) if (ch == '"') ch = '\'';
          os << "\"" << clean << "\"\r\n";
        };
        try {
          for (const auto& p : solve_constraint(pc, cfg.index)) {
            const auto r = reduce(p);
            std::string row;
            try {
              const auto s = compute_spectrum(r, cfg.index, cfg.force_general);
              row = format_shortest(p.omega_sq) + "," + format_shortest(p.lambda) + "," +
                    format_shortest(p.eta) + "," + format_shortest(gamma) + "," + format_shortest(r.a) +
                    "," + format_shortest(r.b) + "," + std::string(to_string(s.source));
              for (const auto& st : s.states) row += "," + format_shortest(st.energy);
              row += ",\r\n";
              os << row;
            } catch (const Error& ex) {
              blank_row(ex.what());
            }
          }
        } catch (const Error& ex) {
          blank_row(ex.what());
        }
      }
    }
  }
  return os.str();
}

CommandResult run(const RunConfig& cfg) {
  CommandResult res;
  try {
    std::string data;
    switch (cfg.command) {
      case Command::table: data = cmd_table(cfg); break;
      case Command::spectrum: data = cmd_spectrum(cfg); break;
      case Command::constraint: data = cmd_constraint(cfg); break;
      case Command::export_data: data = cmd_export(cfg); break;
      case Command::scan: data = cmd_scan(cfg); break;
      case Command::verify: {
        bool ok = true;
        data = cmd_verify(cfg, &ok);
        if (!ok) {
          res.exit_code = kVerificationMismatch;
          res.diagnostics = "verification failed: some QES levels were not matched by the oracle\n";
        }
        break;
      }
    }
    if (cfg.output_path) {
      write_file(*cfg.output_path, data);
    } else {
      res.output = std::move(data);
    }
  } catch (const ConstraintViolation& e) {
    res.exit_code = kConstraintViolation;
    res.diagnostics = std::string("error: ") + e.what() + "\n";
  } catch (const NoSolution& e) {
    res.exit_code = kConstraintViolation;
    res.diagnostics = std::string("error: ") + e.what() + "\n";
  } catch (const VerificationMismatch& e) {
    res.exit_code = kVerificationMismatch;
    res.diagnostics = std::string("error: ") + e.what() + "\n";
  } catch (const IoError& e) {
    res.exit_code = kIoError;
    res.diagnostics = std::string("error: ") + e.what() + "\n";
  } catch (const InvalidParams& e) {
    res.exit_code = kUsage;
    res.diagnostics = std::string("error: ") + e.what() + "\n";
  } catch (const SolverFailure& e) {
    res.exit_code = kSolverFailure;
    res.diagnostics = std::string("error: ") + e.what() + "\n";
  } catch (const Error& e) {
    res.exit_code = kSolverFailure;
    res.diagnostics = std::string("error: ") + e.what() + "\n";
  }
  return res;
}

}  // namespace qes::cli
