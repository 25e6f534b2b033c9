#include "commands.hpp"

#include <climits>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <vector>

#include "json.hpp"
#include "pivroots/asymptotics.hpp"
#include "pivroots/error.hpp"
#include "pivroots/exact_poly.hpp"
#include "pivroots/io.hpp"
#include "pivroots/oscillator.hpp"
#include "pivroots/rational_pw.hpp"
#include "pivroots/rootfind.hpp"

namespace pivroots::cli {

using mp::Complex;
using mp::Real;
using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); }

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(cfg.out, text);
  }
}

Real rpow(long base, double e) { return mp::pow(Real(base), Real(e)); }

// Verify bookkeeping: one entry per invariant.
struct Suite {
  std::string name;
  json invariants = json::array();
  bool pass = true;

  void add(const std::string& inv, long checked, const std::vector<std::string>& failures, json extra = json::object()) {
    json j = extra;
    j["name"] = inv;
    j["checked"] = checked;
    j["pass"] = failures.empty();
    j["failures"] = failures;
    invariants.push_back(j);
    pass = pass && failures.empty();
  }

  int finish(const RunConfig& cfg) const {
    json out;
    out["suite"] = name;
    out["pass"] = pass;
    out["invariants"] = invariants;
    emit(cfg, out.dump(2) + "\n");
    return pass ? kOk : kInvariant;
  }
};

std::string idx(int m, int n) { return "(" + std::to_string(m) + "," + std::to_string(n) + ")"; }

bool rotation_symmetric(const ExactPoly& a, const ExactPoly& b, long mn) {
  RatPoly pa = a.in_z(), pb = b.in_z();
  if (pa.degree() != pb.degree()) return false;
  for (int k = 0; k <= pa.degree(); ++k) {
    const mpq_class& x = pa.coeff(k);
    const mpq_class& y = pb.coeff(k);
    if ((k - mn) % 2 != 0) {
      if (x != 0 || y != 0) return false;
      continue;
    }
    long q = (k - mn) / 2;
    mpq_class expect = (q % 2 == 0) ? y : mpq_class(-y);
    if (x != expect) return false;
  }
  return true;
}

int suite_recursions(const RunConfig& cfg) {
  const int top = cfg.max_index < 0 ? 10 : cfg.max_index;
  Suite s{"recursions"};
  std::vector<std::string> deg, monic, sym, trav, simple, coprime;
  long count = 0;
  for (int m = 0; m <= top; ++m) {
    for (int n = 0; n <= top; ++n) {
      ++count;
      ExactPoly h = gen_hermite(m, n);
      if (h.degree() != m * n) deg.push_back(idx(m, n));
      if (h.scale != Scale::Two || h.coeffs.lead() != 1) monic.push_back(idx(m, n));
      if (!rotation_symmetric(h, gen_hermite(n, m), static_cast<long>(m) * n)) sym.push_back(idx(m, n));
      if (m <= 8 && n <= 8 && gen_hermite(m, n, Traversal::NFirst).coeffs != h.coeffs) trav.push_back(idx(m, n));
      if (gcd(h.coeffs, h.coeffs.derivative()).degree() != 0) simple.push_back(idx(m, n));
      for (auto [dm, dn] : {std::pair{1, 0}, {0, 1}, {-1, 1}}) {
        if (m + dm < 0) continue;
        if (gcd(h.coeffs, gen_hermite(m + dm, n + dn).coeffs).degree() != 0) coprime.push_back(idx(m, n) + "~" + idx(m + dm, n + dn));
      }
    }
  }
  s.add("degree", count, deg);
  s.add("monic_integer_in_z_over_2", count, monic);
  s.add("rotation_symmetry", count, sym);
  s.add("traversal_agreement", count, trav);
  s.add("squarefree", count, simple);
  s.add("neighbour_coprime", count, coprime);
  std::vector<std::string> okdeg;
  long okcount = 0;
  for (int m = -4; m <= 4; ++m) {
    for (int n = -4; n <= 4; ++n) {
      ++okcount;
      ExactPoly q = gen_okamoto(m, n);
      if (q.degree() != okamoto_degree(m, n) || q.coeffs.lead() != 1) okdeg.push_back(idx(m, n));
    }
  }
  s.add("okamoto_degree_monic", okcount, okdeg);
  return s.finish(cfg);
}

int suite_piv(const RunConfig& cfg) {
  const int top = cfg.max_index < 0 ? 6 : cfg.max_index;
  Suite s{"piv"};
  for (Family f : {Family::HI, Family::HII, Family::HIII, Family::OK}) {
    std::vector<std::string> bad;
    long count = 0;
    int lo = f == Family::OK ? -top : 0;
    for (int m = lo; m <= top; ++m) {
      for (int n = lo; n <= top; ++n) {
        if ((f == Family::HI && n == 0) || (f == Family::HII && m == 0)) continue;  // omega = 0
        ++count;
        RationalSolution sol = build_rational(f, m, n);
        bool zero = f == Family::OK ? piv_residual_sqrt2(sol).is_zero() && piv_residual(sol).is_zero() : piv_residual(sol).is_zero();
        if (!zero) bad.push_back(idx(m, n));
      }
    }
    s.add(std::string("residual_zero_") + std::string(to_string(f)), count, bad);
  }
  return s.finish(cfg);
}

bool omega_vanishes(Family f, int m, int n) { return (f == Family::HI && n == 0) || (f == Family::HII && m == 0); }

int suite_backlund(const RunConfig& cfg) {
  const int top = cfg.max_index < 0 ? 5 : cfg.max_index;
  Suite s{"backlund"};
  std::vector<std::string> bad;
  long matched = 0, degenerate = 0;
  for (Family f : {Family::HI, Family::HII, Family::HIII, Family::OK}) {
    int lo = f == Family::OK ? -top : 0;
    for (int m = lo; m <= top; ++m) {
      for (int n = lo; n <= top; ++n) {
        RationalSolution sol = build_rational(f, m, n);
        for (int i = 1; i <= 4; ++i) {
          std::string tag = "R" + std::to_string(i) + " " + std::string(to_string(f)) + idx(m, n);
          auto target = backlund_target(i, f, m, n);
          try {
            RationalSolution img = backlund(i, sol);
            if (!target || img.family != target->family || img.m != target->m || img.n != target->n) {
              bad.push_back(tag + ": unexpected image");
            } else {
              ++matched;
            }
          } catch (const Error& e) {
            if (e.code() == ErrorCode::DegenerateTransform && (!target || omega_vanishes(f, m, n))) {
              ++degenerate;
            } else {
              bad.push_back(tag + ": " + e.what());
            }
          }
        }
      }
    }
  }
  s.add("table_actions", matched + degenerate, bad, json{{"matched", matched}, {"degenerate", degenerate}});

  std::vector<std::string> comp;
  long samples = 0;
  for (Family f : {Family::HI, Family::HII, Family::HIII, Family::OK}) {
    for (int m = 1; m <= 3; ++m) {
      for (int n = 1; n <= 3; ++n) {
        RationalSolution sol = build_rational(f, m, n);
        try {
          bool ok = same_solution(backlund(1, backlund(2, sol)), sol) && same_solution(backlund(2, backlund(1, sol)), sol) &&
                    same_solution(backlund(3, backlund(4, sol)), sol) && same_solution(backlund(4, backlund(3, sol)), sol) &&
                    same_solution(backlund(1, backlund(3, sol)), backlund(3, backlund(1, sol)));
          ++samples;
          if (!ok) comp.push_back(std::string(to_string(f)) + idx(m, n));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::DegenerateTransform) comp.push_back(std::string(to_string(f)) + idx(m, n) + ": " + e.what());
        }
      }
    }
  }
  if (samples < 10) comp.push_back("fewer than 10 samples");
  s.add("compositions", samples, comp);
  return s.finish(cfg);
}

int suite_realroots(const RunConfig& cfg) {
  Suite s{"realroots"};
  std::vector<std::string> bad;
  long count = 0;
  for (int m = 1; m <= cfg.max_m; ++m) {
    for (int n = 1; n <= cfg.max_n; ++n) {
      ++count;
      int expect = n % 2 == 1 ? m : 0;
      int got = count_real_roots(gen_hermite(m, n));
      if (got != expect) bad.push_back(idx(m, n) + ": " + std::to_string(got) + " != " + std::to_string(expect));
    }
  }
  s.add("sturm_count", count, bad);
  return s.finish(cfg);
}

RationalSolution pole_partner(Family f, int m, int n) {
  if (f == Family::HI) return build_rational(Family::HI, m, n);
  if (f == Family::HII) return build_rational(Family::HII, m, n - 1);
  return build_rational(Family::HIII, m - 1, n);
}

int suite_qes(const RunConfig& cfg) {
  const int top = cfg.max_index < 0 ? 5 : cfg.max_index;
  mp::PrecisionScope prec(cfg.precision_bits);
  Suite s{"qes"};
  std::vector<std::string> roots_bad, b_bad;
  long count = 0;
  for (Family f : {Family::HI, Family::HII, Family::HIII}) {
    for (int m = 1; m <= top; ++m) {
      for (int n = 1; n <= top; ++n) {
        ++count;
        std::string tag = std::string(to_string(f)) + idx(m, n);
        RootSet rs = find_roots(gen_hermite(m, n), cfg.precision_bits);
        std::vector<Complex> seeds;
        for (const auto& z : rs.roots) seeds.emplace_back(z.re.to_double(), z.im.to_double());
        QesRoots q = roots_via_qes(f, m, n, seeds);
        if (q.roots.size() != rs.size() || !q.failed_seeds.empty()) {
          roots_bad.push_back(tag + ": " + std::to_string(q.roots.size()) + " certified of " + std::to_string(rs.size()));
        }
        RationalSolution sol = pole_partner(f, m, n);
        for (const auto& c : q.roots) {
          Real best(1L);
          for (const auto& z : rs.roots) best = mp::min(best, abs(z - c.a));
          if (best.to_double() > 1e-10) roots_bad.push_back(tag + ": a=" + to_string(c.a, 12));
          LaurentData ld = laurent_at(sol, c.a);
          if (abs(ld.b - c.b).to_double() > 1e-10) b_bad.push_back(tag + ": a=" + to_string(c.a, 12));
        }
      }
    }
  }
  s.add("roots_agree", count, roots_bad);
  s.add("b_matches_laurent", count, b_bad);
  return s.finish(cfg);
}

int suite_nolog(const RunConfig& cfg) {
  mp::PrecisionScope prec(cfg.precision_bits);
  Suite s{"nolog"};
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::string> limit;
  for (int n = 1; n <= 6; ++n) {
    NoLogBranch b = no_log_betas(n, Complex(0.3), inf);
    for (int i = 0; i < n; ++i) {
      if (!b.betas_scaled[i].re.is_zero() || b.betas_scaled[i].im != Real(static_cast<long>(-n + 1 + 2 * i))) {
        limit.push_back("n=" + std::to_string(n));
      }
    }
  }
  s.add("limit_exact", 6, limit);

  Complex alpha(0.3);
  Real root = mp::sqrt(Real(1L) - alpha.re * alpha.re);
  std::vector<double> scaled;
  std::vector<NoLogBranch> branches;
  for (double E : {100.0, 200.0, 400.0}) {
    NoLogBranch b = no_log_betas(3, alpha, E);
    double worst = 0;
    for (int i = 0; i < 3; ++i) {
      Complex target(Real(0L), root * static_cast<long>(-2 + 2 * i));
      worst = std::max(worst, abs(b.betas[i] - target).to_double() * E);
    }
    scaled.push_back(worst);
    branches.push_back(std::move(b));
  }
  std::vector<std::string> ratio;
  for (std::size_t i = 1; i < scaled.size(); ++i) {
    double r = scaled[i] / scaled[i - 1];
    if (!(r >= 0.3 && r <= 3)) ratio.push_back("ratio " + shortest(r));
  }
  s.add("error_times_E_bounded", 3, ratio, json{{"scaled_errors", scaled}});
  return s.finish(cfg);
}

int suite_semicircle(const RunConfig& cfg) {
  int m = cfg.m == INT_MIN ? 60 : cfg.m;
  int n = cfg.n == INT_MIN ? 4 : cfg.n;
  if (m < 1 || n < 1) invalid("semicircle needs m, n >= 1");
  mp::PrecisionScope prec(cfg.precision_bits);
  Suite s{"semicircle"};
  RootOptions opts;
  opts.precision_bits = cfg.precision_bits;
  opts.seed = cfg.seed;
  RootSet rs = find_roots(gen_hermite(m, n), opts);
  RootSet sc = rs.scaled(Real(1L) / mp::sqrt(Real(static_cast<long>(2 * m + n))));
  auto [emp, pred] = semicircle_compare(sc, Real(-0.5), Real(0.5), n, m);
  double e = emp.to_double(), p = pred.to_double();
  std::vector<std::string> bad;
  if (std::fabs(e - p) > 0.05 * p) bad.push_back("relative deviation " + shortest(std::fabs(e - p) / p));
  s.add("density_within_5_percent", 1, bad, json{{"empirical", e}, {"predicted", p}, {"m", m}, {"n", n}});
  return s.finish(cfg);
}

struct FigureData {
  std::vector<PredictedPoint> preds;
  Real radius;  // rescaled
  std::vector<int> curve_rows;
  std::string regime;
};

mpq_class half_grid(long whole, bool half) { return half ? mp::ratio(2 * whole + 1, 2) : mpq_class(whole); }

FigureData figure_data(const RunConfig& cfg, const BulkParams& p) {
  FigureData fd;
  const long E = p.E;
  if (cfg.which == "fig1") {
    LatticePrediction L = lattice(p, Regime::bulk(cfg.sigma));
    fd.preds = L.entries;
    fd.radius = Real(cfg.radius_const > 0 ? cfg.radius_const : 1.0 / 3.0) * rpow(E, -4.0 / 3.0);
    fd.curve_rows = p.J;
    fd.regime = "bulk";
  } else if (cfg.which == "fig2-bulk") {
    mpq_class k = mp::ratio(p.m + 2, 4);
    if (!p.valid_k(k)) invalid("fig2-bulk needs (m+2)/4 on the k grid (m = 0 mod 4)");
    if (!p.has_j(cfg.j)) invalid("j is not in J_n");
    fd.preds.push_back({cfg.j, k, alpha_jk(cfg.j, k, p)});
    fd.radius = Real(cfg.radius_const > 0 ? cfg.radius_const : 1.0 / 3.0) * rpow(E, -4.0 / 3.0);
    fd.curve_rows = {cfg.j};
    fd.regime = "bulk";
  } else if (cfg.which == "fig2-edge") {
    if (!p.has_j(cfg.j)) invalid("j is not in J_n");
    long base = static_cast<long>(std::floor(E / 4.0 - std::sqrt(static_cast<double>(E))));
    mpq_class k = p.half_integer_k() ? half_grid(base, true) : mpq_class(base);
    fd.preds.push_back({cfg.j, k, alpha_jk(cfg.j, k, p)});
    fd.radius = Real(cfg.radius_const > 0 ? cfg.radius_const : 1.0 / 12.0) / E;
    fd.curve_rows = {cfg.j};
    fd.regime = "edge";
  } else if (cfg.which == "fig3") {
    mpq_class top = mp::ratio(p.m + 1, 2);
    for (int j : {0, 2, 4}) {
      if (!p.has_j(j)) continue;
      for (int step = 0; step <= 2; ++step) {
        mpq_class k = top - step;
        if (p.valid_k(k) && 4 * k < E) fd.preds.push_back({j, k, alpha_jk(j, k, p)});
      }
      fd.curve_rows.push_back(j);
    }
    if (fd.preds.empty()) invalid("fig3 has no admissible (j, k) for these indices");
    fd.radius = Real(cfg.radius_const > 0 ? cfg.radius_const : 1.0 / 6.0) * rpow(E, -2.0 / 3.0);
    fd.regime = "edge";
  } else {
    invalid("unknown figure '" + cfg.which + "'");
  }
  return fd;
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (cfg.precision_bits < 64) invalid("--precision-bits must be at least 64");
  if (!(cfg.sigma > 0 && cfg.sigma < 0.25)) invalid("--sigma must lie in (0, 1/4)");
  if (!(cfg.delta > 1.0 / 3.0 && cfg.delta <= 1.0)) invalid("--delta must lie in (1/3, 1]");
  if (!(cfg.s > 0)) invalid("--s must be positive");
  if (cfg.radius_const < 0) invalid("--radius-const must be positive");
  if (cfg.digits < 0) invalid("--digits must be non-negative");
  if (!cfg.format.empty() && cfg.format != "csv" && cfg.format != "json") invalid("--format must be csv or json");
}

int cmd_poly(const RunConfig& cfg) {
  if (cfg.m == INT_MIN || cfg.n == INT_MIN) invalid("poly needs -m and -n");
  PolyFamily fam = parse_family(cfg.family);
  ExactPoly p;
  if (fam == PolyFamily::Hermite) {
    if (cfg.m < 0 || cfg.n < 0) invalid("hermite indices must be non-negative");
    p = gen_hermite(cfg.m, cfg.n);
  } else if (fam == PolyFamily::Okamoto) {
    p = gen_okamoto(cfg.m, cfg.n);
  } else {
    invalid("--family must be hermite or okamoto");
  }
  if (cfg.format == "csv") {
    std::string text = "power,coeff\n";
    if (p.scale == Scale::Sqrt2) {
      for (int k = 0; k <= p.degree(); ++k) text += std::to_string(k) + "," + p.coeffs.coeff(k).get_str() + "\n";
    } else {
      RatPoly z = p.in_z();
      for (int k = 0; k <= z.degree(); ++k) text += std::to_string(k) + "," + z.coeff(k).get_str() + "\n";
    }
    emit(cfg, text);
  } else {
    emit(cfg, poly_json(p));
  }
  return kOk;
}

int cmd_figure(const RunConfig& cfg) {
  if (cfg.m == INT_MIN || cfg.n == INT_MIN) invalid("figure needs -m and -n");
  if (cfg.m < 1 || cfg.n < 1) invalid("figure needs m, n >= 1");
  mp::PrecisionScope prec(cfg.precision_bits);
  BulkParams p = bulk_params(cfg.m, cfg.n);
  FigureData fd = figure_data(cfg, p);

  RootOptions opts;
  opts.precision_bits = cfg.precision_bits;
  opts.seed = cfg.seed;
  RootSet rs = find_roots(gen_hermite(cfg.m, cfg.n), opts);
  RootSet sc = rs.scaled(Real(1L) / mp::sqrt(Real(static_cast<long>(p.E))));
  MatchReport rep = match_roots(sc, fd.preds, fd.radius);

  std::vector<CurveSample> curves;
  for (int j : fd.curve_rows) {
    for (int i = -98; i <= 98; ++i) {
      Real x = Real(static_cast<long>(i)) / 100L;
      curves.push_back({j, x, g_map(j, p.E, p.n, x)});
    }
  }

  std::filesystem::path dir = cfg.out.empty() ? std::filesystem::path(".") : std::filesystem::path(cfg.out);
  std::filesystem::create_directories(dir);
  if (cfg.format == "json") {
    json bundle;
    bundle["roots"] = json::parse(R"([])");
    for (std::size_t i = 0; i < sc.size(); ++i) {
      bundle["roots"].push_back({format_real(sc.roots[i].re, cfg.digits), format_real(sc.roots[i].im, cfg.digits),
                                 format_real(sc.cert_radius[i], cfg.digits)});
    }
    bundle["lattice"] = json::array();
    for (const auto& e : fd.preds) {
      bundle["lattice"].push_back({e.j, e.k.get_d(), format_real(e.value.re, cfg.digits), format_real(e.value.im, cfg.digits)});
    }
    write_file_atomic(dir / "figure.json", bundle.dump(2) + "\n");
  } else {
    write_file_atomic(dir / "roots.csv", roots_csv(sc, cfg.digits));
    write_file_atomic(dir / "lattice.csv", lattice_csv(fd.preds, cfg.digits));
    write_file_atomic(dir / "gcurves.csv", curves_csv(curves, cfg.digits));
  }
  std::string report = report_json(rep, fd.regime, rs.precision_bits, cfg.seed);
  write_file_atomic(dir / "report.json", report);
  std::cout << report;
  return rep.all_satisfied() ? kOk : kInvariant;
}

int cmd_verify(const RunConfig& cfg) {
  static const std::map<std::string, int (*)(const RunConfig&)> suites = {
      {"recursions", suite_recursions}, {"piv", suite_piv},   {"backlund", suite_backlund},     {"realroots", suite_realroots},
      {"qes", suite_qes},               {"nolog", suite_nolog}, {"semicircle", suite_semicircle},
  };
  auto it = suites.find(cfg.which);
  if (it == suites.end()) invalid("unknown suite '" + cfg.which + "'");
  return it->second(cfg);
}

}  // namespace pivroots::cli
