#include "suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <numeric>
#include <ostream>

#include "gl3gl2/afe.hpp"
#include "gl3gl2/amplifier.hpp"
#include "gl3gl2/arith.hpp"
#include "gl3gl2/errors.hpp"
#include "gl3gl2/gl2.hpp"
#include "gl3gl2/gl3.hpp"
#include "gl3gl2/specfun.hpp"
#include "gl3gl2/trace.hpp"
#include "gl3gl2/voronoi.hpp"

namespace gl3gl2::cli {

namespace {

using json = nlohmann::ordered_json;
using i64 = std::int64_t;
using Clock = std::chrono::steady_clock;

// Lazily built inputs shared by the suites of one run.
class Workspace {
 public:
  explicit Workspace(std::string dir) : dir_(std::move(dir)) {}

  const gl2::FormGL2& form(int k, i64 q) {
    const std::string name = "level" + std::to_string(q) + "_k" + std::to_string(k) + ".txt";
    auto it = forms_.find(name);
    if (it != forms_.end()) return it->second;
    const auto path = std::filesystem::path(dir_) / name;
    if (!std::filesystem::is_regular_file(path)) throw UsageError("missing fixture " + path.string());
    return forms_.emplace(name, gl2::load_fixture(path.string())).first->second;
  }

  const gl3::CoeffTableGL3& eisenstein() {
    if (!eis_) eis_ = std::make_unique<gl3::CoeffTableGL3>(gl3::eisenstein_coeffs(130, 10000));
    return *eis_;
  }

  std::shared_ptr<const afe::VWeight> rs_weight(int k) {
    auto& w = rs_[k];
    if (!w) w = std::make_shared<afe::VWeight>(GammaFactor::rankin_selberg(k, eisenstein().nu()));
    return w;
  }

  const specfun::BumpFunction& bump() const { return bump_; }

  const voronoi::VoronoiKernel& kernel() {
    if (!kernel_) kernel_ = std::make_unique<voronoi::VoronoiKernel>(bump_, eisenstein().nu());
    return *kernel_;
  }

 private:
  std::string dir_;
  std::map<std::string, gl2::FormGL2> forms_;
  std::unique_ptr<gl3::CoeffTableGL3> eis_;
  std::map<int, std::shared_ptr<const afe::VWeight>> rs_;
  specfun::BumpFunction bump_;
  std::unique_ptr<voronoi::VoronoiKernel> kernel_;
};

// Stamps runtime (time since the previous record) and tracks the verdict.
class Emitter {
 public:
  explicit Emitter(const Sink& sink) : sink_(sink), last_(Clock::now()) {}

  void operator()(Record r) {
    const auto now = Clock::now();
    r.runtime_ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    ok_ = ok_ && r.pass;
    sink_(r);
  }
  void restart() { last_ = Clock::now(); }
  bool ok() const { return ok_; }

 private:
  const Sink& sink_;
  Clock::time_point last_;
  bool ok_ = true;
};

double tol_or(const RunConfig& cfg, double fallback) { return cfg.tol.value_or(fallback); }

json with_check(const std::string& check, json extra = json::object()) {
  json j = json::object();
  j["check"] = check;
  for (auto& [k, v] : extra.items()) j[k] = v;
  return j;
}

// ---------------------------------------------------------------- specfun

void suite_specfun(const RunConfig& cfg, Emitter& emit) {
  const std::string s = "specfun-selftest";
  const double t12 = tol_or(cfg, 1e-12), t10 = tol_or(cfg, 1e-10);
  emit(compare(s, with_check("gamma_half"), std::exp(specfun::log_gamma(0.5)), std::sqrt(kPi), t12));
  emit(compare(s, with_check("gamma_5"), std::exp(specfun::log_gamma(5.0)), 24.0, t12));
  emit(compare(s, with_check("hurwitz_2_1"), specfun::hurwitz_zeta(2.0, 1.0), kPi * kPi / 6.0, t10));
  emit(compare(s, with_check("hurwitz_2_half"), specfun::hurwitz_zeta(2.0, 0.5), kPi * kPi / 2.0, t10));
  for (int order = 0; order <= 20; ++order) {
    const double x = specfun::bessel_switch_point(order);
    emit(compare(s, with_check("bessel_overlap", {{"order", order}, {"x", x}}), specfun::bessel_j_series(order, x),
                 specfun::bessel_j_hankel(order, x), t10));
  }
  // least-squares slope of log max|H+-(1+it)| against log t
  const double sigma = 1.0;
  const int pts = 61;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < pts; ++i) {
    const double t = std::pow(10.0, 1.0 + 2.0 * i / (pts - 1));
    const cplx s0(sigma, t);
    const double h = std::max(std::abs(voronoi::h_transform(s0, 1.0 / 3.0, voronoi::Sign::Plus)),
                              std::abs(voronoi::h_transform(s0, 1.0 / 3.0, voronoi::Sign::Minus)));
    const double lx = std::log(t), ly = std::log(h);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (pts * sxy - sx * sy) / (pts * sxx - sx * sx);
  Record r = bound(s, with_check("h_growth_slope", {{"sigma", sigma}, {"lower", 3 * sigma - 2}}), slope, 3 * sigma + 0.1);
  r.pass = slope >= 3 * sigma - 2 && slope <= 3 * sigma + 0.1;
  emit(r);
}

// ------------------------------------------------------------ kloosterman

void suite_kloosterman(const RunConfig& cfg, Emitter& emit) {
  const std::string s = "kloosterman";
  const i64 c_max = cfg.get_int("c_max", 500), nm = cfg.get_int("nm_max", 20);
  if (c_max < 1 || nm < 1) throw UsageError("kloosterman: c_max and nm_max must be positive");
  double sym = 0, per = 0, crt = 0, weil = 0;
  i64 ram_bad = 0;
  for (i64 c = 1; c <= c_max; ++c) {
    const arith::KloostermanTable tab(c);
    const double tau = static_cast<double>(arith::divisor_count(c));
    for (i64 n = 0; n <= nm; ++n) {
      const double rs = tab(n, 0);
      if (std::abs(rs - std::round(rs)) > 1e-9 || static_cast<i64>(std::llround(rs)) != arith::ramanujan_sum(n, c)) ++ram_bad;
      if (n == 0) continue;
      for (i64 m = 1; m <= nm; ++m) {
        const double v = tab(n, m);
        sym = std::max(sym, std::abs(v - tab(m, n)));
        per = std::max(per, std::abs(v - tab(n + c, m)));
        const double g = static_cast<double>(std::gcd(std::gcd(n, m), c));
        weil = std::max(weil, std::abs(v) / (tau * std::sqrt(g * static_cast<double>(c))));
        if (c % 7 == 0) crt = std::max(crt, std::abs(v - arith::kloosterman_crt(n, m, c)));
      }
    }
  }
  const json grid = {{"c_max", c_max}, {"nm_max", nm}};
  emit(compare(s, with_check("symmetry", grid), sym, 0.0, tol_or(cfg, 1e-12)));
  emit(compare(s, with_check("periodicity", grid), per, 0.0, tol_or(cfg, 1e-9)));
  emit(compare(s, with_check("crt_agreement", grid), crt, 0.0, tol_or(cfg, 1e-9)));
  emit(compare(s, with_check("ramanujan_exact", grid), static_cast<double>(ram_bad), 0.0, 0.5));
  emit(bound(s, with_check("weil_bound", grid), weil, 1.0 + 1e-12));

  // exact identities
  i64 bad = 0, cases = 0;
  for (i64 n = 0; n <= 100; ++n) {
    for (i64 m = 1; m <= 50; ++m) {
      for (i64 q = 1; q <= 50; ++q) {
        if (std::gcd(m, q) != 1) continue;
        ++cases;
        if (!arith::reciprocity_split(n, m, q).holds) ++bad;
      }
    }
  }
  emit(compare(s, with_check("reciprocity_split", {{"n_max", 100}, {"mq_max", 50}, {"cases", cases}}),
               static_cast<double>(bad), 0.0, 0.5));
  i64 dich_bad = 0;
  for (i64 q = 2; q <= 50; ++q) {
    if (arith::factor(q).factors.size() != 1 || arith::factor(q).factors[0].exponent != 1) continue;
    for (i64 n = 0; n <= 2 * q; ++n) {
      i64 by_enum = 0;
      // sum over units h of e(hn/q), real part exact for prime q
      double acc = 0.0;
      for (i64 h = 1; h < q; ++h) acc += std::cos(2.0 * kPi * static_cast<double>(arith::mod(h * n, q)) / q);
      by_enum = std::llround(acc);
      const i64 expect = n % q == 0 ? q - 1 : -1;
      if (by_enum != expect || arith::ramanujan_sum(n, q) != expect) ++dich_bad;
    }
  }
  emit(compare(s, with_check("ramanujan_dichotomy", {{"q_max", 50}}), static_cast<double>(dich_bad), 0.0, 0.5));
}

// ------------------------------------------------------------------ trace

std::vector<std::pair<i64, i64>> pairs_for(const RunConfig& cfg, i64 grid_default, i64 q) {
  std::vector<std::pair<i64, i64>> out;
  if (cfg.has("n") || cfg.has("m")) {
    out.emplace_back(cfg.get_int("n", 1), cfg.get_int("m", 1));
    return out;
  }
  const i64 g = cfg.get_int("grid", grid_default);
  if (g < 1) throw UsageError("--grid must be positive");
  for (i64 n = 1; n <= g; ++n) {
    if (q > 1 && n % (q * q) == 0) continue;
    for (i64 m = 1; m <= g; ++m) {
      if (q > 1 && std::gcd(m, q) != 1) continue;
      out.emplace_back(n, m);
    }
  }
  return out;
}

void run_ptf(const RunConfig& cfg, Workspace& ws, Emitter& emit, int k) {
  const std::string s = "ptf-verify";
  // level-1 fixtures hold one form per weight
  const std::vector<gl2::FormGL2> forms = {ws.form(k, 1)};
  if (static_cast<int>(forms.size()) != trace::newform_dimension(k, 1))
    throw UsageError("ptf-verify: fixtures do not span S_k(1) for k = " + std::to_string(k));
  trace::TraceQuery q;
  q.k = k;
  q.q = 1;
  q.c_max = cfg.get_int("c_max", 100);
  q.tol = tol_or(cfg, 1e-10);
  for (const auto& [n, m] : pairs_for(cfg, 20, 1)) {
    q.n = n;
    q.m = m;
    const auto rep = trace::verify_trace(q, forms);
    Record r = from_report(s, with_check("petersson", {{"k", k}, {"q", 1}, {"n", n}, {"m", m}, {"c_max", q.c_max}}), rep);
    r.pass = rep.pass && rep.diagnostics.at("tail_certified") > 0.5;
    emit(r);
  }
}

void suite_ptf(const RunConfig& cfg, Workspace& ws, Emitter& emit) {
  if (cfg.get_int("q", 1) != 1) throw UsageError("ptf-verify: level 1 only (use newform-tf-verify)");
  if (cfg.has("k")) {
    run_ptf(cfg, ws, emit, static_cast<int>(cfg.get_int("k", 12)));
    return;
  }
  for (int k : {12, 16}) run_ptf(cfg, ws, emit, k);
}

void run_newform_grid(const RunConfig& cfg, Workspace& ws, Emitter& emit, int k, i64 q) {
  const std::string s = "newform-tf-verify";
  const std::vector<gl2::FormGL2> forms = {ws.form(k, q)};
  trace::TraceQuery tq;
  tq.k = k;
  tq.q = q;
  tq.c_max = cfg.get_int("c_max", 1000);
  tq.tol = tol_or(cfg, 1e-5);
  for (const auto& [n, m] : pairs_for(cfg, 25, q)) {
    tq.n = n;
    tq.m = m;
    emit(from_report(s, with_check("newform_trace", {{"k", k}, {"q", q}, {"n", n}, {"m", m}, {"c_max", tq.c_max}}),
                     trace::verify_trace(tq, forms)));
  }
}

void run_newform_demo(const RunConfig& cfg, Workspace& ws, Emitter& emit, int k, i64 q) {
  const std::string s = "newform-tf-verify";
  const std::vector<gl2::FormGL2> forms = {ws.form(k, q)};
  std::vector<std::pair<i64, i64>> pairs = {{1, 1}};
  if (cfg.has("n") || cfg.has("m")) pairs = {{cfg.get_int("n", 1), cfg.get_int("m", 1)}};
  std::vector<i64> cs = {1000, 10000, 100000};
  if (cfg.has("c_max")) cs = {cfg.get_int("c_max", 100000)};
  const double tol = tol_or(cfg, 5e-2);
  for (const auto& [n, m] : pairs) {
    std::vector<double> errs;
    for (i64 c : cs) {
      trace::TraceQuery tq;
      tq.k = k;
      tq.q = q;
      tq.n = n;
      tq.m = m;
      tq.c_max = c;
      tq.tol = tol;
      const auto rep = trace::verify_trace(tq, forms);
      errs.push_back(rep.abs_discrepancy);
      emit(from_report(s, with_check("newform_trace_demo", {{"k", k}, {"q", q}, {"n", n}, {"m", m}, {"c_max", c}}), rep));
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < errs.size(); ++i) decreasing = decreasing && errs[i] < errs[i - 1];
    Record r = compare(s, with_check("newform_trace_decreasing", {{"k", k}, {"q", q}, {"n", n}, {"m", m}}),
                       errs.back(), 0.0, tol);
    r.pass = decreasing && errs.back() < tol;
    emit(r);
  }
}

void suite_newform(const RunConfig& cfg, Workspace& ws, Emitter& emit) {
  if (cfg.has("k") || cfg.has("q")) {
    const int k = static_cast<int>(cfg.get_int("k", 4));
    const i64 q = cfg.get_int("q", 5);
    if (q < 2) throw UsageError("newform-tf-verify: q must be a prime level");
    if (k == 2)
      run_newform_demo(cfg, ws, emit, k, q);
    else
      run_newform_grid(cfg, ws, emit, k, q);
    return;
  }
  run_newform_grid(cfg, ws, emit, 4, 5);
  run_newform_demo(cfg, ws, emit, 2, 11);
}

// ---------------------------------------------------------------- voronoi

void suite_voronoi(const RunConfig& cfg, Workspace& ws, Emitter& emit) {
  const std::string s = "voronoi-verify";
  struct P {
    i64 d, b, r;
    double N;
  };
  std::vector<P> grid = {{1, 1, 1, 20}, {2, 1, 1, 30}, {3, 1, 1, 30}, {3, 2, 1, 30}, {5, 2, 1, 40}, {4, 1, 2, 30}};
  const bool single = cfg.has("d") || cfg.has("b") || cfg.has("r") || cfg.has("N");
  if (single) grid = {{cfg.get_int("d", 1), cfg.get_int("b", 1), cfg.get_int("r", 1), cfg.get("N", 20.0)}};
  const auto& kernel = ws.kernel();
  std::vector<double> fits;
  for (const auto& g : grid) {
    voronoi::VoronoiParams p;
    p.d = g.d;
    p.b = g.b;
    p.r = g.r;
    p.N = g.N;
    p.psi = &ws.bump();
    p.table = &ws.eisenstein();
    p.tol = tol_or(cfg, 1e-3);
    if (!p.table->covers(p.r, static_cast<i64>(std::ceil(2 * p.N))))
      throw UsageError("voronoi-verify: r and N exceed the shipped coefficient table");
    try {
      const auto rep = voronoi::verify_voronoi(p, &kernel);
      fits.push_back(rep.diagnostics.at("fitted_constant_re"));
      emit(from_report(s, with_check("voronoi_identity", {{"d", g.d}, {"b", g.b}, {"r", g.r}, {"N", g.N}}), rep));
    } catch (const PreconditionError& e) {
      throw UsageError(e.what());
    }
  }
  if (single) return;
  emit(compare(s, with_check("contour_shift", {{"sigma_a", 0.6}, {"sigma_b", 1.2}}), kernel.contour_shift, 0.0,
               tol_or(cfg, 1e-9)));
  emit(compare(s, with_check("step_halving", {{"X", 1.0}}), kernel.step_halving, 0.0, 1e-10));
  double spread = 0.0, off = 0.0;
  for (double f : fits) {
    off = std::max(off, std::abs(f - 1.0));
    for (double g : fits) spread = std::max(spread, std::abs(f - g));
  }
  Record r = compare(s, with_check("fitted_constant", {{"spread", spread}}), 1.0 + off, 1.0, 1e-3);
  r.pass = off < 1e-3 && spread < 1e-3;
  emit(r);
  const double N = 20.0;
  emit(compare(s, with_check("main_term_laurent", {{"N", N}}), voronoi::main_term(1, 1, N, ws.bump(), 1).value,
               voronoi::main_term_laurent(N, ws.bump()), 1e-9));
}

// -------------------------------------------------------------------- afe

struct Level {
  int k;
  i64 q;
};
const std::vector<Level> kLevels = {{2, 11}, {4, 5}, {2, 37}};

std::vector<Level> levels_for(const RunConfig& cfg) {
  if (!cfg.has("k") && !cfg.has("q")) return kLevels;
  const Level l{static_cast<int>(cfg.get_int("k", 2)), cfg.get_int("q", 11)};
  return {l};
}

void suite_afe(const RunConfig& cfg, Workspace& ws, Emitter& emit) {
  const std::string s = "afe";
  const auto levels = levels_for(cfg);
  const auto& tab = ws.eisenstein();
  std::vector<int> weights;
  for (const auto& lv : levels) {
    if (std::find(weights.begin(), weights.end(), lv.k) == weights.end()) weights.push_back(lv.k);
  }
  for (int k : weights) {
    const auto w = ws.rs_weight(k);
    emit(compare(s, with_check("v_small_x", {{"k", k}, {"x", 1e-6}}), (*w)(1e-6), 1.0, tol_or(cfg, 1e-5)));
    // slope of log V against log x over [10, 40]
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int pts = 31;
    for (int i = 0; i < pts; ++i) {
      const double x = 10.0 * std::pow(4.0, static_cast<double>(i) / (pts - 1));
      const double lx = std::log(x), ly = std::log(afe::v_weight(x, w->gamma()));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    emit(bound(s, with_check("v_decay_slope", {{"k", k}, {"x_from", 10.0}, {"x_to", 40.0}}),
               (pts * sxy - sx * sy) / (pts * sxx - sx * sx), -5.0));
  }
  for (const auto& lv : levels) {
    const auto& f = ws.form(lv.k, lv.q);
    afe::AfeContext ctx;
    ctx.f = &f;
    ctx.table = &tab;
    ctx.weight = ws.rs_weight(lv.k);
    const double x0 = afe::AfeContext::symmetric_split(f);
    auto rep = afe::split_invariance_check(ctx, {x0 / 2, x0, 2 * x0});
    if (cfg.tol) rep.finish(*cfg.tol);
    emit(from_report(s, with_check("split_invariance", {{"k", lv.k}, {"q", lv.q}}), rep));
    ctx.split = x0;
    const double gxf = afe::afe_central_value(ctx).value;
    if (f.eps == -1) {
      emit(compare(s, with_check("odd_central_zero", {{"k", lv.k}, {"q", lv.q}}), gxf, 0.0, tol_or(cfg, 1e-10)));
      continue;
    }
    const double l = afe::gl2_central_value(f).value;
    emit(compare(s, with_check("cube_cross_check", {{"k", lv.k}, {"q", lv.q}}), gxf, l * l * l, tol_or(cfg, 1e-6)));
    if (lv.k == 2) {
      emit(compare(s, with_check("exponential_series_oracle", {{"k", lv.k}, {"q", lv.q}}), l,
                   afe::exponential_series_L1(f), tol_or(cfg, 1e-3)));
    }
  }
}

// -------------------------------------------------------------- amplifier

void suite_amplifier(const RunConfig& cfg, Workspace& ws, Emitter& emit) {
  const std::string s = "amplifier-demo";
  const auto levels = levels_for(cfg);
  std::vector<i64> Ls = {10, 30};
  if (cfg.has("L")) Ls = {cfg.get_int("L", 10)};
  for (const auto& lv : levels) {
    const auto& f0 = ws.form(lv.k, lv.q);
    const json base = {{"k", lv.k}, {"q", lv.q}};
    for (i64 L : Ls) {
      if (L < 1) throw UsageError("amplifier-demo: L must be positive");
      const auto spec = amplifier::amplifier_coeffs(f0, L);
      json p = base;
      p["L"] = L;
      p["vector"] = "f0";
      auto rep = amplifier::reconstruction_check(spec, amplifier::form_coefficients(f0, L * L), tol_or(cfg, 1e-12));
      emit(from_report(s, with_check("reconstruction", p), rep));
      p["vector"] = "synthetic";
      rep = amplifier::reconstruction_check(
          spec, amplifier::synthetic_hecke_vector(lv.q, L * L, 20240611, -1.0 / std::sqrt(static_cast<double>(lv.q))),
          tol_or(cfg, 1e-12));
      emit(from_report(s, with_check("reconstruction", p), rep));
    }
    const auto two = amplifier::amplifier_coeffs(f0, 2);
    const double a2 = f0.lambda(2);
    const std::vector<std::pair<i64, double>> closed = {{1, 1.0 + a2 * a2 / 2.0}, {2, 2.0 * a2}, {3, 0.0}, {4, a2 * a2}};
    for (const auto& [m, want] : closed) {
      json p = base;
      p["m"] = m;
      Record r = compare(s, with_check("l2_closed_form", p), two.x_at(m), want, 0.0);
      r.pass = two.x_at(m) == want;
      emit(r);
    }
    emit(bound(s, with_check("amplification_constant", base), -amplifier::amplification_constant(f0, 10000), 0.0));

    if (trace::newform_dimension(lv.k, lv.q) != 1) continue;  // moment sums need the full family
    amplifier::FamilyContext ctx;
    ctx.k = lv.k;
    ctx.q = lv.q;
    ctx.family = {f0};
    ctx.table = &ws.eisenstein();
    ctx.weight = ws.rs_weight(lv.k);
    const auto one = amplifier::amplified_moment(ctx, amplifier::amplifier_coeffs(f0, 1));
    emit(compare(s, with_check("moment_l1", base), one.value, one.central[0] / f0.harmonic_weight, 1e-12, true));
    const auto spec3 = amplifier::amplifier_coeffs(f0, 3);
    const auto mom = amplifier::amplified_moment(ctx, spec3);
    emit(bound(s, with_check("lapid_nonnegative", base), -mom.min_summand, 1e-6));
    CompensatedSum rec;
    for (i64 m = 1; m <= spec3.support(); ++m) {
      if (spec3.x_at(m) == 0.0 || std::gcd(m, lv.q) != 1) continue;
      rec.add(spec3.x_at(m) / std::sqrt(static_cast<double>(m)) * static_cast<double>(lv.q) *
              amplifier::prop2_lhs(ctx, m).lhs);
    }
    json p3 = base;
    p3["L"] = 3;
    emit(compare(s, with_check("moment_from_prop2", p3), mom.value, rec.value(), 1e-10, true));
    for (i64 m = 1; m <= 10; ++m) {
      if (std::gcd(m, lv.q) != 1) continue;
      const auto p2 = amplifier::prop2_lhs(ctx, m);
      json p = base;
      p["m"] = m;
      p["envelope"] = p2.envelope;
      p["ratio"] = p2.ratio;
      emit(bound(s, with_check("prop2_envelope", p), std::abs(p2.lhs), 10.0 * p2.envelope));
    }
  }
}

bool dispatch(const RunConfig& cfg, Workspace& ws, const Sink& sink) {
  Emitter emit(sink);
  const std::string& s = cfg.suite;
  if (s == "specfun-selftest") {
    suite_specfun(cfg, emit);
  } else if (s == "kloosterman") {
    suite_kloosterman(cfg, emit);
  } else if (s == "ptf-verify") {
    suite_ptf(cfg, ws, emit);
  } else if (s == "newform-tf-verify") {
    suite_newform(cfg, ws, emit);
  } else if (s == "voronoi-verify") {
    suite_voronoi(cfg, ws, emit);
  } else if (s == "afe") {
    suite_afe(cfg, ws, emit);
  } else if (s == "amplifier-demo") {
    suite_amplifier(cfg, ws, emit);
  } else if (s == "full-acceptance") {
    bool ok = true;
    for (const char* sub : {"specfun-selftest", "kloosterman", "ptf-verify", "newform-tf-verify", "voronoi-verify", "afe",
                            "amplifier-demo"}) {
      RunConfig c = default_config(sub, cfg.fixture_dir);
      ok = dispatch(c, ws, sink) && ok;
    }
    return ok;
  } else {
    throw UsageError("unknown suite " + s);
  }
  return emit.ok();
}

}  // namespace

RunConfig default_config(const std::string& suite, const std::string& fixture_dir) {
  RunConfig c;
  c.suite = suite;
  c.fixture_dir = fixture_dir;
  return c;
}

bool run_records(const RunConfig& cfg, const Sink& sink) {
  Workspace ws(cfg.fixture_dir);
  return dispatch(cfg, ws, sink);
}

int run_suite(const RunConfig& cfg, std::ostream& fallback, std::ostream& err) {
  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output, std::ios::out | std::ios::trunc);
    if (!file) {
      err << "error: cannot open " << cfg.output << '\n';
      return 2;
    }
  }
  std::ostream& out = cfg.output.empty() ? fallback : file;
  RecordWriter writer(out, cfg.format);
  try {
    const bool ok = run_records(cfg, [&](const Record& r) {
      writer.write(r);
      writer.flush();
    });
    return ok ? 0 : 1;
  } catch (const UsageError& e) {
    writer.flush();
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    writer.flush();
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace gl3gl2::cli
