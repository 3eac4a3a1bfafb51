// tools/gaborpr_cli.cpp

// Copyright 2026 The gaborpr Authors
//
// See ../LICENSE for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: synthesize, sample, reconstruct, verify, plan.
//
// A run is described by one JSON config; flags override its fields. Relative
// paths inside the config are resolved against the output directory.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

#include "gaborpr/gaborpr.hpp"

namespace fs = std::filesystem;
using namespace gaborpr;

namespace {

constexpr int kSuiteFailed = 1;

struct Context {
  json cfg = json::object();
  fs::path out = ".";
  std::optional<std::uint64_t> seed_flag;
  std::string oracle = "none";
  std::string suite;

  fs::path path(const std::string &p) const {
    fs::path q(p);
    return q.is_absolute() ? q : out / q;
  }
  std::uint64_t base_seed() const {
    return seed_flag ? *seed_flag : cfg.value("seed", std::uint64_t{0});
  }
  const json &section(const char *name) const {
    static const json empty = json::object();
    return cfg.contains(name) ? cfg.at(name) : empty;
  }
};

template <typename T>
T get_or(const json &j, const char *key, T dflt) {
  if (!j.contains(key)) return dflt;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception &e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

template <typename T>
T need(const json &j, const char *key, const char *where) {
  if (!j.contains(key)) throw ConfigError(std::string(where) + ": missing '" + key + "'");
  return get_or<T>(j, key, T{});
}

GaussianModel model_of(const Context &c) {
  const json &m = c.section("model");
  return GaussianModel(need<double>(m, "sigma", "model"), need<double>(m, "beta", "model"));
}

bool has_signal(const Context &c) { return c.cfg.contains("signal"); }

Fixture signal_of(const Context &c) {
  if (!has_signal(c)) throw ConfigError("config has no 'signal' section");
  const json &s = c.cfg.at("signal");
  if (s.contains("file")) return read_fixture(c.path(need<std::string>(s, "file", "signal")));
  if (s.contains("random")) {
    const json &r = s.at("random");
    std::uint64_t seed = c.seed_flag ? *c.seed_flag : get_or(r, "seed", c.base_seed());
    return synthesize_siv(model_of(c), seed, get_or(r, "count", 11), get_or(r, "mag_lo", 0.5),
                          get_or(r, "mag_hi", 1.5));
  }
  if (s.contains("random_spline")) {
    const json &r = s.at("random_spline");
    std::uint64_t seed = c.seed_flag ? *c.seed_flag : get_or(r, "seed", c.base_seed());
    return synthesize_spline(need<double>(r, "radius", "random_spline"), get_or(r, "interior", 8),
                             seed);
  }
  return fixture_from_json(s);
}

NoiseSpec noise_of(const Context &c) {
  if (!c.cfg.contains("noise")) return NoiseSpec::none();
  json n = c.cfg.at("noise");
  if (c.seed_flag) n["seed"] = *c.seed_flag + 1;
  else if (!n.contains("seed")) n["seed"] = c.base_seed() + 1;
  return noise_from_json(n);
}

std::optional<GridPlan> plan_of(const Context &c, const GaussianModel &m) {
  if (!c.cfg.contains("plan")) return std::nullopt;
  const json &p = c.cfg.at("plan");
  std::string variant = get_or<std::string>(p, "variant", "known");
  double r = need<double>(p, "r", "plan"), s = need<double>(p, "s", "plan");
  double eps = need<double>(p, "eps", "plan");
  std::optional<PlanConstants> pc;
  if (p.contains("constants")) {
    const json &k = p.at("constants");
    pc = PlanConstants{need<double>(k, "a", "plan.constants"), need<double>(k, "b", "plan.constants"),
                       need<double>(k, "D", "plan.constants"), "user"};
  }
  if (variant == "known")
    return select_grid_params(m, r, s, need<double>(p, "gamma", "plan"), eps,
                              need<long>(p, "J", "plan"), need<double>(p, "c_inf", "plan"), pc);
  if (variant == "detected")
    return select_grid_params_detected(m, r, s, eps, need<double>(p, "bound_L", "plan"), pc);
  throw ConfigError("plan.variant must be 'known' or 'detected'");
}

/// Explicit grid fields take precedence over the plan.
Grid grid_of(const Context &c, const GaussianModel &m, const std::optional<GridPlan> &plan) {
  if (c.cfg.contains("grid")) {
    const json &g = c.cfg.at("grid");
    return Grid(m.beta, need<double>(g, "h", "grid"), need<long>(g, "N", "grid"), need<long>(g, "H", "grid"));
  }
  if (plan) return plan->grid();
  throw ConfigError("config needs a 'grid' or a 'plan' section");
}

SampleMatrix sample_fixture(const Fixture &f, const GaussianModel &m, const Grid &g,
                            const NoiseSpec &noise, double quad_tol) {
  if (auto *s = std::get_if<SIVSignal>(&f)) {
    if (s->model().sigma != m.sigma || s->model().beta != m.beta)
      throw ConfigError("signal model differs from config model");
    return sample_spectrogram(*s, g, noise);
  }
  GenericSignal gs = std::visit(
      [](const auto &v) -> GenericSignal {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, SIVSignal>) return {};
        else return as_generic(v);
      },
      f);
  return sample_spectrogram(gs, m, g, noise, quad_tol);
}

std::function<cplx(double)> evaluator(const Fixture &f) {
  return std::visit([](const auto &v) -> std::function<cplx(double)> { return [v](double t) { return v(t); }; },
                    f);
}

void print_json(const json &j) { std::cout << j.dump(2) << "\n"; }

// ------------------------------------------------------------- subcommands

int cmd_synthesize(const Context &c) {
  auto f = signal_of(c);
  auto p = c.path(get_or<std::string>(c.cfg, "fixture_out", "signal.json"));
  write_fixture(p, f);
  print_json({{"status", "ok"}, {"fixture", p.string()}});
  return 0;
}

int cmd_plan(const Context &c) {
  auto m = model_of(c);
  auto plan = plan_of(c, m);
  if (!plan) throw ConfigError("config has no 'plan' section");
  json j = to_json(*plan);
  write_json(c.path("plan.json"), j);
  print_json(j);
  return 0;
}

int cmd_sample(const Context &c) {
  auto m = model_of(c);
  auto plan = plan_of(c, m);
  auto g = grid_of(c, m, plan);
  auto noise = noise_of(c);
  auto f = signal_of(c);
  auto S = sample_fixture(f, m, g, noise, get_or(c.cfg, "quad_tol", 1e-12));
  auto p = c.path(get_or<std::string>(c.cfg, "samples", "samples.csv"));
  json extra = {{"signal", to_json(f)}};
  if (plan) extra["plan"] = to_json(*plan);
  write_samples(p, S, noise, extra);
  print_json({{"status", "ok"},
              {"samples", p.string()},
              {"rows", g.rows()},
              {"cols", g.cols()},
              {"noise_inf_norm_actual", S.noise_inf_norm_actual}});
  return 0;
}

int cmd_reconstruct(const Context &c) {
  auto m = model_of(c);
  auto plan = plan_of(c, m);
  std::optional<Fixture> truth;
  if (has_signal(c)) truth = signal_of(c);

  std::shared_ptr<const LocalSource> src;
  double realized = 0.0;
  if (c.oracle == "exact-tensor") {
    if (!truth || !std::holds_alternative<SIVSignal>(*truth))
      throw ConfigError("--oracle exact-tensor needs a shift-invariant 'signal'");
    src = std::make_shared<ExactTensorSource>(std::get<SIVSignal>(*truth));
  } else {
    auto p = c.path(get_or<std::string>(c.cfg, "samples", "samples.csv"));
    if (!fs::exists(p)) throw IoError("sample file not found: " + p.string());
    auto S = read_samples(p);
    if (S.sigma != m.sigma || S.grid.beta != m.beta) throw ConfigError("sample file model differs from config");
    realized = S.noise_inf_norm_actual;
    src = std::make_shared<SampleSource>(S);
  }

  const json &pj = c.section("partition");
  ReconstructionResult R;
  if (pj.contains("points")) {
    R = reconstruct(src, Partition(need<std::vector<double>>(pj, "points", "partition"),
                                   need<double>(pj, "gamma", "partition"), need<double>(pj, "r", "partition")));
  } else if (pj.contains("detect")) {
    const json &d = pj.at("detect");
    Algorithm1Options opt;
    opt.grid_step = get_or(d, "grid_step", 0.0);
    R = algorithm1(src, need<double>(d, "r", "partition.detect"), need<double>(d, "gamma_tilde", "partition.detect"),
                   need<double>(d, "s", "partition.detect"), opt);
  } else {
    throw ConfigError("partition needs 'points' or 'detect'");
  }

  const json &ev = c.section("eval");
  double lo = get_or(ev, "lo", R.lo()), hi = get_or(ev, "hi", R.hi());
  double step = get_or(ev, "step", m.beta / 50);
  auto ts = uniform_grid(lo, hi, step);
  auto vals = R.zero_outside ? R.evaluate(ts) : std::vector<cplx>{};
  if (!R.zero_outside) {
    for (double &t : ts) t = std::clamp(t, R.lo(), R.hi());
    vals = R.evaluate(ts);
  }

  json result = {{"status", "ok"}, {"reconstruction", to_json(R)},
                 {"eval", {{"lo", lo}, {"hi", hi}, {"points", ts.size()}}},
                 {"noise_inf_norm_actual", realized}};
  std::vector<cplx> fv;
  std::optional<cplx> tau;
  if (truth) {
    auto fe = evaluator(*truth);
    fv.resize(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) fv[i] = fe(ts[i]);
    // Error on the reconstruction's domain [p_1, p_J].
    std::vector<cplx> fin, rin;
    for (std::size_t i = 0; i < ts.size(); ++i)
      if (ts[i] >= R.lo() && ts[i] <= R.hi()) fin.push_back(fv[i]), rin.push_back(vals[i]);
    if (fin.empty()) throw ConfigError("eval interval misses [p_1, p_J]");
    auto q = quotient_distance(fin, rin);
    q.lo = std::max(lo, R.lo()), q.hi = std::min(hi, R.hi());
    q.grid_step = ts.size() > 1 ? (hi - lo) / double(ts.size() - 1) : 0.0;
    result["quotient_distance"] = to_json(q);
    tau = q.tau_star;
    // Phase of f at p_1, as used for display.
    cplx f1 = fe(R.lo()), r1 = R(R.lo());
    if (std::abs(f1) > 0 && std::abs(r1) > 0)
      result["display_phase"] = to_json((f1 / std::abs(f1)) / (r1 / std::abs(r1)));
    if (plan) {
      double fsup = 0.0;
      for (auto v : fv) fsup = std::max(fsup, std::abs(v));
      double gam = R.partition.gamma;
      double rhs = plan->variant == GridPlan::Variant::KnownPartition
                       ? partition_error_rhs(plan->epsilon, gam, fsup, R.partition.J())
                       : theoremC_rhs(plan->epsilon, gam, fsup);
      result["bound"] = check_json(q.value, rhs,
                                   {{"epsilon", plan->epsilon}, {"gamma", gam}, {"f_sup", fsup},
                                    {"noise_budget", plan->noise_budget},
                                    {"within_budget", realized <= plan->noise_budget}});
    }
  }
  if (plan) result["plan"] = to_json(*plan);
  atomic_write(c.path(get_or<std::string>(c.cfg, "dense_out", "dense.csv")),
               dense_csv(ts, vals, truth ? &fv : nullptr, nullptr, tau));
  write_json(c.path(get_or<std::string>(c.cfg, "result_out", "result.json")), result);
  print_json(result);
  return 0;
}

// ------------------------------------------------------------------ suites

json suite_special(const Context &c, bool &ok) {
  json rows = json::array();
  const double lo = std::exp(-2.0), hi = std::exp(-0.5);
  double xmin = INFINITY;
  for (int i = 0; i < 100; ++i) xmin = std::min(xmin, xi(lo + (hi - lo) * i / 99.0));
  bool xi_ok = xmin >= 0.2;
  json models = json::array();
  std::vector<GaussianModel> ms{GaussianModel(1 / std::sqrt(2 * kPi), 1.0), GaussianModel(0.3, 1.0),
                                GaussianModel(0.4, 0.8)};
  if (c.cfg.contains("model")) ms = {model_of(c)};
  bool dec_ok = true;
  for (const auto &m : ms) {
    if (!m.explicit_regime()) continue;
    auto tb = tensor_dual_table(m);
    double worst = 0.0;
    for (int i = 0; i <= 4000; ++i) {
      double t = -20 + 40.0 * i / 4000;
      worst = std::max(worst, std::abs(inv_fourier_lambda(tb, t)) / (205 / m.sigma * std::exp(-std::abs(t) / 4)));
    }
    dec_ok = dec_ok && worst <= 1.0;
    models.push_back({{"sigma", m.sigma}, {"beta", m.beta}, {"max_ratio_to_bound", worst}});
  }
  ok = xi_ok && dec_ok;
  return {{"xi_min_on_interval", check_json(0.2, xmin, {{"interval", {lo, hi}}, {"points", 100}})},
          {"decay_bound", models}};
}

json suite_growth(const Context &c, bool &ok) {
  const json &g = c.section("growth");
  GaussianModel m = c.cfg.contains("model") ? model_of(c) : GaussianModel(1 / std::sqrt(2 * kPi), 1.0);
  double eps = get_or(g, "eps", 1e-10), cinf = get_or(g, "c_inf", 1.0), r = get_or(g, "r", 0.75);
  auto ss = get_or<std::vector<double>>(g, "s", {4, 8, 16, 32, 64});
  json rows = json::array();
  double lo = INFINITY, hi = 0.0;
  for (double s : ss) {
    auto plan = growth_plan(s, eps, cinf, m, r);
    long n = (2 * plan.N + 1) * (2 * plan.H + 1);
    double ratio = growth_ratio(s, eps, cinf, m, r);
    lo = std::min(lo, ratio), hi = std::max(hi, ratio);
    rows.push_back({{"s", s}, {"N_samples", n}, {"rows", 2 * plan.N + 1}, {"cols", 2 * plan.H + 1}, {"ratio", ratio}});
  }
  ok = hi / lo < 3.0;
  return {{"eps", eps}, {"c_inf", cinf}, {"r", r}, {"table", rows}, {"spread", hi / lo}, {"holds", ok}};
}

json suite_stability(const Context &c, bool &ok) {
  const json &g = c.section("stability");
  GaussianModel m = c.cfg.contains("model") ? model_of(c) : GaussianModel(1 / std::sqrt(2 * kPi), 1.0);
  int pairs = get_or(g, "pairs", 5);
  double pert = get_or(g, "perturbation", 1e-3);
  StabilityOptions opt;
  opt.C = stability_constant_C(m).value;
  std::mt19937_64 rng(c.base_seed());
  std::uniform_real_distribution<double> ph(0, 2 * kPi);
  json cases = json::array();
  ok = true;
  for (int i = 0; i < pairs; ++i) {
    auto f = synthesize_siv(m, rng(), 7);
    auto cs = f.coeffs();
    cs[rng() % cs.size()] += std::polar(pert, ph(rng));
    SIVSignal gsig(m, f.n_min(), cs);
    std::vector<double> p;
    for (double t = -1.5 * m.beta; t <= 1.5 * m.beta + 1e-12; t += 0.75 * m.beta) p.push_back(t);
    double gam = INFINITY;
    for (double t : p) gam = std::min(gam, std::abs(f(t)));
    auto loc = local_stability_check(f, gsig, p, 0.75 * m.beta, opt);
    auto tb = theoremB_check(f, gsig, Partition(p, gam, 0.75 * m.beta), opt);
    ok = ok && loc.holds() && tb.holds();
    cases.push_back({{"local", to_json(loc)}, {"global", to_json(tb)}});
  }
  json table = json::array();
  auto rows = instability_table(m, {1, 2, 3});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    table.push_back({{"n", rows[i].n}, {"quotient", rows[i].quotient}, {"mixed_norm", rows[i].mixed},
                     {"ratio", rows[i].ratio}});
    if (i && !(rows[i].ratio > rows[i - 1].ratio)) ok = false;
  }
  return {{"pairs", cases}, {"instability", table}, {"C", *opt.C}};
}

json suite_error_bounds(const Context &c, bool &ok) {
  const json &g = c.section("error_bounds");
  int configs = get_or(g, "configs", 5);
  std::mt19937_64 rng(c.base_seed());
  std::uniform_real_distribution<double> u(0, 1);
  json cases = json::array();
  ok = true;
  for (int i = 0; i < configs; ++i) {
    double beta = 0.6 + 0.4 * u(rng), sigma = beta / 4 + beta / 4 * u(rng);
    GaussianModel m(sigma, beta);
    auto f = synthesize_siv(m, rng(), 5);
    double s = 1.0, r = 2 * sigma;
    long mm = 1 + static_cast<long>(4 * u(rng));
    long N = static_cast<long>(std::ceil(2 / beta * (s + r / 2))) + mm;
    double h = 0.15 + 0.3 * u(rng);
    long H = 3 + static_cast<long>(10 * u(rng));
    auto S = sample_spectrogram(f, Grid(beta, h, N, H), NoiseSpec::gaussian(1e-4, rng()));
    SampleSource src(S);
    auto dc = decay_constants(m);
    double p = -s + 2 * s * u(rng), w = r * u(rng);
    ErrorBoundInputs in{mm, h, H, S.noise_inf_norm_actual, w, dc.K, dc.nu, f.c_inf()};
    double lhs = error_term(f, src, p, w);
    auto rhs = error_bound_rhs(in, m);
    ok = ok && lhs <= rhs.total;
    cases.push_back(check_json(lhs, rhs.total, {{"sigma", sigma}, {"beta", beta}, {"h", h}, {"H", H},
                                                {"m", mm}, {"p", p}, {"omega", w}}));
  }
  return {{"cases", cases}};
}

int cmd_verify(const Context &c) {
  if (c.suite.empty()) throw ConfigError("verify needs --suite (stability, error-bounds, growth, special-functions)");
  bool ok = false;
  json body;
  if (c.suite == "special-functions") body = suite_special(c, ok);
  else if (c.suite == "growth") body = suite_growth(c, ok);
  else if (c.suite == "stability") body = suite_stability(c, ok);
  else if (c.suite == "error-bounds") body = suite_error_bounds(c, ok);
  else throw ConfigError("unknown suite '" + c.suite + "'");
  json rep = {{"suite", c.suite}, {"holds", ok}, {"report", body}};
  write_json(c.path("verify_" + c.suite + ".json"), rep);
  print_json(rep);
  return ok ? 0 : kSuiteFailed;
}

json error_json(const std::string &type, const std::string &what) {
  return {{"status", "error"}, {"type", type}, {"message", what}};
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Phase retrieval from Gabor spectrogram samples in Gaussian shift-invariant spaces"};
  app.require_subcommand(1);
  std::string config_path, out_dir, oracle = "none", suite;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "experiment config (JSON)");
  app.add_option("--seed", seed, "base seed, overrides the config");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--oracle", oracle, "local estimates: exact-tensor or none")
      ->check(CLI::IsMember({"exact-tensor", "none"}));
  app.add_option("--suite", suite, "verify suite");
  auto *syn = app.add_subcommand("synthesize", "write a signal fixture");
  auto *smp = app.add_subcommand("sample", "write a spectrogram sample matrix");
  auto *rec = app.add_subcommand("reconstruct", "reconstruct from samples");
  auto *ver = app.add_subcommand("verify", "run a named check suite");
  auto *pln = app.add_subcommand("plan", "print the grid plan");
  for (auto *sc : {syn, smp, rec, ver, pln}) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  Context c;
  fs::path out = out_dir;
  try {
    if (!config_path.empty()) {
      c.cfg = read_json(config_path);
      if (!c.cfg.is_object()) throw ConfigError("config must be a JSON object");
    }
    if (out_dir.empty()) out = get_or<std::string>(c.cfg, "out", ".");
    c.out = out;
    c.seed_flag = seed;
    c.oracle = oracle;
    c.suite = suite;
    if (syn->parsed()) return cmd_synthesize(c);
    if (smp->parsed()) return cmd_sample(c);
    if (rec->parsed()) return cmd_reconstruct(c);
    if (ver->parsed()) return cmd_verify(c);
    if (pln->parsed()) return cmd_plan(c);
  } catch (const IllDefined &e) {
    json j = error_json("ill_defined", e.what());
    j["index"] = e.index();
    try {
      write_json(c.path(get_or<std::string>(c.cfg, "result_out", "result.json")), j);
    } catch (const Error &) {
    }
    std::cerr << j.dump(2) << "\n";
    return e.exit_code();
  } catch (const Error &e) {
    std::cerr << error_json(e.exit_code() == 4 ? "io" : e.exit_code() == 2 ? "config" : "numeric", e.what()).dump(2)
              << "\n";
    return e.exit_code();
  } catch (const json::exception &e) {
    std::cerr << error_json("config", e.what()).dump(2) << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << error_json("internal", e.what()).dump(2) << "\n";
    return 1;
  }
  return 2;
}
