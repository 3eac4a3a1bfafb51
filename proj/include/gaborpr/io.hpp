// gaborpr/io.hpp

// Copyright 2026 The gaborpr Authors
//
// See ../../LICENSE for clarification regarding multiple authors
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

#ifndef GABORPR_IO_HPP_
#define GABORPR_IO_HPP_

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gaborpr/errors.hpp"
#include "gaborpr/metrics.hpp"
#include "gaborpr/reconstruction.hpp"
#include "gaborpr/sampling.hpp"
#include "gaborpr/signal.hpp"

namespace gaborpr {

using json = nlohmann::json;

/// Shortest text that reads back to the same double.
inline std::string fmt_double(double v) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

inline std::string read_text(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + p.string());
  return ss.str();
}

/// Writes to a sibling temporary file and renames it over the target.
inline void atomic_write(const std::filesystem::path &p, const std::string &content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + p.parent_path().string());
  fs::path tmp = p;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      fs::remove(tmp, ec);
      throw IoError("write failed: " + tmp.string());
    }
  }
  fs::rename(tmp, p, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename onto " + p.string());
  }
}

inline json parse_json(const std::string &text, const std::string &what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    throw IoError(what + ": " + e.what());
  }
}

inline json read_json(const std::filesystem::path &p) { return parse_json(read_text(p), p.string()); }

inline void write_json(const std::filesystem::path &p, const json &j) { atomic_write(p, j.dump(2) + "\n"); }

// ---------------------------------------------------------------- fixtures

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const std::vector<cplx> &v) {
  json a = json::array();
  for (auto z : v) a.push_back(to_json(z));
  return a;
}

inline std::vector<cplx> complex_array(const json &a, const char *field) {
  if (!a.is_array()) throw IoError(std::string(field) + ": expected an array");
  std::vector<cplx> out;
  for (const auto &e : a) {
    if (e.is_number()) {
      out.emplace_back(e.get<double>(), 0.0);
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      out.emplace_back(e[0].get<double>(), e[1].get<double>());
    } else {
      throw IoError(std::string(field) + ": entries must be numbers or [re, im]");
    }
  }
  return out;
}

using Fixture = std::variant<SIVSignal, LinearSpline, SincSeries>;

inline json to_json(const SIVSignal &f) {
  return {{"kind", "siv"},
          {"sigma", f.model().sigma},
          {"beta", f.model().beta},
          {"n_min", f.n_min()},
          {"coeffs", to_json(f.coeffs())}};
}

inline json to_json(const LinearSpline &s) {
  return {{"kind", "spline"}, {"knots", s.knots}, {"values", to_json(s.values)}};
}

inline json to_json(const SincSeries &s) {
  return {{"kind", "sinc"},
          {"bandwidth", s.bandwidth},
          {"n_min", s.n_min},
          {"coeffs", to_json(s.coeffs)},
          {"decay_radius", s.decay_radius}};
}

inline json to_json(const Fixture &f) {
  return std::visit([](const auto &v) { return to_json(v); }, f);
}

template <typename T>
T field(const json &j, const char *name) {
  if (!j.contains(name)) throw IoError(std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception &e) {
    throw IoError(std::string("field '") + name + "': " + e.what());
  }
}

inline Fixture fixture_from_json(const json &j) {
  if (!j.is_object()) throw IoError("fixture: expected an object");
  std::string kind = j.value("kind", std::string("siv"));
  try {
    if (kind == "siv") {
      GaussianModel m(field<double>(j, "sigma"), field<double>(j, "beta"));
      return SIVSignal(m, field<long>(j, "n_min"), complex_array(j.at("coeffs"), "coeffs"));
    }
    if (kind == "spline") {
      LinearSpline s{field<std::vector<double>>(j, "knots"), complex_array(j.at("values"), "values")};
      if (s.knots.size() < 2 || s.knots.size() != s.values.size())
        throw IoError("spline: knots and values must have equal length >= 2");
      if (!std::is_sorted(s.knots.begin(), s.knots.end()))
        throw IoError("spline: knots must be sorted");
      return s;
    }
    if (kind == "sinc") {
      return SincSeries{field<double>(j, "bandwidth"), field<long>(j, "n_min"),
                        complex_array(j.at("coeffs"), "coeffs"), field<double>(j, "decay_radius")};
    }
  } catch (const ArgumentError &e) {
    throw IoError(std::string("fixture: ") + e.what());
  } catch (const json::exception &e) {
    throw IoError(std::string("fixture: ") + e.what());
  }
  throw IoError("fixture: unknown kind '" + kind + "'");
}

inline Fixture read_fixture(const std::filesystem::path &p) { return fixture_from_json(read_json(p)); }

inline void write_fixture(const std::filesystem::path &p, const Fixture &f) {
  write_json(p, to_json(f));
}

/// count coefficients c_n = rho e^{i theta}, rho uniform in [mag_lo, mag_hi],
/// theta uniform, starting at n_min = -(count / 2).
inline SIVSignal synthesize_siv(const GaussianModel &m, std::uint64_t seed, int count,
                                double mag_lo = 0.5, double mag_hi = 1.5) {
  if (count < 1) throw ArgumentError("synthesize_siv: count must be >= 1");
  if (!(mag_hi >= mag_lo) || !(mag_hi > 0.0)) throw ArgumentError("synthesize_siv: bad magnitude range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(mag_lo, mag_hi), ph(0.0, 2 * kPi);
  std::vector<cplx> c(static_cast<std::size_t>(count));
  for (auto &v : c) {
    double rho = mag(rng);
    v = std::polar(rho, ph(rng));
  }
  return SIVSignal(m, -count / 2, c);
}

/// Spline on [-radius, radius] with interior knots at random positions and
/// random complex values; zero at both ends, so continuous on R.
inline LinearSpline synthesize_spline(double radius, int interior, std::uint64_t seed) {
  if (!(radius > 0.0) || interior < 1) throw ArgumentError("synthesize_spline: bad arguments");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-radius, radius), val(-1.0, 1.0);
  std::vector<double> k(static_cast<std::size_t>(interior));
  for (auto &v : k) v = pos(rng);
  std::sort(k.begin(), k.end());
  LinearSpline s;
  s.knots.push_back(-radius);
  s.values.push_back(0.0);
  for (double t : k) {
    if (t <= s.knots.back()) continue;
    s.knots.push_back(t);
    double re = val(rng);
    s.values.emplace_back(re, val(rng));
  }
  s.knots.push_back(radius);
  s.values.push_back(0.0);
  return s;
}

// ----------------------------------------------------------- sample files

inline json to_json(const NoiseSpec &n) {
  switch (n.kind) {
    case NoiseSpec::Kind::None: return {{"kind", "none"}};
    case NoiseSpec::Kind::Gaussian: return {{"kind", "gaussian"}, {"sd", n.sd}, {"seed", n.seed}};
    case NoiseSpec::Kind::AdversarialRowsum:
      return {{"kind", "adversarial_rowsum"}, {"delta", n.delta}, {"seed", n.seed}};
  }
  return {};
}

inline NoiseSpec noise_from_json(const json &j) {
  std::string kind = j.value("kind", std::string("none"));
  if (kind == "none") return NoiseSpec::none();
  std::uint64_t seed = j.value("seed", std::uint64_t{0});
  if (kind == "gaussian") return NoiseSpec::gaussian(field<double>(j, "sd"), seed);
  if (kind == "adversarial_rowsum") return NoiseSpec::adversarial_rowsum(field<double>(j, "delta"), seed);
  throw ConfigError("noise: unknown kind '" + kind + "'");
}

/// Two header lines (names, values), then 2N+1 rows of 2H+1 samples.
inline std::string samples_to_csv(const SampleMatrix &S) {
  std::string out = "beta,h,N,H,sigma\n";
  out += fmt_double(S.grid.beta) + "," + fmt_double(S.grid.h) + "," + std::to_string(S.grid.N) + "," +
         std::to_string(S.grid.H) + "," + fmt_double(S.sigma) + "\n";
  const long cols = S.grid.cols();
  for (long i = 0; i < S.grid.rows(); ++i) {
    for (long k = 0; k < cols; ++k) {
      if (k) out += ',';
      out += fmt_double(S.values[static_cast<std::size_t>(i * cols + k)]);
    }
    out += '\n';
  }
  return out;
}

namespace detail {
inline std::vector<std::string> split_csv(const std::string &line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

inline double to_double(const std::string &s, const char *what) {
  // strtod accepts subnormal values that std::stod rejects as out of range.
  char *end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || std::isnan(v))
    throw IoError(std::string(what) + ": bad number '" + s + "'");
  return v;
}
}  // namespace detail

inline SampleMatrix samples_from_csv(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || detail::split_csv(line) != std::vector<std::string>{"beta", "h", "N", "H", "sigma"})
    throw IoError("samples: header must be 'beta,h,N,H,sigma'");
  if (!std::getline(in, line)) throw IoError("samples: missing parameter line");
  auto p = detail::split_csv(line);
  if (p.size() != 5) throw IoError("samples: parameter line needs 5 fields");
  double N = detail::to_double(p[2], "N"), H = detail::to_double(p[3], "H");
  if (N != std::floor(N) || H != std::floor(H)) throw IoError("samples: N and H must be integers");
  SampleMatrix S;
  try {
    S.grid = Grid(detail::to_double(p[0], "beta"), detail::to_double(p[1], "h"), static_cast<long>(N),
                  static_cast<long>(H));
  } catch (const ArgumentError &e) {
    throw IoError(std::string("samples: ") + e.what());
  }
  S.sigma = detail::to_double(p[4], "sigma");
  if (!(S.sigma > 0.0)) throw IoError("samples: sigma must be > 0");
  const auto rows = static_cast<std::size_t>(S.grid.rows()), cols = static_cast<std::size_t>(S.grid.cols());
  S.values.reserve(rows * cols);
  std::size_t r = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = detail::split_csv(line);
    if (cells.size() != cols) throw IoError("samples: row " + std::to_string(r) + " has wrong length");
    for (const auto &c : cells) S.values.push_back(detail::to_double(c, "sample"));
    ++r;
  }
  if (r != rows) throw IoError("samples: expected " + std::to_string(rows) + " rows, got " + std::to_string(r));
  return S;
}

inline std::filesystem::path sidecar_path(const std::filesystem::path &csv) {
  auto p = csv;
  p += ".json";
  return p;
}

/// Writes the CSV and a provenance sidecar (noise spec, realized noise norm, extras).
inline void write_samples(const std::filesystem::path &p, const SampleMatrix &S,
                          const NoiseSpec &noise = {}, const json &extra = json::object()) {
  atomic_write(p, samples_to_csv(S));
  json side = {{"grid", {{"beta", S.grid.beta}, {"h", S.grid.h}, {"N", S.grid.N}, {"H", S.grid.H}}},
               {"sigma", S.sigma},
               {"rows", S.grid.rows()},
               {"cols", S.grid.cols()},
               {"noise", to_json(noise)},
               {"noise_inf_norm_actual", S.noise_inf_norm_actual}};
  for (auto it = extra.begin(); it != extra.end(); ++it) side[it.key()] = it.value();
  write_json(sidecar_path(p), side);
}

/// Reads the CSV; the realized noise norm comes from the sidecar when present.
inline SampleMatrix read_samples(const std::filesystem::path &p) {
  auto S = samples_from_csv(read_text(p));
  auto side = sidecar_path(p);
  if (std::filesystem::exists(side)) {
    auto j = read_json(side);
    S.noise_inf_norm_actual = j.value("noise_inf_norm_actual", 0.0);
  }
  return S;
}

// ---------------------------------------------------------------- results

inline json to_json(const GridPlan &g) {
  return {{"variant", g.variant == GridPlan::Variant::KnownPartition ? "known_partition" : "detected_partition"},
          {"h", g.h},
          {"H", g.H},
          {"N", g.N},
          {"rows", 2 * g.N + 1},
          {"cols", 2 * g.H + 1},
          {"noise_budget", g.noise_budget},
          {"a", g.a},
          {"b", g.b},
          {"D", g.D},
          {"constants_source", g.constants_source},
          {"epsilon", g.epsilon},
          {"J_minus_1", g.J_minus_1},
          {"c_inf", g.c_inf},
          {"s", g.s},
          {"r", g.r},
          {"log_arg", g.log_arg},
          {"beta", g.beta},
          {"sigma", g.sigma},
          {"satisfied", g.satisfied()}};
}

inline json to_json(const Partition &p) {
  return {{"points", p.points}, {"gamma", p.gamma}, {"r", p.r}, {"J", p.J()}, {"max_gap", p.max_gap()}};
}

inline json to_json(const ReconstructionResult &R) {
  return {{"partition", to_json(R.partition)},
          {"c", R.c_consts},
          {"phases", to_json(R.phases)},
          {"source", R.source ? R.source->name() : std::string()},
          {"zero_outside", R.zero_outside}};
}

inline json to_json(const QuotientDistance &q) {
  return {{"value", q.value},
          {"tau_star", to_json(q.tau_star)},
          {"interval", {q.lo, q.hi}},
          {"grid_step", q.grid_step},
          {"lipschitz_slack", q.lipschitz_slack}};
}

/// Named check in report form.
inline json check_json(double lhs, double rhs, json params = json::object()) {
  return {{"lhs", lhs}, {"rhs", rhs}, {"margin", rhs - lhs}, {"holds", lhs <= rhs}, {"params", std::move(params)}};
}

inline json to_json(const LocalStabilityReport &r) {
  json iv = json::array();
  for (const auto &i : r.intervals)
    iv.push_back(check_json(i.lhs, i.rhs, {{"p", i.p}, {"c", i.c}, {"tau", to_json(i.tau)}}));
  return {{"modulus", check_json(r.modulus_lhs, r.B, {{"mixed_norm", r.mixed}, {"C", r.C}})},
          {"intervals", iv},
          {"params", {{"r", r.r}, {"grid_step", r.grid_step}}},
          {"holds", r.holds()}};
}

inline json to_json(const GlobalStabilityReport &r) {
  json params = {{"J", r.J},       {"r", r.r},          {"gamma", r.gamma},   {"f_sup", r.f_sup},
                 {"g_sup", r.g_sup}, {"mixed_norm", r.mixed}, {"C", r.C},  {"tau_star", to_json(r.lhs.tau_star)}};
  return {{"C2", check_json(r.lhs.value, r.rhs_C2, params)},
          {"C", check_json(r.lhs.value, r.rhs_C, params)},
          {"ratio_C2", r.ratio_C2()},
          {"ratio_C", r.ratio_C()},
          {"holds", r.holds()}};
}

/// Dense evaluation table; truth columns left empty when truth is null.
/// abs_err_after_phase uses tau_in when given, else the optimal global phase
/// over the table.
inline std::string dense_csv(const std::vector<double> &ts, const std::vector<cplx> &R,
                             const std::vector<cplx> *truth, cplx *tau_out = nullptr,
                             std::optional<cplx> tau_in = std::nullopt) {
  if (R.size() != ts.size() || (truth && truth->size() != ts.size()))
    throw ArgumentError("dense_csv: size mismatch");
  cplx tau = 1.0;
  if (tau_in) tau = *tau_in;
  else if (truth && !ts.empty()) tau = quotient_distance(*truth, R).tau_star;
  if (tau_out) *tau_out = tau;
  std::string out = "t,re_R,im_R,re_f,im_f,abs_err_after_phase\n";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    out += fmt_double(ts[i]) + "," + fmt_double(R[i].real()) + "," + fmt_double(R[i].imag()) + ",";
    if (truth) {
      cplx f = (*truth)[i];
      out += fmt_double(f.real()) + "," + fmt_double(f.imag()) + "," + fmt_double(std::abs(f - tau * R[i]));
    } else {
      out += ",,";
    }
    out += '\n';
  }
  return out;
}

}  // namespace gaborpr

#endif  // GABORPR_IO_HPP_
