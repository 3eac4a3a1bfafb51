// gaborpr/quadrature.hpp

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

#ifndef GABORPR_QUADRATURE_HPP_
#define GABORPR_QUADRATURE_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gaborpr/errors.hpp"

namespace gaborpr {

template <typename K>
struct QuadResult {
  K value{};
  double error = 0.0;  // summed Kronrod-Gauss error estimate
  double l1 = 0.0;     // estimate of the integral of |f|
  int panels = 0;      // accepted leaf panels
};

struct QuadOptions {
  double abs_tol = 1e-12;
  /// Initial panel width; the interval is pre-split into panels of at
  /// most this width before adaptive refinement.
  double panel = std::numeric_limits<double>::infinity();
  int max_depth = 20;
  /// Throw NumericError when the estimate exceeds abs_tol.
  bool strict = true;
};

namespace detail {

template <typename F, typename K>
void gk_adapt(const F &f, double a, double b, double tol, int depth,
              QuadResult<K> &acc) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  double err = 0.0, l1 = 0.0;
  K v = Rule::integrate(f, a, b, 0, 0.0, &err, &l1);
  // The non-adaptive call reports the error on the reference interval.
  err *= 0.5 * (b - a);
  double floor_tol = 64.0 * std::numeric_limits<double>::epsilon() * l1;
  if (err <= std::max(tol, floor_tol) || depth <= 0 || !(b - a > 0.0)) {
    acc.value += v;
    acc.error += err;
    acc.l1 += l1;
    acc.panels += 1;
    return;
  }
  double m = 0.5 * (a + b);
  gk_adapt(f, a, m, 0.5 * tol, depth - 1, acc);
  gk_adapt(f, m, b, 0.5 * tol, depth - 1, acc);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (31 point) quadrature with an absolute tolerance.
/// Works for real and complex integrands.
template <typename F>
auto integrate(const F &f, double a, double b, const QuadOptions &opt = {})
    -> QuadResult<decltype(f(a))> {
  using K = decltype(f(a));
  QuadResult<K> acc;
  if (!(opt.abs_tol > 0.0)) throw ArgumentError("integrate: abs_tol must be > 0");
  if (!(b > a)) return acc;
  int n = 1;
  if (std::isfinite(opt.panel) && opt.panel > 0.0)
    n = std::max(1, static_cast<int>(std::ceil((b - a) / opt.panel)));
  double w = (b - a) / n;
  for (int i = 0; i < n; ++i) {
    double lo = a + i * w;
    double hi = (i + 1 == n) ? b : lo + w;
    detail::gk_adapt(f, lo, hi, opt.abs_tol / n, opt.max_depth, acc);
  }
  double floor_tol =
      256.0 * std::numeric_limits<double>::epsilon() * std::max(acc.l1, 1e-300);
  if (opt.strict && acc.error > std::max(opt.abs_tol, floor_tol)) {
    std::ostringstream os;
    os << "integrate: no convergence on [" << a << ", " << b
       << "], error estimate " << acc.error << " > tol " << opt.abs_tol
       << " after " << acc.panels << " panels";
    throw NumericError(os.str());
  }
  return acc;
}

/// Integrates over consecutive breakpoints, sharing the tolerance.
template <typename F>
auto integrate_pieces(const F &f, const std::vector<double> &breaks,
                      const QuadOptions &opt = {})
    -> QuadResult<decltype(f(0.0))> {
  using K = decltype(f(0.0));
  QuadResult<K> acc;
  if (breaks.size() < 2) return acc;
  QuadOptions sub = opt;
  sub.abs_tol = opt.abs_tol / static_cast<double>(breaks.size() - 1);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    auto r = integrate(f, breaks[i], breaks[i + 1], sub);
    acc.value += r.value;
    acc.error += r.error;
    acc.l1 += r.l1;
    acc.panels += r.panels;
  }
  return acc;
}

}  // namespace gaborpr

#endif  // GABORPR_QUADRATURE_HPP_
