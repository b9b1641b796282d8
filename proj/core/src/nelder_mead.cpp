// Copyright 2026 The qcap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcap::detail {
namespace {

using Point = std::vector<double>;

Point affine(const Point& a, const Point& b, double t) {
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
  return out;
}

}  // namespace

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x0, const SimplexOptions& options) {
  const std::size_t n = x0.size();
  const double dn = static_cast<double>(n);
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / dn;
  const double gamma = 0.75 - 1.0 / (2.0 * dn);
  const double delta = 1.0 - 1.0 / dn;

  SimplexResult result;
  result.x = std::move(x0);
  result.f = f(result.x);
  result.evaluations = 1;

  for (std::size_t round = 0; round <= options.max_inner_restarts; ++round) {
    std::vector<Point> pts(n + 1, result.x);
    std::vector<double> vals(n + 1, result.f);
    for (std::size_t i = 0; i < n; ++i) {
      const double step = options.initial_step * (std::abs(pts[i + 1][i]) > 1e-3
                                                      ? std::abs(pts[i + 1][i])
                                                      : 1.0);
      pts[i + 1][i] += step;
      vals[i + 1] = f(pts[i + 1]);
      ++result.evaluations;
    }
    std::vector<std::size_t> order(n + 1);
    const double start = result.f;

    while (result.iterations < options.max_iterations) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
      const std::size_t best = order.front();
      const std::size_t worst = order.back();
      const std::size_t second = order[n - 1];
      if (vals[worst] - vals[best] <= options.f_tolerance) break;
      ++result.iterations;

      Point centroid(n, 0.0);
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == worst) continue;
        for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / dn;
      }
      const Point xr = affine(centroid, pts[worst], -alpha);
      const double fr = f(xr);
      ++result.evaluations;
      if (fr < vals[best]) {
        const Point xe = affine(centroid, pts[worst], -alpha * beta);
        const double fe = f(xe);
        ++result.evaluations;
        if (fe < fr) {
          pts[worst] = xe;
          vals[worst] = fe;
        } else {
          pts[worst] = xr;
          vals[worst] = fr;
        }
        continue;
      }
      if (fr < vals[second]) {
        pts[worst] = xr;
        vals[worst] = fr;
        continue;
      }
      const bool outside = fr < vals[worst];
      const Point xc = outside ? affine(centroid, pts[worst], -alpha * gamma)
                               : affine(centroid, pts[worst], gamma);
      const double fc = f(xc);
      ++result.evaluations;
      if (fc < (outside ? fr : vals[worst])) {
        pts[worst] = xc;
        vals[worst] = fc;
        continue;
      }
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == best) continue;
        pts[i] = affine(pts[best], pts[i], delta);
        vals[i] = f(pts[i]);
        ++result.evaluations;
      }
    }

    const auto it = std::min_element(vals.begin(), vals.end());
    const auto idx = static_cast<std::size_t>(it - vals.begin());
    if (vals[idx] < result.f) {
      result.f = vals[idx];
      result.x = pts[idx];
    }
    if (start - result.f <= options.f_tolerance && round > 0) break;
    if (result.iterations >= options.max_iterations) break;
  }
  return result;
}

}  // namespace qcap::detail
