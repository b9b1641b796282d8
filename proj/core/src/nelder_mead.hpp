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

// Adaptive Nelder-Mead simplex minimizer.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace qcap::detail {

struct SimplexOptions {
  std::size_t max_iterations = 1000;
  double f_tolerance = 1e-8;
  double initial_step = 0.5;
  /// Fresh simplices built around the incumbent after convergence.
  std::size_t max_inner_restarts = 3;
};

struct SimplexResult {
  std::vector<double> x;
  double f = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
};

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x0, const SimplexOptions& options);

}  // namespace qcap::detail
