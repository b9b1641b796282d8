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

// Randomized checks of entropy continuity and mixing inequalities. Slack is
// bound minus left-hand side; a trial's slack is the minimum over the
// inequalities it checks.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace qcap {

struct LemmaTrialReport {
  std::string lemma;
  std::size_t trials = 0;
  std::size_t violations = 0;
  /// Largest per-trial slack.
  double max_slack = 0.0;
  /// Smallest per-trial slack.
  double min_slack = 0.0;
  double eps_max = 0.0;
  std::size_t dim = 0;
  /// Candidate pairs discarded by a precondition filter.
  std::size_t rejected = 0;

  bool ok() const { return violations == 0; }
};

/// T log2 d + eta(T).
double fannes_bound(double trace_distance, std::size_t d);
/// T log2 d + 1.
double fannes_weak_bound(double trace_distance, std::size_t d);
/// 2 sqrt(eps) log2 d + 1.
double lemma1_bound(double eps, std::size_t d);
/// 2 sqrt(2 eps) log2 d + 2.
double lemma2_part1_bound(double eps, std::size_t d);
/// 4 sqrt(2 eps) log2 max(da, db) + 4.
double lemma2_part3_bound(double eps, std::size_t da, std::size_t db);

LemmaTrialReport verify_fannes(std::size_t trials, std::size_t d, std::uint64_t seed);
/// Pure pairs on C^d (x) C^d at overlap exactly 1 - eps, eps < eps_max < 1/36.
LemmaTrialReport verify_lemma1(std::size_t trials, std::size_t d, double eps_max,
                               std::uint64_t seed);
/// (phi, rho) on C^d (x) C^d with <phi|rho|phi> >= 1 - eps, eps < eps_max < 1/72.
LemmaTrialReport verify_lemma2(std::size_t trials, std::size_t d, double eps_max,
                               std::uint64_t seed);
LemmaTrialReport verify_mixing_bounds(std::size_t trials, std::uint64_t seed, std::size_t d = 4,
                                      std::size_t max_components = 4);

}  // namespace qcap
