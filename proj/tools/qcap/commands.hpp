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

#pragma once

#include <cstdint>
#include <cstddef>
#include <iosfwd>
#include <string>

namespace qcap::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kViolation = 2 };

/// Fixed-point with 9 decimals, "." separator; negative zero prints as zero.
std::string format_fixed(double v);

struct CurveConfig {
  double p_start = 0.0;
  double p_end = 1.0;
  std::size_t steps = 11;
  std::size_t n = 1;
};

struct CoherentInfoConfig {
  double p = 0.0;
  std::size_t n = 1;
  std::string state = "maximally-mixed";
  std::string state_file;
  std::uint64_t seed = 1;
};

struct MaximizeConfig {
  double p = 0.0;
  std::size_t n = 1;
  std::size_t restarts = 20;
  std::uint64_t seed = 1;
};

struct TheoremConfig {
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::string scheme = "random";
};

struct LemmaConfig {
  std::string lemma;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  std::size_t dim = 4;
  double eps_max = 0.0;  // 0 selects the per-lemma default
  std::size_t components = 4;
};

int run_capacity_curve(const CurveConfig& cfg, std::ostream& out);
int run_coherent_info(const CoherentInfoConfig& cfg, std::ostream& out);
int run_maximize(const MaximizeConfig& cfg, std::ostream& out);
/// Rows go to `out`, the summary to `log`.
int run_theorem_demo(const TheoremConfig& cfg, std::ostream& out, std::ostream& log);
int run_lemma_check(const LemmaConfig& cfg, std::ostream& out);

}  // namespace qcap::cli
