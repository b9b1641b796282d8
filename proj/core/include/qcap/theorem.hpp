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

// Encoder elimination: given a coding scheme (rho, E, D) with high
// entanglement fidelity, build a source rho' on the channel input and an
// extra decoding stage T so that rho' sent without encoding and decoded by
// T o D still has high entanglement fidelity and nearly the entropy of rho.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qcap/channels.hpp"
#include "qcap/functionals.hpp"
#include "qcap/states.hpp"

namespace qcap {

/// Largest admissible input infidelity for eliminate_encoder.
inline constexpr double kTheoremMaxInfidelity = 1.0 / 72.0;
/// Marginal gap above which an instance is flagged.
inline constexpr double kMarginalGapTolerance = 1e-6;

struct TheoremInstance {
  CodingScheme scheme;
  double eps_in = 0.0;
  std::size_t branch_index = 0;
  double branch_fidelity = 0.0;
  std::size_t branch_count = 0;
  DensityMatrix rho_prime;
  KrausChannel recovery;
  double eps_out = 0.0;
  double entropy_gap = 0.0;
  double entropy_bound = 0.0;
  double lambda_max = 0.0;
  /// <Psi|(rho_out (x) |0><0|)|Psi> for the purification actually used.
  double lemma3_overlap = 0.0;
  double marginal_gap = 0.0;
  /// marginal_gap exceeded kMarginalGapTolerance.
  bool flagged = false;
  /// Flagged instance completed with the maximal-overlap purification of
  /// Tr_S rho_out instead of the literal lemma state.
  bool repaired = false;

  bool fidelity_holds(double slack = 1e-7) const { return eps_out <= 2.0 * eps_in + slack; }
  bool entropy_holds() const { return entropy_gap <= entropy_bound; }
};

/// Runs the construction. Throws ValidationError when the scheme's
/// infidelity exceeds 1/72 or its stages do not chain.
TheoremInstance eliminate_encoder(const CodingScheme& scheme, const KrausChannel& channel);

/// 2 sqrt(2 eps) log2(d) + 2.
double theorem_entropy_bound(double eps, std::size_t d);

struct RandomScheme {
  CodingScheme scheme;
  KrausChannel channel;
  std::string channel_name;
};

struct RandomSchemeOptions {
  std::size_t max_dim = 4;
  double min_fidelity = 0.99;
  std::size_t max_attempts = 1000;
};

/// Random small scheme (N = 1): a noisy encoder made of nearby isometries,
/// one of a few weak channels, and a decoder inverting the central isometry.
/// Rejection-sampled until the end-to-end fidelity reaches min_fidelity.
RandomScheme random_coding_scheme(Rng& rng, const RandomSchemeOptions& options = {});

struct TheoremSuiteReport {
  std::vector<TheoremInstance> instances;
  std::size_t flagged = 0;
  /// Non-flagged instances with eps_out > 2 eps_in + 1e-7.
  std::size_t fidelity_violations = 0;
  /// Instances (all) with entropy_gap > entropy_bound.
  std::size_t entropy_violations = 0;
  /// Repaired instances with eps_out > 2 eps_in + 1e-7.
  std::size_t repaired_fidelity_violations = 0;

  bool ok() const { return fidelity_violations == 0 && entropy_violations == 0; }
};

TheoremSuiteReport run_theorem_suite(std::size_t count, std::uint64_t seed,
                                     const RandomSchemeOptions& options = {});

}  // namespace qcap
