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

// Erasure-channel block decomposition. A retained set of qubits is an N-bit
// mask with bit j set when qubit j survives; the number of erasures is
// k = N - popcount(mask).

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qcap/channels.hpp"
#include "qcap/states.hpp"

namespace qcap {

class ErasureDecomposition {
 public:
  /// Computes S(rho_i) for all 2^N retained sets of an N-qubit state.
  static ErasureDecomposition from_state(const DensityMatrix& rho, double p);

  std::size_t n() const { return n_; }
  double p() const { return p_; }
  std::uint32_t full_mask() const { return (std::uint32_t{1} << n_) - 1; }
  /// S(rho_i) indexed by retained mask.
  const std::vector<double>& subset_entropies() const { return entropies_; }
  double entropy(std::uint32_t mask) const { return entropies_.at(mask); }
  /// p^k (1-p)^(N-k) for the block with retained set `mask`.
  double block_weight(std::uint32_t mask) const;
  std::size_t erasures(std::uint32_t mask) const;

  double coherent_info() const;
  double output_entropy() const;
  double environment_entropy() const;

 private:
  ErasureDecomposition(std::size_t n, double p, std::vector<double> entropies);

  std::size_t n_;
  double p_;
  std::vector<double> entropies_;
};

double erasure_coherent_info_block(const DensityMatrix& rho, double p, std::size_t n);
double erasure_output_entropy_block(const DensityMatrix& rho, double p, std::size_t n);
double erasure_environment_entropy_block(const DensityMatrix& rho, double p, std::size_t n);

/// Environment block entropies read off the complementary output of
/// erasure^(x)N directly: entry `mask` is the entropy of the normalized
/// environment block in which exactly the qubits outside `mask` were erased.
std::vector<double> environment_block_entropies(const DensityMatrix& rho, double p,
                                                std::size_t n);

struct IplusSplit {
  double iplus = 0.0;
  double iminus = 0.0;
};

/// I+ collects k <= floor(N/2), I- the rest.
IplusSplit iplus_iminus_split(const ErasureDecomposition& decomp);

struct MatchedPairWitness {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  double lhs = 0.0;
  double bound = 0.0;
};

struct IplusBoundReport {
  double iplus = 0.0;
  double iminus = 0.0;
  double iplus_bound = 0.0;   // sum_{k<=N/2} C(N,k) p^k (1-p)^(N-k) (N-2k)
  double iminus_bound = 0.0;  // sum_{k>N/2} C(N,k) p^k (1-p)^(N-k) (N-k)
  double total_bound = 0.0;   // N(1-p) - sum_{k<=N/2} C(N,k) p^k (1-p)^(N-k) k
  double aggregate_slack = 0.0;
  std::size_t pairs_checked = 0;
  std::size_t pair_violations = 0;
  /// Smallest bound - lhs over all matched-pair inequalities.
  double min_pair_slack = 0.0;
  std::size_t iminus_violations = 0;
  /// Every retained set of size N-k appears 2 C(N-k,k) times on the left
  /// of the matched inequalities, and summing the inequalities for each k
  /// and dividing by that count recovers the k-th I+ term.
  bool multiplicity_consistent = true;
  /// Tightest matched pair seen; a violation when its bound - lhs < 0.
  std::optional<MatchedPairWitness> witness;

  bool ok() const {
    return pair_violations == 0 && iminus_violations == 0 && aggregate_slack >= -1e-9 &&
           multiplicity_consistent;
  }
};

IplusBoundReport verify_iplus_bound(const ErasureDecomposition& decomp);

double binomial_coefficient(std::size_t n, std::size_t k);
double binomial_pmf(std::size_t n, std::size_t k, double p);
/// sum_{k=0}^{kmax} C(N,k) p^k (1-p)^(N-k) k.
double binomial_partial_moment(std::size_t n, std::size_t kmax, double p);
/// Np.
double binomial_mean(std::size_t n, double p);
/// (1/N) sum_{k<=floor(N/2)} C(N,k) p^k (1-p)^(N-k) k.
double half_sum_fraction(std::size_t n, double p);

/// max{1 - 2p, 0}.
double erasure_capacity(double p);

struct CapacityPoint {
  double p = 0.0;
  std::size_t n = 1;
  double ic_per_use = 0.0;
  double capacity_bound = 0.0;
};

/// Per-use coherent information of the maximally mixed N-qubit source.
std::vector<CapacityPoint> capacity_curve(const std::vector<double>& p_grid, std::size_t n);

struct MaximizeResult {
  DensityMatrix best_state;
  double best_ic_per_use = 0.0;
  std::size_t restarts = 0;
  std::uint64_t seed = 0;
  std::size_t evaluations = 0;
};

/// Seeded multi-restart simplex search over rho = M M^dagger / Tr(M M^dagger).
MaximizeResult maximize_coherent_info(const KrausChannel& ch, std::size_t n,
                                      std::size_t restarts, std::uint64_t seed);

}  // namespace qcap
