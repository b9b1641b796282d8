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

#include <cstddef>
#include <string_view>
#include <vector>

#include "qcap/linalg.hpp"
#include "qcap/states.hpp"

namespace qcap {

/// Upper limit on the number of Kraus operators tensor_power will build.
inline constexpr std::size_t kMaxKrausOperators = 729;

/// Trace-preserving CP map in Kraus form. Every operator is out_dim x in_dim.
/// Optional factor dimension lists describe a tensor structure on either side
/// (used by apply() to keep output layouts readable).
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<ComplexMatrix> ops);
  KrausChannel(std::vector<ComplexMatrix> ops, std::vector<std::size_t> in_factor_dims,
               std::vector<std::size_t> out_factor_dims);

  static KrausChannel identity(std::size_t d);
  static KrausChannel unitary(const ComplexMatrix& u);

  const std::vector<ComplexMatrix>& kraus_ops() const { return ops_; }
  std::size_t in_dim() const { return in_dim_; }
  std::size_t out_dim() const { return out_dim_; }
  std::size_t size() const { return ops_.size(); }
  const std::vector<std::size_t>& in_factor_dims() const { return in_factors_; }
  const std::vector<std::size_t>& out_factor_dims() const { return out_factors_; }

  /// max |sum_k A_k^dagger A_k - I| over entries.
  double completeness_error() const;

 private:
  std::vector<ComplexMatrix> ops_;
  std::size_t in_dim_ = 0;
  std::size_t out_dim_ = 0;
  std::vector<std::size_t> in_factors_;
  std::vector<std::size_t> out_factors_;
};

/// Qubit erasure: levels 0 and 1 carry the retained qubit, level 2 is the
/// erasure flag.
KrausChannel erasure_channel(double p);

/// sum_k A_k rho A_k^dagger.
///
/// The output keeps rho's labels when rho's factor dims equal the channel's
/// input factor dims (per-factor dims replaced by the output ones), keeps the
/// layout unchanged when in_dim == out_dim, and otherwise is a single factor
/// carrying the first input label.
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

/// (I (x) ch (x) I) on the factor named `label`.
DensityMatrix apply_to_subsystem(const KrausChannel& ch, const DensityMatrix& rho,
                                 std::string_view label);

KrausChannel tensor_power(const KrausChannel& ch, std::size_t n);
KrausChannel tensor_product(const KrausChannel& a, const KrausChannel& b);
/// outer after inner: Kraus set {B_j A_k}.
KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner);

/// Environment output W_kl = Tr(A_k rho A_l^dagger) on a factor labeled "E".
DensityMatrix environment_state(const KrausChannel& ch, const DensityMatrix& rho);

struct Branch {
  std::size_t kraus_index = 0;
  double probability = 0.0;
  PureState state;
};

/// Measures the environment of `ch` (acting on factor `label` of `input`) in
/// the Kraus-index basis. Branches with probability <= 1e-15 are dropped.
std::vector<Branch> measure_environment_branches(const KrausChannel& ch, const PureState& input,
                                                 std::string_view label);

}  // namespace qcap
