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
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qcap/linalg.hpp"

namespace qcap {

struct Factor {
  std::string label;
  std::size_t dim = 1;

  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Ordered list of labeled tensor factors. Factor 0 is the most significant
/// index of the flattened space. Labels are unique.
class TensorLayout {
 public:
  TensorLayout() = default;
  explicit TensorLayout(std::vector<Factor> factors);

  static TensorLayout single(std::string label, std::size_t dim);
  /// n qubit factors labeled q0, q1, ...
  static TensorLayout qubits(std::size_t n);

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  std::size_t total_dim() const;
  std::vector<std::size_t> dims() const;

  bool contains(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;
  /// Indices of `labels`, in the given order.
  std::vector<std::size_t> indices_of(const std::vector<std::string>& labels) const;
  std::vector<std::size_t> complement_of(std::size_t index) const;

  TensorLayout with_dim(std::size_t index, std::size_t dim) const;
  TensorLayout subset(std::span<const std::size_t> indices) const;
  /// Concatenates factor lists; labels must stay unique.
  TensorLayout concat(const TensorLayout& other) const;

  friend bool operator==(const TensorLayout&, const TensorLayout&) = default;

 private:
  std::vector<Factor> factors_;
};

class PureState;

/// Positive semidefinite, unit-trace Hermitian operator over a labeled
/// tensor layout. Construction validates; instances are immutable.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix matrix, TensorLayout layout);
  /// Single factor labeled "S".
  explicit DensityMatrix(ComplexMatrix matrix);

  static DensityMatrix maximally_mixed(TensorLayout layout);
  static DensityMatrix from_pure(const PureState& state);

  const ComplexMatrix& matrix() const { return matrix_; }
  const TensorLayout& layout() const { return layout_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  /// Partial trace onto the listed factors (kept in layout order).
  DensityMatrix reduced(const std::vector<std::string>& keep) const;
  Spectrum spectrum() const { return density_spectrum(matrix_); }
  double entropy() const { return von_neumann_entropy(matrix_); }
  /// Same operator, new labels/dimension split (total dimension must match).
  DensityMatrix relabeled(TensorLayout layout) const;

 private:
  ComplexMatrix matrix_;
  TensorLayout layout_;
};

/// Unit-norm vector over a labeled tensor layout.
class PureState {
 public:
  PureState(ComplexVector amplitudes, TensorLayout layout);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  const TensorLayout& layout() const { return layout_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }

  DensityMatrix reduced(const std::vector<std::string>& keep) const;
  /// <this|other>.
  Complex inner(const PureState& other) const;
  /// Amplitudes arranged as a (dim of `label`) x (dim of the rest) matrix,
  /// the remaining factors flattened in layout order.
  ComplexMatrix split(std::string_view label) const;
  /// Inverse of split() for a state laid out like this one.
  static PureState merge(const ComplexMatrix& amplitudes, std::string_view label,
                         const TensorLayout& layout);

 private:
  ComplexVector amplitudes_;
  TensorLayout layout_;
};

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);
PureState tensor_product(const PureState& a, const PureState& b);
PureState basis_state(TensorLayout layout, std::size_t index);

/// Canonical purification sum_a sqrt(lambda_a) |a>_ref |v_a>_sys with |a>_ref
/// the computational basis and (lambda_a, v_a) the spectrum of rho. The
/// reference factor comes first.
PureState purify(const DensityMatrix& rho, std::string reference_label = "R");

struct Lemma3Purification {
  PureState state;        // A (x) B (x) C, dim C = dim A + 1
  double lambda_max;      // largest eigenvalue of rho
  double overlap;         // <Psi| rho (x) |0><0| |Psi>
  double marginal_gap;    // || Tr_BC |Psi><Psi| - Tr_B rho ||_1
};

/// For bipartite rho on A (x) B, builds
///   Psi = sqrt(l) |phi_max>|0_C> + sqrt(1-l) sum_i sqrt(mu_i) |i_A>|0_B>|(i+1)_C>
/// where (mu_i, |i_A>) is the spectrum of Tr_B rho. The A-marginal of Psi
/// generally differs from Tr_B rho; `marginal_gap` measures by how much.
Lemma3Purification lemma3_purification(const DensityMatrix& rho,
                                       std::string c_label = "C");

/// Among all purifications of `reduced` living in `target`'s layout (with
/// `shared_label` the purified factor), the one with maximal overlap with
/// `target`; that overlap is the Uhlmann fidelity of `reduced` and the
/// target's marginal.
PureState uhlmann_purification(const DensityMatrix& reduced, const PureState& target,
                               std::string_view shared_label);

/// Isometry U on the complement of `shared_label` with (I (x) U)|psi1> = |psi2>.
/// Requires both reduced states on the shared factor to agree within
/// `tolerance` in trace norm. Square (unitary) when the complements have the
/// same dimension; the complement of psi2 may not be smaller than psi1's.
/// Global phase makes <psi2|(I (x) U)|psi1> real and nonnegative.
ComplexMatrix relate_purifications(const PureState& psi1, const PureState& psi2,
                                   std::string_view shared_label,
                                   double tolerance = 1e-8);

/// (1 - eps)|psi><psi| + (eps/n) sum_i |i><i| with {|i>} orthonormal and
/// orthogonal to psi.
DensityMatrix high_entropy_counterexample(const PureState& psi, double eps,
                                          std::size_t n);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  std::size_t uniform_index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  Complex complex_normal();
  std::uint64_t next_seed() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng);
/// Haar unitary via QR with phase correction.
ComplexMatrix random_unitary(std::size_t d, Rng& rng);
ComplexMatrix random_hermitian(std::size_t d, Rng& rng);
PureState random_pure_state(TensorLayout layout, Rng& rng);

/// G G^dagger / Tr(G G^dagger) with G a d x rank complex Gaussian matrix.
DensityMatrix random_density(std::size_t d, std::size_t rank, std::uint64_t seed);
DensityMatrix random_density(TensorLayout layout, std::size_t rank, Rng& rng);

}  // namespace qcap
