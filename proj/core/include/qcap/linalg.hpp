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

// Dense complex linear algebra used throughout qcap: Hermitian
// eigendecomposition, Kronecker products, partial traces, norms, entropies
// and fidelities. Entropies are in bits.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qcap {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Raised whenever an input violates a documented invariant. The message
/// names the invariant and the measured deviation.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace tolerance {
inline constexpr double kHermitian = 1e-9;
inline constexpr double kTrace = 1e-9;
inline constexpr double kEigenvalueFloor = 1e-10;
inline constexpr double kProbabilitySum = 1e-9;
inline constexpr double kDegenerate = 1e-12;
}  // namespace tolerance

/// Eigenvalues sorted descending with matching orthonormal eigenvector
/// columns.
///
/// Eigenvalues closer than tolerance::kDegenerate are treated as tied and
/// ordered by the (real, imaginary) value of their eigenvector's first
/// component, largest first. Each eigenvector's phase is fixed so that its
/// first component with modulus above 1e-12 is real and positive.
struct Spectrum {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  std::span<const double> values() const {
    return {eigenvalues.data(), static_cast<std::size_t>(eigenvalues.size())};
  }
};

double max_hermitian_deviation(const ComplexMatrix& m);

/// Throws ValidationError if `m` is not square or deviates from its adjoint
/// by more than tolerance::kHermitian in any entry.
void require_hermitian(const ComplexMatrix& m, const std::string& what);

Spectrum eig_hermitian(const ComplexMatrix& m);

/// Kronecker product; entry (i*dim_b + j) pairs row i of `a` with row j of `b`.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b);

/// Partial trace over every factor not listed in `keep`. Factor 0 is the most
/// significant index. Kept factors appear in their original order. An empty
/// `keep` yields the 1x1 trace.
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// Reduced operator of |psi><psi| on the kept factors, computed without
/// forming the full projector.
ComplexMatrix reduced_from_pure(const ComplexVector& psi,
                                std::span<const std::size_t> dims,
                                std::span<const std::size_t> keep);

/// Tr|M|: sum of singular values (sum of |eigenvalues| for Hermitian input).
double trace_norm(const ComplexMatrix& m);

/// Validates `rho` as a density matrix (Hermitian, unit trace, eigenvalues
/// >= -1e-10) and returns its spectrum with small negatives clamped to zero.
Spectrum density_spectrum(const ComplexMatrix& rho);

double shannon_entropy(std::span<const double> probabilities);
double von_neumann_entropy(const ComplexMatrix& rho);
double binary_entropy(double x);

/// eta(x) = -x log2 x with eta(0) = 0.
double eta(double x);

/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2, clamped to [0, 1].
double uhlmann_fidelity(const ComplexMatrix& a, const ComplexMatrix& b);

/// Squared Bhattacharyya coefficient of two probability vectors.
double bw_overlap(std::span<const double> a, std::span<const double> b);

ComplexMatrix psd_sqrt(const ComplexMatrix& m);

/// Columns completing the orthonormal columns of `frame` to a basis of
/// C^rows. Returns a rows x (rows - cols) matrix.
ComplexMatrix orthonormal_complement(const ComplexMatrix& frame);

/// I_left (x) op (x) I_right.
ComplexMatrix embed_operator(const ComplexMatrix& op, std::size_t left,
                             std::size_t right);

double max_abs_entry(const ComplexMatrix& m);

}  // namespace qcap
