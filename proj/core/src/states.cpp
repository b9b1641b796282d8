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

#include "qcap/states.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace qcap {
namespace {

// Flat offsets for one factor and for the remaining factors (row-major).
struct SplitOffsets {
  std::vector<std::size_t> factor;
  std::vector<std::size_t> rest;
};

SplitOffsets split_offsets(const std::vector<std::size_t>& dims, std::size_t f) {
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) stride[i - 1] = stride[i] * dims[i];
  SplitOffsets out{{}, {0}};
  for (std::size_t x = 0; x < dims[f]; ++x) out.factor.push_back(x * stride[f]);
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i == f) continue;
    std::vector<std::size_t> next;
    next.reserve(out.rest.size() * dims[i]);
    for (std::size_t base : out.rest) {
      for (std::size_t x = 0; x < dims[i]; ++x) next.push_back(base + x * stride[i]);
    }
    out.rest = std::move(next);
  }
  return out;
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// TensorLayout

TensorLayout::TensorLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::set<std::string> seen;
  for (const auto& f : factors_) {
    if (f.dim == 0) throw ValidationError("layout: factor '" + f.label + "' has dimension 0");
    if (!seen.insert(f.label).second) {
      throw ValidationError("layout: duplicate factor label '" + f.label + "'");
    }
  }
}

TensorLayout TensorLayout::single(std::string label, std::size_t dim) {
  return TensorLayout({Factor{std::move(label), dim}});
}

TensorLayout TensorLayout::qubits(std::size_t n) {
  std::vector<Factor> f;
  for (std::size_t i = 0; i < n; ++i) f.push_back({"q" + std::to_string(i), 2});
  return TensorLayout(std::move(f));
}

std::size_t TensorLayout::total_dim() const {
  std::size_t d = 1;
  for (const auto& f : factors_) d *= f.dim;
  return d;
}

std::vector<std::size_t> TensorLayout::dims() const {
  std::vector<std::size_t> d;
  d.reserve(factors_.size());
  for (const auto& f : factors_) d.push_back(f.dim);
  return d;
}

bool TensorLayout::contains(std::string_view label) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [&](const Factor& f) { return f.label == label; });
}

std::size_t TensorLayout::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].label == label) return i;
  }
  throw ValidationError("layout: no factor labeled '" + std::string(label) + "'");
}

std::vector<std::size_t> TensorLayout::indices_of(const std::vector<std::string>& labels) const {
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(index_of(l));
  return out;
}

std::vector<std::size_t> TensorLayout::complement_of(std::size_t index) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i != index) out.push_back(i);
  }
  return out;
}

TensorLayout TensorLayout::with_dim(std::size_t index, std::size_t dim) const {
  auto f = factors_;
  f.at(index).dim = dim;
  return TensorLayout(std::move(f));
}

TensorLayout TensorLayout::subset(std::span<const std::size_t> indices) const {
  std::vector<std::size_t> sorted(indices.begin(), indices.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Factor> f;
  for (std::size_t i : sorted) f.push_back(factors_.at(i));
  return TensorLayout(std::move(f));
}

TensorLayout TensorLayout::concat(const TensorLayout& other) const {
  auto f = factors_;
  f.insert(f.end(), other.factors_.begin(), other.factors_.end());
  return TensorLayout(std::move(f));
}

// ---------------------------------------------------------------------------
// DensityMatrix / PureState

DensityMatrix::DensityMatrix(ComplexMatrix matrix, TensorLayout layout)
    : matrix_(std::move(matrix)), layout_(std::move(layout)) {
  if (static_cast<std::size_t>(matrix_.rows()) != layout_.total_dim() ||
      matrix_.rows() != matrix_.cols()) {
    throw ValidationError("density matrix: operator is " + std::to_string(matrix_.rows()) +
                          "x" + std::to_string(matrix_.cols()) + " but layout has dimension " +
                          std::to_string(layout_.total_dim()));
  }
  density_spectrum(matrix_);
  matrix_ = (0.5 * (matrix_ + matrix_.adjoint())).eval();
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix)
    : DensityMatrix(matrix, TensorLayout::single("S", static_cast<std::size_t>(matrix.rows()))) {}

DensityMatrix DensityMatrix::maximally_mixed(TensorLayout layout) {
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d),
                       std::move(layout));
}

DensityMatrix DensityMatrix::from_pure(const PureState& state) {
  return DensityMatrix(state.amplitudes() * state.amplitudes().adjoint(), state.layout());
}

DensityMatrix DensityMatrix::reduced(const std::vector<std::string>& keep) const {
  auto idx = layout_.indices_of(keep);
  std::sort(idx.begin(), idx.end());
  const auto dims = layout_.dims();
  return DensityMatrix(partial_trace(matrix_, dims, idx), layout_.subset(idx));
}

DensityMatrix DensityMatrix::relabeled(TensorLayout layout) const {
  return DensityMatrix(matrix_, std::move(layout));
}

PureState::PureState(ComplexVector amplitudes, TensorLayout layout)
    : amplitudes_(std::move(amplitudes)), layout_(std::move(layout)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != layout_.total_dim()) {
    throw ValidationError("pure state: " + std::to_string(amplitudes_.size()) +
                          " amplitudes but layout has dimension " +
                          std::to_string(layout_.total_dim()));
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > 1e-9) {
    throw ValidationError("pure state: norm is " + sci(norm) + ", expected 1 within 1e-9");
  }
}

DensityMatrix PureState::reduced(const std::vector<std::string>& keep) const {
  auto idx = layout_.indices_of(keep);
  std::sort(idx.begin(), idx.end());
  const auto dims = layout_.dims();
  return DensityMatrix(reduced_from_pure(amplitudes_, dims, idx), layout_.subset(idx));
}

Complex PureState::inner(const PureState& other) const {
  if (other.dim() != dim()) throw ValidationError("inner product: dimension mismatch");
  return amplitudes_.dot(other.amplitudes_);
}

ComplexMatrix PureState::split(std::string_view label) const {
  const std::size_t f = layout_.index_of(label);
  const auto off = split_offsets(layout_.dims(), f);
  ComplexMatrix m(static_cast<Eigen::Index>(off.factor.size()),
                  static_cast<Eigen::Index>(off.rest.size()));
  for (std::size_t i = 0; i < off.factor.size(); ++i) {
    for (std::size_t j = 0; j < off.rest.size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          amplitudes_(static_cast<Eigen::Index>(off.factor[i] + off.rest[j]));
    }
  }
  return m;
}

PureState PureState::merge(const ComplexMatrix& amplitudes, std::string_view label,
                           const TensorLayout& layout) {
  const std::size_t f = layout.index_of(label);
  const auto off = split_offsets(layout.dims(), f);
  if (static_cast<std::size_t>(amplitudes.rows()) != off.factor.size() ||
      static_cast<std::size_t>(amplitudes.cols()) != off.rest.size()) {
    throw ValidationError("merge: amplitude matrix shape does not match layout");
  }
  ComplexVector v(static_cast<Eigen::Index>(layout.total_dim()));
  for (std::size_t i = 0; i < off.factor.size(); ++i) {
    for (std::size_t j = 0; j < off.rest.size(); ++j) {
      v(static_cast<Eigen::Index>(off.factor[i] + off.rest[j])) =
          amplitudes(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return PureState(std::move(v), layout);
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(tensor_product(a.matrix(), b.matrix()), a.layout().concat(b.layout()));
}

PureState tensor_product(const PureState& a, const PureState& b) {
  return PureState(tensor_product(a.amplitudes(), b.amplitudes()), a.layout().concat(b.layout()));
}

PureState basis_state(TensorLayout layout, std::size_t index) {
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  if (static_cast<Eigen::Index>(index) >= d) throw ValidationError("basis_state: index out of range");
  ComplexVector v = ComplexVector::Zero(d);
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(std::move(v), std::move(layout));
}

// ---------------------------------------------------------------------------
// Purifications

PureState purify(const DensityMatrix& rho, std::string reference_label) {
  const Spectrum s = rho.spectrum();
  const auto d = static_cast<Eigen::Index>(rho.dim());
  ComplexVector amp = ComplexVector::Zero(d * d);
  for (Eigen::Index a = 0; a < d; ++a) {
    amp.segment(a * d, d) = std::sqrt(s.eigenvalues(a)) * s.eigenvectors.col(a);
  }
  amp /= amp.norm();
  auto layout = TensorLayout::single(std::move(reference_label), rho.dim()).concat(rho.layout());
  return PureState(std::move(amp), std::move(layout));
}

Lemma3Purification lemma3_purification(const DensityMatrix& rho, std::string c_label) {
  const auto& factors = rho.layout().factors();
  if (factors.size() != 2) {
    throw ValidationError("lemma3_purification: expected a bipartite state, got " +
                          std::to_string(factors.size()) + " factors");
  }
  const auto da = static_cast<Eigen::Index>(factors[0].dim);
  const auto db = static_cast<Eigen::Index>(factors[1].dim);
  const Eigen::Index dc = da + 1;

  const Spectrum s = rho.spectrum();
  const double lambda = s.eigenvalues(0);
  const ComplexVector phi_max = s.eigenvectors.col(0);

  const DensityMatrix rho_a = rho.reduced({factors[0].label});
  const Spectrum sa = rho_a.spectrum();

  ComplexVector amp = ComplexVector::Zero(da * db * dc);
  for (Eigen::Index ab = 0; ab < da * db; ++ab) {
    amp(ab * dc) += std::sqrt(lambda) * phi_max(ab);
  }
  const double tail = std::sqrt(std::max(0.0, 1.0 - lambda));
  for (Eigen::Index i = 0; i < da; ++i) {
    const double w = tail * std::sqrt(sa.eigenvalues(i));
    for (Eigen::Index a = 0; a < da; ++a) {
      amp((a * db + 0) * dc + (i + 1)) += w * sa.eigenvectors(a, i);
    }
  }
  amp /= amp.norm();

  auto layout = rho.layout().concat(
      TensorLayout::single(std::move(c_label), static_cast<std::size_t>(dc)));
  PureState psi(std::move(amp), std::move(layout));

  ComplexVector on_zero(da * db);
  for (Eigen::Index ab = 0; ab < da * db; ++ab) on_zero(ab) = psi.amplitudes()(ab * dc);
  const double overlap = (on_zero.adjoint() * rho.matrix() * on_zero)(0, 0).real();

  const DensityMatrix psi_a = psi.reduced({factors[0].label});
  const double gap = trace_norm(psi_a.matrix() - rho_a.matrix());

  return Lemma3Purification{std::move(psi), lambda, overlap, gap};
}

PureState uhlmann_purification(const DensityMatrix& reduced, const PureState& target,
                               std::string_view shared_label) {
  const ComplexMatrix t = target.split(shared_label);
  const Eigen::Index ds = t.rows();
  const Eigen::Index dk = t.cols();
  if (static_cast<Eigen::Index>(reduced.dim()) != ds) {
    throw ValidationError("uhlmann_purification: reduced state has dimension " +
                          std::to_string(reduced.dim()) + ", shared factor has " +
                          std::to_string(ds));
  }
  const Spectrum s = reduced.spectrum();
  ComplexMatrix canonical = ComplexMatrix::Zero(ds, dk);
  for (Eigen::Index a = 0; a < ds; ++a) {
    if (a >= dk) {
      if (s.eigenvalues(a) > 1e-12) {
        throw ValidationError("uhlmann_purification: complement too small for the rank");
      }
      continue;
    }
    canonical.col(a) = std::sqrt(s.eigenvalues(a)) * s.eigenvectors.col(a);
  }
  // max over unitaries W of |Tr(T^dagger C W)| is attained at W = V U^dagger
  // for the SVD T^dagger C = U S V^dagger.
  const ComplexMatrix x = t.adjoint() * canonical;
  Eigen::JacobiSVD<ComplexMatrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const ComplexMatrix rotation = svd.matrixV() * svd.matrixU().adjoint();
  ComplexMatrix best = canonical * rotation;
  best /= best.norm();
  return PureState::merge(best, shared_label, target.layout());
}

ComplexMatrix relate_purifications(const PureState& psi1, const PureState& psi2,
                                   std::string_view shared_label, double tolerance) {
  const ComplexMatrix m1 = psi1.split(shared_label);
  const ComplexMatrix m2 = psi2.split(shared_label);
  if (m1.rows() != m2.rows()) {
    throw ValidationError("relate_purifications: shared factor dimensions differ");
  }
  const Eigen::Index d1 = m1.cols();
  const Eigen::Index d2 = m2.cols();
  if (d2 < d1) {
    throw ValidationError("relate_purifications: target complement (" + std::to_string(d2) +
                          ") smaller than source complement (" + std::to_string(d1) + ")");
  }
  const ComplexMatrix rho1 = m1 * m1.adjoint();
  const ComplexMatrix rho2 = m2 * m2.adjoint();
  const double gap = trace_norm(rho1 - rho2);
  if (gap > tolerance) {
    throw ValidationError("relate_purifications: reduced states differ, trace-norm gap " +
                          sci(gap));
  }

  const Spectrum s = eig_hermitian(0.5 * (rho1 + rho1.adjoint()));
  std::vector<Eigen::Index> support;
  for (Eigen::Index a = 0; a < s.eigenvalues.size(); ++a) {
    if (s.eigenvalues(a) > 1e-12) support.push_back(a);
  }
  const auto r = static_cast<Eigen::Index>(support.size());
  ComplexMatrix f1(d1, r);
  ComplexMatrix f2(d2, r);
  for (Eigen::Index j = 0; j < r; ++j) {
    const ComplexVector basis = s.eigenvectors.col(support[static_cast<std::size_t>(j)]);
    const ComplexVector w1 = m1.transpose() * basis.conjugate();
    const ComplexVector w2 = m2.transpose() * basis.conjugate();
    f1.col(j) = w1 / w1.norm();
    f2.col(j) = w2.norm() > 0.0 ? ComplexVector(w2 / w2.norm()) : w2;
  }
  // Polar orthonormalization absorbs the residual non-orthogonality left by
  // the tolerance on the reduced states.
  auto orthonormalize = [](const ComplexMatrix& f) -> ComplexMatrix {
    if (f.cols() == 0) return f;
    Eigen::JacobiSVD<ComplexMatrix> svd(f, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.matrixU() * svd.matrixV().adjoint();
  };
  f1 = orthonormalize(f1);
  f2 = orthonormalize(f2);
  const ComplexMatrix c1 = orthonormal_complement(f1);
  const ComplexMatrix c2 = orthonormal_complement(f2);

  ComplexMatrix u = f2 * f1.adjoint();
  if (c1.cols() > 0) u += c2.leftCols(c1.cols()) * c1.adjoint();

  const Complex ov = (m2.conjugate().cwiseProduct(m1 * u.transpose())).sum();
  if (std::abs(ov) > 0.0) u *= std::conj(ov) / std::abs(ov);
  return u;
}

DensityMatrix high_entropy_counterexample(const PureState& psi, double eps, std::size_t n) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw ValidationError("high_entropy_counterexample: eps " + sci(eps) + " outside [0, 1]");
  }
  if (n == 0) throw ValidationError("high_entropy_counterexample: n must be >= 1");
  if (psi.dim() < n + 1) {
    throw ValidationError("high_entropy_counterexample: ambient dimension " +
                          std::to_string(psi.dim()) + " < n + 1 = " + std::to_string(n + 1));
  }
  const ComplexVector& v = psi.amplitudes();
  const ComplexMatrix others = orthonormal_complement(v);
  const auto nn = static_cast<Eigen::Index>(n);
  ComplexMatrix rho = (1.0 - eps) * (v * v.adjoint());
  rho += (eps / static_cast<double>(n)) * (others.leftCols(nn) * others.leftCols(nn).adjoint());
  return DensityMatrix(std::move(rho), psi.layout());
}

// ---------------------------------------------------------------------------
// Random instances

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) / std::sqrt(2.0);
}

ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = rng.complex_normal();
  }
  return g;
}

ComplexMatrix random_unitary(std::size_t d, Rng& rng) {
  const ComplexMatrix g = random_ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex diag = r(i, i);
    if (std::abs(diag) > 0.0) q.col(i) *= diag / std::abs(diag);
  }
  return q;
}

ComplexMatrix random_hermitian(std::size_t d, Rng& rng) {
  const ComplexMatrix g = random_ginibre(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

PureState random_pure_state(TensorLayout layout, Rng& rng) {
  ComplexVector v = random_ginibre(layout.total_dim(), 1, rng).col(0);
  v /= v.norm();
  return PureState(std::move(v), std::move(layout));
}

DensityMatrix random_density(TensorLayout layout, std::size_t rank, Rng& rng) {
  const std::size_t d = layout.total_dim();
  if (rank < 1 || rank > d) {
    throw ValidationError("random_density: rank " + std::to_string(rank) +
                          " outside [1, " + std::to_string(d) + "]");
  }
  const ComplexMatrix g = random_ginibre(d, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho), std::move(layout));
}

DensityMatrix random_density(std::size_t d, std::size_t rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(TensorLayout::single("S", d), rank, rng);
}

}  // namespace qcap
