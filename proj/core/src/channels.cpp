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

#include "qcap/channels.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace qcap {
namespace {

std::size_t product(const std::vector<std::size_t>& v) {
  return std::accumulate(v.begin(), v.end(), std::size_t{1}, std::multiplies<>());
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

void require_input_dim(const KrausChannel& ch, std::size_t d, const char* who) {
  if (ch.in_dim() != d) {
    throw ValidationError(std::string(who) + ": channel input dimension " +
                          std::to_string(ch.in_dim()) + " but state dimension " +
                          std::to_string(d));
  }
}

struct Embedding {
  std::size_t index;
  std::size_t left;
  std::size_t right;
};

Embedding locate(const TensorLayout& layout, std::string_view label, const KrausChannel& ch,
                 const char* who) {
  const std::size_t f = layout.index_of(label);
  const auto dims = layout.dims();
  if (dims[f] != ch.in_dim()) {
    throw ValidationError(std::string(who) + ": factor '" + std::string(label) +
                          "' has dimension " + std::to_string(dims[f]) +
                          " but channel input dimension is " + std::to_string(ch.in_dim()));
  }
  std::size_t left = 1;
  std::size_t right = 1;
  for (std::size_t i = 0; i < f; ++i) left *= dims[i];
  for (std::size_t i = f + 1; i < dims.size(); ++i) right *= dims[i];
  return {f, left, right};
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> ops)
    : KrausChannel(std::move(ops), {}, {}) {}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> ops, std::vector<std::size_t> in_factor_dims,
                           std::vector<std::size_t> out_factor_dims)
    : ops_(std::move(ops)),
      in_factors_(std::move(in_factor_dims)),
      out_factors_(std::move(out_factor_dims)) {
  if (ops_.empty()) throw ValidationError("channel: empty Kraus list");
  out_dim_ = static_cast<std::size_t>(ops_[0].rows());
  in_dim_ = static_cast<std::size_t>(ops_[0].cols());
  for (const auto& a : ops_) {
    if (static_cast<std::size_t>(a.rows()) != out_dim_ ||
        static_cast<std::size_t>(a.cols()) != in_dim_) {
      throw ValidationError("channel: Kraus operators have inconsistent shapes");
    }
  }
  if (in_factors_.empty()) in_factors_ = {in_dim_};
  if (out_factors_.empty()) out_factors_ = {out_dim_};
  if (product(in_factors_) != in_dim_ || product(out_factors_) != out_dim_) {
    throw ValidationError("channel: factor dimensions do not multiply to the operator shape");
  }
  const double err = completeness_error();
  if (err > 1e-9) {
    throw ValidationError("channel: completeness violated, max |sum A^dagger A - I| = " +
                          sci(err));
  }
}

KrausChannel KrausChannel::identity(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return KrausChannel({ComplexMatrix::Identity(n, n)});
}

KrausChannel KrausChannel::unitary(const ComplexMatrix& u) { return KrausChannel({u}); }

double KrausChannel::completeness_error() const {
  const auto n = static_cast<Eigen::Index>(in_dim_);
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& a : ops_) sum += a.adjoint() * a;
  return max_abs_entry(sum - ComplexMatrix::Identity(n, n));
}

KrausChannel erasure_channel(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError("erasure_channel: p = " + sci(p) + " outside [0, 1]");
  }
  ComplexMatrix a0 = ComplexMatrix::Zero(3, 2);
  a0(0, 0) = a0(1, 1) = std::sqrt(1.0 - p);
  ComplexMatrix a1 = ComplexMatrix::Zero(3, 2);
  a1(2, 0) = std::sqrt(p);
  ComplexMatrix a2 = ComplexMatrix::Zero(3, 2);
  a2(2, 1) = std::sqrt(p);
  return KrausChannel({a0, a1, a2});
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  require_input_dim(ch, rho.dim(), "apply");
  const auto d = static_cast<Eigen::Index>(ch.out_dim());
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (const auto& a : ch.kraus_ops()) out += a * rho.matrix() * a.adjoint();

  const auto& in = rho.layout();
  if (in.dims() == ch.in_factor_dims()) {
    std::vector<Factor> f = in.factors();
    for (std::size_t i = 0; i < f.size(); ++i) f[i].dim = ch.out_factor_dims()[i];
    if (f.size() == ch.out_factor_dims().size()) {
      return DensityMatrix(std::move(out), TensorLayout(std::move(f)));
    }
  }
  if (ch.in_dim() == ch.out_dim()) return DensityMatrix(std::move(out), in);
  return DensityMatrix(std::move(out), TensorLayout::single(in.factors()[0].label, ch.out_dim()));
}

DensityMatrix apply_to_subsystem(const KrausChannel& ch, const DensityMatrix& rho,
                                 std::string_view label) {
  const Embedding e = locate(rho.layout(), label, ch, "apply_to_subsystem");
  const auto d = static_cast<Eigen::Index>(e.left * ch.out_dim() * e.right);
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (const auto& a : ch.kraus_ops()) {
    const ComplexMatrix big = embed_operator(a, e.left, e.right);
    out += big * rho.matrix() * big.adjoint();
  }
  return DensityMatrix(std::move(out), rho.layout().with_dim(e.index, ch.out_dim()));
}

KrausChannel tensor_product(const KrausChannel& a, const KrausChannel& b) {
  if (a.size() * b.size() > kMaxKrausOperators) {
    throw ValidationError("tensor_product: " + std::to_string(a.size() * b.size()) +
                          " Kraus operators exceeds the limit of " +
                          std::to_string(kMaxKrausOperators));
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(a.size() * b.size());
  for (const auto& x : a.kraus_ops()) {
    for (const auto& y : b.kraus_ops()) ops.push_back(tensor_product(x, y));
  }
  auto in = a.in_factor_dims();
  in.insert(in.end(), b.in_factor_dims().begin(), b.in_factor_dims().end());
  auto out = a.out_factor_dims();
  out.insert(out.end(), b.out_factor_dims().begin(), b.out_factor_dims().end());
  return KrausChannel(std::move(ops), std::move(in), std::move(out));
}

KrausChannel tensor_power(const KrausChannel& ch, std::size_t n) {
  if (n == 0) throw ValidationError("tensor_power: N must be >= 1");
  double count = 1.0;
  for (std::size_t i = 0; i < n; ++i) count *= static_cast<double>(ch.size());
  if (count > static_cast<double>(kMaxKrausOperators)) {
    throw ValidationError("tensor_power: " + std::to_string(ch.size()) + "^" +
                          std::to_string(n) + " Kraus operators exceeds the limit of " +
                          std::to_string(kMaxKrausOperators));
  }
  KrausChannel out = ch;
  for (std::size_t i = 1; i < n; ++i) out = tensor_product(out, ch);
  return out;
}

KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner) {
  if (inner.out_dim() != outer.in_dim()) {
    throw ValidationError("compose: inner output dimension " + std::to_string(inner.out_dim()) +
                          " does not match outer input dimension " +
                          std::to_string(outer.in_dim()));
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(outer.size() * inner.size());
  for (const auto& b : outer.kraus_ops()) {
    for (const auto& a : inner.kraus_ops()) ops.push_back(b * a);
  }
  return KrausChannel(std::move(ops), inner.in_factor_dims(), outer.out_factor_dims());
}

DensityMatrix environment_state(const KrausChannel& ch, const DensityMatrix& rho) {
  require_input_dim(ch, rho.dim(), "environment_state");
  const auto r = static_cast<Eigen::Index>(ch.size());
  std::vector<ComplexMatrix> ar;
  ar.reserve(ch.size());
  for (const auto& a : ch.kraus_ops()) ar.push_back(a * rho.matrix());
  ComplexMatrix w(r, r);
  for (Eigen::Index k = 0; k < r; ++k) {
    for (Eigen::Index l = 0; l < r; ++l) {
      // Tr(A_k rho A_l^dagger) = sum_ij (A_k rho)_ij conj(A_l)_ij
      w(k, l) = (ar[static_cast<std::size_t>(k)].cwiseProduct(
                     ch.kraus_ops()[static_cast<std::size_t>(l)].conjugate()))
                    .sum();
    }
  }
  return DensityMatrix(std::move(w), TensorLayout::single("E", ch.size()));
}

std::vector<Branch> measure_environment_branches(const KrausChannel& ch, const PureState& input,
                                                 std::string_view label) {
  const Embedding e = locate(input.layout(), label, ch, "measure_environment_branches");
  const TensorLayout out_layout = input.layout().with_dim(e.index, ch.out_dim());
  std::vector<Branch> branches;
  for (std::size_t k = 0; k < ch.size(); ++k) {
    ComplexVector v = embed_operator(ch.kraus_ops()[k], e.left, e.right) * input.amplitudes();
    const double prob = v.squaredNorm();
    if (prob <= 1e-15) continue;
    v /= std::sqrt(prob);
    branches.push_back(Branch{k, prob, PureState(std::move(v), out_layout)});
  }
  return branches;
}

}  // namespace qcap
