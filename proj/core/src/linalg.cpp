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

#include "qcap/linalg.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qcap {
namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

struct FactorOffsets {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> traced;
};

// Flat-index offsets contributed by the kept and the traced factors, each
// enumerated row-major in original factor order.
FactorOffsets factor_offsets(std::span<const std::size_t> dims,
                             std::span<const std::size_t> keep,
                             std::size_t total) {
  std::size_t product = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw ValidationError("partial_trace: factor dimension 0");
    product *= d;
  }
  if (product != total) {
    throw ValidationError("partial_trace: factor dimensions multiply to " +
                          std::to_string(product) + " but operator has " +
                          std::to_string(total));
  }
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size()) {
      throw ValidationError("partial_trace: factor index " + std::to_string(k) +
                            " out of range");
    }
    if (kept[k]) {
      throw ValidationError("partial_trace: factor index " + std::to_string(k) +
                            " repeated");
    }
    kept[k] = true;
  }

  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t f = dims.size(); f-- > 1;) stride[f - 1] = stride[f] * dims[f];

  FactorOffsets out{{0}, {0}};
  for (std::size_t f = 0; f < dims.size(); ++f) {
    auto& target = kept[f] ? out.kept : out.traced;
    std::vector<std::size_t> next;
    next.reserve(target.size() * dims[f]);
    for (std::size_t base : target) {
      for (std::size_t x = 0; x < dims[f]; ++x) next.push_back(base + x * stride[f]);
    }
    target = std::move(next);
  }
  return out;
}

}  // namespace

double max_abs_entry(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_hermitian_deviation(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return max_abs_entry(m - m.adjoint());
}

void require_hermitian(const ComplexMatrix& m, const std::string& what) {
  if (m.rows() != m.cols()) {
    throw ValidationError(what + ": matrix is " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + ", expected square");
  }
  const double dev = max_hermitian_deviation(m);
  if (dev > tolerance::kHermitian) {
    throw ValidationError(what + ": not Hermitian, max |M - M^dagger| = " +
                          fmt_double(dev));
  }
}

Spectrum eig_hermitian(const ComplexMatrix& m) {
  require_hermitian(m, "eig_hermitian");
  const Eigen::Index n = m.rows();
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_hermitian: eigensolver did not converge");
  }
  ComplexMatrix vecs = solver.eigenvectors();
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const double mag = std::abs(vecs(r, c));
      if (mag > 1e-12) {
        vecs.col(c) *= std::conj(vecs(r, c)) / mag;
        break;
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const RealVector& vals = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return vals(a) > vals(b); });
  // Tied runs: order by first component, (real, imag), descending.
  for (std::size_t start = 0; start < order.size();) {
    std::size_t end = start + 1;
    while (end < order.size() &&
           vals(order[end - 1]) - vals(order[end]) <= tolerance::kDegenerate) {
      ++end;
    }
    if (end - start > 1) {
      std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                       order.begin() + static_cast<std::ptrdiff_t>(end),
                       [&](Eigen::Index a, Eigen::Index b) {
                         const Complex x = vecs(0, a);
                         const Complex y = vecs(0, b);
                         if (x.real() != y.real()) return x.real() > y.real();
                         return x.imag() > y.imag();
                       });
    }
    start = end;
  }

  Spectrum out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues(i) = vals(order[static_cast<std::size_t>(i)]);
    out.eigenvectors.col(i) = vecs.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  if (m.rows() != m.cols()) {
    throw ValidationError("partial_trace: operator is not square");
  }
  const auto off = factor_offsets(dims, keep, static_cast<std::size_t>(m.rows()));
  const auto nk = static_cast<Eigen::Index>(off.kept.size());
  ComplexMatrix out = ComplexMatrix::Zero(nk, nk);
  for (Eigen::Index r = 0; r < nk; ++r) {
    for (Eigen::Index c = 0; c < nk; ++c) {
      Complex acc = 0.0;
      for (std::size_t t : off.traced) {
        acc += m(static_cast<Eigen::Index>(off.kept[r] + t),
                 static_cast<Eigen::Index>(off.kept[c] + t));
      }
      out(r, c) = acc;
    }
  }
  return out;
}

ComplexMatrix reduced_from_pure(const ComplexVector& psi,
                                std::span<const std::size_t> dims,
                                std::span<const std::size_t> keep) {
  const auto off = factor_offsets(dims, keep, static_cast<std::size_t>(psi.size()));
  const auto nk = static_cast<Eigen::Index>(off.kept.size());
  const auto nt = static_cast<Eigen::Index>(off.traced.size());
  ComplexMatrix amp(nk, nt);
  for (Eigen::Index r = 0; r < nk; ++r) {
    for (Eigen::Index t = 0; t < nt; ++t) {
      amp(r, t) = psi(static_cast<Eigen::Index>(off.kept[r] + off.traced[t]));
    }
  }
  return amp * amp.adjoint();
}

double trace_norm(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw ValidationError("trace_norm: matrix is not square");
  }
  if (m.size() == 0) return 0.0;
  if (max_hermitian_deviation(m) <= tolerance::kHermitian) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint()),
                                                        Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

Spectrum density_spectrum(const ComplexMatrix& rho) {
  require_hermitian(rho, "density matrix");
  const Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > tolerance::kTrace) {
    throw ValidationError("density matrix: trace is " + fmt_double(tr.real()) +
                          ", expected 1 within 1e-9");
  }
  Spectrum s = eig_hermitian(rho);
  const Eigen::Index n = s.eigenvalues.size();
  if (n > 0 && s.eigenvalues(n - 1) < -tolerance::kEigenvalueFloor) {
    throw ValidationError("density matrix: not positive semidefinite, min eigenvalue " +
                          fmt_double(s.eigenvalues(n - 1)));
  }
  // Eigenvalues at rounding level are zeroed so rank-deficient states keep
  // their exact rank in purifications and square roots.
  const double cut = 64.0 * std::numeric_limits<double>::epsilon();
  s.eigenvalues = s.eigenvalues.unaryExpr([cut](double x) { return x > cut ? x : 0.0; });
  return s;
}

double eta(double x) { return x <= 0.0 ? 0.0 : -x * std::log2(x); }

double shannon_entropy(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities) h += eta(p);
  return h;
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  const Spectrum s = density_spectrum(rho);
  return std::max(0.0, shannon_entropy(s.values()));
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw ValidationError("binary_entropy: argument " + fmt_double(x) +
                          " outside [0, 1]");
  }
  return eta(x) + eta(1.0 - x);
}

namespace {

// Square root that zeroes eigenvalues below the numerical rank threshold, so
// noise eigenvalues near machine precision do not contribute O(sqrt(eps)).
ComplexMatrix truncated_sqrt(const Spectrum& s) {
  const double top = s.eigenvalues.size() > 0 ? std::max(s.eigenvalues.maxCoeff(), 0.0) : 0.0;
  const double cut = 64.0 * std::numeric_limits<double>::epsilon() * std::max(top, 1.0);
  RealVector root = s.eigenvalues;
  for (Eigen::Index i = 0; i < root.size(); ++i) root(i) = root(i) > cut ? std::sqrt(root(i)) : 0.0;
  return s.eigenvectors * root.cast<Complex>().asDiagonal() * s.eigenvectors.adjoint();
}

}  // namespace

ComplexMatrix psd_sqrt(const ComplexMatrix& m) { return truncated_sqrt(eig_hermitian(m)); }

double uhlmann_fidelity(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("uhlmann_fidelity: dimension mismatch " +
                          std::to_string(a.rows()) + " vs " + std::to_string(b.rows()));
  }
  // Tr sqrt(sqrt(a) b sqrt(a)) is the trace norm of sqrt(b) sqrt(a).
  const ComplexMatrix prod = truncated_sqrt(density_spectrum(b)) * truncated_sqrt(density_spectrum(a));
  Eigen::JacobiSVD<ComplexMatrix> svd(prod);
  const double tr = svd.singularValues().sum();
  return std::clamp(tr * tr, 0.0, 1.0);
}

double bw_overlap(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ValidationError("bw_overlap: length mismatch");
  }
  auto check = [](std::span<const double> v, const char* name) {
    double sum = 0.0;
    for (double x : v) {
      if (x < 0.0) {
        throw ValidationError(std::string("bw_overlap: negative entry in ") + name);
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > tolerance::kProbabilitySum) {
      throw ValidationError(std::string("bw_overlap: ") + name + " sums to " +
                            fmt_double(sum));
    }
  };
  check(a, "first vector");
  check(b, "second vector");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::sqrt(a[i] * b[i]);
  return std::clamp(s * s, 0.0, 1.0);
}

ComplexMatrix orthonormal_complement(const ComplexMatrix& frame) {
  const Eigen::Index n = frame.rows();
  const Eigen::Index r = frame.cols();
  if (r > n) throw ValidationError("orthonormal_complement: more columns than rows");
  if (r == 0) return ComplexMatrix::Identity(n, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(frame);
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  return q.rightCols(n - r);
}

ComplexMatrix embed_operator(const ComplexMatrix& op, std::size_t left,
                             std::size_t right) {
  const auto l = static_cast<Eigen::Index>(left);
  const auto r = static_cast<Eigen::Index>(right);
  ComplexMatrix out = ComplexMatrix::Zero(l * op.rows() * r, l * op.cols() * r);
  for (Eigen::Index a = 0; a < l; ++a) {
    for (Eigen::Index i = 0; i < op.rows(); ++i) {
      for (Eigen::Index j = 0; j < op.cols(); ++j) {
        const Complex v = op(i, j);
        if (v == Complex{0.0, 0.0}) continue;
        for (Eigen::Index b = 0; b < r; ++b) {
          out((a * op.rows() + i) * r + b, (a * op.cols() + j) * r + b) = v;
        }
      }
    }
  }
  return out;
}

}  // namespace qcap
