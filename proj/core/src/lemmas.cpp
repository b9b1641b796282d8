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

#include "qcap/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "qcap/linalg.hpp"
#include "qcap/states.hpp"

namespace qcap {
namespace {

constexpr double kViolationTolerance = 1e-9;

std::string fixed(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

class SlackAccumulator {
 public:
  explicit SlackAccumulator(LemmaTrialReport& report) : report_(report) {}

  void add(double slack) {
    ++report_.trials;
    if (slack < -kViolationTolerance) ++report_.violations;
    max_ = std::max(max_, slack);
    min_ = std::min(min_, slack);
  }

  ~SlackAccumulator() {
    report_.max_slack = report_.trials > 0 ? max_ : 0.0;
    report_.min_slack = report_.trials > 0 ? min_ : 0.0;
  }

 private:
  LemmaTrialReport& report_;
  double max_ = -std::numeric_limits<double>::infinity();
  double min_ = std::numeric_limits<double>::infinity();
};

ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& m) {
  return u * m * u.adjoint();
}

ComplexMatrix small_unitary(std::size_t d, double theta, Rng& rng) {
  const Spectrum s = eig_hermitian(random_hermitian(d, rng));
  ComplexVector phases(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, theta * s.eigenvalues(i)));
  }
  return s.eigenvectors * phases.asDiagonal() * s.eigenvectors.adjoint();
}

// Bipartite pure state on C^d (x) C^d with Schmidt rank at most `rank`.
ComplexVector random_bipartite(std::size_t d, std::size_t rank, Rng& rng) {
  const ComplexMatrix g = random_ginibre(d, rank, rng) * random_ginibre(rank, d, rng);
  ComplexVector v(static_cast<Eigen::Index>(d * d));
  for (Eigen::Index a = 0; a < static_cast<Eigen::Index>(d); ++a) {
    for (Eigen::Index b = 0; b < static_cast<Eigen::Index>(d); ++b) {
      v(a * static_cast<Eigen::Index>(d) + b) = g(a, b);
    }
  }
  return v / v.norm();
}

// Rotates `psi` in a random 2-plane so that |<psi|out>|^2 = 1 - eps exactly.
ComplexVector rotate_to_overlap(const ComplexVector& psi, double eps, Rng& rng) {
  ComplexVector chi = random_ginibre(static_cast<std::size_t>(psi.size()), 1, rng).col(0);
  chi -= psi * psi.dot(chi);
  chi /= chi.norm();
  const double phase = rng.uniform(0.0, 2.0 * M_PI);
  return std::sqrt(1.0 - eps) * psi + std::sqrt(eps) * std::exp(Complex(0.0, phase)) * chi;
}

double entropy_of(const ComplexVector& psi, std::size_t d, std::size_t keep) {
  const std::vector<std::size_t> dims{d, d};
  const std::vector<std::size_t> k{keep};
  return von_neumann_entropy(reduced_from_pure(psi, dims, k));
}

double entropy_of(const ComplexMatrix& rho, std::size_t d, std::size_t keep) {
  const std::vector<std::size_t> dims{d, d};
  const std::vector<std::size_t> k{keep};
  return von_neumann_entropy(partial_trace(rho, dims, k));
}

}  // namespace

double fannes_bound(double t, std::size_t d) {
  return t * std::log2(static_cast<double>(d)) + eta(t);
}

double fannes_weak_bound(double t, std::size_t d) {
  return t * std::log2(static_cast<double>(d)) + 1.0;
}

double lemma1_bound(double eps, std::size_t d) {
  return 2.0 * std::sqrt(eps) * std::log2(static_cast<double>(d)) + 1.0;
}

double lemma2_part1_bound(double eps, std::size_t d) {
  return 2.0 * std::sqrt(2.0 * eps) * std::log2(static_cast<double>(d)) + 2.0;
}

double lemma2_part3_bound(double eps, std::size_t da, std::size_t db) {
  return 4.0 * std::sqrt(2.0 * eps) * std::log2(static_cast<double>(std::max(da, db))) + 4.0;
}

LemmaTrialReport verify_fannes(std::size_t trials, std::size_t d, std::uint64_t seed) {
  if (d < 2) throw ValidationError("verify_fannes: d must be >= 2");
  LemmaTrialReport report;
  report.lemma = "fannes";
  report.dim = d;
  {
    SlackAccumulator acc(report);
    Rng master(seed);
    const std::size_t max_attempts = 100 * trials + 100;
    for (std::size_t attempt = 0; attempt < max_attempts && report.trials < trials; ++attempt) {
      Rng rng(master.next_seed());
      const DensityMatrix r1 = random_density(TensorLayout::single("S", d),
                                              1 + rng.uniform_index(d), rng);
      ComplexMatrix m2 = r1.matrix();
      const std::size_t mode = rng.uniform_index(3);
      if (mode != 1) {
        const double t = rng.uniform(0.0, 0.2);
        const DensityMatrix sigma = random_density(TensorLayout::single("S", d),
                                                   1 + rng.uniform_index(d), rng);
        m2 = (1.0 - t) * m2 + t * sigma.matrix();
      }
      if (mode != 0) m2 = conjugate_by(small_unitary(d, rng.uniform(0.0, 0.2), rng), m2);
      const DensityMatrix r2(0.5 * (m2 + m2.adjoint()));
      const double dist = trace_norm(r1.matrix() - r2.matrix());
      if (dist >= 1.0 / 3.0) {
        ++report.rejected;
        continue;
      }
      const double diff = std::abs(r1.entropy() - r2.entropy());
      acc.add(std::min(fannes_bound(dist, d) - diff, fannes_weak_bound(dist, d) - diff));
    }
  }
  return report;
}

LemmaTrialReport verify_lemma1(std::size_t trials, std::size_t d, double eps_max,
                               std::uint64_t seed) {
  if (!(eps_max > 0.0 && eps_max < 1.0 / 36.0)) {
    throw ValidationError("verify_lemma1: eps_max = " + fixed(eps_max) +
                          " must lie in (0, 1/36)");
  }
  if (d < 2) throw ValidationError("verify_lemma1: d must be >= 2");
  LemmaTrialReport report;
  report.lemma = "lemma1";
  report.dim = d;
  report.eps_max = eps_max;
  {
    SlackAccumulator acc(report);
    Rng master(seed);
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng(master.next_seed());
      const ComplexVector psi = random_bipartite(d, 1 + rng.uniform_index(d), rng);
      const double eps = rng.uniform(0.0, eps_max);
      const ComplexVector phi = rotate_to_overlap(psi, eps, rng);
      // Tr_A leaves factor B (index 1), of dimension d.
      const double diff = std::abs(entropy_of(psi, d, 1) - entropy_of(phi, d, 1));
      acc.add(lemma1_bound(eps, d) - diff);
    }
  }
  return report;
}

LemmaTrialReport verify_lemma2(std::size_t trials, std::size_t d, double eps_max,
                               std::uint64_t seed) {
  if (!(eps_max > 0.0 && eps_max < 1.0 / 72.0)) {
    throw ValidationError("verify_lemma2: eps_max = " + fixed(eps_max) +
                          " must lie in (0, 1/72)");
  }
  if (d < 2) throw ValidationError("verify_lemma2: d must be >= 2");
  LemmaTrialReport report;
  report.lemma = "lemma2";
  report.dim = d;
  report.eps_max = eps_max;
  {
    SlackAccumulator acc(report);
    Rng master(seed);
    const std::size_t dd = d * d;
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng(master.next_seed());
      const ComplexVector phi = random_bipartite(d, 1 + rng.uniform_index(d), rng);
      // rho = (1 - w) |phi'><phi'| + w sigma with |<phi|phi'>|^2 = 1 - a and
      // a + w below the target, so <phi|rho|phi> >= 1 - target.
      const double target = rng.uniform(0.0, eps_max);
      const double a = rng.uniform(0.0, target);
      const double w = target - a;
      const ComplexVector phi_rot = rotate_to_overlap(phi, a, rng);
      const DensityMatrix sigma = random_density(TensorLayout::single("S", dd),
                                                 1 + rng.uniform_index(dd), rng);
      const ComplexMatrix rho =
          (1.0 - w) * (phi_rot * phi_rot.adjoint()) + w * sigma.matrix();
      const double fid = (phi.adjoint() * rho * phi)(0, 0).real();
      const double eps = std::max(0.0, 1.0 - fid);

      const double s_phi_b = entropy_of(phi, d, 1);
      const double s_phi_a = entropy_of(phi, d, 0);
      const double s_rho_b = entropy_of(rho, d, 1);
      const double s_rho_a = entropy_of(rho, d, 0);
      double slack = lemma2_part1_bound(eps, d) - std::abs(s_phi_b - s_rho_b);
      slack = std::min(slack, lemma2_part1_bound(eps, d) - std::abs(s_phi_a - s_rho_a));
      slack = std::min(slack, lemma2_part3_bound(eps, d, d) - std::abs(s_rho_a - s_rho_b));
      // Largest eigenvalue dominates every diagonal element in any basis.
      const double lambda_max = eig_hermitian(rho).eigenvalues(0);
      slack = std::min(slack, lambda_max - fid);
      acc.add(slack);
    }
  }
  return report;
}

LemmaTrialReport verify_mixing_bounds(std::size_t trials, std::uint64_t seed, std::size_t d,
                                      std::size_t max_components) {
  if (d < 1) throw ValidationError("verify_mixing_bounds: d must be >= 1");
  if (max_components < 1) {
    throw ValidationError("verify_mixing_bounds: max_components must be >= 1");
  }
  LemmaTrialReport report;
  report.lemma = "mixing";
  report.dim = d;
  {
    SlackAccumulator acc(report);
    Rng master(seed);
    const auto n = static_cast<Eigen::Index>(d);
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng(master.next_seed());
      const std::size_t m = 1 + rng.uniform_index(max_components);
      std::vector<double> lambda(m);
      double total = 0.0;
      for (double& l : lambda) {
        l = -std::log(1.0 - rng.uniform());
        total += l;
      }
      ComplexMatrix mix = ComplexMatrix::Zero(n, n);
      double avg = 0.0;
      double h = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        lambda[i] /= total;
        const DensityMatrix r = random_density(TensorLayout::single("S", d),
                                               1 + rng.uniform_index(d), rng);
        mix += lambda[i] * r.matrix();
        avg += lambda[i] * r.entropy();
        h += eta(lambda[i]);
      }
      const double s = von_neumann_entropy(0.5 * (mix + mix.adjoint()));
      acc.add(std::min(s - avg, avg + h - s));
    }
  }
  return report;
}

}  // namespace qcap
