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

#include <gtest/gtest.h>

#include <cmath>

#include "qcap/lemmas.hpp"
#include "qcap/linalg.hpp"
#include "qcap/states.hpp"

namespace qcap {
namespace {

double h(std::initializer_list<double> probs) {
  double s = 0.0;
  for (double x : probs) {
    if (x > 0.0) s -= x * std::log2(x);
  }
  return s;
}

TEST(Bounds, ClosedForms) {
  EXPECT_NEAR(fannes_bound(0.0, 4), 0.0, 1e-15);
  EXPECT_NEAR(fannes_bound(0.25, 4), 0.5 + 0.5, 1e-15);
  EXPECT_NEAR(fannes_weak_bound(0.25, 4), 1.5, 1e-15);
  EXPECT_NEAR(lemma1_bound(0.01, 4), 2.0 * 0.1 * 2.0 + 1.0, 1e-15);
  EXPECT_NEAR(lemma2_part1_bound(0.02, 8), 2.0 * 0.2 * 3.0 + 2.0, 1e-15);
  EXPECT_NEAR(lemma2_part3_bound(0.02, 2, 8), 4.0 * 0.2 * 3.0 + 4.0, 1e-15);
}

TEST(Fannes, EqualStatesTrivial) {
  // Both sides vanish for equal states; the weak form still leaves 1.
  EXPECT_EQ(fannes_bound(0.0, 4), 0.0);
  EXPECT_EQ(fannes_weak_bound(0.0, 4), 1.0);
}

TEST(Fannes, NearBoundaryPair) {
  // diag(1/2, 1/2, 0, 0) vs diag(0.335, 1/2, 0.165, 0): trace distance 0.33.
  const double t = 0.33;
  const DensityMatrix r1(ComplexMatrix(RealVector((RealVector(4) << 0.5, 0.5, 0.0, 0.0).finished())
                                           .cast<Complex>().asDiagonal()));
  const DensityMatrix r2(ComplexMatrix(RealVector((RealVector(4) << 0.335, 0.5, 0.165, 0.0).finished())
                                           .cast<Complex>().asDiagonal()));
  EXPECT_NEAR(trace_norm(r1.matrix() - r2.matrix()), t, 1e-12);
  const double diff = std::abs(r1.entropy() - r2.entropy());
  EXPECT_NEAR(diff, h({0.335, 0.5, 0.165}) - 1.0, 1e-12);
  EXPECT_GT(fannes_bound(t, 4) - diff, 0.0);
  EXPECT_GT(fannes_weak_bound(t, 4) - diff, 0.0);
}

TEST(Fannes, RandomSuite) {
  const LemmaTrialReport r = verify_fannes(10000, 4, 1);
  EXPECT_EQ(r.lemma, "fannes");
  EXPECT_EQ(r.trials, 10000u);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_GE(r.min_slack, 0.0);
  EXPECT_GE(r.max_slack, r.min_slack);
  EXPECT_TRUE(r.ok());
  EXPECT_THROW(verify_fannes(10, 1, 1), ValidationError);
}

TEST(Lemma1, PerturbedBellPair) {
  const double eps = 0.02;
  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  // phi = sqrt(1-eps) Bell + sqrt(eps) |01>: |<Bell|phi>|^2 = 1 - eps.
  ComplexVector phi = std::sqrt(1.0 - eps) * bell;
  phi(1) = std::sqrt(eps);
  const TensorLayout ab({{"A", 2}, {"B", 2}});
  const double s_bell = PureState(bell, ab).reduced({"B"}).entropy();
  const double s_phi = PureState(phi, ab).reduced({"B"}).entropy();
  EXPECT_NEAR(s_bell, 1.0, 1e-12);
  EXPECT_NEAR(std::norm(bell.dot(phi)), 1.0 - eps, 1e-15);
  EXPECT_GT(lemma1_bound(eps, 2) - std::abs(s_bell - s_phi), 0.0);
}

TEST(Lemma1, RandomSuite) {
  const LemmaTrialReport r = verify_lemma1(10000, 4, 1.0 / 40.0, 2);
  EXPECT_EQ(r.trials, 10000u);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_EQ(r.eps_max, 1.0 / 40.0);
  EXPECT_TRUE(r.ok());
}

TEST(Lemma1, PreconditionEnforced) {
  EXPECT_THROW(verify_lemma1(10, 4, 1.0 / 36.0, 1), ValidationError);
  EXPECT_THROW(verify_lemma1(10, 4, 0.0, 1), ValidationError);
}

TEST(Lemma2, PureStateTrivial) {
  // rho = |phi><phi| gives eps = 0, so every entropy difference is 0.
  EXPECT_EQ(lemma2_part1_bound(0.0, 4), 2.0);
  EXPECT_EQ(lemma2_part3_bound(0.0, 4, 4), 4.0);
}

TEST(Lemma2, LargestEigenvalueDominatesDiagonal) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const DensityMatrix rho = random_density(TensorLayout::single("S", 16), 1 + rng.uniform_index(16), rng);
    const ComplexVector v = random_pure_state(TensorLayout::single("S", 16), rng).amplitudes();
    const double diag = (v.adjoint() * rho.matrix() * v)(0, 0).real();
    EXPECT_GE(rho.spectrum().eigenvalues(0), diag - 1e-12);
  }
}

TEST(Lemma2, RandomSuite) {
  const LemmaTrialReport r = verify_lemma2(10000, 4, 1.0 / 80.0, 4);
  EXPECT_EQ(r.trials, 10000u);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_TRUE(r.ok());
  EXPECT_THROW(verify_lemma2(10, 4, 1.0 / 72.0, 1), ValidationError);
}

TEST(Mixing, SingleComponentIsEquality) {
  const LemmaTrialReport r = verify_mixing_bounds(200, 5, 4, 1);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_NEAR(r.max_slack, 0.0, 1e-9);
  EXPECT_NEAR(r.min_slack, 0.0, 1e-9);
}

TEST(Mixing, OrthogonalEqualMixtureIsTight) {
  for (std::size_t m = 1; m <= 4; ++m) {
    ComplexMatrix mix = ComplexMatrix::Zero(4, 4);
    double weight_entropy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      mix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0 / static_cast<double>(m);
      weight_entropy += eta(1.0 / static_cast<double>(m));
    }
    // Pure components: lower bound 0, upper bound H(weights) = log2 m.
    const double s = von_neumann_entropy(mix);
    EXPECT_NEAR(s, std::log2(static_cast<double>(m)), 1e-12);
    EXPECT_NEAR(s, weight_entropy, 1e-12);
  }
}

TEST(Mixing, RandomSuite) {
  const LemmaTrialReport r = verify_mixing_bounds(10000, 6);
  EXPECT_EQ(r.trials, 10000u);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_TRUE(r.ok());
}

TEST(Suites, Deterministic) {
  const LemmaTrialReport a = verify_lemma1(100, 3, 0.02, 9);
  const LemmaTrialReport b = verify_lemma1(100, 3, 0.02, 9);
  EXPECT_EQ(a.max_slack, b.max_slack);
  EXPECT_EQ(a.min_slack, b.min_slack);
}

}  // namespace
}  // namespace qcap
