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

#include <algorithm>
#include <cmath>

#include "qcap/channels.hpp"

namespace qcap {
namespace {

const TensorLayout kTwoQubits({{"A", 2}, {"B", 2}});

PureState bell() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return PureState(v, kTwoQubits);
}

ComplexMatrix flag_projector() {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(2, 2) = 1.0;
  return m;
}

KrausChannel random_channel(std::size_t din, std::size_t dout, std::size_t kraus, Rng& rng) {
  kraus = std::max(kraus, (din + dout - 1) / dout);
  const ComplexMatrix v = random_unitary(dout * kraus, rng).leftCols(static_cast<Eigen::Index>(din));
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < kraus; ++k) {
    ops.push_back(v.middleRows(static_cast<Eigen::Index>(k * dout), static_cast<Eigen::Index>(dout)));
  }
  return KrausChannel(std::move(ops));
}

TEST(KrausChannel, RejectsIncompleteSet) {
  EXPECT_THROW(KrausChannel({ComplexMatrix::Identity(2, 2) * 0.9}), ValidationError);
  EXPECT_THROW(KrausChannel({ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)}),
               ValidationError);
}

TEST(ErasureChannel, KrausShapeAndCompleteness) {
  const KrausChannel e = erasure_channel(0.3);
  EXPECT_EQ(e.in_dim(), 2u);
  EXPECT_EQ(e.out_dim(), 3u);
  EXPECT_EQ(e.size(), 3u);
  EXPECT_LE(e.completeness_error(), 1e-12);
  EXPECT_THROW(erasure_channel(-0.01), ValidationError);
  EXPECT_THROW(erasure_channel(1.01), ValidationError);
}

TEST(ErasureChannel, ZeroProbabilityIsIsometricEmbedding) {
  Rng rng(1);
  const DensityMatrix rho = random_density(TensorLayout::single("S", 2), 2, rng);
  const DensityMatrix out = apply(erasure_channel(0.0), rho);
  EXPECT_LE((out.matrix().topLeftCorner(2, 2) - rho.matrix()).norm(), 1e-15);
  EXPECT_NEAR(out.matrix()(2, 2).real(), 0.0, 1e-15);
}

TEST(Apply, IdentityLeavesStateUnchanged) {
  const DensityMatrix rho = random_density(3, 3, 2);
  EXPECT_LE((apply(KrausChannel::identity(3), rho).matrix() - rho.matrix()).norm(), 1e-15);
}

TEST(Apply, FullErasureGivesFlag) {
  const DensityMatrix rho = random_density(2, 2, 3);
  EXPECT_LE((apply(erasure_channel(1.0), rho).matrix() - flag_projector()).norm(), 1e-15);
}

TEST(Apply, ErasureOnMaximallyMixed) {
  const DensityMatrix rho = DensityMatrix::maximally_mixed(TensorLayout::single("S", 2));
  const ComplexMatrix out = apply(erasure_channel(0.25), rho).matrix();
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  expected(0, 0) = expected(1, 1) = 0.375;
  expected(2, 2) = 0.25;
  EXPECT_LE((out - expected).norm(), 1e-15);
}

TEST(Apply, DimensionMismatchThrows) {
  EXPECT_THROW(apply(erasure_channel(0.1), random_density(3, 3, 1)), ValidationError);
}

TEST(Apply, PreservesTraceAndPositivity) {
  Rng rng(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t dout = 2 + rng.uniform_index(3);
    const KrausChannel ch = random_channel(3, dout, (3 + dout - 1) / dout + rng.uniform_index(3), rng);
    const DensityMatrix rho = random_density(TensorLayout::single("S", 3),
                                             1 + rng.uniform_index(3), rng);
    const DensityMatrix out = apply(ch, rho);
    EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_GE(eig_hermitian(out.matrix()).eigenvalues(out.matrix().rows() - 1), -1e-9);
  }
}

TEST(ApplyToSubsystem, IdentityChannel) {
  const DensityMatrix rho = DensityMatrix::from_pure(bell());
  const DensityMatrix out = apply_to_subsystem(KrausChannel::identity(2), rho, "B");
  EXPECT_LE((out.matrix() - rho.matrix()).norm(), 1e-15);
}

TEST(ApplyToSubsystem, ErasureOnBellHalf) {
  const double p = 0.3;
  const DensityMatrix rho = DensityMatrix::from_pure(bell());
  const DensityMatrix out = apply_to_subsystem(erasure_channel(p), rho, "B");
  EXPECT_EQ(out.layout(), TensorLayout({{"A", 2}, {"B", 3}}));
  // (1-p)|Phi><Phi| on the retained levels plus p I/2 (x) |flag><flag|.
  ComplexVector phi = ComplexVector::Zero(6);
  phi(0) = phi(4) = 1.0 / std::sqrt(2.0);
  const ComplexMatrix expected = (1.0 - p) * phi * phi.adjoint() +
                                 p * tensor_product(ComplexMatrix(ComplexMatrix::Identity(2, 2) / 2.0),
                                                    flag_projector());
  EXPECT_LE((out.matrix() - expected).norm(), 1e-14);
}

TEST(ApplyToSubsystem, FullErasureDecouples) {
  const DensityMatrix out =
      apply_to_subsystem(erasure_channel(1.0), DensityMatrix::from_pure(bell()), "B");
  const ComplexMatrix expected =
      tensor_product(ComplexMatrix(ComplexMatrix::Identity(2, 2) / 2.0), flag_projector());
  EXPECT_LE((out.matrix() - expected).norm(), 1e-15);
}

TEST(ApplyToSubsystem, Errors) {
  const DensityMatrix rho = DensityMatrix::from_pure(bell());
  EXPECT_THROW(apply_to_subsystem(erasure_channel(0.1), rho, "C"), ValidationError);
  EXPECT_THROW(apply_to_subsystem(KrausChannel::identity(3), rho, "A"), ValidationError);
}

TEST(TensorPower, OneIsSameChannel) {
  const KrausChannel e = erasure_channel(0.2);
  const KrausChannel e1 = tensor_power(e, 1);
  ASSERT_EQ(e1.size(), e.size());
  for (std::size_t k = 0; k < e.size(); ++k) EXPECT_EQ(e1.kraus_ops()[k], e.kraus_ops()[k]);
}

TEST(TensorPower, IdentitySquared) {
  const KrausChannel i2 = tensor_power(KrausChannel::identity(2), 2);
  ASSERT_EQ(i2.size(), 1u);
  EXPECT_EQ(i2.kraus_ops()[0], ComplexMatrix(ComplexMatrix::Identity(4, 4)));
}

TEST(TensorPower, MatchesSequentialApplication) {
  const double p = 0.35;
  Rng rng(5);
  const DensityMatrix rho = random_density(kTwoQubits, 4, rng);
  const DensityMatrix joint = apply(tensor_power(erasure_channel(p), 2), rho);
  const DensityMatrix seq = apply_to_subsystem(
      erasure_channel(p), apply_to_subsystem(erasure_channel(p), rho, "A"), "B");
  EXPECT_LE((joint.matrix() - seq.matrix()).norm(), 1e-14);
  EXPECT_EQ(joint.layout(), seq.layout());
}

TEST(TensorPower, GuardLimit) {
  EXPECT_NO_THROW(tensor_power(erasure_channel(0.1), 6));
  EXPECT_THROW(tensor_power(erasure_channel(0.1), 7), ValidationError);
  EXPECT_THROW(tensor_power(erasure_channel(0.1), 0), ValidationError);
}

TEST(Compose, IdentityIsNeutral) {
  Rng rng(6);
  const KrausChannel ch = random_channel(2, 3, 2, rng);
  for (int b = 0; b < 2; ++b) {
    ComplexMatrix e = ComplexMatrix::Zero(2, 2);
    e(b, b) = 1.0;
    const DensityMatrix basis(e);
    const ComplexMatrix direct = apply(ch, basis).matrix();
    EXPECT_LE((apply(compose(KrausChannel::identity(3), ch), basis).matrix() - direct).norm(), 1e-14);
    EXPECT_LE((apply(compose(ch, KrausChannel::identity(2)), basis).matrix() - direct).norm(), 1e-14);
  }
}

TEST(Compose, MatchesSequentialApplication) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const KrausChannel inner = random_channel(2, 3, 2, rng);
    const KrausChannel outer = random_channel(3, 2, 3, rng);
    const DensityMatrix rho = random_density(TensorLayout::single("S", 2), 2, rng);
    const ComplexMatrix a = apply(compose(outer, inner), rho).matrix();
    const ComplexMatrix b = apply(outer, apply(inner, rho)).matrix();
    EXPECT_LE((a - b).norm(), 1e-10);
  }
}

TEST(Compose, DimensionMismatchThrows) {
  EXPECT_THROW(compose(erasure_channel(0.1), erasure_channel(0.1)), ValidationError);
}

TEST(EnvironmentState, SingleKrausIsTrivial) {
  const DensityMatrix w = environment_state(KrausChannel::identity(3), random_density(3, 3, 8));
  ASSERT_EQ(w.dim(), 1u);
  EXPECT_NEAR(w.matrix()(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(w.entropy(), 0.0, 1e-15);
}

TEST(EnvironmentState, ErasureOnMaximallyMixed) {
  const DensityMatrix rho = DensityMatrix::maximally_mixed(TensorLayout::single("S", 2));
  const ComplexMatrix w = environment_state(erasure_channel(0.25), rho).matrix();
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  expected(0, 0) = 0.75;
  expected(1, 1) = expected(2, 2) = 0.125;
  EXPECT_LE((w - expected).norm(), 1e-15);
}

TEST(EnvironmentState, UnitaryChannelLeaksNothing) {
  Rng rng(9);
  const KrausChannel u = KrausChannel::unitary(random_unitary(4, rng));
  EXPECT_NEAR(environment_state(u, random_density(4, 4, 10)).entropy(), 0.0, 1e-12);
}

TEST(EnvironmentState, EntropyIndependentOfKrausRepresentation) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const KrausChannel ch = random_channel(3, 3, 3, rng);
    // B_j = sum_k V_jk A_k with V an isometry on the Kraus index space.
    const ComplexMatrix v = random_unitary(5, rng).leftCols(3);
    std::vector<ComplexMatrix> mixed;
    for (Eigen::Index j = 0; j < 5; ++j) {
      ComplexMatrix b = ComplexMatrix::Zero(3, 3);
      for (Eigen::Index k = 0; k < 3; ++k) b += v(j, k) * ch.kraus_ops()[static_cast<std::size_t>(k)];
      mixed.push_back(b);
    }
    const KrausChannel other(std::move(mixed));
    const DensityMatrix rho = random_density(TensorLayout::single("S", 3), 3, rng);
    EXPECT_LE((apply(other, rho).matrix() - apply(ch, rho).matrix()).norm(), 1e-12);
    EXPECT_NEAR(environment_state(other, rho).entropy(), environment_state(ch, rho).entropy(), 1e-9);
  }
}

TEST(ErasureOutputEntropy, BlockDiagonalClosedForm) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const double p = rng.uniform();
    const DensityMatrix rho = random_density(TensorLayout::single("S", 2),
                                             1 + rng.uniform_index(2), rng);
    const double expected = binary_entropy(p) + (1.0 - p) * rho.entropy();
    EXPECT_NEAR(apply(erasure_channel(p), rho).entropy(), expected, 1e-9);
  }
}

TEST(MeasureEnvironmentBranches, SingleKrausGivesOneBranch) {
  const auto branches = measure_environment_branches(KrausChannel::identity(2), bell(), "B");
  ASSERT_EQ(branches.size(), 1u);
  EXPECT_NEAR(branches[0].probability, 1.0, 1e-15);
}

TEST(MeasureEnvironmentBranches, ErasureOnBellHalf) {
  const double p = 0.2;
  const auto branches = measure_environment_branches(erasure_channel(p), bell(), "B");
  ASSERT_EQ(branches.size(), 3u);
  EXPECT_NEAR(branches[0].probability, 1.0 - p, 1e-15);
  EXPECT_NEAR(branches[1].probability, p / 2.0, 1e-15);
  EXPECT_NEAR(branches[2].probability, p / 2.0, 1e-15);
}

TEST(MeasureEnvironmentBranches, MixtureReconstructsOutput) {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const KrausChannel ch = random_channel(2, 3, 3, rng);
    const PureState psi = random_pure_state(TensorLayout({{"R", 3}, {"S", 2}}), rng);
    const auto branches = measure_environment_branches(ch, psi, "S");
    ComplexMatrix mix = ComplexMatrix::Zero(9, 9);
    double total = 0.0;
    for (const auto& b : branches) {
      mix += b.probability * b.state.amplitudes() * b.state.amplitudes().adjoint();
      total += b.probability;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    const ComplexMatrix direct =
        apply_to_subsystem(ch, DensityMatrix::from_pure(psi), "S").matrix();
    EXPECT_LE((mix - direct).norm(), 1e-10);
  }
}

TEST(MeasureEnvironmentBranches, MismatchedFactorThrows) {
  EXPECT_THROW(measure_environment_branches(KrausChannel::identity(3), bell(), "B"),
               ValidationError);
}

}  // namespace
}  // namespace qcap
