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

#include "qcap/theorem.hpp"

namespace qcap {
namespace {

ComplexMatrix rotation(double theta) {
  ComplexMatrix r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

// Decoder for erasure output: keeps levels 0, 1 and resets the flag to |0>.
KrausChannel reset_flag() {
  ComplexMatrix keep = ComplexMatrix::Zero(2, 3);
  keep(0, 0) = keep(1, 1) = 1.0;
  ComplexMatrix flag = ComplexMatrix::Zero(2, 3);
  flag(0, 2) = 1.0;
  return KrausChannel({keep, flag});
}

CodingScheme mixed_pair_scheme() {
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  rho(0, 0) = 0.97;
  rho(1, 1) = 0.03;
  const double w = std::sqrt(0.5);
  return CodingScheme{DensityMatrix(rho),
                      KrausChannel({ComplexMatrix(w * ComplexMatrix::Identity(2, 2)),
                                    ComplexMatrix(w * rotation(0.05))}),
                      reset_flag(), 1};
}

// F_e(rho', T o D o chi) evaluated by applying each stage to a purification.
double sequential_fidelity(const TheoremInstance& inst, const KrausChannel& channel) {
  const PureState eta = purify(inst.rho_prime.relabeled(TensorLayout::single("S", inst.rho_prime.dim())));
  DensityMatrix x = DensityMatrix::from_pure(eta);
  x = apply_to_subsystem(channel, x, "S");
  x = apply_to_subsystem(inst.scheme.decoder, x, "S");
  x = apply_to_subsystem(inst.recovery, x, "S");
  return (eta.amplitudes().adjoint() * x.matrix() * eta.amplitudes())(0, 0).real();
}

TEST(EntropyBound, ClosedForm) {
  EXPECT_EQ(theorem_entropy_bound(0.0, 4), 2.0);
  EXPECT_NEAR(theorem_entropy_bound(0.01, 4), 2.0 * std::sqrt(0.02) * 2.0 + 2.0, 1e-15);
}

TEST(EliminateEncoder, NoiselessUnitaryScheme) {
  Rng rng(1);
  const ComplexMatrix u = random_unitary(3, rng);
  const DensityMatrix source = random_density(TensorLayout::single("S", 3), 3, rng);
  const CodingScheme s{source, KrausChannel::unitary(u), KrausChannel::unitary(u.adjoint()), 1};
  const TheoremInstance inst = eliminate_encoder(s, KrausChannel::identity(3));
  EXPECT_NEAR(inst.eps_in, 0.0, 1e-12);
  EXPECT_EQ(inst.branch_count, 1u);
  EXPECT_NEAR(inst.eps_out, 0.0, 1e-9);
  EXPECT_TRUE(inst.entropy_holds());
  EXPECT_TRUE(inst.fidelity_holds());
  // rho' = U rho U^dagger and T undoes D = U^dagger back onto rho'.
  EXPECT_LE((inst.rho_prime.matrix() - u * source.matrix() * u.adjoint()).norm(), 1e-9);
  EXPECT_NEAR(inst.entropy_gap, 0.0, 1e-9);
  EXPECT_LE(inst.recovery.completeness_error(), 1e-9);
}

TEST(EliminateEncoder, MixedIsometryPairIntoErasure) {
  const CodingScheme s = mixed_pair_scheme();
  const KrausChannel ch = erasure_channel(0.02);
  const TheoremInstance inst = eliminate_encoder(s, ch);
  EXPECT_GT(inst.eps_in, 0.0);
  EXPECT_LT(inst.eps_in, kTheoremMaxInfidelity);
  EXPECT_EQ(inst.branch_count, 2u);
  EXPECT_NEAR(1.0 - inst.eps_out, sequential_fidelity(inst, ch), 1e-10);
  EXPECT_TRUE(inst.fidelity_holds());
  EXPECT_TRUE(inst.entropy_holds());
  EXPECT_GE(inst.branch_fidelity, 1.0 - inst.eps_in - 1e-12);
  EXPECT_LE(inst.recovery.completeness_error(), 1e-9);
  if (!inst.flagged) {
    EXPECT_NEAR(inst.lemma3_overlap, inst.lambda_max * inst.lambda_max, 1e-10);
  } else {
    EXPECT_TRUE(inst.repaired);
    EXPECT_GE(inst.lemma3_overlap, inst.lambda_max * inst.lambda_max - 1e-10);
  }
}

TEST(EliminateEncoder, RejectsLowFidelity) {
  CodingScheme s = mixed_pair_scheme();
  EXPECT_THROW(eliminate_encoder(s, erasure_channel(0.5)), ValidationError);
  s.decoder = KrausChannel::identity(2);
  EXPECT_THROW(eliminate_encoder(s, erasure_channel(0.01)), ValidationError);
}

TEST(RandomScheme, MeetsFidelityTarget) {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const RandomScheme rs = random_coding_scheme(rng);
    EXPECT_GE(end_to_end_fidelity(rs.scheme, rs.channel).value, 0.99);
    EXPECT_LE(rs.scheme.source.dim(), 4u);
    EXPECT_EQ(rs.scheme.block_size, 1u);
    EXPECT_FALSE(rs.channel_name.empty());
  }
}

TEST(TheoremSuite, HundredSeededInstances) {
  const TheoremSuiteReport r = run_theorem_suite(100, 1);
  ASSERT_EQ(r.instances.size(), 100u);
  EXPECT_EQ(r.fidelity_violations, 0u);
  EXPECT_EQ(r.entropy_violations, 0u);
  EXPECT_TRUE(r.ok());
  std::size_t flagged = 0;
  for (const auto& inst : r.instances) {
    flagged += inst.flagged ? 1 : 0;
    // The chosen branch does at least as well as the average over branches.
    EXPECT_GE(inst.branch_fidelity, 1.0 - inst.eps_in - 1e-10);
    EXPECT_LE(inst.recovery.completeness_error(), 1e-9);
    EXPECT_GE(inst.lemma3_overlap, inst.lambda_max * inst.lambda_max - 1e-10);
    EXPECT_EQ(inst.repaired, inst.flagged);
  }
  EXPECT_EQ(flagged, r.flagged);
}

TEST(TheoremSuite, RepairedInstancesSatisfyFidelityBound) {
  const TheoremSuiteReport r = run_theorem_suite(100, 1);
  EXPECT_EQ(r.repaired_fidelity_violations, 0u);
}

TEST(TheoremSuite, Deterministic) {
  const TheoremSuiteReport a = run_theorem_suite(10, 7);
  const TheoremSuiteReport b = run_theorem_suite(10, 7);
  ASSERT_EQ(a.instances.size(), b.instances.size());
  for (std::size_t i = 0; i < a.instances.size(); ++i) {
    EXPECT_EQ(a.instances[i].eps_in, b.instances[i].eps_in);
    EXPECT_EQ(a.instances[i].eps_out, b.instances[i].eps_out);
  }
}

}  // namespace
}  // namespace qcap
