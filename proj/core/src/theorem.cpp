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

#include "qcap/theorem.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace qcap {
namespace {

std::string fixed(double v) {
  std::ostringstream os;
  os.precision(9);
  os << v;
  return os.str();
}

// <Psi| rho (x) |0><0|_C |Psi> with C the last factor of Psi.
double overlap_with_zero_ancilla(const PureState& psi, const DensityMatrix& rho) {
  const auto dc = static_cast<Eigen::Index>(psi.layout().factors().back().dim);
  const auto d = static_cast<Eigen::Index>(rho.dim());
  ComplexVector slice(d);
  for (Eigen::Index ab = 0; ab < d; ++ab) slice(ab) = psi.amplitudes()(ab * dc);
  return (slice.adjoint() * rho.matrix() * slice)(0, 0).real();
}

ComplexMatrix exp_i_hermitian(const ComplexMatrix& h, double theta) {
  const Spectrum s = eig_hermitian(h);
  ComplexVector phases(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, theta * s.eigenvalues(i)));
  }
  return s.eigenvectors * phases.asDiagonal() * s.eigenvectors.adjoint();
}

ComplexMatrix near_identity_unitary(std::size_t d, Rng& rng) {
  ComplexMatrix h = random_hermitian(d, rng);
  const Spectrum hs = eig_hermitian(h);
  const double scale = std::max(std::abs(hs.eigenvalues(0)),
                                std::abs(hs.eigenvalues(hs.eigenvalues.size() - 1)));
  if (scale > 0.0) h /= scale;
  return exp_i_hermitian(h, rng.uniform(0.0, 0.05));
}

// sum_j w_j V_j . V_j^dagger with V_j = exp(i theta_j H_j) V0, Dirichlet w.
std::vector<ComplexMatrix> isometry_mixture(const ComplexMatrix& v0, std::size_t m, Rng& rng) {
  std::vector<double> weights(m);
  double total = 0.0;
  for (double& w : weights) {
    w = -std::log(1.0 - rng.uniform());
    total += w;
  }
  std::vector<ComplexMatrix> ops;
  for (std::size_t j = 0; j < m; ++j) {
    ops.push_back(std::sqrt(weights[j] / total) *
                  near_identity_unitary(static_cast<std::size_t>(v0.rows()), rng) * v0);
  }
  return ops;
}

// Kraus operators K_j = (I (x) <j|) W with W = exp(i theta H)(V0 (x) |0>) a
// slightly rotated dilation onto an m-dimensional environment.
std::vector<ComplexMatrix> perturbed_dilation(const ComplexMatrix& v0, std::size_t m, Rng& rng) {
  const auto dc = v0.rows();
  const auto ds = v0.cols();
  const auto em = static_cast<Eigen::Index>(m);
  ComplexMatrix base = ComplexMatrix::Zero(dc * em, ds);
  for (Eigen::Index a = 0; a < dc; ++a) base.row(a * em) = v0.row(a);
  const ComplexMatrix w =
      near_identity_unitary(static_cast<std::size_t>(dc * em), rng) * base;
  std::vector<ComplexMatrix> ops;
  for (Eigen::Index j = 0; j < em; ++j) {
    ComplexMatrix k(dc, ds);
    for (Eigen::Index a = 0; a < dc; ++a) k.row(a) = w.row(a * em + j);
    ops.push_back(std::move(k));
  }
  return ops;
}

KrausChannel amplitude_damping(double gamma) {
  ComplexMatrix k0 = ComplexMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
  k1(0, 1) = std::sqrt(gamma);
  return KrausChannel({k0, k1});
}

KrausChannel dephasing(double q) {
  ComplexMatrix z = ComplexMatrix::Identity(2, 2);
  z(1, 1) = -1.0;
  return KrausChannel({std::sqrt(1.0 - q) * ComplexMatrix::Identity(2, 2), std::sqrt(q) * z});
}

}  // namespace

double theorem_entropy_bound(double eps, std::size_t d) {
  return 2.0 * std::sqrt(2.0 * std::max(eps, 0.0)) * std::log2(static_cast<double>(d)) + 2.0;
}

TheoremInstance eliminate_encoder(const CodingScheme& scheme, const KrausChannel& channel) {
  const KrausChannel full = end_to_end_channel(scheme, channel);
  const double eps_in = 1.0 - entanglement_fidelity(scheme.source, full).value;
  if (eps_in > kTheoremMaxInfidelity) {
    throw ValidationError("eliminate_encoder: scheme infidelity " + fixed(eps_in) +
                          " exceeds 1/72");
  }
  const std::size_t ds = scheme.source.dim();
  const DensityMatrix source = scheme.source.relabeled(TensorLayout::single("S", ds));
  const PureState phi = purify(source, "R");

  // Encoder environment measured in the Kraus-index basis; keep the branch
  // whose decoded output overlaps phi the most.
  const KrausChannel after = compose(scheme.decoder, tensor_power(channel, scheme.block_size));
  const std::vector<Branch> branches = measure_environment_branches(scheme.encoder, phi, "S");
  std::size_t best = 0;
  double best_fidelity = -1.0;
  for (std::size_t b = 0; b < branches.size(); ++b) {
    const DensityMatrix out =
        apply_to_subsystem(after, DensityMatrix::from_pure(branches[b].state), "S");
    const double f = (phi.amplitudes().adjoint() * out.matrix() * phi.amplitudes())(0, 0).real();
    if (f > best_fidelity) {
      best_fidelity = f;
      best = b;
    }
  }
  const PureState& psi = branches[best].state;
  const DensityMatrix rho_prime = psi.reduced({"S"});
  const DensityMatrix rho_out = apply_to_subsystem(after, DensityMatrix::from_pure(psi), "S");

  const Lemma3Purification lemma = lemma3_purification(rho_out, "C");
  const bool flagged = lemma.marginal_gap > kMarginalGapTolerance;
  const std::size_t dc = ds + 1;
  PureState big_psi = lemma.state;
  if (flagged) {
    const PureState phi_max(rho_out.spectrum().eigenvectors.col(0), rho_out.layout());
    const PureState target = tensor_product(phi_max, basis_state(TensorLayout::single("C", dc), 0));
    big_psi = uhlmann_purification(rho_out.reduced({"R"}), target, "R");
  }
  const double overlap = overlap_with_zero_ancilla(big_psi, rho_out);

  // psi (x) |0> on an ancilla large enough that the complement of R can hold
  // every purification of the R marginal built on S (x) C.
  const std::size_t d_in = psi.layout().factors()[1].dim;
  const std::size_t dk = (ds * dc + d_in - 1) / d_in;
  const PureState psi0 = tensor_product(psi, basis_state(TensorLayout::single("K", dk), 0));
  const ComplexMatrix u =
      relate_purifications(big_psi, psi0, "R", kMarginalGapTolerance + 1e-9);

  // T_k = (I (x) <k|_K) U (I (x) |0>_C)
  std::vector<ComplexMatrix> ops;
  const auto n_in = static_cast<Eigen::Index>(d_in);
  const auto n_s = static_cast<Eigen::Index>(ds);
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(dk); ++k) {
    ComplexMatrix t(n_in, n_s);
    for (Eigen::Index b = 0; b < n_in; ++b) {
      for (Eigen::Index s = 0; s < n_s; ++s) {
        t(b, s) = u(b * static_cast<Eigen::Index>(dk) + k, s * static_cast<Eigen::Index>(dc));
      }
    }
    if (t.norm() > 1e-14) ops.push_back(std::move(t));
  }
  KrausChannel recovery(std::move(ops));
  const double eps_out =
      1.0 - entanglement_fidelity(rho_prime, compose(recovery, after)).value;

  return TheoremInstance{
      .scheme = scheme,
      .eps_in = eps_in,
      .branch_index = branches[best].kraus_index,
      .branch_fidelity = best_fidelity,
      .branch_count = branches.size(),
      .rho_prime = rho_prime,
      .recovery = std::move(recovery),
      .eps_out = eps_out,
      .entropy_gap = std::abs(source.entropy() - rho_prime.entropy()),
      .entropy_bound = theorem_entropy_bound(eps_in, ds),
      .lambda_max = lemma.lambda_max,
      .lemma3_overlap = overlap,
      .marginal_gap = lemma.marginal_gap,
      .flagged = flagged,
      .repaired = flagged,
  };
}

RandomScheme random_coding_scheme(Rng& rng, const RandomSchemeOptions& options) {
  const std::size_t max_dim = std::max<std::size_t>(2, options.max_dim);
  for (std::size_t attempt = 0; attempt < options.max_attempts; ++attempt) {
    const std::size_t kind = rng.uniform_index(4);
    std::size_t dc = 2;
    std::size_t ds = 2;
    std::string name;
    std::optional<KrausChannel> channel;
    switch (kind) {
      case 0:
        dc = 2 + rng.uniform_index(max_dim - 1);
        ds = 2 + rng.uniform_index(dc - 1);
        channel = KrausChannel::identity(dc);
        name = "identity";
        break;
      case 1:
        channel = erasure_channel(rng.uniform(0.0, 0.004));
        name = "erasure";
        break;
      case 2:
        channel = amplitude_damping(rng.uniform(0.0, 0.01));
        name = "amplitude-damping";
        break;
      default:
        channel = dephasing(rng.uniform(0.0, 0.005));
        name = "dephasing";
        break;
    }

    const DensityMatrix source = random_density(TensorLayout::single("S", ds),
                                                1 + rng.uniform_index(ds), rng);
    const ComplexMatrix v0 = random_unitary(dc, rng).leftCols(static_cast<Eigen::Index>(ds));

    const std::size_t m = 1 + rng.uniform_index(3);
    std::vector<ComplexMatrix> enc = rng.uniform_index(2) == 0
                                         ? isometry_mixture(v0, m, rng)
                                         : perturbed_dilation(v0, m + 1, rng);

    const auto dout = static_cast<Eigen::Index>(channel->out_dim());
    ComplexMatrix y = ComplexMatrix::Zero(dout, static_cast<Eigen::Index>(ds));
    y.topRows(static_cast<Eigen::Index>(dc)) = v0;
    const ComplexMatrix comp = orthonormal_complement(y);
    std::vector<ComplexMatrix> dec{y.adjoint()};
    for (Eigen::Index c = 0; c < comp.cols(); ++c) {
      ComplexMatrix op = ComplexMatrix::Zero(static_cast<Eigen::Index>(ds), dout);
      op.row(0) = comp.col(c).adjoint();
      dec.push_back(std::move(op));
    }

    CodingScheme scheme{source, KrausChannel(std::move(enc)), KrausChannel(std::move(dec)), 1};
    if (end_to_end_fidelity(scheme, *channel).value >= options.min_fidelity) {
      return RandomScheme{std::move(scheme), std::move(*channel), std::move(name)};
    }
  }
  throw ValidationError("random_coding_scheme: no scheme reached the fidelity target in " +
                        std::to_string(options.max_attempts) + " attempts");
}

TheoremSuiteReport run_theorem_suite(std::size_t count, std::uint64_t seed,
                                     const RandomSchemeOptions& options) {
  TheoremSuiteReport report;
  Rng master(seed);
  for (std::size_t i = 0; i < count; ++i) {
    Rng local(master.next_seed());
    const RandomScheme rs = random_coding_scheme(local, options);
    TheoremInstance inst = eliminate_encoder(rs.scheme, rs.channel);
    if (inst.flagged) {
      ++report.flagged;
      if (!inst.fidelity_holds()) ++report.repaired_fidelity_violations;
    } else if (!inst.fidelity_holds()) {
      ++report.fidelity_violations;
    }
    if (!inst.entropy_holds()) ++report.entropy_violations;
    report.instances.push_back(std::move(inst));
  }
  return report;
}

}  // namespace qcap
