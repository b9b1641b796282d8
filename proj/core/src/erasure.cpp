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

#include "qcap/erasure.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "nelder_mead.hpp"
#include "qcap/functionals.hpp"

namespace qcap {
namespace {

constexpr std::size_t kMaxQubits = 12;

std::string fixed(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void require_probability(double p, const char* who) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError(std::string(who) + ": p = " + fixed(p) + " outside [0, 1]");
  }
}

void require_qubits(const DensityMatrix& rho, std::size_t n, const char* who) {
  if (n == 0 || n > kMaxQubits) {
    throw ValidationError(std::string(who) + ": N = " + std::to_string(n) + " outside [1, " +
                          std::to_string(kMaxQubits) + "]");
  }
  if (rho.dim() != (std::size_t{1} << n)) {
    throw ValidationError(std::string(who) + ": state dimension " + std::to_string(rho.dim()) +
                          " is not 2^N = " + std::to_string(std::size_t{1} << n));
  }
}

std::size_t qubit_count(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  if (d < 2 || !std::has_single_bit(d)) {
    throw ValidationError("erasure decomposition: dimension " + std::to_string(d) +
                          " is not a power of two");
  }
  return static_cast<std::size_t>(std::countr_zero(d));
}

double entropy_of_weights(const std::vector<double>& w) {
  double h = 0.0;
  for (double x : w) h += eta(x);
  return h;
}

}  // namespace

ErasureDecomposition::ErasureDecomposition(std::size_t n, double p, std::vector<double> entropies)
    : n_(n), p_(p), entropies_(std::move(entropies)) {}

ErasureDecomposition ErasureDecomposition::from_state(const DensityMatrix& rho, double p) {
  require_probability(p, "erasure decomposition");
  const std::size_t n = qubit_count(rho);
  require_qubits(rho, n, "erasure decomposition");
  const std::vector<std::size_t> dims(n, 2);
  std::vector<double> s(std::size_t{1} << n, 0.0);
  for (std::uint32_t mask = 1; mask < s.size(); ++mask) {
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (std::uint32_t{1} << j)) keep.push_back(j);
    }
    s[mask] = von_neumann_entropy(partial_trace(rho.matrix(), dims, keep));
  }
  return ErasureDecomposition(n, p, std::move(s));
}

std::size_t ErasureDecomposition::erasures(std::uint32_t mask) const {
  return n_ - static_cast<std::size_t>(std::popcount(mask));
}

double ErasureDecomposition::block_weight(std::uint32_t mask) const {
  const std::size_t k = erasures(mask);
  return std::pow(p_, static_cast<double>(k)) * std::pow(1.0 - p_, static_cast<double>(n_ - k));
}

double ErasureDecomposition::coherent_info() const {
  double ic = 0.0;
  for (std::uint32_t mask = 0; mask <= full_mask(); ++mask) {
    ic += block_weight(mask) * (entropies_[mask] - entropies_[full_mask() ^ mask]);
  }
  return ic;
}

double ErasureDecomposition::output_entropy() const {
  std::vector<double> w;
  double s = 0.0;
  for (std::uint32_t mask = 0; mask <= full_mask(); ++mask) {
    w.push_back(block_weight(mask));
    s += w.back() * entropies_[mask];
  }
  return s + entropy_of_weights(w);
}

double ErasureDecomposition::environment_entropy() const {
  std::vector<double> w;
  double s = 0.0;
  for (std::uint32_t mask = 0; mask <= full_mask(); ++mask) {
    w.push_back(block_weight(mask));
    s += w.back() * entropies_[full_mask() ^ mask];
  }
  return s + entropy_of_weights(w);
}

double erasure_coherent_info_block(const DensityMatrix& rho, double p, std::size_t n) {
  require_qubits(rho, n, "erasure_coherent_info_block");
  return ErasureDecomposition::from_state(rho, p).coherent_info();
}

double erasure_output_entropy_block(const DensityMatrix& rho, double p, std::size_t n) {
  require_qubits(rho, n, "erasure_output_entropy_block");
  return ErasureDecomposition::from_state(rho, p).output_entropy();
}

double erasure_environment_entropy_block(const DensityMatrix& rho, double p, std::size_t n) {
  require_qubits(rho, n, "erasure_environment_entropy_block");
  return ErasureDecomposition::from_state(rho, p).environment_entropy();
}

std::vector<double> environment_block_entropies(const DensityMatrix& rho, double p,
                                                std::size_t n) {
  require_qubits(rho, n, "environment_block_entropies");
  if (!(p > 0.0 && p < 1.0)) {
    throw ValidationError("environment_block_entropies: needs 0 < p < 1, got " + fixed(p));
  }
  const DensityMatrix w = environment_state(tensor_power(erasure_channel(p), n), rho);
  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) total *= 3;

  std::vector<double> out(std::size_t{1} << n, 0.0);
  for (std::uint32_t mask = 0; mask < out.size(); ++mask) {
    // Kraus multi-index (k_0, ..., k_{N-1}), k_0 most significant; a retained
    // qubit has k_j = 0, an erased one k_j in {1, 2}.
    std::vector<Eigen::Index> rows;
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rest = idx;
      bool match = true;
      for (std::size_t j = n; j-- > 0;) {
        const std::size_t digit = rest % 3;
        rest /= 3;
        const bool retained = (mask >> j) & 1U;
        if (retained != (digit == 0)) {
          match = false;
          break;
        }
      }
      if (match) rows.push_back(static_cast<Eigen::Index>(idx));
    }
    const auto m = static_cast<Eigen::Index>(rows.size());
    ComplexMatrix block(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index b = 0; b < m; ++b) {
        block(a, b) = w.matrix()(rows[static_cast<std::size_t>(a)],
                                 rows[static_cast<std::size_t>(b)]);
      }
    }
    block /= block.trace().real();
    out[mask] = von_neumann_entropy(block);
  }
  return out;
}

IplusSplit iplus_iminus_split(const ErasureDecomposition& decomp) {
  IplusSplit split;
  const std::uint32_t full = decomp.full_mask();
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    const double term =
        decomp.block_weight(mask) * (decomp.entropy(mask) - decomp.entropy(full ^ mask));
    if (decomp.erasures(mask) <= decomp.n() / 2) {
      split.iplus += term;
    } else {
      split.iminus += term;
    }
  }
  return split;
}

IplusBoundReport verify_iplus_bound(const ErasureDecomposition& decomp) {
  constexpr double kSlackTolerance = 1e-9;
  const std::size_t n = decomp.n();
  const std::size_t half = n / 2;
  const std::uint32_t full = decomp.full_mask();
  const double p = decomp.p();

  IplusBoundReport r;
  const IplusSplit split = iplus_iminus_split(decomp);
  r.iplus = split.iplus;
  r.iminus = split.iminus;
  for (std::size_t k = 0; k <= n; ++k) {
    const double b = binomial_pmf(n, k, p);
    if (k <= half) {
      r.iplus_bound += b * static_cast<double>(n - 2 * k);
    } else {
      r.iminus_bound += b * static_cast<double>(n - k);
    }
  }
  r.total_bound = static_cast<double>(n) * (1.0 - p) - binomial_partial_moment(n, half, p);
  r.aggregate_slack = r.iplus_bound - r.iplus;
  r.min_pair_slack = std::numeric_limits<double>::infinity();

  std::vector<std::size_t> positive_count(std::size_t{full} + 1, 0);
  std::vector<double> pair_sum(half + 1, 0.0);
  std::vector<double> term_sum(half + 1, 0.0);

  auto record = [&](std::uint32_t i, std::uint32_t j, double lhs, double bound) {
    ++r.pairs_checked;
    const double slack = bound - lhs;
    if (slack < -kSlackTolerance) ++r.pair_violations;
    if (slack < r.min_pair_slack) {
      r.min_pair_slack = slack;
      r.witness = MatchedPairWitness{i, j, lhs, bound};
    }
  };

  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    const std::size_t k = decomp.erasures(mask);
    const std::uint32_t erased = full ^ mask;
    const double term = decomp.entropy(mask) - decomp.entropy(erased);
    if (k > half) {
      if (term > static_cast<double>(n - k) + kSlackTolerance) ++r.iminus_violations;
      continue;
    }
    term_sum[k] += term;
    const auto overlap_size = static_cast<int>(n - 2 * k);
    const double bound = static_cast<double>(n - 2 * k);
    // Submasks O of the retained set with |O| = N - 2k; the partner set is
    // j = O + (erased qubits), so that jbar = mask \ O and ibar is inside j.
    for (std::uint32_t o = mask;; o = (o - 1) & mask) {
      if (std::popcount(o) == overlap_size) {
        const std::uint32_t j = o | erased;
        const std::uint32_t jbar = full ^ j;
        const double lhs1 = decomp.entropy(mask) - decomp.entropy(jbar);
        const double lhs2 = decomp.entropy(j) - decomp.entropy(erased);
        record(mask, j, lhs1, bound);
        record(j, mask, lhs2, bound);
        ++positive_count[mask];
        ++positive_count[j];
        pair_sum[k] += lhs1 + lhs2;
      }
      if (o == 0) break;
    }
  }

  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    const std::size_t k = decomp.erasures(mask);
    if (k > half) continue;
    const auto expected = static_cast<std::size_t>(2.0 * binomial_coefficient(n - k, k) + 0.5);
    if (positive_count[mask] != expected) r.multiplicity_consistent = false;
  }
  for (std::size_t k = 0; k <= half; ++k) {
    const double expected = 2.0 * binomial_coefficient(n - k, k);
    if (std::abs(pair_sum[k] / expected - term_sum[k]) > 1e-9) r.multiplicity_consistent = false;
  }
  return r;
}

double binomial_coefficient(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return c < 9e15 ? std::round(c) : c;
}

double binomial_pmf(std::size_t n, std::size_t k, double p) {
  require_probability(p, "binomial_pmf");
  if (k > n) return 0.0;
  return binomial_coefficient(n, k) * std::pow(p, static_cast<double>(k)) *
         std::pow(1.0 - p, static_cast<double>(n - k));
}

double binomial_partial_moment(std::size_t n, std::size_t kmax, double p) {
  double s = 0.0;
  for (std::size_t k = 0; k <= std::min(kmax, n); ++k) {
    s += binomial_pmf(n, k, p) * static_cast<double>(k);
  }
  return s;
}

double binomial_mean(std::size_t n, double p) {
  require_probability(p, "binomial_mean");
  return static_cast<double>(n) * p;
}

double half_sum_fraction(std::size_t n, double p) {
  if (n == 0) throw ValidationError("half_sum_fraction: N must be >= 1");
  return binomial_partial_moment(n, n / 2, p) / static_cast<double>(n);
}

double erasure_capacity(double p) {
  require_probability(p, "erasure_capacity");
  return std::max(1.0 - 2.0 * p, 0.0);
}

std::vector<CapacityPoint> capacity_curve(const std::vector<double>& p_grid, std::size_t n) {
  if (n == 0 || n > kMaxQubits) {
    throw ValidationError("capacity_curve: N = " + std::to_string(n) + " outside [1, " +
                          std::to_string(kMaxQubits) + "]");
  }
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(TensorLayout::qubits(n));
  std::vector<CapacityPoint> out;
  out.reserve(p_grid.size());
  for (double p : p_grid) {
    require_probability(p, "capacity_curve");
    CapacityPoint pt;
    pt.p = p;
    pt.n = n;
    pt.ic_per_use = erasure_coherent_info_block(mixed, p, n) / static_cast<double>(n);
    pt.capacity_bound = erasure_capacity(p);
    out.push_back(pt);
  }
  return out;
}

MaximizeResult maximize_coherent_info(const KrausChannel& ch, std::size_t n,
                                      std::size_t restarts, std::uint64_t seed) {
  if (restarts == 0) throw ValidationError("maximize_coherent_info: restarts must be >= 1");
  const KrausChannel block = tensor_power(ch, n);
  const std::size_t d = block.in_dim();
  std::vector<Factor> factors;
  for (std::size_t j = 0; j < n; ++j) factors.push_back({"q" + std::to_string(j), ch.in_dim()});
  const TensorLayout layout(std::move(factors));
  const auto dd = static_cast<Eigen::Index>(d);
  const std::size_t n_params = 2 * d * d;

  auto to_state = [&](const std::vector<double>& x) {
    ComplexMatrix m(dd, dd);
    for (Eigen::Index r = 0; r < dd; ++r) {
      for (Eigen::Index c = 0; c < dd; ++c) {
        const auto at = static_cast<std::size_t>(2 * (r * dd + c));
        m(r, c) = Complex(x[at], x[at + 1]);
      }
    }
    ComplexMatrix rho = m * m.adjoint();
    const double tr = rho.trace().real();
    if (!(tr > 1e-300) || !std::isfinite(tr)) return std::optional<DensityMatrix>();
    rho /= tr;
    return std::optional<DensityMatrix>(DensityMatrix(0.5 * (rho + rho.adjoint()), layout));
  };
  const double per_use = 1.0 / static_cast<double>(n);
  auto objective = [&](const std::vector<double>& x) {
    const auto rho = to_state(x);
    if (!rho) return std::numeric_limits<double>::max();
    return -coherent_information(*rho, block).coherent_info * per_use;
  };

  detail::SimplexOptions opts;
  opts.max_iterations = 200 * n_params;
  opts.f_tolerance = 1e-8;

  Rng master(seed);
  std::optional<DensityMatrix> best_state;
  double best = -std::numeric_limits<double>::infinity();
  std::size_t evaluations = 0;
  for (std::size_t r = 0; r < restarts; ++r) {
    Rng local(master.next_seed());
    std::vector<double> x0(n_params);
    for (double& v : x0) v = local.normal();
    const detail::SimplexResult res = detail::nelder_mead(objective, std::move(x0), opts);
    evaluations += res.evaluations;
    if (-res.f > best) {
      best = -res.f;
      best_state = to_state(res.x);
    }
  }
  return MaximizeResult{*best_state, best, restarts, seed, evaluations};
}

}  // namespace qcap
