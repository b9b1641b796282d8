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

#include "commands.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <vector>

#include "qcap/density_io.hpp"
#include "qcap/erasure.hpp"
#include "qcap/functionals.hpp"
#include "qcap/lemmas.hpp"
#include "qcap/theorem.hpp"

namespace qcap::cli {
namespace {

void require_p(double p, const char* flag) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError(std::string(flag) + " must lie in [0, 1], got " + format_fixed(p));
  }
}

void require_n(std::size_t n) {
  // tensor_power(erasure, N) needs 3^N <= kMaxKrausOperators.
  if (n < 1 || n > 6) throw ValidationError("--n must lie in [1, 6], got " + std::to_string(n));
}

DensityMatrix load_state(const CoherentInfoConfig& cfg) {
  const TensorLayout layout = TensorLayout::qubits(cfg.n);
  if (cfg.state == "maximally-mixed") return DensityMatrix::maximally_mixed(layout);
  if (cfg.state == "random") {
    Rng rng(cfg.seed);
    return random_density(layout, layout.total_dim(), rng);
  }
  if (cfg.state == "file") {
    if (cfg.state_file.empty()) throw ValidationError("--state file requires --state-file");
    const DensityMatrix rho = read_density_file(cfg.state_file);
    if (rho.dim() != layout.total_dim()) {
      throw ValidationError("state file has dimension " + std::to_string(rho.dim()) +
                            " but --n " + std::to_string(cfg.n) + " needs " +
                            std::to_string(layout.total_dim()));
    }
    return rho.relabeled(layout);
  }
  throw ValidationError("--state must be maximally-mixed, random or file, got '" + cfg.state +
                        "'");
}

RandomScheme noiseless_scheme(std::uint64_t seed) {
  Rng rng(seed);
  const DensityMatrix source = random_density(TensorLayout::single("S", 2), 2, rng);
  const ComplexMatrix u = random_unitary(2, rng);
  return RandomScheme{CodingScheme{source, KrausChannel::unitary(u),
                                   KrausChannel::unitary(u.adjoint()), 1},
                      KrausChannel::identity(2), "identity"};
}

}  // namespace

std::string format_fixed(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::fixed, 9);
  std::string s(buf.data(), res.ptr);
  if (s == "-0.000000000") s.erase(0, 1);
  return s;
}

int run_capacity_curve(const CurveConfig& cfg, std::ostream& out) {
  require_p(cfg.p_start, "--p-start");
  require_p(cfg.p_end, "--p-end");
  if (cfg.p_end < cfg.p_start) throw ValidationError("--p-end must not be below --p-start");
  if (cfg.steps < 1) throw ValidationError("--steps must be >= 1");
  require_n(cfg.n);
  std::vector<double> grid;
  for (std::size_t i = 0; i < cfg.steps; ++i) {
    const double t = cfg.steps == 1 ? 0.0
                                    : static_cast<double>(i) / static_cast<double>(cfg.steps - 1);
    grid.push_back(i + 1 == cfg.steps && cfg.steps > 1 ? cfg.p_end
                                                       : cfg.p_start + t * (cfg.p_end - cfg.p_start));
  }
  const auto points = capacity_curve(grid, cfg.n);
  out << "p,N,ic_per_use,capacity_bound\n";
  for (const auto& pt : points) {
    out << format_fixed(pt.p) << ',' << pt.n << ',' << format_fixed(pt.ic_per_use) << ','
        << format_fixed(pt.capacity_bound) << '\n';
  }
  return kOk;
}

int run_coherent_info(const CoherentInfoConfig& cfg, std::ostream& out) {
  require_p(cfg.p, "--p");
  require_n(cfg.n);
  const DensityMatrix rho = load_state(cfg);
  const ErasureDecomposition decomp = ErasureDecomposition::from_state(rho, cfg.p);
  const double s_out = decomp.output_entropy();
  const double s_env = decomp.environment_entropy();
  out << "p,N,S_out,S_env,Ic\n";
  out << format_fixed(cfg.p) << ',' << cfg.n << ',' << format_fixed(s_out) << ','
      << format_fixed(s_env) << ',' << format_fixed(s_out - s_env) << '\n';
  return kOk;
}

int run_maximize(const MaximizeConfig& cfg, std::ostream& out) {
  require_p(cfg.p, "--p");
  require_n(cfg.n);
  if (cfg.restarts < 1) throw ValidationError("--restarts must be >= 1");
  const MaximizeResult r = maximize_coherent_info(erasure_channel(cfg.p), cfg.n, cfg.restarts,
                                                  cfg.seed);
  out << "p,N,best_ic_per_use,restarts,seed\n";
  out << format_fixed(cfg.p) << ',' << cfg.n << ',' << format_fixed(r.best_ic_per_use) << ','
      << cfg.restarts << ',' << cfg.seed << '\n';
  return r.best_ic_per_use > erasure_capacity(cfg.p) + 1e-6 ? kViolation : kOk;
}

int run_theorem_demo(const TheoremConfig& cfg, std::ostream& out, std::ostream& log) {
  if (cfg.trials < 1) throw ValidationError("--trials must be >= 1");
  std::vector<TheoremInstance> instances;
  if (cfg.scheme == "random") {
    instances = run_theorem_suite(cfg.trials, cfg.seed).instances;
  } else if (cfg.scheme == "noiseless") {
    Rng master(cfg.seed);
    for (std::size_t i = 0; i < cfg.trials; ++i) {
      const RandomScheme rs = noiseless_scheme(master.next_seed());
      instances.push_back(eliminate_encoder(rs.scheme, rs.channel));
    }
  } else {
    throw ValidationError("--scheme must be random or noiseless, got '" + cfg.scheme + "'");
  }

  std::size_t flagged = 0;
  std::size_t fidelity_violations = 0;
  std::size_t entropy_violations = 0;
  out << "instance,eps_in,eps_out,entropy_gap,entropy_bound,marginal_gap,flagged\n";
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const TheoremInstance& t = instances[i];
    if (t.flagged) {
      ++flagged;
    } else if (!t.fidelity_holds()) {
      ++fidelity_violations;
    }
    if (!t.entropy_holds()) ++entropy_violations;
    out << i << ',' << format_fixed(t.eps_in) << ',' << format_fixed(t.eps_out) << ','
        << format_fixed(t.entropy_gap) << ',' << format_fixed(t.entropy_bound) << ','
        << format_fixed(t.marginal_gap) << ',' << (t.flagged ? "true" : "false") << '\n';
  }
  log << "instances " << instances.size() << ", flagged " << flagged
      << ", fidelity violations " << fidelity_violations << ", entropy violations "
      << entropy_violations << '\n';
  return fidelity_violations == 0 && entropy_violations == 0 ? kOk : kViolation;
}

int run_lemma_check(const LemmaConfig& cfg, std::ostream& out) {
  LemmaTrialReport r;
  if (cfg.lemma == "fannes") {
    r = verify_fannes(cfg.trials, cfg.dim, cfg.seed);
  } else if (cfg.lemma == "lemma1") {
    r = verify_lemma1(cfg.trials, cfg.dim, cfg.eps_max > 0.0 ? cfg.eps_max : 1.0 / 40.0,
                      cfg.seed);
  } else if (cfg.lemma == "lemma2") {
    r = verify_lemma2(cfg.trials, cfg.dim, cfg.eps_max > 0.0 ? cfg.eps_max : 1.0 / 80.0,
                      cfg.seed);
  } else if (cfg.lemma == "mixing") {
    r = verify_mixing_bounds(cfg.trials, cfg.seed, cfg.dim, cfg.components);
  } else {
    throw ValidationError("unknown lemma '" + cfg.lemma +
                          "', expected fannes, lemma1, lemma2 or mixing");
  }
  out << "lemma,trials,violations,max_slack\n";
  out << r.lemma << ',' << r.trials << ',' << r.violations << ',' << format_fixed(r.max_slack)
      << '\n';
  return r.ok() ? kOk : kViolation;
}

}  // namespace qcap::cli
