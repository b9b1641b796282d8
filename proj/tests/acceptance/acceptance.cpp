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

// Acceptance harness: one PASS/FAIL line per criterion; exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "qcap/erasure.hpp"
#include "qcap/functionals.hpp"
#include "qcap/lemmas.hpp"
#include "qcap/theorem.hpp"

namespace {

using namespace qcap;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

Outcome erasure_capacity_value() {
  double max_err = 0.0;
  bool bound_exact = true;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<double> grid;
    for (int s = 0; s <= 20; ++s) grid.push_back(s * 0.05);
    for (const CapacityPoint& pt : capacity_curve(grid, n)) {
      max_err = std::max(max_err, std::abs(pt.ic_per_use - (1.0 - 2.0 * pt.p)));
      if (pt.capacity_bound != std::max(1.0 - 2.0 * pt.p, 0.0)) bound_exact = false;
    }
  }
  return {max_err <= 1e-9 && bound_exact,
          "max |Ic/N - (1-2p)| = " + num(max_err) + ", bound exact = " + (bound_exact ? "yes" : "no")};
}

Outcome oracle_equivalence() {
  double max_err = 0.0;
  Rng rng(20240601);
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::size_t d = std::size_t{1} << n;
    for (int trial = 0; trial < 100; ++trial) {
      const DensityMatrix rho = random_density(TensorLayout::qubits(n), 1 + rng.uniform_index(d), rng);
      for (double p : {0.1, 0.3, 0.49}) {
        const double block = erasure_coherent_info_block(rho, p, n);
        const double brute = coherent_information(rho, tensor_power(erasure_channel(p), n)).coherent_info;
        max_err = std::max(max_err, std::abs(block - brute));
      }
    }
  }
  return {max_err <= 1e-8, "max |block - Stinespring| = " + num(max_err)};
}

Outcome maximizer_consistency() {
  bool pass = true;
  std::string detail;
  for (double p : {0.1, 0.25, 0.4}) {
    const double best = maximize_coherent_info(erasure_channel(p), 1, 20, 1).best_ic_per_use;
    const double target = 1.0 - 2.0 * p;
    pass = pass && best <= target + 1e-6 && best >= target - 1e-3;
    detail += "p=" + std::to_string(p).substr(0, 4) + ": " + std::to_string(best) + " ";
  }
  for (double p : {0.3, 0.6}) {
    const double best = maximize_coherent_info(erasure_channel(p), 2, 3, 2).best_ic_per_use;
    pass = pass && best <= std::max(1.0 - 2.0 * p, 0.0) + 1e-6;
    detail += "N=2 p=" + std::to_string(p).substr(0, 3) + ": " + std::to_string(best) + " ";
  }
  detail.pop_back();
  return {pass, detail};
}

TheoremSuiteReport& theorem_suite() {
  static TheoremSuiteReport report = run_theorem_suite(100, 1);
  return report;
}

Outcome theorem_suite_check() {
  const TheoremSuiteReport& r = theorem_suite();
  return {r.instances.size() == 100 && r.fidelity_violations == 0 && r.entropy_violations == 0,
          std::to_string(r.instances.size()) + " instances, " + std::to_string(r.flagged) +
              " flagged, fidelity violations " + std::to_string(r.fidelity_violations) +
              ", entropy violations " + std::to_string(r.entropy_violations)};
}

Outcome lemma_suites() {
  const std::vector<LemmaTrialReport> reports{
      verify_fannes(10000, 4, 1),
      verify_lemma1(10000, 4, 1.0 / 40.0, 2),
      verify_lemma2(10000, 4, 1.0 / 80.0, 3),
      verify_mixing_bounds(10000, 4),
  };
  bool pass = true;
  std::string detail;
  for (const auto& r : reports) {
    pass = pass && r.trials == 10000 && r.violations == 0;
    detail += r.lemma + " " + std::to_string(r.violations) + "/" + std::to_string(r.trials) + " ";
  }
  detail.pop_back();
  return {pass, detail};
}

Outcome fidelity_cross_check() {
  double max_err = 0.0;
  Rng rng(77);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 2 + rng.uniform_index(3);
    const std::size_t dout = d + rng.uniform_index(2);
    const std::size_t kraus = 1 + rng.uniform_index(4);
    const ComplexMatrix v = random_unitary(dout * kraus, rng).leftCols(static_cast<Eigen::Index>(d));
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < kraus; ++k) {
      ops.push_back(v.middleRows(static_cast<Eigen::Index>(k * dout), static_cast<Eigen::Index>(dout)));
    }
    const DensityMatrix rho = random_density(TensorLayout::single("S", d), 1 + rng.uniform_index(d), rng);
    const FidelityReport r = entanglement_fidelity(rho, KrausChannel(std::move(ops)), true);
    max_err = std::max(max_err, std::abs(r.value - *r.purification_value));
  }
  double erasure_err = 0.0;
  const DensityMatrix half = DensityMatrix::maximally_mixed(TensorLayout::single("S", 2));
  for (int s = 0; s <= 20; ++s) {
    const double p = s * 0.05;
    erasure_err = std::max(erasure_err, std::abs(entanglement_fidelity(half, erasure_channel(p)).value - (1.0 - p)));
  }
  return {max_err <= 1e-10 && erasure_err <= 1e-10,
          "max |Kraus - purification| = " + num(max_err) + ", max |F_e - (1-p)| = " + num(erasure_err)};
}

Outcome binomial_properties() {
  double mean_err = 0.0;
  for (std::size_t n = 1; n <= 30; ++n) {
    for (int s = 0; s <= 10; ++s) {
      const double p = s * 0.1;
      double sum = 0.0;
      for (std::size_t k = 0; k <= n; ++k) sum += binomial_pmf(n, k, p) * static_cast<double>(k);
      mean_err = std::max(mean_err, std::abs(sum - static_cast<double>(n) * p));
      mean_err = std::max(mean_err, std::abs(binomial_mean(n, p) - static_cast<double>(n) * p));
    }
  }
  const double half = half_sum_fraction(200, 0.3);
  bool trend = true;
  for (double p : {0.1, 0.25, 0.3}) {
    trend = trend && std::abs(half_sum_fraction(200, p) - p) < std::abs(half_sum_fraction(20, p) - p);
  }
  return {mean_err <= 1e-12 && std::abs(half - 0.3) <= 2e-3 && trend,
          "mean err = " + num(mean_err) + ", half_sum(200, 0.3) = " + std::to_string(half) +
              ", shrinking gap = " + (trend ? "yes" : "no")};
}

Outcome counterexample() {
  double max_err = 0.0;
  Rng rng(5);
  for (std::size_t n : {4, 1024}) {
    const double eps = 0.1;
    const PureState psi = random_pure_state(TensorLayout::single("S", n + 1), rng);
    const DensityMatrix rho = high_entropy_counterexample(psi, eps, n);
    const double expected = binary_entropy(eps) + eps * std::log2(static_cast<double>(n));
    const double fid = (psi.amplitudes().adjoint() * rho.matrix() * psi.amplitudes())(0, 0).real();
    max_err = std::max({max_err, std::abs(rho.entropy() - expected), std::abs(fid - (1.0 - eps))});
  }
  return {max_err <= 1e-10, "max error = " + num(max_err)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    const char* title;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"AC1", "erasure capacity value", erasure_capacity_value},
      {"AC2", "block formula vs Stinespring oracle", oracle_equivalence},
      {"AC3", "maximizer consistency", maximizer_consistency},
      {"AC4", "encoder elimination suite", theorem_suite_check},
      {"AC5", "lemma suites", lemma_suites},
      {"AC6", "entanglement fidelity cross-check", fidelity_cross_check},
      {"AC7", "binomial properties", binomial_properties},
      {"AC8", "high-entropy counterexample", counterexample},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s %s %s: %s [%.2fs]\n", c.name, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str(),
                secs);
  }
  const TheoremSuiteReport& r = theorem_suite();
  std::printf("INFO repaired route: %zu flagged instances, %zu with eps_out > 2 eps_in + 1e-7\n",
              r.flagged, r.repaired_fidelity_violations);
  return failures == 0 ? 0 : 1;
}
