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

#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "commands.hpp"
#include "qcap/linalg.hpp"

namespace {

// Returns the stream named by --out, or stdout when empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw qcap::ValidationError("cannot open --out file '" + path + "'");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

}  // namespace

int main(int argc, char** argv) {
  using namespace qcap::cli;

  CLI::App app{"qcap: coherent information, erasure capacity and encoder elimination"};
  app.require_subcommand(1);
  std::string out_path;

  CurveConfig curve;
  auto* c_curve = app.add_subcommand("capacity-curve", "Per-use coherent information of the "
                                                       "maximally mixed source vs. p");
  c_curve->add_option("--p-start", curve.p_start, "First erasure probability");
  c_curve->add_option("--p-end", curve.p_end, "Last erasure probability");
  c_curve->add_option("--steps", curve.steps, "Number of grid points");
  c_curve->add_option("--n", curve.n, "Block size N");
  c_curve->add_option("--out", out_path, "CSV output path (default stdout)");

  CoherentInfoConfig ci;
  auto* c_ci = app.add_subcommand("coherent-info", "Coherent information through erasure^N");
  c_ci->add_option("--p", ci.p, "Erasure probability")->required();
  c_ci->add_option("--n", ci.n, "Block size N");
  c_ci->add_option("--state", ci.state, "maximally-mixed | random | file");
  c_ci->add_option("--state-file", ci.state_file, "Density-matrix file for --state file");
  c_ci->add_option("--seed", ci.seed, "Seed for --state random");
  c_ci->add_option("--out", out_path, "CSV output path (default stdout)");

  MaximizeConfig mx;
  auto* c_mx = app.add_subcommand("maximize-ci", "Search for the best coherent information");
  c_mx->add_option("--p", mx.p, "Erasure probability")->required();
  c_mx->add_option("--n", mx.n, "Block size N");
  c_mx->add_option("--restarts", mx.restarts, "Random restarts");
  c_mx->add_option("--seed", mx.seed, "Seed");
  c_mx->add_option("--out", out_path, "CSV output path (default stdout)");

  TheoremConfig th;
  auto* c_th = app.add_subcommand("theorem-demo", "Encoder elimination on random schemes");
  c_th->add_option("--trials", th.trials, "Number of instances");
  c_th->add_option("--seed", th.seed, "Seed");
  c_th->add_option("--scheme", th.scheme, "random | noiseless");
  c_th->add_option("--out", out_path, "CSV output path (default stdout)");

  LemmaConfig lm;
  auto* c_lm = app.add_subcommand("lemma-check", "Randomized entropy inequality checks");
  c_lm->add_option("lemma", lm.lemma, "fannes | lemma1 | lemma2 | mixing")->required();
  c_lm->add_option("--trials", lm.trials, "Number of trials");
  c_lm->add_option("--seed", lm.seed, "Seed");
  c_lm->add_option("--dim", lm.dim, "Dimension d");
  c_lm->add_option("--eps-max", lm.eps_max, "Infidelity ceiling for lemma1/lemma2");
  c_lm->add_option("--components", lm.components, "Maximum mixture size for mixing");
  c_lm->add_option("--out", out_path, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    Output out(out_path);
    std::ostream& os = out.stream();
    if (*c_curve) return run_capacity_curve(curve, os);
    if (*c_ci) return run_coherent_info(ci, os);
    if (*c_mx) return run_maximize(mx, os);
    if (*c_th) return run_theorem_demo(th, os, std::cerr);
    if (*c_lm) return run_lemma_check(lm, os);
  } catch (const qcap::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kValidation;
}
