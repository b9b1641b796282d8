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

#include "qcap/functionals.hpp"

#include <algorithm>
#include <cmath>

namespace qcap {

FidelityReport entanglement_fidelity(const DensityMatrix& rho, const KrausChannel& ch,
                                     bool cross_check) {
  if (ch.in_dim() != rho.dim() || ch.out_dim() < rho.dim()) {
    throw ValidationError("entanglement_fidelity: channel is " + std::to_string(ch.in_dim()) +
                          " -> " + std::to_string(ch.out_dim()) + " but state dimension is " +
                          std::to_string(rho.dim()));
  }
  double f = 0.0;
  // Output levels beyond the input dimension are orthogonal to the embedded
  // input space and drop out of the overlap.
  const auto d = static_cast<Eigen::Index>(rho.dim());
  for (const auto& a : ch.kraus_ops()) f += std::norm((rho.matrix() * a.topRows(d)).trace());
  FidelityReport report{std::clamp(f, 0.0, 1.0), FidelityMethod::kraus_formula, std::nullopt};
  if (cross_check) {
    const DensityMatrix relabeled = rho.relabeled(TensorLayout::single("S", rho.dim()));
    report.purification_value = entanglement_fidelity_via(purify(relabeled, "R"), "S", ch);
  }
  return report;
}

double entanglement_fidelity_via(const PureState& eta, std::string_view label,
                                 const KrausChannel& ch) {
  const DensityMatrix out = apply_to_subsystem(ch, DensityMatrix::from_pure(eta), label);
  if (ch.out_dim() < ch.in_dim()) {
    throw ValidationError("entanglement_fidelity_via: channel output dimension " +
                          std::to_string(ch.out_dim()) + " is below its input dimension " +
                          std::to_string(ch.in_dim()));
  }
  // Embed eta into the output layout: input level i maps to output level i.
  const ComplexMatrix amp = eta.split(label);
  ComplexMatrix padded = ComplexMatrix::Zero(static_cast<Eigen::Index>(ch.out_dim()), amp.cols());
  padded.topRows(amp.rows()) = amp;
  const ComplexVector v = PureState::merge(padded, label, out.layout()).amplitudes();
  return std::clamp((v.adjoint() * out.matrix() * v)(0, 0).real(), 0.0, 1.0);
}

double entropy_exchange(const DensityMatrix& rho, const KrausChannel& ch) {
  return environment_state(ch, rho).entropy();
}

CoherentInfoReport coherent_information(const DensityMatrix& rho, const KrausChannel& ch) {
  CoherentInfoReport r;
  r.output_entropy = apply(ch, rho).entropy();
  r.env_entropy = entropy_exchange(rho, ch);
  r.coherent_info = r.output_entropy - r.env_entropy;
  return r;
}

KrausChannel end_to_end_channel(const CodingScheme& scheme, const KrausChannel& ch) {
  const std::size_t d = scheme.source.dim();
  if (scheme.encoder.in_dim() != d) {
    throw ValidationError("coding scheme: encoder input dimension " +
                          std::to_string(scheme.encoder.in_dim()) +
                          " does not match source dimension " + std::to_string(d));
  }
  const KrausChannel block = tensor_power(ch, scheme.block_size);
  if (scheme.encoder.out_dim() != block.in_dim()) {
    throw ValidationError("coding scheme: encoder output dimension " +
                          std::to_string(scheme.encoder.out_dim()) +
                          " does not match channel block input dimension " +
                          std::to_string(block.in_dim()));
  }
  if (scheme.decoder.in_dim() != block.out_dim()) {
    throw ValidationError("coding scheme: decoder input dimension " +
                          std::to_string(scheme.decoder.in_dim()) +
                          " does not match channel block output dimension " +
                          std::to_string(block.out_dim()));
  }
  if (scheme.decoder.out_dim() != d) {
    throw ValidationError("coding scheme: decoder output dimension " +
                          std::to_string(scheme.decoder.out_dim()) +
                          " does not match source dimension " + std::to_string(d));
  }
  return compose(scheme.decoder, compose(block, scheme.encoder));
}

FidelityReport end_to_end_fidelity(const CodingScheme& scheme, const KrausChannel& ch,
                                   bool cross_check) {
  return entanglement_fidelity(scheme.source, end_to_end_channel(scheme, ch), cross_check);
}

}  // namespace qcap
