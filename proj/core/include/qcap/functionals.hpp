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

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "qcap/channels.hpp"
#include "qcap/states.hpp"

namespace qcap {

enum class FidelityMethod { kraus_formula, purification_definition };

struct FidelityReport {
  double value = 0.0;
  FidelityMethod method = FidelityMethod::kraus_formula;
  /// Set when the purification path was also evaluated.
  std::optional<double> purification_value;
};

/// sum_k |Tr(rho A_k)|^2. With `cross_check`, also evaluates
/// <eta|(I (x) E)(|eta><eta|)|eta> on the canonical purification.
FidelityReport entanglement_fidelity(const DensityMatrix& rho, const KrausChannel& ch,
                                     bool cross_check = false);

/// <eta|(I (x) E)(|eta><eta|)|eta> for an arbitrary purification `eta`,
/// with the channel acting on factor `label`.
double entanglement_fidelity_via(const PureState& eta, std::string_view label,
                                 const KrausChannel& ch);

double entropy_exchange(const DensityMatrix& rho, const KrausChannel& ch);

struct CoherentInfoReport {
  double output_entropy = 0.0;
  double env_entropy = 0.0;
  double coherent_info = 0.0;
};

CoherentInfoReport coherent_information(const DensityMatrix& rho, const KrausChannel& ch);

/// Source state with encoder into `block_size` channel inputs and a decoder
/// back to the source space.
struct CodingScheme {
  DensityMatrix source;
  KrausChannel encoder;
  KrausChannel decoder;
  std::size_t block_size = 1;
};

/// decoder o ch^(x)N o encoder. Errors name the stage whose dimensions fail
/// to chain.
KrausChannel end_to_end_channel(const CodingScheme& scheme, const KrausChannel& ch);
FidelityReport end_to_end_fidelity(const CodingScheme& scheme, const KrausChannel& ch,
                                   bool cross_check = false);

}  // namespace qcap
