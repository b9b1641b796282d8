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

// Plain-text density-matrix files:
//
//   dims d1 d2 ...
//   re im re im ...        (row-major, any whitespace layout)
//
// Factors are labeled q0, q1, ... in file order.

#pragma once

#include <iosfwd>
#include <string>

#include "qcap/states.hpp"

namespace qcap {

DensityMatrix read_density(std::istream& in);
DensityMatrix read_density_file(const std::string& path);
void write_density(std::ostream& out, const DensityMatrix& rho);
void write_density_file(const std::string& path, const DensityMatrix& rho);

}  // namespace qcap
