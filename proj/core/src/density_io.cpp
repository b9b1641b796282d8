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

#include "qcap/density_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <locale>
#include <ostream>
#include <sstream>

namespace qcap {

DensityMatrix read_density(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("density file: empty input");
  std::istringstream head(line);
  head.imbue(std::locale::classic());
  std::string tag;
  head >> tag;
  if (tag != "dims") {
    throw ValidationError("density file: first line must start with 'dims', got '" + tag + "'");
  }
  std::vector<Factor> factors;
  long long dim = 0;
  while (head >> dim) {
    if (dim <= 0) throw ValidationError("density file: factor dimensions must be positive");
    factors.push_back({"q" + std::to_string(factors.size()), static_cast<std::size_t>(dim)});
  }
  if (!head.eof()) throw ValidationError("density file: malformed dims line");
  if (factors.empty()) throw ValidationError("density file: no factor dimensions given");
  const TensorLayout layout(std::move(factors));
  const std::size_t d = layout.total_dim();
  if (d > 4096) throw ValidationError("density file: dimension " + std::to_string(d) + " too large");

  in.imbue(std::locale::classic());
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      double re = 0.0;
      double im = 0.0;
      if (!(in >> re >> im)) {
        throw ValidationError("density file: expected " + std::to_string(d * d) +
                              " complex entries, input ended at entry " +
                              std::to_string(r * n + c));
      }
      m(r, c) = Complex(re, im);
    }
  }
  in >> std::ws;
  if (!in.eof()) throw ValidationError("density file: trailing data after matrix entries");
  return DensityMatrix(std::move(m), layout);
}

DensityMatrix read_density_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("density file: cannot open '" + path + "'");
  return read_density(in);
}

void write_density(std::ostream& out, const DensityMatrix& rho) {
  out << "dims";
  for (const auto& f : rho.layout().factors()) out << ' ' << f.dim;
  out << '\n';
  char buf[64];
  const auto n = static_cast<Eigen::Index>(rho.dim());
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const Complex z = rho.matrix()(r, c);
      std::snprintf(buf, sizeof(buf), "%s%.17g %.17g", c == 0 ? "" : " ", z.real(), z.imag());
      out << buf;
    }
    out << '\n';
  }
}

void write_density_file(const std::string& path, const DensityMatrix& rho) {
  std::ofstream out(path);
  if (!out) throw ValidationError("density file: cannot write '" + path + "'");
  write_density(out, rho);
}

}  // namespace qcap
