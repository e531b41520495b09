// SPDX-License-Identifier: Apache-2.0
//
// riscade - cooperative double-RIS MIMO ergodic-rate analysis and design
// Copyright (C) 2026 The riscade authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "riscade/geometry.hpp"

#include <string>

#include "riscade/errors.hpp"

namespace riscade {

void SystemDims::validate() const {
  if (bs_antennas < 1 || ue_antennas < 1 || ris1_elements < 1 ||
      ris2_elements < 1)
    throw ConfigError("all antenna/element counts must be >= 1 (got M=" +
                      std::to_string(bs_antennas) + ", N=" +
                      std::to_string(ue_antennas) + ", L1=" +
                      std::to_string(ris1_elements) + ", L2=" +
                      std::to_string(ris2_elements) + ")");
}

std::vector<Vec3> RisGrid::element_positions() const {
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      pts.push_back({r * spacing_m, c * spacing_m, 0.0});
  return pts;
}

RisGrid near_square_grid(int elements, double spacing_m) {
  if (elements < 1) throw ConfigError("grid needs at least one element");
  int rows = static_cast<int>(std::sqrt(static_cast<double>(elements)));
  while (rows > 1 && elements % rows != 0) --rows;
  return RisGrid{rows, elements / rows, spacing_m};
}

void NodeGeometry::validate(const SystemDims& dims) const {
  dims.validate();
  if (wavelength_m <= 0.0) throw ConfigError("wavelength must be positive");
  if (bs_antenna_spacing_wl <= 0.0 || ue_antenna_spacing_wl <= 0.0)
    throw ConfigError("antenna spacing must be positive");
  if (ris1_grid.elements() != dims.ris1_elements)
    throw ConfigError("RIS1 grid " + std::to_string(ris1_grid.rows) + "x" +
                      std::to_string(ris1_grid.cols) + " does not hold " +
                      std::to_string(dims.ris1_elements) + " elements");
  if (ris2_grid.elements() != dims.ris2_elements)
    throw ConfigError("RIS2 grid " + std::to_string(ris2_grid.rows) + "x" +
                      std::to_string(ris2_grid.cols) + " does not hold " +
                      std::to_string(dims.ris2_elements) + " elements");
  if (ris1_grid.spacing_m <= 0.0 || ris2_grid.spacing_m <= 0.0)
    throw ConfigError("element spacing must be positive");
  const Vec3 nodes[4] = {bs, user, ris1, ris2};
  const char* names[4] = {"bs", "user", "ris1", "ris2"};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (distance(nodes[i], nodes[j]) <= 0.0)
        throw ConfigError(std::string("nodes ") + names[i] + " and " +
                          names[j] + " coincide");
}

NodeGeometry default_geometry(const SystemDims& dims, double wavelength_m,
                              double element_spacing_wl) {
  NodeGeometry g;
  g.wavelength_m = wavelength_m;
  g.ris1_grid =
      near_square_grid(dims.ris1_elements, element_spacing_wl * wavelength_m);
  g.ris2_grid =
      near_square_grid(dims.ris2_elements, element_spacing_wl * wavelength_m);
  return g;
}

}  // namespace riscade
