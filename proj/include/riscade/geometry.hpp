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

#pragma once

#include <cmath>
#include <vector>

namespace riscade {

/// Antenna/element counts of the BS, the user, and the two surfaces.
struct SystemDims {
  int bs_antennas = 8;    // M
  int ue_antennas = 4;    // N
  int ris1_elements = 100;  // L1, surface next to the user
  int ris2_elements = 100;  // L2, surface next to the BS

  void validate() const;

  double ratio_ris1_bs() const {
    return static_cast<double>(ris1_elements) / bs_antennas;
  }
  double ratio_ris2_bs() const {
    return static_cast<double>(ris2_elements) / bs_antennas;
  }
  double ratio_ue_ris1() const {
    return static_cast<double>(ue_antennas) / ris1_elements;
  }
  double ratio_ue_ris2() const {
    return static_cast<double>(ue_antennas) / ris2_elements;
  }
};

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline double distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// Rectangular element layout of one reflecting surface.
struct RisGrid {
  int rows = 0;
  int cols = 0;
  double spacing_m = 0.0;

  int elements() const { return rows * cols; }

  /// Element coordinates in the surface plane, row-major order.
  std::vector<Vec3> element_positions() const;
};

/// Most-square factorization of `elements` (rows <= cols).
RisGrid near_square_grid(int elements, double spacing_m);

/// Node positions plus the array layouts that drive spatial correlation.
struct NodeGeometry {
  Vec3 bs{1.0, 0.0, 5.0};
  Vec3 user{1.0, 50.0, 1.5};
  Vec3 ris1{0.0, 50.0, 3.0};
  Vec3 ris2{0.0, 0.0, 3.0};
  double wavelength_m = 0.1;
  double bs_antenna_spacing_wl = 0.5;
  double ue_antenna_spacing_wl = 0.5;
  RisGrid ris1_grid;
  RisGrid ris2_grid;

  void validate(const SystemDims& dims) const;
};

/// Default deployment: half-wavelength near-square grids at both surfaces.
NodeGeometry default_geometry(const SystemDims& dims, double wavelength_m = 0.1,
                              double element_spacing_wl = 0.5);

}  // namespace riscade
