// Copyright 2026 The setcoh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Deterministic minimisation of mean_j |p x q_j| or max_j |p x q_j| over unit
// vectors p: lattice scan plus exact candidate points, then local refinement
// of the best few starts.

#pragma once

#include <vector>

#include "setcoh/kernels.hpp"

namespace setcoh {

struct SphereOptions {
  int lattice_points = 4096;
  int refine_starts = 8;
  // Refinement stops when the step angle drops below this.
  double angle_tolerance = 1e-10;
  // Use the OpenMP lattice kernel.
  bool parallel = true;
};

struct SphereResult {
  double value = 0.0;
  kernels::Vec3 direction{0.0, 0.0, 1.0};
  // Refined value of each start, best lattice/candidate point first.
  std::vector<double> start_values;
};

// n points spread evenly over the sphere (golden-angle spiral).
std::vector<kernels::Vec3> fibonacci_lattice(int n);

// Local descent from p0 on the sphere; returns the refined point and value.
SphereResult refine_on_sphere(const std::vector<kernels::Vec3>& q, kernels::Aggregate agg,
                              const kernels::Vec3& p0, double angle_tolerance = 1e-10);

SphereResult minimize_on_sphere(const std::vector<kernels::Vec3>& q, kernels::Aggregate agg,
                                const SphereOptions& options = {});

}  // namespace setcoh
