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

// Bloch-sphere kernels. Each kernel has a serial reference implementation and
// an OpenMP implementation with identical results (every output element is
// computed by the same floating-point sequence; reductions are done in a
// fixed order).

#pragma once

#include <vector>

#include <Eigen/Dense>

namespace setcoh::kernels {

using Vec3 = Eigen::Vector3d;

enum class Aggregate { kMean, kMax };

// Objective of a basis direction p for Bloch vectors q_j (not normalised):
// mean_j |p x q_j| or max_j |p x q_j|.
double direction_objective(const std::vector<Vec3>& q, const Vec3& p, Aggregate agg);

namespace serial {

// out[k] = direction_objective(q, dirs[k], agg).
void lattice_objective(const std::vector<Vec3>& dirs, const std::vector<Vec3>& q,
                       Aggregate agg, std::vector<double>* out);

// (1/n^2) sum_{i,j} |q_i x q_j|.
double pair_sine_mean(const std::vector<Vec3>& q);

}  // namespace serial

namespace omp {

void lattice_objective(const std::vector<Vec3>& dirs, const std::vector<Vec3>& q,
                       Aggregate agg, std::vector<double>* out);

double pair_sine_mean(const std::vector<Vec3>& q);

}  // namespace omp

}  // namespace setcoh::kernels
