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

// Pure-qubit configurations with large set coherence: the max-min problem
// max_{q} min_{p} of the mean (or max) of |p x q_j| over unit Bloch vectors.

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "setcoh/core.hpp"
#include "setcoh/kernels.hpp"

namespace setcoh {

// n unit Bloch vectors.
class SphereConfig {
 public:
  SphereConfig() = default;
  // Throws kInvalidBloch unless every vector has unit norm within 1e-10.
  explicit SphereConfig(std::vector<Eigen::Vector3d> vectors);

  int size() const { return static_cast<int>(v_.size()); }
  const Eigen::Vector3d& operator[](int i) const { return v_[i]; }
  const std::vector<Eigen::Vector3d>& vectors() const { return v_; }
  StateSet states() const;

 private:
  std::vector<Eigen::Vector3d> v_;
};

// (1/n^2) sum_{i,j} |sin(q_i, q_j)|; bounds evaluate_r1_config from above.
double energy_upper_bound(const SphereConfig& c);
// Serial reference of the same sum.
double energy_upper_bound_serial(const SphereConfig& c);

// Mean (resp. max) robustness of the pure states, minimised over frames.
double evaluate_r1_config(const SphereConfig& c);
double evaluate_rmax_config(const SphereConfig& c);

// Orthonormal pair, orthonormal basis, regular tetrahedron, half-icosahedron
// for n = 2, 3, 4, 6. Throws kUnsupportedN otherwise.
SphereConfig known_config(int n);

// n independent area-uniform points.
SphereConfig uniform_sample_config(int n, std::uint64_t seed);

struct ConfigSearchOptions {
  int restarts = 50;
  // Outer moves per restart.
  int max_moves = 4000;
  // The move radius shrinks until it drops below this.
  double radius_tolerance = 1e-7;
  std::uint64_t seed = 0;
  int threads = 0;
};

struct ConfigSearchResult {
  SphereConfig config;
  double value = 0.0;
  std::vector<double> restart_values;
};

ConfigSearchResult search_optimal_r1(int n, const ConfigSearchOptions& options = {});
ConfigSearchResult search_optimal_rmax(int n, const ConfigSearchOptions& options = {});

}  // namespace setcoh
