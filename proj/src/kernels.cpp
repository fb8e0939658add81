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

#include "setcoh/kernels.hpp"

#include <algorithm>

namespace setcoh::kernels {

double direction_objective(const std::vector<Vec3>& q, const Vec3& p, Aggregate agg) {
  if (q.empty()) return 0.0;
  if (agg == Aggregate::kMax) {
    double best = 0.0;
    for (const auto& v : q) best = std::max(best, p.cross(v).norm());
    return best;
  }
  double sum = 0.0;
  for (const auto& v : q) sum += p.cross(v).norm();
  return sum / static_cast<double>(q.size());
}

namespace {

// Row i of the pair sum, accumulated in j order.
double pair_row(const std::vector<Vec3>& q, size_t i) {
  double row = 0.0;
  for (size_t j = 0; j < q.size(); ++j) {
    if (j != i) row += q[i].cross(q[j]).norm();
  }
  return row;
}

}  // namespace

namespace serial {

void lattice_objective(const std::vector<Vec3>& dirs, const std::vector<Vec3>& q,
                       Aggregate agg, std::vector<double>* out) {
  out->resize(dirs.size());
  for (size_t k = 0; k < dirs.size(); ++k) (*out)[k] = direction_objective(q, dirs[k], agg);
}

double pair_sine_mean(const std::vector<Vec3>& q) {
  if (q.empty()) return 0.0;
  std::vector<double> rows(q.size());
  for (size_t i = 0; i < q.size(); ++i) rows[i] = pair_row(q, i);
  double total = 0.0;
  for (double r : rows) total += r;
  const double n = static_cast<double>(q.size());
  return total / (n * n);
}

}  // namespace serial

namespace omp {

void lattice_objective(const std::vector<Vec3>& dirs, const std::vector<Vec3>& q,
                       Aggregate agg, std::vector<double>* out) {
  out->resize(dirs.size());
  const long long count = static_cast<long long>(dirs.size());
#pragma omp parallel for schedule(static)
  for (long long k = 0; k < count; ++k) (*out)[k] = direction_objective(q, dirs[k], agg);
}

double pair_sine_mean(const std::vector<Vec3>& q) {
  if (q.empty()) return 0.0;
  std::vector<double> rows(q.size());
  const long long count = static_cast<long long>(q.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < count; ++i) rows[i] = pair_row(q, static_cast<size_t>(i));
  // Summed serially so the result matches the reference bit for bit.
  double total = 0.0;
  for (double r : rows) total += r;
  const double n = static_cast<double>(q.size());
  return total / (n * n);
}

}  // namespace omp

}  // namespace setcoh::kernels
