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

#include "setcoh/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace setcoh {

using kernels::Aggregate;
using kernels::Vec3;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvPhi = 0.61803398874989484820;

// Beyond these sizes the exact candidate families get too large.
constexpr size_t kMaxAxisCandidates = 256;
constexpr size_t kMaxPairCandidates = 64;
constexpr size_t kMaxTripleCandidates = 16;

void tangent_basis(const Vec3& p, Vec3* e1, Vec3* e2) {
  Eigen::Index axis = 0;
  p.cwiseAbs().minCoeff(&axis);
  *e1 = Vec3::Unit(axis).cross(p).normalized();
  *e2 = p.cross(*e1);
}

Vec3 geodesic(const Vec3& p, const Vec3& t, double s) {
  return (std::cos(s) * p + std::sin(s) * t).normalized();
}

// Golden-section minimisation of f on [lo, hi].
template <typename F>
double golden(F&& f, double lo, double hi, double tol, double* best_s) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  if (fc <= fd) {
    *best_s = c;
    return fc;
  }
  *best_s = d;
  return fd;
}

void add_pair_candidates(const std::vector<Vec3>& q, std::vector<Vec3>* out) {
  for (size_t i = 0; i < q.size(); ++i) {
    const double a = q[i].norm();
    if (a == 0.0) continue;
    const Vec3 u = q[i] / a;
    for (size_t j = i + 1; j < q.size(); ++j) {
      const double b = q[j].norm();
      if (b == 0.0) continue;
      for (double sign : {1.0, -1.0}) {
        const Vec3 v = sign * q[j] / b;
        const Vec3 perp = v - u.dot(v) * u;
        const double sin_g = perp.norm();
        if (sin_g < 1e-12) continue;
        const Vec3 w = perp / sin_g;
        const double cos_g = u.dot(v);
        // a sin(theta) = b sin(gamma - theta) on the great circle through u, v.
        const double theta = std::atan2(b * sin_g, a + b * cos_g);
        out->push_back(std::cos(theta) * u + std::sin(theta) * w);
      }
    }
  }
}

void add_triple_candidates(const std::vector<Vec3>& q, std::vector<Vec3>* out) {
  std::vector<Vec3> u;
  for (const auto& v : q) {
    if (v.norm() > 0.0) u.push_back(v.normalized());
  }
  for (size_t i = 0; i < u.size(); ++i) {
    for (size_t j = i + 1; j < u.size(); ++j) {
      for (size_t k = j + 1; k < u.size(); ++k) {
        for (double sj : {1.0, -1.0}) {
          for (double sk : {1.0, -1.0}) {
            const Vec3 p = (u[i] - sj * u[j]).cross(u[i] - sk * u[k]);
            if (p.norm() > 1e-12) out->push_back(p.normalized());
          }
        }
      }
    }
  }
}

}  // namespace

std::vector<Vec3> fibonacci_lattice(int n) {
  std::vector<Vec3> out;
  out.reserve(std::max(n, 0));
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < n; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * k;
    out.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return out;
}

SphereResult refine_on_sphere(const std::vector<Vec3>& q, Aggregate agg, const Vec3& p0,
                              double angle_tolerance) {
  auto f = [&](const Vec3& p) { return kernels::direction_objective(q, p, agg); };
  Vec3 p = p0.normalized();
  double fp = f(p);
  double h = 0.05;
  double offset = 0.0;
  constexpr int kDirections = 8;
  while (h > angle_tolerance) {
    Vec3 e1, e2;
    tangent_basis(p, &e1, &e2);
    bool improved = false;
    for (int k = 0; k < kDirections && !improved; ++k) {
      const double phi = offset + 2.0 * kPi * k / kDirections;
      const Vec3 t = std::cos(phi) * e1 + std::sin(phi) * e2;
      const double f1 = f(geodesic(p, t, h));
      if (!(f1 < fp)) continue;
      // Bracket the minimum along the geodesic, then golden-section.
      double s = h;
      double fs = f1;
      while (s < 1.0) {
        const double f2 = f(geodesic(p, t, 2.0 * s));
        if (!(f2 < fs)) break;
        s *= 2.0;
        fs = f2;
      }
      double best_s = s;
      const double fg = golden([&](double x) { return f(geodesic(p, t, x)); }, 0.0, 2.0 * s,
                               std::max(angle_tolerance, h / 8.0), &best_s);
      if (fg < fs) {
        s = best_s;
        fs = fg;
      }
      p = geodesic(p, t, s);
      fp = fs;
      improved = true;
      h = std::max(h, std::min(s, 0.05));
    }
    if (!improved) {
      h *= 0.5;
      offset += kPi / (2.0 * kDirections) * 0.7548776662466927;  // irrational turn
    }
  }
  SphereResult out;
  out.value = fp;
  out.direction = p;
  out.start_values = {fp};
  return out;
}

SphereResult minimize_on_sphere(const std::vector<Vec3>& q, Aggregate agg,
                                const SphereOptions& options) {
  std::vector<Vec3> points = fibonacci_lattice(options.lattice_points);
  if (q.size() <= kMaxAxisCandidates) {
    for (const auto& v : q) {
      if (v.norm() > 0.0) points.push_back(v.normalized());
    }
  }
  if (agg == Aggregate::kMax && q.size() <= kMaxPairCandidates) add_pair_candidates(q, &points);
  if (agg == Aggregate::kMax && q.size() <= kMaxTripleCandidates) add_triple_candidates(q, &points);

  std::vector<double> values;
  if (options.parallel) {
    kernels::omp::lattice_objective(points, q, agg, &values);
  } else {
    kernels::serial::lattice_objective(points, q, agg, &values);
  }
  std::vector<size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });

  // Best few starts, skipping near-duplicates (p and -p are the same basis).
  std::vector<Vec3> starts;
  for (size_t idx : order) {
    if (static_cast<int>(starts.size()) >= std::max(1, options.refine_starts)) break;
    const Vec3& p = points[idx];
    bool duplicate = false;
    for (const auto& s : starts) {
      if (std::abs(std::abs(s.dot(p)) - 1.0) < 1e-8) duplicate = true;
    }
    if (!duplicate) starts.push_back(p);
  }

  SphereResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& s : starts) {
    const SphereResult r = refine_on_sphere(q, agg, s, options.angle_tolerance);
    best.start_values.push_back(r.value);
    if (r.value < best.value) {
      best.value = r.value;
      best.direction = r.direction;
    }
  }
  return best;
}

}  // namespace setcoh
