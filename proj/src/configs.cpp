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

#include "setcoh/configs.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <random>

#include "setcoh/sphere.hpp"

namespace setcoh {

using kernels::Aggregate;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInitialRadius = 0.5;
// Restarts whose fast value is among the best few are re-evaluated with the
// full inner search before the winner is picked.
constexpr int kFinalists = 4;

// Cheaper inner search used while the configuration moves.
SphereOptions fast_inner_options() {
  SphereOptions o;
  o.lattice_points = 192;
  o.refine_starts = 3;
  o.angle_tolerance = 1e-9;
  o.parallel = false;
  return o;
}

double inner_value(const std::vector<Eigen::Vector3d>& q, Aggregate agg, bool fast) {
  static const SphereOptions fast_options = fast_inner_options();
  return fast ? minimize_on_sphere(q, agg, fast_options).value
              : minimize_on_sphere(q, agg).value;
}

// Rotate v by angle about a uniformly random axis orthogonal to it.
Eigen::Vector3d cap_move(const Eigen::Vector3d& v, double angle, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Vector3d t(normal(rng), normal(rng), normal(rng));
  t -= t.dot(v) * v;
  if (t.norm() < 1e-12) return v;
  t.normalize();
  return (std::cos(angle) * v + std::sin(angle) * t).normalized();
}

struct RestartOutcome {
  std::vector<Eigen::Vector3d> q;
  double value = 0.0;
};

// Greedy ascent of f: single-vector or collective cap moves, with the
// radius halved after a run of rejected moves.
template <typename F>
RestartOutcome ascend(std::vector<Eigen::Vector3d> q, F&& f, const ConfigSearchOptions& opt,
                      std::mt19937_64& rng) {
  const int n = static_cast<int>(q.size());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, n - 1);
  double value = f(q);
  double radius = kInitialRadius;
  int fails = 0;
  const int patience = 2 * n + 4;
  for (int move = 0; move < opt.max_moves && radius >= opt.radius_tolerance; ++move) {
    std::vector<Eigen::Vector3d> trial = q;
    if (unit(rng) < 0.5) {
      const int i = pick(rng);
      trial[i] = cap_move(trial[i], radius * unit(rng), rng);
    } else {
      const double scale = radius / std::sqrt(static_cast<double>(n));
      for (auto& v : trial) v = cap_move(v, scale * unit(rng), rng);
    }
    const double tv = f(trial);
    if (tv > value) {
      q = std::move(trial);
      value = tv;
      fails = 0;
    } else if (++fails >= patience) {
      radius *= 0.5;
      fails = 0;
    }
  }
  return {std::move(q), value};
}

ConfigSearchResult search(int n, Aggregate agg, const ConfigSearchOptions& opt) {
  if (n < 1) throw Error(ErrorCode::kUnsupportedN, "configuration needs at least one vector");
  if (opt.restarts < 1) throw Error(ErrorCode::kUnsupportedInput, "restarts must be at least 1");
  const int total = opt.restarts;
  std::vector<RestartOutcome> outcomes(total);
  std::vector<std::exception_ptr> errors(total);
  auto run = [&](int r) {
    try {
      const SphereConfig start = uniform_sample_config(n, derive_seed(opt.seed, r));
      std::mt19937_64 rng(derive_seed(opt.seed, 0x100000000ULL + r));
      std::vector<Eigen::Vector3d> q = start.vectors();
      if (agg == Aggregate::kMean) {
        // The pair-sine energy bounds the mean value from above and is cheap;
        // its maximisers are good starts for the max-min ascent.
        q = ascend(std::move(q), [](const auto& v) { return kernels::serial::pair_sine_mean(v); },
                   opt, rng).q;
      }
      outcomes[r] = ascend(std::move(q), [agg](const auto& v) { return inner_value(v, agg, true); },
                           opt, rng);
    } catch (...) {
      errors[r] = std::current_exception();
    }
  };
  if (opt.threads > 0) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(opt.threads)
    for (int r = 0; r < total; ++r) run(r);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (int r = 0; r < total; ++r) run(r);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ConfigSearchResult out;
  std::vector<int> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return outcomes[a].value > outcomes[b].value; });
  out.value = -1.0;
  for (int k = 0; k < std::min(kFinalists, total); ++k) {
    const auto& o = outcomes[order[k]];
    const double v = inner_value(o.q, agg, false);
    if (v > out.value) {
      out.value = v;
      out.config = SphereConfig(o.q);
    }
  }
  for (const auto& o : outcomes) out.restart_values.push_back(o.value);
  return out;
}

}  // namespace

SphereConfig::SphereConfig(std::vector<Eigen::Vector3d> vectors) : v_(std::move(vectors)) {
  for (const auto& v : v_) {
    if (!(std::abs(v.norm() - 1.0) <= 1e-10)) {
      throw Error(ErrorCode::kInvalidBloch, "configuration vectors must have unit norm");
    }
  }
}

StateSet SphereConfig::states() const {
  std::vector<DensityMatrix> out;
  for (const auto& v : v_) out.push_back(bloch_to_state(BlochVector::from(v)));
  return StateSet(std::move(out));
}

double energy_upper_bound(const SphereConfig& c) {
  return kernels::omp::pair_sine_mean(c.vectors());
}

double energy_upper_bound_serial(const SphereConfig& c) {
  return kernels::serial::pair_sine_mean(c.vectors());
}

double evaluate_r1_config(const SphereConfig& c) {
  return inner_value(c.vectors(), Aggregate::kMean, false);
}

double evaluate_rmax_config(const SphereConfig& c) {
  return inner_value(c.vectors(), Aggregate::kMax, false);
}

SphereConfig known_config(int n) {
  std::vector<Eigen::Vector3d> v;
  switch (n) {
    case 2:
      v = {Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitZ()};
      break;
    case 3:
      v = {Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(), Eigen::Vector3d::UnitZ()};
      break;
    case 4: {
      const double s = 1.0 / std::sqrt(3.0);
      v = {Eigen::Vector3d(s, s, s), Eigen::Vector3d(s, -s, -s), Eigen::Vector3d(-s, s, -s),
           Eigen::Vector3d(-s, -s, s)};
      break;
    }
    case 6: {
      // North pole and the upper ring of an icosahedron.
      v.push_back(Eigen::Vector3d::UnitZ());
      const double z = 1.0 / std::sqrt(5.0);
      const double r = 2.0 / std::sqrt(5.0);
      for (int k = 0; k < 5; ++k) {
        const double phi = 2.0 * kPi * k / 5.0;
        v.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
      }
      break;
    }
    default:
      throw Error(ErrorCode::kUnsupportedN,
                  "known configurations exist for n = 2, 3, 4, 6 only");
  }
  for (auto& x : v) x.normalize();
  return SphereConfig(std::move(v));
}

SphereConfig uniform_sample_config(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::kUnsupportedN, "configuration needs at least one vector");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Eigen::Vector3d> v;
  v.reserve(n);
  while (static_cast<int>(v.size()) < n) {
    Eigen::Vector3d g(normal(rng), normal(rng), normal(rng));
    if (g.norm() < 1e-12) continue;
    v.push_back(g.normalized());
  }
  return SphereConfig(std::move(v));
}

ConfigSearchResult search_optimal_r1(int n, const ConfigSearchOptions& options) {
  return search(n, Aggregate::kMean, options);
}

ConfigSearchResult search_optimal_rmax(int n, const ConfigSearchOptions& options) {
  return search(n, Aggregate::kMax, options);
}

}  // namespace setcoh
