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

// Acceptance suite: one PASS/FAIL line per criterion. Run with no arguments
// for all ten, or with --only N for one. Exit status is non-zero when any
// selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "setcoh/basis_search.hpp"
#include "setcoh/configs.hpp"
#include "setcoh/games.hpp"
#include "setcoh/projective.hpp"
#include "setcoh/robustness.hpp"

namespace {

using namespace setcoh;

// Pinned tolerances.
constexpr double kTableEvalTol = 1e-6;
constexpr double kTableSearchTol = 1e-4;
constexpr int kTableRestarts = 50;
constexpr int kUniformSamples = 10000;
constexpr double kUniformTol = 0.01;
constexpr int kClosedFormStates = 100;
constexpr double kClosedFormTol = 1e-6;
constexpr int kPairsPerDim = 100;
constexpr double kPairTol = 1e-5;
constexpr int kPairRestarts = 8;
constexpr double kTrineTol = 1e-3;
constexpr double kRmaxFourBar = 0.90;
constexpr double kPovmTol = 1e-3;
constexpr int kRandomPovms = 20;
constexpr double kIncoherentPovmTol = 1e-6;
constexpr int kPovmRestarts = 8;
constexpr double kGameTol = 1e-5;
constexpr double kGameBoundSlack = 1e-6;
constexpr double kReconstructTol = 1e-8;
constexpr double kIdempotentTol = 1e-9;
constexpr int kRandomDecompositions = 200;
constexpr int kFaithfulSets = 50;
constexpr double kFaithfulTol = 1e-6;
constexpr int kFaithfulRestarts = 1;
constexpr double kBoundMargin = 1e-7;
constexpr double kNonconvexTol = 1e-6;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
};

// Every randomized set value (d, n, R or R1) is checked against the general
// bounds by criterion 9.
struct BoundRecord {
  int d;
  int n;
  double value;
  bool mean;
};

std::vector<BoundRecord>& bound_records() {
  static std::vector<BoundRecord> records;
  return records;
}

void record(int d, int n, double value, bool mean) {
  bound_records().push_back({d, n, value, mean});
}

// ---------------------------------------------------------------------------

void criterion_1(Outcome* o) {
  // Reference values with the 5-digit table entries as their roundings.
  const int ns[4] = {2, 3, 4, 6};
  const double exact[4] = {0.5, 2.0 / 3.0, std::sqrt(0.5), std::sqrt(5.0) / 3.0};
  const double table[4] = {0.5, 0.66667, 0.70711, 0.74536};
  double worst_eval = 0.0;
  double worst_search = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (std::abs(std::round(exact[k] * 1e5) / 1e5 - table[k]) > 1e-12) o->pass = false;
    const double v = evaluate_r1_config(known_config(ns[k]));
    worst_eval = std::max(worst_eval, std::abs(v - exact[k]));
    ConfigSearchOptions opt;
    opt.restarts = kTableRestarts;
    const ConfigSearchResult r = search_optimal_r1(ns[k], opt);
    record(2, ns[k], r.value, true);
    worst_search = std::max(worst_search, std::abs(r.value - exact[k]));
    o->detail << " n=" << ns[k] << ":" << r.value;
  }
  o->pass = o->pass && worst_eval <= kTableEvalTol && worst_search <= kTableSearchTol;
  o->detail << " | eval err " << worst_eval << " (tol " << kTableEvalTol << "), search err "
            << worst_search << " (tol " << kTableSearchTol << ")";
}

void criterion_2(Outcome* o) {
  const double v = evaluate_r1_config(uniform_sample_config(kUniformSamples, 2024));
  const double target = oracle::kPi / 4.0;
  o->pass = std::abs(v - target) <= kUniformTol;
  o->detail << " R1 of " << kUniformSamples << " uniform points = " << v << ", pi/4 = " << target
            << " (tol " << kUniformTol << ")";
}

void criterion_3(Outcome* o) {
  double worst = 0.0;
  for (int s = 0; s < kClosedFormStates; ++s) {
    const DensityMatrix rho = s % 4 == 0 ? random_pure_state(s, 2) : random_density(s, 2);
    const double sdp = robustness_state_sdp(rho).value;
    worst = std::max(worst, std::abs(sdp - oracle::qubit_robustness(rho.matrix())));
  }
  o->pass = worst <= kClosedFormTol;
  o->detail << " max |SDP - 2|rho01|| = " << worst << " over " << kClosedFormStates
            << " states (tol " << kClosedFormTol << ")";
}

void criterion_4(Outcome* o) {
  SearchOptions opt;
  opt.restarts = kPairRestarts;
  double worst_r1 = 0.0;
  double worst_quoted = 0.0;
  double worst_attained = 0.0;
  int quoted_misses = 0;
  int below_half = 0;
  for (int d = 2; d <= 3; ++d) {
    for (int p = 0; p < kPairsPerDim; ++p) {
      const DensityMatrix a = random_pure_state(derive_seed(10 * d, 2 * p), d);
      const DensityMatrix b = random_pure_state(derive_seed(10 * d, 2 * p + 1), d);
      const double ov = (a.matrix() * b.matrix()).trace().real();
      const StateSet s({a, b});
      const double r1 = d == 2 ? qubit_r1(s).value : set_coherence_r1(s, opt).value;
      const double rmax = d == 2 ? qubit_rmax(s).value : set_coherence_rmax(s, opt).value;
      record(d, 2, r1, true);
      record(d, 2, rmax, false);
      worst_r1 = std::max(worst_r1, std::abs(r1 - oracle::pair_r1_formula(ov)));
      const double miss = std::abs(rmax - oracle::pair_rmax_quoted(ov));
      worst_quoted = std::max(worst_quoted, miss);
      if (miss > kPairTol) ++quoted_misses;
      if (ov < 0.5) ++below_half;
      worst_attained = std::max(worst_attained, std::abs(rmax - oracle::pair_rmax_attained(ov)));
    }
  }
  o->pass = worst_r1 <= kPairTol && worst_quoted <= kPairTol;
  o->detail << " R1 vs sqrt(o(1-o)): max err " << worst_r1 << "; R vs sqrt(1-o): max err "
            << worst_quoted << ", " << quoted_misses << "/" << 2 * kPairsPerDim
            << " pairs off (" << below_half << " have o < 1/2); R vs sqrt(min(o,1-o)): max err "
            << worst_attained << " (tol " << kPairTol << ")";
}

void criterion_5(Outcome* o) {
  std::vector<DensityMatrix> trine;
  for (int k = 0; k < 3; ++k) {
    const double a = 2.0 * oracle::kPi * k / 3.0;
    trine.push_back(bloch_to_state({std::cos(a), 0.0, std::sin(a)}));
  }
  const double t = qubit_rmax(StateSet(trine)).value;
  const ConfigSearchResult r = search_optimal_rmax(4);
  record(2, 4, r.value, false);
  const double target = std::sqrt(3.0) / 2.0;
  o->pass = std::abs(t - target) <= kTrineTol && r.value >= kRmaxFourBar;
  o->detail << " trine R = " << t << " vs " << target << " (tol " << kTrineTol
            << "); best R for n=4 = " << r.value << " (bar " << kRmaxFourBar << ")";
}

MeasurementAssemblage rank_one_povm(const std::vector<Eigen::Vector3d>& dirs) {
  std::vector<ComplexMatrix> el;
  const double w = 2.0 / static_cast<double>(dirs.size());
  for (const auto& q : dirs) el.push_back(w * bloch_to_state(BlochVector::from(q)).matrix());
  return MeasurementAssemblage(Povm(el));
}

void criterion_6(Outcome* o) {
  std::vector<Eigen::Vector3d> trine;
  for (int k = 0; k < 3; ++k) {
    const double a = 2.0 * oracle::kPi * k / 3.0;
    trine.emplace_back(std::cos(a), 0.0, std::sin(a));
  }
  const double s = 1.0 / std::sqrt(3.0);
  const std::vector<Eigen::Vector3d> sic = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  SearchOptions opt;
  const double vt = set_coherence_rmax(rank_one_povm(trine), opt).value;
  const double vs = set_coherence_rmax(rank_one_povm(sic), opt).value;
  opt.restarts = kPovmRestarts;
  double worst_proj = 0.0;
  double worst_bin = 0.0;
  for (int k = 0; k < kRandomPovms; ++k) {
    const int d = 2 + k % 3;
    const int n = 2 + k % (d - 1);
    worst_proj = std::max(worst_proj, set_coherence_rmax(MeasurementAssemblage(random_projective_povm(
                                                             derive_seed(61, k), d, n)),
                                                         opt)
                                          .value);
    worst_bin = std::max(
        worst_bin,
        set_coherence_rmax(MeasurementAssemblage(random_povm(derive_seed(62, k), 2 + k % 2, 2)), opt)
            .value);
  }
  o->pass = std::abs(vt - 1.0 / std::sqrt(3.0)) <= kPovmTol &&
            std::abs(vs - 1.0 / std::sqrt(2.0)) <= kPovmTol && worst_proj <= kIncoherentPovmTol &&
            worst_bin <= kIncoherentPovmTol;
  o->detail << " trine " << vt << " vs " << 1.0 / std::sqrt(3.0) << ", SIC " << vs << " vs "
            << 1.0 / std::sqrt(2.0) << " (tol " << kPovmTol << "); max over " << kRandomPovms
            << " projective " << worst_proj << ", " << kRandomPovms << " binary " << worst_bin
            << " (tol " << kIncoherentPovmTol << ")";
}

SubchannelGame hand_built_game(std::uint64_t seed, int d, int n) {
  std::mt19937_64 rng(seed);
  SubchannelGame g;
  g.dim = d;
  g.weights = oracle::simplex_point(rng, n);
  for (int a = 0; a < n; ++a) {
    g.unitaries.push_back(random_haar_unitary(derive_seed(seed, a), d).matrix());
  }
  g.measurement = random_povm(derive_seed(seed, 1000), d, n);
  g.validate();
  return g;
}

void criterion_7(Outcome* o) {
  double worst_state = 0.0;
  double worst_set = 0.0;
  double worst_povm = 0.0;
  for (int k = 0; k < 50; ++k) {
    const DensityMatrix rho = k % 5 == 0 ? random_pure_state(derive_seed(71, k), 2)
                                         : random_density(derive_seed(71, k), 2);
    const UnitaryFrame u = random_haar_unitary(derive_seed(72, k), 2);
    const double r = robustness_state_sdp(conjugate(rho, u)).value;
    worst_state = std::max(worst_state, std::abs(advantage_ratio_state(rho, u) - 1.0 - r));
  }
  for (int k = 0; k < 20; ++k) {
    std::vector<DensityMatrix> v;
    for (int j = 0; j < 1 + k % 3; ++j) v.push_back(random_density(derive_seed(73 + k, j), 2));
    const StateSet s(v);
    const UnitaryFrame u = random_haar_unitary(derive_seed(74, k), 2);
    const double r = robustness_set_fixed(conjugate_set(s, u)).value;
    worst_set = std::max(worst_set, std::abs(advantage_ratio_set(s, u) - 1.0 - r));
    const MeasurementAssemblage m(random_povm(derive_seed(75, k), 2, 2 + k % 3));
    const double rm = robustness_assemblage_fixed(conjugate_set(m, u)).value;
    worst_povm = std::max(worst_povm, std::abs(advantage_ratio_povm(m, u) - 1.0 - rm));
  }
  double worst_excess = -1e300;
  for (int k = 0; k < 100; ++k) {
    const int d = 2 + k % 3;
    const SubchannelGame g = hand_built_game(derive_seed(76, k), d, 2 + k % 4);
    const DensityMatrix rho = random_density(derive_seed(77, k), d);
    const UnitaryFrame u = random_haar_unitary(derive_seed(78, k), d);
    const double bound = 1.0 + robustness_state_sdp(conjugate(rho, u)).value;
    const double ratio = p_succ_subchannel(rho, g) / best_incoherent_success(g, u);
    worst_excess = std::max(worst_excess, ratio - bound);
  }
  o->pass = worst_state <= kGameTol && worst_set <= kGameTol && worst_povm <= kGameTol &&
            worst_excess <= kGameBoundSlack;
  o->detail << " |ratio - (1+R)|: states " << worst_state << ", sets " << worst_set << ", POVMs "
            << worst_povm << " (tol " << kGameTol << "); max ratio - bound over 100 games "
            << worst_excess << " (slack " << kGameBoundSlack << ")";
}

void criterion_8(Outcome* o) {
  StochasticMatrix<Rational> m(4, 3);
  const int r[4][3] = {{3, 0, 0}, {1, 2, 0}, {0, 2, 1}, {0, 0, 3}};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = Rational(r[i][j], 3);
  }
  const auto dec = decompose_exact(m);
  const std::vector<std::vector<int>> layers = {{0, 0, 1, 2}, {0, 1, 1, 2}, {0, 1, 2, 2}};
  bool example = dec.terms.size() == 3;
  for (size_t l = 0; example && l < 3; ++l) {
    example = dec.terms[l].assignment == layers[l] && dec.terms[l].weight == Rational(1, 3);
  }
  double worst_rec = 0.0;
  double worst_idem = 0.0;
  std::mt19937_64 rng(88);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int k = 0; k < kRandomDecompositions; ++k) {
    const int d = 2 + k % 3;
    const int n = 2 + (k / 3) % 4;
    const UnitaryFrame u = random_haar_unitary(derive_seed(81, k), d);
    std::vector<ComplexMatrix> el(n, ComplexMatrix::Zero(d, d));
    for (int i = 0; i < d; ++i) {
      std::vector<double> w(n);
      double total = 0.0;
      for (double& x : w) total += (x = unif(rng) < 0.25 ? 0.0 : unif(rng));
      if (total == 0.0) {
        w[0] = 1.0;
        total = 1.0;
      }
      for (int a = 0; a < n; ++a) el[a](i, i) = w[a] / total;
    }
    for (auto& e : el) e = u.matrix().adjoint() * e * u.matrix();
    const Povm a(el);
    const ProjectiveDecomposition p = decompose(a, u);
    for (int out = 0; out < n; ++out) {
      ComplexMatrix sum = ComplexMatrix::Zero(d, d);
      for (size_t t = 0; t < p.weights.size(); ++t) sum += p.weights[t] * p.components[t][out];
      worst_rec = std::max(worst_rec, max_abs(sum - a[out]));
    }
    for (const auto& c : p.components) {
      for (int out = 0; out < n; ++out) {
        worst_idem = std::max(worst_idem, max_abs(c[out] * c[out] - c[out]));
      }
    }
  }
  o->pass = example && worst_rec <= kReconstructTol && worst_idem <= kIdempotentTol;
  o->detail << " staircase layers " << (example ? "exact" : "MISMATCH") << "; "
            << kRandomDecompositions << " POVMs: reconstruction " << worst_rec << " (tol "
            << kReconstructTol << "), idempotence " << worst_idem << " (tol " << kIdempotentTol
            << ")";
}

void criterion_9(Outcome* o) {
  SearchOptions opt;
  opt.restarts = kFaithfulRestarts;
  int mismatches = 0;
  double worst_commuting = 0.0;
  double least_generic = 1e300;
  for (int k = 0; k < 2 * kFaithfulSets; ++k) {
    const bool commuting = k < kFaithfulSets;
    const int d = 2 + k % 3;
    const int n = 2 + (k / 3) % 3;
    const UnitaryFrame u = random_haar_unitary(derive_seed(91, k), d);
    std::vector<DensityMatrix> v;
    for (int j = 0; j < n; ++j) {
      const DensityMatrix rho = random_density(derive_seed(92 + k, j), d);
      if (commuting) {
        const ComplexMatrix diag = rho.matrix().diagonal().asDiagonal();
        v.emplace_back(u.matrix().adjoint() * diag * u.matrix());
      } else {
        v.push_back(rho);
      }
    }
    const StateSet s(v);
    const bool incoherent = is_incoherent(s).incoherent;
    const double rmax = d == 2 ? qubit_rmax(s).value : set_coherence_rmax(s, opt).value;
    const double r1 = d == 2 ? qubit_r1(s).value : set_coherence_r1(s, opt).value;
    record(d, n, rmax, false);
    record(d, n, r1, true);
    if (incoherent != (rmax <= kFaithfulTol)) ++mismatches;
    if (commuting != incoherent) ++mismatches;
    if (commuting) {
      worst_commuting = std::max(worst_commuting, rmax);
    } else {
      least_generic = std::min(least_generic, rmax);
    }
  }
  double worst_violation = -1e300;
  for (const auto& b : bound_records()) {
    const double bound = b.mean ? (b.n - 1.0) * (b.d - 1.0) / b.n : b.d - 1.0;
    worst_violation = std::max(worst_violation, b.value - bound);
  }
  o->pass = mismatches == 0 && worst_violation <= kBoundMargin;
  o->detail << " " << mismatches << " faithfulness mismatches; max R commuting " << worst_commuting
            << ", min R generic " << least_generic << " (tol " << kFaithfulTol
            << "); max value - bound over " << bound_records().size() << " values "
            << worst_violation << " (margin " << kBoundMargin << ")";
}

void criterion_10(Outcome* o) {
  const ComplexMatrix zero = bloch_to_state({0, 0, 1}).matrix();
  const ComplexMatrix one = bloch_to_state({0, 0, -1}).matrix();
  const ComplexMatrix plus = bloch_to_state({1, 0, 0}).matrix();
  const ComplexMatrix minus = bloch_to_state({-1, 0, 0}).matrix();
  const std::vector<ComplexMatrix> first = {zero, zero / 3.0 + 2.0 * one / 3.0};
  const std::vector<ComplexMatrix> second = {plus, plus / 4.0 + 3.0 * minus / 4.0};
  std::vector<ComplexMatrix> mix;
  std::vector<DensityMatrix> states;
  for (int j = 0; j < 2; ++j) {
    mix.push_back(0.5 * first[j] + 0.5 * second[j]);
    states.emplace_back(mix.back());
  }
  // Threshold from the grid oracle (4096 cells plus Nelder-Mead polishing).
  const double threshold = oracle::grid_min(mix, true, 64, 8);
  const double value = qubit_r1(StateSet(states)).value;
  // Both ingredient sets are incoherent on their own.
  const double r_first = oracle::grid_min(first, true);
  const double r_second = oracle::grid_min(second, true);
  o->pass = value > 0.0 && std::abs(value - threshold) <= kNonconvexTol;
  o->detail << " R1(mixture) = " << value << ", oracle " << threshold << " (tol " << kNonconvexTol
            << "); ingredients " << r_first << ", " << r_second;
}

struct Criterion {
  const char* name;
  std::function<void(Outcome*)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {"known configurations and search (mean robustness)", criterion_1},
      {"uniform-sample asymptote pi/4", criterion_2},
      {"qubit closed form vs SDP", criterion_3},
      {"pure-pair formulas", criterion_4},
      {"max-robustness optima", criterion_5},
      {"measurement values", criterion_6},
      {"witness game equalities and bound", criterion_7},
      {"projective decomposition", criterion_8},
      {"faithfulness and bounds", criterion_9},
      {"nonconvexity under mixing", criterion_10},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 1;
    }
  }
  if (only < 0 || only > static_cast<int>(all.size())) {
    std::fprintf(stderr, "criterion %d does not exist\n", only);
    return 1;
  }
  int failures = 0;
  for (int k = 1; k <= static_cast<int>(all.size()); ++k) {
    if (only != 0 && k != only) continue;
    Outcome o;
    o.detail.precision(10);
    const auto start = std::chrono::steady_clock::now();
    try {
      all[k - 1].run(&o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("[%s] %2d %s:%s [%.1fs]\n", o.pass ? "PASS" : "FAIL", k, all[k - 1].name,
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
