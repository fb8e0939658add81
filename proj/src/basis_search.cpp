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

#include "setcoh/basis_search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <random>

#include "setcoh/sphere.hpp"

namespace setcoh {

namespace {

using kernels::Aggregate;

// Caps on the structured start families (their count grows with n).
constexpr int kMaxEigenframeStarts = 64;
constexpr int kMaxGramSchmidtStarts = 16;
constexpr int kMaxPairStarts = 6;
constexpr int kRandomMixtureStarts = 4;

// A restart ends once kStallSweeps sweeps improve the value by less than
// kStallImprovement (relative).
constexpr size_t kStallSweeps = 8;
constexpr double kStallImprovement = 1e-13;
constexpr int kMaxPatternDoublings = 8;
// Simplex polish: initial edge length, and how many rounds without
// improvement end it.
constexpr double kPolishScale = 0.05;
constexpr int kPolishMisses = 2;
constexpr int kPolishRounds = 40;

// Off-diagonal generalised Gell-Mann matrices. Diagonal generators only
// rephase the basis vectors and leave every objective unchanged.
std::vector<ComplexMatrix> offdiag_generators(int d) {
  std::vector<ComplexMatrix> out;
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      ComplexMatrix sym = ComplexMatrix::Zero(d, d);
      sym(i, j) = s;
      sym(j, i) = s;
      ComplexMatrix anti = ComplexMatrix::Zero(d, d);
      anti(i, j) = Complex(0.0, -s);
      anti(j, i) = Complex(0.0, s);
      out.push_back(sym);
      out.push_back(anti);
    }
  }
  return out;
}

Eigen::MatrixXd random_orthogonal(std::mt19937_64& rng, int m) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(m, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) g(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return qr.householderQ() * Eigen::MatrixXd::Identity(m, m);
}

ComplexMatrix reunitarize(const ComplexMatrix& u) {
  Eigen::JacobiSVD<ComplexMatrix> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

struct LocalOutcome {
  double value;
  ComplexMatrix u;
};

// Nelder-Mead in the chart x -> exp(i sum_k x_k G_k) u around the current
// frame, with fresh random axes each round and the chart recentred on the best
// vertex. Handles the kinks of max-type objectives, where per-direction fits
// stall.
LocalOutcome simplex_polish(const FrameObjective& f, LocalOutcome cur, const SearchOptions& opt,
                            std::mt19937_64& rng) {
  const int d = static_cast<int>(cur.u.rows());
  const std::vector<ComplexMatrix> basis = offdiag_generators(d);
  const int m = static_cast<int>(basis.size());
  // Dimension-adapted coefficients (reflection, expansion, contraction, shrink).
  const double alpha = 1.0;
  const double gamma = 1.0 + 2.0 / m;
  const double rho = 0.75 - 0.5 / m;
  const double sigma = 1.0 - 1.0 / m;
  double scale = kPolishScale;
  int misses = 0;
  for (int round = 0; round < kPolishRounds && misses < kPolishMisses; ++round) {
    if (cur.value <= opt.value_tolerance || scale < opt.step_tolerance) break;
    const Eigen::MatrixXd q = random_orthogonal(rng, m);
    std::vector<ComplexMatrix> dirs(m, ComplexMatrix::Zero(d, d));
    for (int k = 0; k < m; ++k) {
      for (int l = 0; l < m; ++l) dirs[k] += q(k, l) * basis[l];
    }
    const ComplexMatrix u0 = cur.u;
    auto chart = [&](const Eigen::VectorXd& x) {
      ComplexMatrix h = ComplexMatrix::Zero(d, d);
      for (int k = 0; k < m; ++k) h += x(k) * dirs[k];
      return ComplexMatrix(expi_hermitian(h) * u0);
    };
    std::vector<Eigen::VectorXd> xs(m + 1, Eigen::VectorXd::Zero(m));
    std::vector<double> fs(m + 1, cur.value);
    for (int k = 0; k < m; ++k) {
      xs[k + 1](k) = scale;
      fs[k + 1] = f(chart(xs[k + 1]));
    }
    std::vector<int> idx(m + 1);
    double size = scale;
    for (int it = 0; it < 200 * m; ++it) {
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] < fs[b]; });
      const int best = idx[0];
      const int worst = idx[m];
      size = 0.0;
      for (int k = 1; k <= m; ++k) size = std::max(size, (xs[idx[k]] - xs[best]).norm());
      if (size < opt.step_tolerance || fs[best] <= opt.value_tolerance) break;
      Eigen::VectorXd c = Eigen::VectorXd::Zero(m);
      for (int k = 0; k < m; ++k) c += xs[idx[k]] / m;
      const Eigen::VectorXd xr = c + alpha * (c - xs[worst]);
      const double fr = f(chart(xr));
      if (fr < fs[best]) {
        const Eigen::VectorXd xe = c + gamma * (xr - c);
        const double fe = f(chart(xe));
        if (fe < fr) {
          xs[worst] = xe;
          fs[worst] = fe;
        } else {
          xs[worst] = xr;
          fs[worst] = fr;
        }
        continue;
      }
      if (fr < fs[idx[m - 1]]) {
        xs[worst] = xr;
        fs[worst] = fr;
        continue;
      }
      const bool outside = fr < fs[worst];
      const Eigen::VectorXd xc = outside ? Eigen::VectorXd(c + rho * (xr - c))
                                         : Eigen::VectorXd(c + rho * (xs[worst] - c));
      const double fc = f(chart(xc));
      if (fc < std::min(fr, fs[worst])) {
        xs[worst] = xc;
        fs[worst] = fc;
        continue;
      }
      for (int k = 1; k <= m; ++k) {
        xs[idx[k]] = xs[best] + sigma * (xs[idx[k]] - xs[best]);
        fs[idx[k]] = f(chart(xs[idx[k]]));
      }
    }
    const int best = static_cast<int>(std::min_element(fs.begin(), fs.end()) - fs.begin());
    if (fs[best] < cur.value - kStallImprovement * (1.0 + cur.value)) {
      cur.value = fs[best];
      cur.u = reunitarize(chart(xs[best]));
      misses = 0;
    } else {
      ++misses;
    }
    scale = std::clamp(4.0 * size, opt.step_tolerance, kPolishScale);
  }
  return cur;
}

// Derivative-free descent: per-direction three-point quadratic fits along
// one-parameter subgroups exp(i theta G) acting on the left. When a whole
// sweep fails, the direction set is rotated at random, which lets the search
// follow ridges of the (nonsmooth) objective.
LocalOutcome local_search(const FrameObjective& f, ComplexMatrix u, const SearchOptions& opt,
                          std::uint64_t seed) {
  const int d = static_cast<int>(u.rows());
  const std::vector<ComplexMatrix> basis = offdiag_generators(d);
  const int m = static_cast<int>(basis.size());
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(m, m);
  std::vector<double> h(m, 0.1);
  double fu = f(u);
  int updates = 0;
  std::vector<double> history;
  for (int sweep = 0; sweep < opt.max_iterations; ++sweep) {
    if (fu <= opt.value_tolerance) break;
    if (*std::max_element(h.begin(), h.end()) < opt.step_tolerance) break;
    // Stagnation: no measurable progress over the last few sweeps.
    history.push_back(fu);
    if (history.size() > kStallSweeps &&
        history[history.size() - 1 - kStallSweeps] - fu <= kStallImprovement * (1.0 + fu)) {
      break;
    }
    bool improved = false;
    const ComplexMatrix u_sweep = u;
    for (int k = 0; k < m; ++k) {
      if (h[k] < opt.step_tolerance) continue;
      ComplexMatrix g = ComplexMatrix::Zero(d, d);
      for (int l = 0; l < m; ++l) g += rot(k, l) * basis[l];
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g);
      const ComplexMatrix& v = es.eigenvectors();
      auto move = [&](double theta) {
        ComplexVector phases(d);
        for (int i = 0; i < d; ++i) phases(i) = std::polar(1.0, theta * es.eigenvalues()(i));
        return ComplexMatrix(v * phases.asDiagonal() * v.adjoint() * u);
      };
      const double step = h[k];
      const double fp = f(move(step));
      const double fm = f(move(-step));
      double best_theta = 0.0;
      double best_f = fu;
      if (fp < best_f) {
        best_f = fp;
        best_theta = step;
      }
      if (fm < best_f) {
        best_f = fm;
        best_theta = -step;
      }
      const double curvature = fp + fm - 2.0 * fu;
      if (curvature > 0.0) {
        const double theta = std::clamp(0.5 * step * (fm - fp) / curvature, -4.0 * step, 4.0 * step);
        if (std::abs(theta - best_theta) > 1e-3 * step) {
          const double ft = f(move(theta));
          if (ft < best_f) {
            best_f = ft;
            best_theta = theta;
          }
        }
      }
      if (best_f < fu) {
        u = move(best_theta);
        if (++updates % 64 == 0) u = reunitarize(u);
        fu = best_f;
        improved = true;
        h[k] = std::min(0.5, std::max(std::abs(best_theta), 0.5 * step) * 2.0);
        if (fu <= opt.value_tolerance) break;
      } else {
        h[k] = 0.5 * step;
      }
    }
    if (improved) {
      // Pattern move: repeat the net displacement of the sweep, doubling it
      // while the value keeps dropping.
      ComplexMatrix delta = u * u_sweep.adjoint();
      for (int k = 0; k < kMaxPatternDoublings; ++k) {
        const ComplexMatrix trial = delta * u;
        const double ft = f(trial);
        if (!(ft < fu)) break;
        u = trial;
        fu = ft;
        delta = delta * delta;
      }
      u = reunitarize(u);
    } else {
      rot = random_orthogonal(rng, m);
      const double hmax = *std::max_element(h.begin(), h.end());
      std::fill(h.begin(), h.end(), hmax);
    }
  }
  return simplex_polish(f, {fu, reunitarize(u)}, opt, rng);
}

double aggregate(const std::vector<double>& values, Aggregate agg) {
  if (agg == Aggregate::kMax) return *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

ComplexVector principal_vector(const ComplexMatrix& h) { return eigh(h).vectors.col(0); }

// Orthonormal frame whose first vectors follow the principal eigenvectors of
// ops[first], then the other ops in order.
std::optional<UnitaryFrame> gram_schmidt_frame(const std::vector<ComplexMatrix>& ops, int first) {
  const int d = static_cast<int>(ops[first].rows());
  std::vector<ComplexVector> basis;
  auto push = [&](ComplexVector v) {
    for (const auto& b : basis) v -= b.dot(v) * b;
    const double n = v.norm();
    if (n > 1e-6 && static_cast<int>(basis.size()) < d) basis.push_back(v / n);
  };
  push(principal_vector(ops[first]));
  for (size_t k = 0; k < ops.size(); ++k) {
    if (static_cast<int>(k) != first) push(principal_vector(ops[k]));
  }
  for (int i = 0; i < d; ++i) push(ComplexVector::Unit(d, i));
  if (static_cast<int>(basis.size()) != d) return std::nullopt;
  ComplexMatrix v(d, d);
  for (int i = 0; i < d; ++i) v.col(i) = basis[i];
  return UnitaryFrame(ComplexMatrix(v.adjoint()));
}

std::vector<UnitaryFrame> structured_starts(const std::vector<ComplexMatrix>& ops,
                                            std::uint64_t seed, int restarts,
                                            const std::vector<UnitaryFrame>& warm) {
  std::vector<UnitaryFrame> out = warm;
  const int n = static_cast<int>(ops.size());
  const int d = static_cast<int>(ops[0].rows());
  out.push_back(joint_eigenframe(ops));
  for (int j = 0; j < std::min(n, kMaxEigenframeStarts); ++j) out.push_back(eigenframe(ops[j]));
  if (n > 1) {
    for (int j = 0; j < std::min(n, kMaxGramSchmidtStarts); ++j) {
      if (auto f = gram_schmidt_frame(ops, j)) out.push_back(*f);
    }
  }
  ComplexMatrix mean = ComplexMatrix::Zero(d, d);
  for (const auto& op : ops) mean += op / static_cast<double>(n);
  out.push_back(eigenframe(mean));
  if (n <= kMaxPairStarts) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        out.push_back(eigenframe(ops[i] + ops[j]));
        out.push_back(eigenframe(ops[i] - ops[j]));
      }
    }
  }
  std::mt19937_64 rng(derive_seed(seed, 0x5eed));
  std::exponential_distribution<double> expo(1.0);
  for (int r = 0; r < kRandomMixtureStarts && n > 1; ++r) {
    ComplexMatrix mix = ComplexMatrix::Zero(d, d);
    for (const auto& op : ops) mix += expo(rng) * op;
    out.push_back(eigenframe(mix));
  }
  // The restart budget covers the structured starts; explicit warm starts
  // always run.
  const size_t keep = std::max(static_cast<size_t>(restarts), warm.size());
  if (out.size() > keep) out.resize(keep);
  return out;
}

std::vector<ComplexMatrix> state_ops(const StateSet& s) {
  std::vector<ComplexMatrix> ops;
  for (const auto& rho : s) ops.push_back(rho.matrix());
  return ops;
}

std::vector<ComplexMatrix> assemblage_ops(const MeasurementAssemblage& m) {
  std::vector<ComplexMatrix> ops;
  for (const auto& povm : m.measurements()) {
    for (int a = 0; a < povm.size(); ++a) ops.push_back(povm[a]);
  }
  return ops;
}

std::vector<double> state_values(const std::vector<ComplexMatrix>& ops, const ComplexMatrix& u) {
  std::vector<double> out;
  out.reserve(ops.size());
  for (const auto& rho : ops) out.push_back(robustness_state_value(u * rho * u.adjoint()));
  return out;
}

SetCoherenceResult finish_states(const StateSet& s, const UnitaryFrame& frame, Aggregate agg,
                                 std::vector<double> restart_values) {
  SetCoherenceResult out;
  out.frame = frame;
  out.member_values = state_values(state_ops(s), frame.matrix());
  out.value = aggregate(out.member_values, agg);
  out.restart_values = std::move(restart_values);
  out.certificate = robustness_set_fixed(conjugate_set(s, frame));
  return out;
}

SetCoherenceResult qubit_search(const StateSet& s, Aggregate agg) {
  if (s.dim() != 2) {
    throw Error(ErrorCode::kDimensionMismatch, "Bloch-sphere search needs qubit states");
  }
  std::vector<kernels::Vec3> q;
  for (const auto& rho : s) q.push_back(state_to_bloch(rho).vec());
  const SphereResult r = minimize_on_sphere(q, agg);
  SetCoherenceResult out =
      finish_states(s, UnitaryFrame::from_bloch_direction(r.direction), agg, r.start_values);
  out.bloch_direction = r.direction;
  return out;
}

SetCoherenceResult state_search(const StateSet& s, Aggregate agg, const SearchOptions& opt) {
  const auto ops = state_ops(s);
  const FrameObjective f = [&ops, agg](const ComplexMatrix& u) {
    return aggregate(state_values(ops, u), agg);
  };
  const auto starts = structured_starts(ops, opt.seed, opt.restarts, opt.warm_starts);
  const FrameSearchResult r = minimize_over_frames(f, s.dim(), starts, opt);
  return finish_states(s, r.frame, agg, r.restart_values);
}

SetCoherenceResult assemblage_search(const MeasurementAssemblage& m, bool mean,
                                     const SearchOptions& opt) {
  const FrameObjective f = [&m, mean](const ComplexMatrix& u) {
    const UnitaryFrame frame(u, Tolerances{1e-10, 1e-9, 1e-9, 1e-9, 1e-7});
    const auto conj = conjugate_set(m, frame);
    return mean ? mean_robustness_assemblage_fixed(conj)
                : robustness_assemblage_fixed(conj).value;
  };
  const auto starts =
      structured_starts(assemblage_ops(m), opt.seed, opt.restarts, opt.warm_starts);
  const FrameSearchResult r = minimize_over_frames(f, m.dim(), starts, opt);
  SetCoherenceResult out;
  out.frame = r.frame;
  out.restart_values = r.restart_values;
  const auto conj = conjugate_set(m, r.frame);
  for (const auto& povm : conj.measurements()) {
    out.member_values.push_back(robustness_assemblage_fixed(MeasurementAssemblage(povm)).value);
  }
  out.certificate = robustness_assemblage_fixed(conj);
  out.value = mean ? aggregate(out.member_values, Aggregate::kMean) : out.certificate.value;
  return out;
}

bool is_pure_state(const DensityMatrix& rho) { return rho.is_pure(1e-9); }

}  // namespace

FrameSearchResult minimize_over_frames(const FrameObjective& objective, int dim,
                                       const std::vector<UnitaryFrame>& starts,
                                       const SearchOptions& options) {
  if (options.restarts < 1) {
    throw Error(ErrorCode::kUnsupportedInput, "restarts must be at least 1");
  }
  const int total = std::max(options.restarts, static_cast<int>(starts.size()));
  std::vector<double> values(total, std::numeric_limits<double>::quiet_NaN());
  std::vector<ComplexMatrix> frames(total);
  std::vector<std::exception_ptr> errors(total);
  // Restarts above the first one reaching zero are skipped; everything below
  // it always runs, so the reduction does not depend on scheduling.
  std::atomic<int> cutoff(total - 1);
  const int threads = options.threads > 0 ? options.threads : 0;

  auto run = [&](int r) {
    if (r > cutoff.load()) return;
    try {
      const ComplexMatrix u0 = r < static_cast<int>(starts.size())
                                   ? starts[r].matrix()
                                   : random_haar_unitary(derive_seed(options.seed, r), dim).matrix();
      const LocalOutcome o =
          local_search(objective, u0, options, derive_seed(options.seed, 0x100000000ULL + r));
      values[r] = o.value;
      frames[r] = o.u;
      if (o.value <= options.value_tolerance) {
        int cur = cutoff.load();
        while (r < cur && !cutoff.compare_exchange_weak(cur, r)) {
        }
      }
    } catch (...) {
      errors[r] = std::current_exception();
    }
  };

  if (threads > 0) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (int r = 0; r < total; ++r) run(r);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (int r = 0; r < total; ++r) run(r);
  }

  const int last = cutoff.load();
  for (int r = 0; r <= last; ++r) {
    if (errors[r]) std::rethrow_exception(errors[r]);
  }
  FrameSearchResult out;
  int best = 0;
  for (int r = 1; r <= last; ++r) {
    if (values[r] < values[best]) best = r;
  }
  out.value = values[best];
  out.frame = UnitaryFrame(frames[best], Tolerances{1e-10, 1e-9, 1e-9, 1e-9, 1e-7});
  out.restart_values.assign(values.begin(), values.begin() + last + 1);
  return out;
}

SetCoherenceResult qubit_r1(const StateSet& s, const SearchOptions&) {
  return qubit_search(s, Aggregate::kMean);
}

SetCoherenceResult qubit_rmax(const StateSet& s, const SearchOptions&) {
  return qubit_search(s, Aggregate::kMax);
}

PairValue pair_r1(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "pair of states of different dimension");
  }
  PairValue out;
  if (is_pure_state(rho1) && is_pure_state(rho2)) {
    const double o = overlap(rho1, rho2);
    out.value = std::sqrt(std::max(0.0, o * (1.0 - o)));
    const auto frame = gram_schmidt_frame({rho1.matrix(), rho2.matrix()}, 0);
    out.frame = frame ? *frame : eigenframe(rho1.matrix());
    return out;
  }
  if (rho1.dim() != 2) {
    throw Error(ErrorCode::kUnsupportedInput,
                "closed form covers pure pairs and qubit pairs only");
  }
  const Eigen::Vector3d q1 = state_to_bloch(rho1).vec();
  const Eigen::Vector3d q2 = state_to_bloch(rho2).vec();
  const Eigen::Vector3d& longer = q1.norm() >= q2.norm() ? q1 : q2;
  out.value = 0.5 * q1.cross(q2).norm() / std::max(longer.norm(), 1e-300);
  out.frame = longer.norm() > 0.0 ? UnitaryFrame::from_bloch_direction(longer)
                                  : UnitaryFrame::identity(2);
  if (longer.norm() == 0.0) out.value = 0.0;
  return out;
}

PairValue pair_rmax_pure(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "pair of states of different dimension");
  }
  if (!is_pure_state(rho1) || !is_pure_state(rho2)) {
    throw Error(ErrorCode::kNotPure, "max-robustness pair formula needs pure states");
  }
  const double o = overlap(rho1, rho2);
  PairValue out;
  // Basis along the bisector of the Bloch vectors (o >= 1/2) or of one vector
  // and the antipode of the other (o < 1/2).
  if (o >= 0.5) {
    out.value = std::sqrt(1.0 - o);
    out.frame = eigenframe(rho1.matrix() + rho2.matrix());
  } else {
    out.value = std::sqrt(o);
    out.frame = eigenframe(rho1.matrix() - rho2.matrix());
  }
  return out;
}

SetCoherenceResult set_coherence_r1(const StateSet& s, const SearchOptions& options) {
  return state_search(s, Aggregate::kMean, options);
}

SetCoherenceResult set_coherence_rmax(const StateSet& s, const SearchOptions& options) {
  return state_search(s, Aggregate::kMax, options);
}

SetCoherenceResult set_coherence_rmax(const MeasurementAssemblage& m,
                                      const SearchOptions& options) {
  return assemblage_search(m, false, options);
}

SetCoherenceResult mean_set_coherence_povm(const MeasurementAssemblage& m,
                                           const SearchOptions& options) {
  return assemblage_search(m, true, options);
}

UnitaryFrame joint_eigenframe(const std::vector<ComplexMatrix>& ops) {
  if (ops.empty()) throw Error(ErrorCode::kUnsupportedInput, "no operators to diagonalise");
  const int d = static_cast<int>(ops[0].rows());
  ComplexMatrix v = ComplexMatrix::Identity(d, d);
  // Clusters of columns of v spanning (approximate) joint eigenspaces.
  std::vector<std::pair<int, int>> clusters = {{0, d}};
  for (const auto& op : ops) {
    const double gap = 1e-7 * (1.0 + max_abs(op));
    std::vector<std::pair<int, int>> next;
    for (const auto& [start, len] : clusters) {
      if (len == 1) {
        next.push_back({start, len});
        continue;
      }
      const ComplexMatrix vc = v.middleCols(start, len);
      const ComplexMatrix h = vc.adjoint() * op * vc;
      const EigenDecomposition e = eigh(ComplexMatrix(0.5 * (h + h.adjoint())));
      v.middleCols(start, len) = vc * e.vectors;
      int begin = 0;
      for (int i = 1; i <= len; ++i) {
        if (i == len || e.values(i - 1) - e.values(i) > gap) {
          next.push_back({start + begin, i - begin});
          begin = i;
        }
      }
    }
    clusters = std::move(next);
  }
  return UnitaryFrame(reunitarize(v.adjoint()));
}

namespace {

IncoherenceCheck check_family(const std::vector<ComplexMatrix>& ops, double tol) {
  IncoherenceCheck out;
  for (size_t i = 0; i < ops.size(); ++i) {
    for (size_t j = i + 1; j < ops.size(); ++j) {
      out.max_commutator = std::max(out.max_commutator, commutator_norm(ops[i], ops[j]));
    }
  }
  if (out.max_commutator > tol) return out;
  const UnitaryFrame frame = joint_eigenframe(ops);
  for (const auto& op : ops) {
    out.max_off_diagonal = std::max(out.max_off_diagonal, max_off_diagonal(conjugate(op, frame)));
  }
  out.incoherent = out.max_off_diagonal <= std::max(1e-8, 100.0 * tol);
  if (out.incoherent) out.frame = frame;
  return out;
}

}  // namespace

IncoherenceCheck is_incoherent(const StateSet& s, double tol) {
  IncoherenceCheck out = check_family(state_ops(s), tol);
  if (out.incoherent) {
    out.incoherent = membership_free_set(s, *out.frame, std::max(1e-8, 100.0 * tol));
  }
  return out;
}

IncoherenceCheck is_incoherent(const MeasurementAssemblage& m, double tol) {
  IncoherenceCheck out = check_family(assemblage_ops(m), tol);
  if (out.incoherent) {
    out.incoherent = membership_free_set(m, *out.frame, std::max(1e-8, 100.0 * tol));
  }
  return out;
}

}  // namespace setcoh
