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

#include "setcoh/robustness.hpp"

#include <algorithm>
#include <cmath>

namespace setcoh {

namespace {

// Below this value the noise is reported as a copy of the input.
constexpr double kZeroRobustness = 1e-9;
// Purity above 1 - kPureTolerance takes the pure-state closed form.
constexpr double kPureTolerance = 1e-12;

double min_eig(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// In-place lower Cholesky factor of a small symmetric matrix; the strict upper
// triangle is left untouched. Plain loops beat the blocked solvers at the
// sizes the barrier sees.
bool small_cholesky(Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  for (int j = 0; j < n; ++j) {
    double diag = a(j, j);
    for (int k = 0; k < j; ++k) diag -= a(j, k) * a(j, k);
    if (!(diag > 0.0)) return false;
    const double ljj = std::sqrt(diag);
    a(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      double v = a(i, j);
      for (int k = 0; k < j; ++k) v -= a(i, k) * a(j, k);
      a(i, j) = v / ljj;
    }
  }
  return true;
}

// Solves (L L^T) y = b in place.
void small_cholesky_solve(const Eigen::MatrixXd& l, Eigen::VectorXd& b) {
  const int n = static_cast<int>(l.rows());
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < i; ++k) b(i) -= l(i, k) * b(k);
    b(i) /= l(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int k = i + 1; k < n; ++k) b(i) -= l(k, i) * b(k);
    b(i) /= l(i, i);
  }
}

// Primal log-barrier path following for min{tr D : D diagonal, D >= rho}:
// damped Newton on tr(D)/mu - log det(D - rho) with mu shrinking by
// kBarrierShrink per stage. Every iterate is feasible, so the value is an
// upper bound; it overshoots the optimum by about d mu_final = d 1e-9.
// Returns false if a Newton system breaks down.
constexpr double kBarrierShrink = 1e-3;
constexpr int kBarrierStages = 4;
constexpr int kBarrierNewtonSteps = 40;
// Squared Newton decrement accepted as centred: loose on the way, tight at
// the last stage.
constexpr double kBarrierLooseCentering = 0.1;
constexpr double kBarrierCentering = 1e-6;
// Ridge range for the scaled Newton system.
constexpr double kBarrierRidge = 1e-14;
constexpr double kBarrierMaxRidge = 1e-4;

bool robustness_by_barrier(const ComplexMatrix& rho, double* value) {
  const int d = static_cast<int>(rho.rows());
  const int n = 2 * d;
  Eigen::VectorXd x(d);
  for (int i = 0; i < d; ++i) {
    double off = 0.0;
    for (int j = 0; j < d; ++j) {
      if (j != i) off += std::abs(rho(i, j));
    }
    x(i) = rho(i, i).real() + off + 1.0 / d;
  }
  // Work on the real symmetric embedding [[A, -B], [B, A]] of D - rho = A + iB.
  // Its inverse holds Re and Im of (D - rho)^-1 in the same layout.
  Eigen::MatrixXd base(n, n);
  base.topLeftCorner(d, d) = -rho.real();
  base.bottomRightCorner(d, d) = -rho.real();
  base.topRightCorner(d, d) = rho.imag();
  base.bottomLeftCorner(d, d) = -rho.imag();
  Eigen::MatrixXd l(n, n);
  Eigen::MatrixXd linv = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd h(d, d);
  Eigen::MatrixXd hs(d, d);
  Eigen::VectorXd g(d), dx(d), next(d), scale(d);
  auto factor = [&](const Eigen::VectorXd& at) {
    l = base;
    for (int i = 0; i < d; ++i) {
      l(i, i) += at(i);
      l(i + d, i + d) += at(i);
    }
    return small_cholesky(l);
  };
  if (!factor(x)) return false;
  double mu = 1.0;
  for (int stage = 0; stage < kBarrierStages; ++stage, mu *= kBarrierShrink) {
    const double centred =
        stage + 1 == kBarrierStages ? kBarrierCentering : kBarrierLooseCentering;
    for (int step = 0; step < kBarrierNewtonSteps; ++step) {
      // Columns 0..d-1 of the inverse, from L^-1.
      for (int j = 0; j < n; ++j) {
        linv(j, j) = 1.0 / l(j, j);
        for (int i = j + 1; i < n; ++i) {
          double v = 0.0;
          for (int k = j; k < i; ++k) v += l(i, k) * linv(k, j);
          linv(i, j) = -v / l(i, i);
        }
      }
      for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) {
          double re = 0.0;
          for (int k = std::max(i, j); k < n; ++k) re += linv(k, i) * linv(k, j);
          double im = 0.0;
          for (int k = i + d; k < n; ++k) im += linv(k, i + d) * linv(k, j);
          h(i, j) = re * re + im * im;
          if (i == j) g(j) = 1.0 / mu - re;
        }
      }
      // Jacobi scaling: near the optimum the diagonal spans many orders of
      // magnitude.
      for (int i = 0; i < d; ++i) scale(i) = 1.0 / std::sqrt(h(i, i));
      hs = scale.asDiagonal() * h * scale.asDiagonal();
      hs = 0.5 * (hs + hs.transpose()).eval();
      // The Hessian turns numerically singular near the optimum. A small ridge
      // on the scaled system keeps the step a descent direction; past that
      // the iterate is as centred as it gets and the stage ends.
      double ridge = 0.0;
      bool factored = small_cholesky(h = hs);
      while (!factored && ridge < kBarrierMaxRidge) {
        const double add = ridge == 0.0 ? kBarrierRidge : 99.0 * ridge;
        hs.diagonal().array() += add;
        ridge += add;
        factored = small_cholesky(h = hs);
      }
      if (!factored) break;
      dx = -g.cwiseProduct(scale);
      small_cholesky_solve(h, dx);
      dx = dx.cwiseProduct(scale);
      const double lambda2 = -g.dot(dx);
      if (std::isnan(lambda2)) return false;
      // Near the boundary roundoff dominates the decrement (it can even turn
      // negative); the iterate is feasible either way, so the stage ends.
      if (lambda2 < centred) break;
      // Damped step keeps D - rho inside the Dikin ellipsoid.
      double t = lambda2 > 0.0625 ? 1.0 / (1.0 + std::sqrt(lambda2)) : 1.0;
      next = x + t * dx;
      while (!factor(next)) {
        t *= 0.5;
        if (t < 1e-12) return false;
        next = x + t * dx;
      }
      x = next;
    }
  }
  *value = std::max(0.0, x.sum() - 1.0);
  return true;
}

SdpProblem state_problem(const ComplexMatrix& rho) {
  const int d = static_cast<int>(rho.rows());
  SdpProblem p({d}, d);
  for (int i = 0; i < d; ++i) {
    p.set_objective(i, 1.0);
    p.add_coefficient_entry(i, 0, i, i, 1.0);
  }
  p.add_constant(0, -rho);
  return p;
}

}  // namespace

double robustness_state_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 2) {
    throw Error(ErrorCode::kDimensionMismatch, "closed form needs a qubit state");
  }
  return 2.0 * std::abs(rho.matrix()(0, 1));
}

RobustnessCertificate robustness_state_sdp(const DensityMatrix& rho,
                                           const SdpOptions& options) {
  const SdpSolution sol = solve(state_problem(rho.matrix()), options);
  require_optimal(sol, "state robustness");
  RobustnessCertificate cert;
  cert.value = std::max(0.0, sol.primal_objective - 1.0);
  cert.witness = {sol.dual[0]};
  cert.gap = sol.gap;
  cert.primal_residual = sol.primal_residual;
  cert.dual_residual = sol.dual_residual;
  const ComplexMatrix dmat = sol.x.cast<Complex>().asDiagonal();
  if (cert.value <= kZeroRobustness) {
    cert.noise = {rho.matrix()};
  } else {
    cert.noise = {(dmat - rho.matrix()) / cert.value};
  }
  const ComplexMatrix& tau = cert.noise[0];
  cert.noise_residual = std::max(std::max(0.0, -min_eig(tau)),
                                 std::abs(tau.trace().real() - 1.0));
  return cert;
}

double robustness_state_value(const ComplexMatrix& rho) {
  if (rho.rows() == 2) return 2.0 * std::abs(rho(0, 1));
  // Pure states: the robustness equals the l1 norm of the off-diagonal part.
  if (rho.squaredNorm() >= 1.0 - kPureTolerance) {
    return rho.cwiseAbs().sum() - rho.diagonal().cwiseAbs().sum();
  }
  double value = 0.0;
  if (robustness_by_barrier(rho, &value)) return value;
  const SdpSolution sol = solve(state_problem(rho));
  require_optimal(sol, "state robustness");
  return std::max(0.0, sol.primal_objective - 1.0);
}

RobustnessCertificate robustness_set_fixed(const StateSet& s, const SdpOptions& options) {
  const int n = s.size();
  std::vector<RobustnessCertificate> single;
  single.reserve(n);
  for (const auto& rho : s) single.push_back(robustness_state_sdp(rho, options));

  RobustnessCertificate cert;
  int best = 0;
  for (int j = 1; j < n; ++j) {
    if (single[j].value > single[best].value) best = j;
  }
  const double t = single[best].value;
  cert.value = t;
  cert.argmax = best;
  for (int j = 0; j < n; ++j) {
    cert.gap = std::max(cert.gap, std::abs(single[j].gap));
    cert.primal_residual = std::max(cert.primal_residual, single[j].primal_residual);
    cert.dual_residual = std::max(cert.dual_residual, single[j].dual_residual);
    cert.witness.push_back(j == best ? single[j].witness[0]
                                     : ComplexMatrix::Zero(s.dim(), s.dim()));
  }

  // Joint noise: with D_j >= rho_j diagonal, tr D_j = 1 + t_j, the diagonal
  // state D_j / (1 + t_j) is reached from rho_j at the common weight t.
  for (int j = 0; j < n; ++j) {
    const ComplexMatrix& rho = s[j].matrix();
    ComplexMatrix tau;
    if (t <= kZeroRobustness) {
      tau = rho;
    } else {
      const ComplexMatrix dj = single[j].value <= kZeroRobustness
                                   ? ComplexMatrix(rho.diagonal().asDiagonal())
                                   : ComplexMatrix(rho + single[j].value * single[j].noise[0]);
      const ComplexMatrix diag = dj.diagonal().real().cast<Complex>().asDiagonal();
      const double tj = single[j].value <= kZeroRobustness ? 0.0 : single[j].value;
      tau = ((1.0 + t) / (1.0 + tj) * diag - rho) / t;
    }
    cert.noise_residual = std::max({cert.noise_residual, -min_eig(tau),
                                    std::abs(tau.trace().real() - 1.0)});
    cert.noise.push_back(tau);
  }
  return cert;
}

double mean_robustness_fixed(const StateSet& s) {
  double sum = 0.0;
  for (const auto& rho : s) sum += robustness_state_value(rho.matrix());
  return sum / s.size();
}

RobustnessCertificate robustness_assemblage_fixed(const MeasurementAssemblage& m,
                                                  const SdpOptions& options) {
  const int d = m.dim();
  const auto counts = m.outcome_counts();
  const int total = m.total_outcomes();
  // Variable 0 is t; then g(i|a,x) for block (a,x) in setting-major order.
  const int nvars = 1 + total * d;
  SdpProblem p(std::vector<int>(total, d), nvars);
  p.set_objective(0, 1.0);
  int block = 0;
  std::vector<int> first_block(m.settings());
  for (int x = 0; x < m.settings(); ++x) {
    first_block[x] = block;
    for (int a = 0; a < counts[x]; ++a, ++block) {
      p.add_constant(block, -m[x][a]);
      for (int i = 0; i < d; ++i) p.add_coefficient_entry(1 + block * d + i, block, i, i, 1.0);
    }
  }
  for (int x = 0; x < m.settings(); ++x) {
    for (int i = 0; i < d; ++i) {
      Eigen::VectorXd row = Eigen::VectorXd::Zero(nvars);
      row(0) = -1.0;
      for (int a = 0; a < counts[x]; ++a) row(1 + (first_block[x] + a) * d + i) = 1.0;
      p.add_equality(row, 1.0);
    }
  }
  const SdpSolution sol = solve(p, options);
  require_optimal(sol, "assemblage robustness");

  RobustnessCertificate cert;
  cert.value = std::max(0.0, sol.primal_objective);
  cert.outcome_counts = counts;
  cert.witness = sol.dual;
  cert.gap = sol.gap;
  cert.primal_residual = sol.primal_residual;
  cert.dual_residual = sol.dual_residual;
  block = 0;
  for (int x = 0; x < m.settings(); ++x) {
    ComplexMatrix total_noise = ComplexMatrix::Zero(d, d);
    for (int a = 0; a < counts[x]; ++a, ++block) {
      ComplexMatrix n;
      if (cert.value <= kZeroRobustness) {
        n = m[x][a];
      } else {
        const ComplexMatrix g =
            sol.x.segment(1 + block * d, d).cast<Complex>().asDiagonal();
        n = (g - m[x][a]) / cert.value;
      }
      cert.noise_residual = std::max(cert.noise_residual, -min_eig(n));
      total_noise += n;
      cert.noise.push_back(n);
    }
    cert.noise_residual = std::max(
        cert.noise_residual, max_abs(total_noise - ComplexMatrix::Identity(d, d)));
  }
  return cert;
}

double mean_robustness_assemblage_fixed(const MeasurementAssemblage& m) {
  double sum = 0.0;
  for (const auto& povm : m.measurements()) {
    sum += robustness_assemblage_fixed(MeasurementAssemblage(povm)).value;
  }
  return sum / m.settings();
}

bool membership_free_set(const StateSet& s, const UnitaryFrame& u, double tol) {
  for (const auto& rho : s) {
    if (max_off_diagonal(conjugate(rho.matrix(), u)) > tol) return false;
  }
  return true;
}

bool membership_free_set(const MeasurementAssemblage& m, const UnitaryFrame& u, double tol) {
  for (const auto& povm : m.measurements()) {
    for (int a = 0; a < povm.size(); ++a) {
      if (max_off_diagonal(conjugate(povm[a], u)) > tol) return false;
    }
  }
  return true;
}

}  // namespace setcoh
