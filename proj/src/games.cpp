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

#include "setcoh/games.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "setcoh/robustness.hpp"

namespace setcoh {

namespace {

// Witness eigenvalues below this (relative) are clipped to zero; anything
// more negative is rejected.
constexpr double kWitnessNegativity = 1e-7;
// Blocks whose trace is below this fraction of the total get prior zero.
constexpr double kDroppedTrace = 1e-10;

void require_dim(int expected, int got) {
  if (expected != got) {
    throw Error(ErrorCode::kDimensionMismatch,
                "dimension " + std::to_string(got) + " where " + std::to_string(expected) +
                    " was expected");
  }
}

// Witness block from the rotated frame back to the original one.
ComplexMatrix unrotate(const ComplexMatrix& y, const UnitaryFrame& u) {
  return u.matrix().adjoint() * y * u.matrix();
}

double real_trace(const ComplexMatrix& m) { return m.trace().real(); }

// <i| u op u^dagger |i>.
double frame_diagonal(const ComplexMatrix& op, const UnitaryFrame& u, int i) {
  const ComplexVector row = u.matrix().row(i).adjoint();
  return row.dot(op * row).real();
}

}  // namespace

void SubchannelGame::validate(double tol) const {
  if (weights.size() != unitaries.size() ||
      static_cast<int>(weights.size()) != measurement.size()) {
    throw Error(ErrorCode::kInvalidMatrix, "subchannels and outcomes differ in number");
  }
  double total = 0.0;
  for (double w : weights) {
    if (w < -tol) throw Error(ErrorCode::kInvalidMatrix, "negative subchannel weight");
    total += w;
  }
  if (std::abs(total - 1.0) > tol) {
    throw Error(ErrorCode::kInvalidMatrix, "subchannel weights do not sum to one");
  }
  for (const auto& v : unitaries) {
    require_dim(dim, static_cast<int>(v.rows()));
    const ComplexMatrix e = v * v.adjoint() - ComplexMatrix::Identity(dim, dim);
    if (max_abs(e) > tol) throw Error(ErrorCode::kNotUnitary, "subchannel is not unitary");
  }
  require_dim(dim, measurement.dim());
}

double p_succ_subchannel(const DensityMatrix& rho, const SubchannelGame& g) {
  require_dim(g.dim, rho.dim());
  double p = 0.0;
  for (size_t a = 0; a < g.unitaries.size(); ++a) {
    const ComplexMatrix out = g.unitaries[a] * rho.matrix() * g.unitaries[a].adjoint();
    p += g.weights[a] * (out * g.measurement[static_cast<int>(a)]).trace().real();
  }
  return p;
}

SubchannelGame game_from_witness(const HermitianMatrix& y) {
  const int d = y.dim();
  const EigenDecomposition e = eigh(y);
  const double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
  if (e.values(d - 1) < -kWitnessNegativity * scale) {
    throw Error(ErrorCode::kNotPositive, "witness is not positive semidefinite");
  }
  const Eigen::VectorXd lambda = e.values.cwiseMax(0.0);
  const double tr = lambda.sum();
  if (!(tr > 1e-12)) throw Error(ErrorCode::kZeroWitness, "witness has zero trace");

  SubchannelGame g;
  g.dim = d;
  std::vector<ComplexMatrix> elements;
  for (int a = 0; a < d; ++a) {
    ComplexMatrix shift = ComplexMatrix::Zero(d, d);
    ComplexMatrix element = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
      const int to = (k + a) % d;
      shift += e.vectors.col(to) * e.vectors.col(k).adjoint();
      element += (lambda(k) / tr) * e.vectors.col(to) * e.vectors.col(to).adjoint();
    }
    g.unitaries.push_back(shift);
    g.weights.push_back(1.0 / d);
    elements.push_back(element);
  }
  g.measurement = Povm(elements);
  return g;
}

double best_incoherent_success(const SubchannelGame& g, const UnitaryFrame& u) {
  require_dim(g.dim, u.dim());
  // Linear in the state, so the maximum over the convex hull of the basis
  // states sits at one of them.
  double best = 0.0;
  for (int i = 0; i < g.dim; ++i) {
    const ComplexVector v = u.matrix().row(i).adjoint();
    best = std::max(best, p_succ_subchannel(DensityMatrix(v * v.adjoint()), g));
  }
  return best;
}

double advantage_ratio_state(const DensityMatrix& rho, const UnitaryFrame& u) {
  require_dim(rho.dim(), u.dim());
  const RobustnessCertificate cert = robustness_state_sdp(conjugate(rho, u));
  const SubchannelGame g =
      game_from_witness(HermitianMatrix(unrotate(cert.witness[0], u), Tolerances{1e-7}));
  return p_succ_subchannel(rho, g) / best_incoherent_success(g, u);
}

GameWithPriors build_set_game(const StateSet& s, const UnitaryFrame& u) {
  require_dim(s.dim(), u.dim());
  const RobustnessCertificate cert = robustness_set_fixed(conjugate_set(s, u));
  std::vector<double> traces;
  double total = 0.0;
  for (const auto& y : cert.witness) {
    traces.push_back(std::max(0.0, real_trace(y)));
    total += traces.back();
  }
  if (!(total > 0.0)) throw Error(ErrorCode::kZeroWitness, "all witness blocks vanish");
  GameWithPriors g;
  for (size_t j = 0; j < traces.size(); ++j) {
    if (traces[j] <= kDroppedTrace * total) {
      g.priors.push_back(0.0);
      g.games.emplace_back(std::nullopt);
      continue;
    }
    g.priors.push_back(traces[j] / total);
    g.games.emplace_back(
        game_from_witness(HermitianMatrix(unrotate(cert.witness[j], u), Tolerances{1e-7})));
  }
  const double kept = std::accumulate(g.priors.begin(), g.priors.end(), 0.0);
  for (double& p : g.priors) p /= kept;
  return g;
}

double score(const StateSet& s, const GameWithPriors& g) {
  if (static_cast<int>(g.games.size()) != s.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "game and set differ in size");
  }
  double out = 0.0;
  for (int j = 0; j < s.size(); ++j) {
    if (g.games[j]) out += g.priors[j] * p_succ_subchannel(s[j], *g.games[j]);
  }
  return out;
}

double best_incoherent_score(const GameWithPriors& g, const UnitaryFrame& u) {
  double out = 0.0;
  for (size_t j = 0; j < g.games.size(); ++j) {
    if (g.games[j]) out += g.priors[j] * best_incoherent_success(*g.games[j], u);
  }
  return out;
}

double advantage_ratio_set(const StateSet& s, const UnitaryFrame& u) {
  const GameWithPriors g = build_set_game(s, u);
  return score(s, g) / best_incoherent_score(g, u);
}

StateDiscriminationGame game_for_povm(const MeasurementAssemblage& m, const UnitaryFrame& u) {
  require_dim(m.dim(), u.dim());
  const RobustnessCertificate cert = robustness_assemblage_fixed(conjugate_set(m, u));
  StateDiscriminationGame t;
  t.dim = m.dim();
  double total = 0.0;
  std::vector<std::vector<double>> traces;
  size_t block = 0;
  for (int x = 0; x < m.settings(); ++x) {
    std::vector<double> tx;
    std::vector<ComplexMatrix> sx;
    for (int a = 0; a < m[x].size(); ++a, ++block) {
      sx.push_back(unrotate(cert.witness[block], u));
      tx.push_back(std::max(0.0, real_trace(sx.back())));
      total += tx.back();
    }
    traces.push_back(std::move(tx));
    t.states.push_back(std::move(sx));
  }
  if (!(total > 0.0)) throw Error(ErrorCode::kZeroWitness, "all witness blocks vanish");
  for (int x = 0; x < m.settings(); ++x) {
    double setting_total = 0.0;
    for (int a = 0; a < m[x].size(); ++a) {
      if (traces[x][a] <= kDroppedTrace * total) {
        traces[x][a] = 0.0;
        t.states[x][a].setZero();
      } else {
        t.states[x][a] /= traces[x][a];
      }
      setting_total += traces[x][a];
    }
    t.setting_priors.push_back(setting_total);
    std::vector<double> px;
    for (int a = 0; a < m[x].size(); ++a) {
      px.push_back(setting_total > 0.0 ? traces[x][a] / setting_total : 0.0);
    }
    t.outcome_priors.push_back(std::move(px));
  }
  const double kept = std::accumulate(t.setting_priors.begin(), t.setting_priors.end(), 0.0);
  for (double& p : t.setting_priors) p /= kept;
  return t;
}

double p_succ_povm(const StateDiscriminationGame& t, const MeasurementAssemblage& m) {
  require_dim(t.dim, m.dim());
  if (static_cast<int>(t.states.size()) != m.settings()) {
    throw Error(ErrorCode::kDimensionMismatch, "game and assemblage differ in settings");
  }
  double out = 0.0;
  for (int x = 0; x < m.settings(); ++x) {
    if (static_cast<int>(t.states[x].size()) != m[x].size()) {
      throw Error(ErrorCode::kDimensionMismatch, "game and assemblage differ in outcomes");
    }
    for (int a = 0; a < m[x].size(); ++a) {
      out += t.setting_priors[x] * t.outcome_priors[x][a] *
             (t.states[x][a] * m[x][a]).trace().real();
    }
  }
  return out;
}

double best_incoherent_povm_success(const StateDiscriminationGame& t, const UnitaryFrame& u) {
  require_dim(t.dim, u.dim());
  // A diagonal assemblage picks an outcome distribution per basis element and
  // setting independently, so a greedy choice per (i, x) is optimal.
  double out = 0.0;
  for (size_t x = 0; x < t.states.size(); ++x) {
    for (int i = 0; i < t.dim; ++i) {
      double best = 0.0;
      for (size_t a = 0; a < t.states[x].size(); ++a) {
        best = std::max(best, t.outcome_priors[x][a] * frame_diagonal(t.states[x][a], u, i));
      }
      out += t.setting_priors[x] * best;
    }
  }
  return out;
}

double advantage_ratio_povm(const MeasurementAssemblage& m, const UnitaryFrame& u) {
  const StateDiscriminationGame t = game_for_povm(m, u);
  return p_succ_povm(t, m) / best_incoherent_povm_success(t, u);
}

}  // namespace setcoh
