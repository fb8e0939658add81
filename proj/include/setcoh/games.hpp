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

// Discrimination games built from robustness witnesses. The advantage of a
// resource over the best incoherent object in the same game is bounded by
// 1 + robustness, with equality for the witness game.

#pragma once

#include <optional>
#include <vector>

#include "setcoh/core.hpp"

namespace setcoh {

// Subchannels I_a(rho) = w_a U_a rho U_a^dagger, guessed with A_a.
struct SubchannelGame {
  int dim = 0;
  std::vector<double> weights;
  std::vector<ComplexMatrix> unitaries;
  Povm measurement;

  // Checks sum_a w_a = 1, unitarity and matching outcome count; throws
  // kInvalidMatrix on violation.
  void validate(double tol = 1e-9) const;
};

// sum_a tr(I_a(rho) A_a).
double p_succ_subchannel(const DensityMatrix& rho, const SubchannelGame& g);

// Shift game of a PSD witness: U_a e_k = e_{k+a mod d} on the eigenbasis of Y
// (descending), weights 1/d, A_a = U_a Y U_a^dagger / tr(Y).
SubchannelGame game_from_witness(const HermitianMatrix& y);

// Best success of a state diagonal in the frame u, attained at one of the
// basis states u^dagger |i>.
double best_incoherent_success(const SubchannelGame& g, const UnitaryFrame& u);

// Ratio p_succ / best incoherent success of the witness game of rho.
double advantage_ratio_state(const DensityMatrix& rho, const UnitaryFrame& u);

struct GameWithPriors {
  std::vector<double> priors;
  // Empty for members with zero witness (prior 0).
  std::vector<std::optional<SubchannelGame>> games;
};

GameWithPriors build_set_game(const StateSet& s, const UnitaryFrame& u);
// sum_j p(j) p_succ(rho_j, G_j).
double score(const StateSet& s, const GameWithPriors& g);
// Best score over sets diagonal in u (independent basis state per member).
double best_incoherent_score(const GameWithPriors& g, const UnitaryFrame& u);
double advantage_ratio_set(const StateSet& s, const UnitaryFrame& u);

// Minimum-error discrimination of a state assemblage with priors p(x) on the
// setting and p(a|x) on the outcome.
struct StateDiscriminationGame {
  int dim = 0;
  std::vector<double> setting_priors;
  std::vector<std::vector<double>> outcome_priors;
  // rho_{a|x}; a zero matrix where the prior vanishes.
  std::vector<std::vector<ComplexMatrix>> states;
};

StateDiscriminationGame game_for_povm(const MeasurementAssemblage& m, const UnitaryFrame& u);
double p_succ_povm(const StateDiscriminationGame& t, const MeasurementAssemblage& m);
// Best success over assemblages diagonal in u: each basis element is sent to
// the outcome with the largest weighted diagonal entry.
double best_incoherent_povm_success(const StateDiscriminationGame& t, const UnitaryFrame& u);
double advantage_ratio_povm(const MeasurementAssemblage& m, const UnitaryFrame& u);

}  // namespace setcoh
