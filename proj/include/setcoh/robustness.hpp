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

// Robustness of coherence in a fixed (computational) basis, for single
// states, sets of states and measurement assemblages, with dual witnesses.
// Callers working in another frame U conjugate their input first.

#pragma once

#include <vector>

#include "setcoh/core.hpp"
#include "setcoh/sdp.hpp"

namespace setcoh {

struct RobustnessCertificate {
  double value = 0.0;
  // Dual witness, one PSD block per state (or per outcome, setting-major).
  std::vector<ComplexMatrix> witness;
  // Optimal noise tau_j (states) or N_{a|x} (setting-major), each PSD; for
  // assemblages the blocks of one setting sum to the identity.
  std::vector<ComplexMatrix> noise;
  // Block layout of witness/noise for assemblages; empty for states.
  std::vector<int> outcome_counts;
  // Index of the state or setting attaining the value.
  int argmax = 0;
  double gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  // Largest violation of the noise constraints (negativity, trace or
  // completeness error).
  double noise_residual = 0.0;
};

// 2 |<0|rho|1>|; throws kDimensionMismatch unless d = 2.
double robustness_state_qubit(const DensityMatrix& rho);

// min{tr(D) - 1 : D diagonal, D >= rho}, solved as an SDP. The witness Y has
// unit diagonal and tr(rho Y) = 1 + value.
RobustnessCertificate robustness_state_sdp(const DensityMatrix& rho,
                                           const SdpOptions& options = {});

// Value only. Uses the closed form for qubits and the SDP otherwise; meant
// for inner loops of frame searches.
double robustness_state_value(const ComplexMatrix& rho);

// Max over the set of single-state robustnesses, with the joint noise set and
// a witness supported on the first maximising state.
RobustnessCertificate robustness_set_fixed(const StateSet& s,
                                           const SdpOptions& options = {});

// Average of single-state robustnesses.
double mean_robustness_fixed(const StateSet& s);

// Robustness of an assemblage against diagonal assemblages with the same
// outcome counts.
RobustnessCertificate robustness_assemblage_fixed(const MeasurementAssemblage& m,
                                                  const SdpOptions& options = {});

// Average over settings of the single-setting robustness.
double mean_robustness_assemblage_fixed(const MeasurementAssemblage& m);

// Every operator of U s U^dagger has max off-diagonal magnitude <= tol.
bool membership_free_set(const StateSet& s, const UnitaryFrame& u, double tol = 1e-9);
bool membership_free_set(const MeasurementAssemblage& m, const UnitaryFrame& u,
                         double tol = 1e-9);

}  // namespace setcoh
