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

// Basis-independent set coherence: the fixed-frame robustness measures
// minimised over reference frames. Every reported value is attained by the
// returned frame, so it is an upper bound on the true minimum.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "setcoh/core.hpp"
#include "setcoh/robustness.hpp"

namespace setcoh {

struct SearchOptions {
  // Starts for the general search, structured frames (eigenframes of the
  // inputs and their combinations) first. Warm starts always run.
  int restarts = 50;
  // Sweeps over the search directions per restart.
  int max_iterations = 500;
  double step_tolerance = 1e-9;
  // Values at or below this are treated as zero; the search stops there.
  double value_tolerance = 1e-8;
  std::uint64_t seed = 0;
  // Worker threads for restarts; 0 keeps the OpenMP default.
  int threads = 0;
  // Frames tried before the generated starts.
  std::vector<UnitaryFrame> warm_starts;
};

struct SetCoherenceResult {
  double value = 0.0;
  UnitaryFrame frame;
  // Qubit searches also report the basis direction (z axis of the frame).
  std::optional<Eigen::Vector3d> bloch_direction;
  // Fixed-frame robustness of each state (or setting) at the frame.
  std::vector<double> member_values;
  // Best value reached from each start, in start order.
  std::vector<double> restart_values;
  // Fixed-frame certificate of the conjugated object at the frame.
  RobustnessCertificate certificate;
};

// Qubit sets: minimise over Bloch directions p.
SetCoherenceResult qubit_r1(const StateSet& s, const SearchOptions& options = {});
SetCoherenceResult qubit_rmax(const StateSet& s, const SearchOptions& options = {});

struct PairValue {
  double value = 0.0;
  UnitaryFrame frame;
};

// Mean robustness of a pair: pure pairs of any dimension, or qubit pairs.
PairValue pair_r1(const DensityMatrix& rho1, const DensityMatrix& rho2);
// Max robustness of a pure pair, sqrt(min(o, 1 - o)) with o the overlap.
PairValue pair_rmax_pure(const DensityMatrix& rho1, const DensityMatrix& rho2);

// General frame searches (any dimension).
SetCoherenceResult set_coherence_r1(const StateSet& s, const SearchOptions& options = {});
SetCoherenceResult set_coherence_rmax(const StateSet& s, const SearchOptions& options = {});
SetCoherenceResult set_coherence_rmax(const MeasurementAssemblage& m,
                                      const SearchOptions& options = {});
SetCoherenceResult mean_set_coherence_povm(const MeasurementAssemblage& m,
                                           const SearchOptions& options = {});

struct IncoherenceCheck {
  bool incoherent = false;
  // Diagonalising frame, present when incoherent.
  std::optional<UnitaryFrame> frame;
  double max_commutator = 0.0;
  // Largest off-diagonal magnitude in the returned frame.
  double max_off_diagonal = 0.0;
};

// Zero set coherence: all pairwise commutators vanish (within tol). The frame
// is found by successive diagonalisation inside eigenspaces.
IncoherenceCheck is_incoherent(const StateSet& s, double tol = 1e-9);
IncoherenceCheck is_incoherent(const MeasurementAssemblage& m, double tol = 1e-9);

// Frame diagonalising a commuting family of Hermitian operators as far as
// possible.
UnitaryFrame joint_eigenframe(const std::vector<ComplexMatrix>& ops);

// Multi-restart minimisation of an arbitrary frame objective. Starts are the
// given frames followed by Haar-random frames up to options.restarts.
struct FrameSearchResult {
  double value = 0.0;
  UnitaryFrame frame;
  std::vector<double> restart_values;
};
using FrameObjective = std::function<double(const ComplexMatrix& u)>;
FrameSearchResult minimize_over_frames(const FrameObjective& objective, int dim,
                                       const std::vector<UnitaryFrame>& starts,
                                       const SearchOptions& options);

}  // namespace setcoh
