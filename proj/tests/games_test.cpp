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

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "setcoh/robustness.hpp"

namespace setcoh {
namespace {

// Success probability computed directly from the game ingredients.
double success(const ComplexMatrix& rho, const SubchannelGame& g) {
  double p = 0.0;
  for (size_t a = 0; a < g.weights.size(); ++a) {
    p += g.weights[a] *
         (g.unitaries[a] * rho * g.unitaries[a].adjoint() * g.measurement[static_cast<int>(a)])
             .trace()
             .real();
  }
  return p;
}

SubchannelGame hand_built(std::uint64_t seed, int d, int n) {
  std::mt19937_64 rng(seed);
  SubchannelGame g;
  g.dim = d;
  g.weights = oracle::simplex_point(rng, n);
  for (int a = 0; a < n; ++a) {
    g.unitaries.push_back(random_haar_unitary(derive_seed(seed, a), d).matrix());
  }
  g.measurement = random_povm(derive_seed(seed, 99), d, n);
  g.validate();
  return g;
}

TEST(SubchannelGameTest, SuccessMatchesDirectSum) {
  const SubchannelGame g = hand_built(1, 3, 4);
  const DensityMatrix rho = random_density(2, 3);
  EXPECT_NEAR(p_succ_subchannel(rho, g), success(rho.matrix(), g), 1e-14);
}

TEST(SubchannelGameTest, BestIncoherentIsMaxOverBasisStates) {
  for (int seed = 0; seed < 10; ++seed) {
    const int d = 2 + seed % 3;
    const SubchannelGame g = hand_built(seed, d, 3);
    const UnitaryFrame u = random_haar_unitary(seed + 50, d);
    double best = 0.0;
    for (int i = 0; i < d; ++i) {
      const ComplexVector e = u.matrix().adjoint().col(i);
      best = std::max(best, success(e * e.adjoint(), g));
    }
    EXPECT_NEAR(best_incoherent_success(g, u), best, 1e-13);
    // Random diagonal mixtures stay below.
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 20; ++k) {
      const auto w = oracle::simplex_point(rng, d);
      ComplexMatrix dm = ComplexMatrix::Zero(d, d);
      for (int i = 0; i < d; ++i) dm(i, i) = w[i];
      EXPECT_LE(success(u.matrix().adjoint() * dm * u.matrix(), g), best + 1e-13);
    }
  }
}

TEST(SubchannelGameTest, ValidateRejectsBadWeights) {
  SubchannelGame g = hand_built(3, 2, 2);
  g.weights[0] += 0.1;
  EXPECT_THROW(g.validate(), Error);
}

TEST(WitnessGameTest, RatioIsOnePlusRobustness) {
  for (int seed = 0; seed < 10; ++seed) {
    const int d = 2 + seed % 3;
    const DensityMatrix rho = random_density(seed, d);
    const UnitaryFrame u = random_haar_unitary(seed + 1, d);
    const double r = robustness_state_sdp(conjugate(rho, u)).value;
    EXPECT_NEAR(advantage_ratio_state(rho, u), 1.0 + r, 1e-5) << "seed " << seed;
  }
}

TEST(WitnessGameTest, FreeStateRatioIsOne) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m.diagonal() << 0.6, 0.4;
  const RobustnessCertificate c = robustness_state_sdp(DensityMatrix(m));
  EXPECT_NEAR(advantage_ratio_state(DensityMatrix(m), UnitaryFrame::identity(2)), 1.0, 1e-6);
  EXPECT_NEAR(c.value, 0.0, 1e-8);
}

TEST(WitnessGameTest, ZeroWitnessThrows) {
  try {
    game_from_witness(HermitianMatrix(ComplexMatrix::Zero(2, 2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroWitness);
  }
}

TEST(HandBuiltGameTest, AdvantageNeverExceedsBound) {
  for (int seed = 0; seed < 50; ++seed) {
    const int d = 2 + seed % 2;
    const SubchannelGame g = hand_built(1000 + seed, d, 2 + seed % 3);
    const DensityMatrix rho = seed % 3 == 0 ? random_pure_state(seed, d) : random_density(seed, d);
    const UnitaryFrame u = random_haar_unitary(seed + 7, d);
    const double r = robustness_state_sdp(conjugate(rho, u)).value;
    EXPECT_LE(p_succ_subchannel(rho, g) / best_incoherent_success(g, u), 1.0 + r + 1e-6);
  }
}

TEST(SetGameTest, RatioIsOnePlusSetRobustness) {
  for (int seed = 0; seed < 6; ++seed) {
    const StateSet s({random_density(seed, 2), random_pure_state(seed + 20, 2),
                      random_density(seed + 40, 2)});
    const UnitaryFrame u = random_haar_unitary(seed, 2);
    const double r = robustness_set_fixed(conjugate_set(s, u)).value;
    EXPECT_NEAR(advantage_ratio_set(s, u), 1.0 + r, 1e-5);
    const GameWithPriors g = build_set_game(s, u);
    EXPECT_EQ(g.priors.size(), 3u);
    double total = 0.0;
    for (double p : g.priors) total += p;
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(PovmGameTest, RatioIsOnePlusAssemblageRobustness) {
  for (int seed = 0; seed < 6; ++seed) {
    const MeasurementAssemblage m(random_povm(seed, 2, 2 + seed % 3));
    const UnitaryFrame u = random_haar_unitary(seed + 3, 2);
    const double r = robustness_assemblage_fixed(conjugate_set(m, u)).value;
    EXPECT_NEAR(advantage_ratio_povm(m, u), 1.0 + r, 1e-5);
  }
}

TEST(PovmGameTest, IncoherentPovmsDoNoBetter) {
  const UnitaryFrame u = random_haar_unitary(4, 3);
  const MeasurementAssemblage m(random_povm(4, 3, 3));
  const StateDiscriminationGame t = game_for_povm(m, UnitaryFrame::identity(3));
  // Any POVM diagonal in u scores at most the incoherent optimum.
  ComplexMatrix a = ComplexMatrix::Zero(3, 3);
  a.diagonal() << 1.0, 0.0, 0.5;
  ComplexMatrix b = ComplexMatrix::Zero(3, 3);
  b.diagonal() << 0.0, 1.0, 0.25;
  const ComplexMatrix c = ComplexMatrix::Identity(3, 3) - a - b;
  const ComplexMatrix ud = u.matrix().adjoint();
  const MeasurementAssemblage diag(Povm(std::vector<ComplexMatrix>{
      ud * a * u.matrix(), ud * b * u.matrix(), ud * c * u.matrix()}));
  EXPECT_LE(p_succ_povm(t, diag), best_incoherent_povm_success(t, u) + 1e-12);
}

}  // namespace
}  // namespace setcoh
