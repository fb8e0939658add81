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

#include "setcoh/core.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace setcoh {
namespace {

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidMatrix;
}

TEST(HermitianMatrixTest, RejectsNonHermitian) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_EQ(code_of([&] { HermitianMatrix h(m); }), ErrorCode::kNotHermitian);
}

TEST(HermitianMatrixTest, RejectsNonSquare) {
  EXPECT_EQ(code_of([] { HermitianMatrix h(ComplexMatrix::Zero(2, 3)); }),
            ErrorCode::kInvalidMatrix);
}

TEST(DensityMatrixTest, ValidatesTraceAndPositivity) {
  EXPECT_EQ(code_of([] { DensityMatrix r(diag2(0.5, 0.4)); }), ErrorCode::kBadTrace);
  EXPECT_EQ(code_of([] { DensityMatrix r(diag2(1.5, -0.5)); }), ErrorCode::kNotPositive);
  const DensityMatrix r(diag2(0.25, 0.75));
  EXPECT_NEAR(r.purity(), 0.625, 1e-15);
  EXPECT_FALSE(r.is_pure());
}

TEST(StateSetTest, RequiresCommonDimension) {
  const DensityMatrix a(diag2(1, 0));
  const DensityMatrix b(ComplexMatrix::Identity(3, 3) / 3.0);
  EXPECT_EQ(code_of([&] { StateSet s({a, b}); }), ErrorCode::kDimensionMismatch);
  EXPECT_THROW(StateSet(std::vector<DensityMatrix>{}), Error);
}

TEST(PovmTest, RequiresCompleteness) {
  EXPECT_EQ(code_of([] { Povm p(std::vector<ComplexMatrix>{diag2(1, 0), diag2(0, 0.9)}); }),
            ErrorCode::kNotComplete);
  const Povm p(std::vector<ComplexMatrix>{diag2(1, 0), diag2(0, 1)});
  EXPECT_TRUE(p.is_projective());
  const Povm trivial(std::vector<ComplexMatrix>{diag2(0.5, 0.5), diag2(0.5, 0.5)});
  EXPECT_FALSE(trivial.is_projective());
}

TEST(BlochTest, RoundTrip) {
  const BlochVector q{0.3, -0.4, 0.5};
  const BlochVector back = state_to_bloch(bloch_to_state(q));
  EXPECT_NEAR(back.x, 0.3, 1e-15);
  EXPECT_NEAR(back.y, -0.4, 1e-15);
  EXPECT_NEAR(back.z, 0.5, 1e-15);
  EXPECT_EQ(code_of([] { bloch_to_state({1.0, 1.0, 0.0}); }), ErrorCode::kInvalidBloch);
}

TEST(BlochTest, FrameFromDirectionDiagonalisesPSigma) {
  const Eigen::Vector3d p = Eigen::Vector3d(1.0, 2.0, -0.5).normalized();
  const UnitaryFrame u = UnitaryFrame::from_bloch_direction(p);
  const ComplexMatrix ps = p.x() * pauli(0) + p.y() * pauli(1) + p.z() * pauli(2);
  const ComplexMatrix c = conjugate(ps, u);
  EXPECT_LT(max_abs(c - pauli(2)), 1e-12);
}

TEST(OverlapTest, PureStates) {
  const DensityMatrix zero = bloch_to_state({0, 0, 1});
  const DensityMatrix plus = bloch_to_state({1, 0, 0});
  EXPECT_NEAR(overlap(zero, plus), 0.5, 1e-15);
  EXPECT_NEAR(overlap(zero, zero), 1.0, 1e-15);
}

TEST(EighTest, DescendingOrderAndReconstruction) {
  const DensityMatrix rho = random_density(7, 4);
  const EigenDecomposition e = eigh(rho.matrix());
  for (int i = 1; i < 4; ++i) EXPECT_GE(e.values(i - 1), e.values(i));
  const ComplexMatrix back =
      e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
  EXPECT_LT(max_abs(back - rho.matrix()), 1e-13);
  const ComplexMatrix d = conjugate(rho.matrix(), eigenframe(rho.matrix()));
  EXPECT_LT(max_off_diagonal(d), 1e-13);
}

TEST(ExpiTest, MatchesPauliRotation) {
  const double t = 0.37;
  const ComplexMatrix u = expi_hermitian(t * pauli(0));
  ComplexMatrix expected(2, 2);
  expected << std::cos(t), Complex(0, std::sin(t)), Complex(0, std::sin(t)), std::cos(t);
  EXPECT_LT(max_abs(u - expected), 1e-14);
}

TEST(GeneratorTest, DeterministicAndValid) {
  for (int d = 2; d <= 4; ++d) {
    const UnitaryFrame u = random_haar_unitary(3, d);
    EXPECT_LT(max_abs(u.matrix() - random_haar_unitary(3, d).matrix()), 0.0 + 1e-300);
    EXPECT_TRUE(random_pure_state(5, d).is_pure());
    const DensityMatrix rho = random_density(5, d);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
    const Povm p = random_povm(9, d, 3);
    EXPECT_EQ(p.size(), 3);
    const Povm proj = random_projective_povm(9, d, 2);
    EXPECT_TRUE(proj.is_projective());
  }
  EXPECT_EQ(code_of([] { random_haar_unitary(1, 1); }), ErrorCode::kInvalidDimension);
  EXPECT_EQ(code_of([] { random_projective_povm(1, 2, 3); }), ErrorCode::kUnsupportedInput);
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
}

TEST(ProductPovmTest, MarginalsRecoverSettings) {
  // Two commuting binary measurements, diagonal in the computational basis.
  ComplexMatrix a = ComplexMatrix::Zero(3, 3);
  a.diagonal() << 0.2, 0.7, 1.0;
  ComplexMatrix b = ComplexMatrix::Zero(3, 3);
  b.diagonal() << 0.5, 0.1, 0.9;
  const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
  const MeasurementAssemblage m({Povm(std::vector<ComplexMatrix>{a, id - a}),
                                 Povm(std::vector<ComplexMatrix>{b, id - b})});
  const Povm joint = product_povm(m);
  EXPECT_EQ(joint.size(), 4);
  for (int x = 0; x < 2; ++x) {
    for (int o = 0; o < 2; ++o) {
      EXPECT_LT(max_abs(marginal(joint, m, x, o) - m[x][o]), 1e-12);
    }
  }
}

TEST(ProductPovmTest, RejectsNonCommuting) {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix pz = (id + pauli(2)) / 2.0;
  const ComplexMatrix px = (id + pauli(0)) / 2.0;
  const MeasurementAssemblage m({Povm(std::vector<ComplexMatrix>{pz, id - pz}),
                                 Povm(std::vector<ComplexMatrix>{px, id - px})});
  EXPECT_EQ(code_of([&] { product_povm(m); }), ErrorCode::kNotCommuting);
}

TEST(UnitaryFrameTest, RejectsNonUnitary) {
  EXPECT_EQ(code_of([] { UnitaryFrame u(2.0 * ComplexMatrix::Identity(2, 2)); }),
            ErrorCode::kNotUnitary);
}

}  // namespace
}  // namespace setcoh
