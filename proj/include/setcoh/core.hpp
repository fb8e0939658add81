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

// Validated quantum objects (states, POVMs, frames) and the small dense
// linear algebra shared by every other module. Dimensions are expected to be
// small (d <= ~16); everything is dense.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "setcoh/error.hpp"

namespace setcoh {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Validation tolerances applied when objects are constructed.
struct Tolerances {
  double hermiticity = 1e-10;
  double positivity = 1e-9;
  double trace = 1e-9;
  double completeness = 1e-9;
  double unitarity = 1e-9;
};

// Process-wide defaults; callers may pass their own Tolerances instead.
const Tolerances& default_tolerances();

// Largest |m(i,j)| over all entries.
double max_abs(const ComplexMatrix& m);

// Largest |m(i,j)| over i != j.
double max_off_diagonal(const ComplexMatrix& m);

// Spectral (operator) norm.
double spectral_norm(const ComplexMatrix& m);

class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  // Throws kInvalidMatrix for non-square input and kNotHermitian when
  // max |m(i,j) - conj(m(j,i))| exceeds the tolerance. The stored matrix is
  // the exact Hermitian part (m + m^dagger) / 2.
  explicit HermitianMatrix(const ComplexMatrix& m,
                           const Tolerances& tol = default_tolerances());

  const ComplexMatrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  double trace() const { return m_.trace().real(); }

 private:
  ComplexMatrix m_;
};

class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(const ComplexMatrix& m,
                         const Tolerances& tol = default_tolerances());

  const ComplexMatrix& matrix() const { return h_.matrix(); }
  const HermitianMatrix& hermitian() const { return h_; }
  int dim() const { return h_.dim(); }

  // tr(rho^2).
  double purity() const;
  bool is_pure(double tol = 1e-9) const { return purity() >= 1.0 - tol; }

 private:
  HermitianMatrix h_;
};

class StateSet {
 public:
  StateSet() = default;
  // Requires at least one state; all must share the same dimension.
  explicit StateSet(std::vector<DensityMatrix> states);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(states_.size()); }
  const DensityMatrix& operator[](int j) const { return states_[j]; }
  const std::vector<DensityMatrix>& states() const { return states_; }
  auto begin() const { return states_.begin(); }
  auto end() const { return states_.end(); }

 private:
  int dim_ = 0;
  std::vector<DensityMatrix> states_;
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Eigen::Vector3d vec() const { return {x, y, z}; }
  double norm() const { return vec().norm(); }
  static BlochVector from(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }
};

class Povm {
 public:
  Povm() = default;
  // Elements must be PSD and sum to the identity within tolerance.
  explicit Povm(std::vector<HermitianMatrix> elements,
                const Tolerances& tol = default_tolerances());
  explicit Povm(const std::vector<ComplexMatrix>& elements,
                const Tolerances& tol = default_tolerances());

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const ComplexMatrix& operator[](int a) const { return elements_[a].matrix(); }
  const std::vector<HermitianMatrix>& elements() const { return elements_; }

  // Every element idempotent within tol.
  bool is_projective(double tol = 1e-9) const;

 private:
  int dim_ = 0;
  std::vector<HermitianMatrix> elements_;
};

class MeasurementAssemblage {
 public:
  MeasurementAssemblage() = default;
  explicit MeasurementAssemblage(std::vector<Povm> measurements);
  // Single-setting assemblage.
  explicit MeasurementAssemblage(Povm measurement);

  int dim() const { return dim_; }
  int settings() const { return static_cast<int>(measurements_.size()); }
  const Povm& operator[](int x) const { return measurements_[x]; }
  const std::vector<Povm>& measurements() const { return measurements_; }
  std::vector<int> outcome_counts() const;
  // Total number of operators M_{a|x} across all settings.
  int total_outcomes() const;

 private:
  int dim_ = 0;
  std::vector<Povm> measurements_;
};

class UnitaryFrame {
 public:
  UnitaryFrame() = default;
  explicit UnitaryFrame(const ComplexMatrix& u,
                        const Tolerances& tol = default_tolerances());

  static UnitaryFrame identity(int d);
  // Qubit frame whose z axis is the Bloch direction p: U (p.sigma) U^dagger = sigma_z.
  static UnitaryFrame from_bloch_direction(const Eigen::Vector3d& p);

  const ComplexMatrix& matrix() const { return u_; }
  int dim() const { return static_cast<int>(u_.rows()); }
  UnitaryFrame adjoint() const;

 private:
  ComplexMatrix u_;
};

// Pauli matrices (sigma_x, sigma_y, sigma_z).
const ComplexMatrix& pauli(int axis);
ComplexMatrix hadamard();

// (I + q.sigma) / 2; throws kInvalidBloch when |q| > 1 + 1e-9.
DensityMatrix bloch_to_state(const BlochVector& q);
// q_i = tr(rho sigma_i); throws kDimensionMismatch unless d = 2.
BlochVector state_to_bloch(const DensityMatrix& rho);

// tr(rho sigma), clamped to [0, 1].
double overlap(const DensityMatrix& rho, const DensityMatrix& sigma);

// Spectral norm of [a, b].
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);
double commutator_norm(const DensityMatrix& rho, const DensityMatrix& eta);

// O -> U O U^dagger on every operator.
ComplexMatrix conjugate(const ComplexMatrix& op, const UnitaryFrame& u);
DensityMatrix conjugate(const DensityMatrix& rho, const UnitaryFrame& u);
StateSet conjugate_set(const StateSet& s, const UnitaryFrame& u);
Povm conjugate_set(const Povm& m, const UnitaryFrame& u);
MeasurementAssemblage conjugate_set(const MeasurementAssemblage& m,
                                    const UnitaryFrame& u);

// Joint POVM G_{a_1..a_k} = prod_x A_{a_x|x} over commuting settings. Joint
// outcomes are enumerated with the last setting varying fastest.
Povm product_povm(const MeasurementAssemblage& m, double commute_tol = 1e-8);
// Outcome a of setting x recovered by summing the joint POVM.
ComplexMatrix marginal(const Povm& joint, const MeasurementAssemblage& m,
                       int setting, int outcome);

struct EigenDecomposition {
  Eigen::VectorXd values;  // descending
  ComplexMatrix vectors;   // columns, orthonormal
};

// Hermitian eigendecomposition with eigenvalues sorted in descending order.
EigenDecomposition eigh(const ComplexMatrix& h);
EigenDecomposition eigh(const HermitianMatrix& h);

// exp(iH) for Hermitian H.
ComplexMatrix expi_hermitian(const ComplexMatrix& h);

// Frame that diagonalises h: U h U^dagger is diagonal (descending).
UnitaryFrame eigenframe(const ComplexMatrix& h);

// Seeded generators. All are pure functions of (seed, d) and throw
// kInvalidDimension for d < 2.
DensityMatrix random_pure_state(std::uint64_t seed, int d);
DensityMatrix random_density(std::uint64_t seed, int d);
UnitaryFrame random_haar_unitary(std::uint64_t seed, int d);
// n-outcome POVM with full-rank elements S^{-1/2} W_a S^{-1/2}, W_a Wishart.
Povm random_povm(std::uint64_t seed, int d, int n);
// Projective POVM from the columns of a Haar unitary dealt round-robin to
// n <= d outcomes; throws kUnsupportedInput for n > d.
Povm random_projective_povm(std::uint64_t seed, int d, int n);

// Stateless seed derivation (splitmix64 of seed and counter).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter);

}  // namespace setcoh
