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

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

namespace setcoh {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidMatrix: return "invalid-matrix";
    case ErrorCode::kNotHermitian: return "not-hermitian";
    case ErrorCode::kNotPositive: return "not-positive";
    case ErrorCode::kBadTrace: return "bad-trace";
    case ErrorCode::kNotComplete: return "not-complete";
    case ErrorCode::kNotUnitary: return "not-unitary";
    case ErrorCode::kInvalidBloch: return "invalid-bloch";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kInvalidDimension: return "invalid-dimension";
    case ErrorCode::kNotCommuting: return "not-commuting";
    case ErrorCode::kNotPure: return "not-pure";
    case ErrorCode::kUnsupportedInput: return "unsupported-input";
    case ErrorCode::kSolverFailure: return "solver-failure";
    case ErrorCode::kZeroWitness: return "zero-witness";
    case ErrorCode::kNotIncoherent: return "not-incoherent";
    case ErrorCode::kZeroColumn: return "zero-column";
    case ErrorCode::kStrippingInfeasible: return "stripping-infeasible";
    case ErrorCode::kDecompositionStall: return "decomposition-stall";
    case ErrorCode::kMalformedVertex: return "malformed-vertex";
    case ErrorCode::kUnsupportedN: return "unsupported-n";
    case ErrorCode::kMalformedInput: return "malformed-input";
  }
  return "unknown";
}

const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_off_diagonal(const ComplexMatrix& m) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j) best = std::max(best, std::abs(m(i, j)));
    }
  }
  return best;
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << what << " must be a non-empty square matrix (got " << m.rows() << "x"
       << m.cols() << ")";
    throw Error(ErrorCode::kInvalidMatrix, os.str());
  }
}

double min_eigenvalue(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, const Tolerances& tol) {
  require_square(m, "Hermitian matrix");
  const double dev = max_abs(m - m.adjoint());
  if (!(dev <= tol.hermiticity)) {
    throw Error(ErrorCode::kNotHermitian,
                "max |m - m^dagger| = " + std::to_string(dev));
  }
  m_ = 0.5 * (m + m.adjoint());
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m, const Tolerances& tol)
    : h_(m, tol) {
  const double tr = h_.trace();
  if (!(std::abs(tr - 1.0) <= tol.trace)) {
    throw Error(ErrorCode::kBadTrace, "trace = " + std::to_string(tr));
  }
  const double lo = min_eigenvalue(h_.matrix());
  if (!(lo >= -tol.positivity)) {
    throw Error(ErrorCode::kNotPositive,
                "smallest eigenvalue = " + std::to_string(lo));
  }
}

double DensityMatrix::purity() const {
  return (matrix() * matrix()).trace().real();
}

StateSet::StateSet(std::vector<DensityMatrix> states) : states_(std::move(states)) {
  if (states_.empty()) {
    throw Error(ErrorCode::kInvalidDimension, "a state set needs at least one state");
  }
  dim_ = states_.front().dim();
  for (const auto& s : states_) {
    if (s.dim() != dim_) {
      throw Error(ErrorCode::kDimensionMismatch, "states of different dimension in one set");
    }
  }
}

Povm::Povm(std::vector<HermitianMatrix> elements, const Tolerances& tol)
    : elements_(std::move(elements)) {
  if (elements_.empty()) {
    throw Error(ErrorCode::kInvalidDimension, "a POVM needs at least one element");
  }
  dim_ = elements_.front().dim();
  ComplexMatrix total = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& e : elements_) {
    if (e.dim() != dim_) {
      throw Error(ErrorCode::kDimensionMismatch, "POVM elements of different dimension");
    }
    const double lo = min_eigenvalue(e.matrix());
    if (!(lo >= -tol.positivity)) {
      throw Error(ErrorCode::kNotPositive,
                  "POVM element with eigenvalue " + std::to_string(lo));
    }
    total += e.matrix();
  }
  const double dev = max_abs(total - ComplexMatrix::Identity(dim_, dim_));
  if (!(dev <= tol.completeness)) {
    throw Error(ErrorCode::kNotComplete,
                "max |sum_a A_a - I| = " + std::to_string(dev));
  }
}

namespace {

std::vector<HermitianMatrix> to_hermitian(const std::vector<ComplexMatrix>& ms,
                                          const Tolerances& tol) {
  std::vector<HermitianMatrix> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.emplace_back(m, tol);
  return out;
}

}  // namespace

Povm::Povm(const std::vector<ComplexMatrix>& elements, const Tolerances& tol)
    : Povm(to_hermitian(elements, tol), tol) {}

bool Povm::is_projective(double tol) const {
  for (const auto& e : elements_) {
    if (max_abs(e.matrix() * e.matrix() - e.matrix()) > tol) return false;
  }
  return true;
}

MeasurementAssemblage::MeasurementAssemblage(std::vector<Povm> measurements)
    : measurements_(std::move(measurements)) {
  if (measurements_.empty()) {
    throw Error(ErrorCode::kInvalidDimension, "an assemblage needs at least one setting");
  }
  dim_ = measurements_.front().dim();
  for (const auto& m : measurements_) {
    if (m.dim() != dim_) {
      throw Error(ErrorCode::kDimensionMismatch, "settings of different dimension");
    }
  }
}

MeasurementAssemblage::MeasurementAssemblage(Povm measurement)
    : MeasurementAssemblage(std::vector<Povm>{std::move(measurement)}) {}

std::vector<int> MeasurementAssemblage::outcome_counts() const {
  std::vector<int> out;
  for (const auto& m : measurements_) out.push_back(m.size());
  return out;
}

int MeasurementAssemblage::total_outcomes() const {
  int total = 0;
  for (const auto& m : measurements_) total += m.size();
  return total;
}

UnitaryFrame::UnitaryFrame(const ComplexMatrix& u, const Tolerances& tol) {
  require_square(u, "unitary frame");
  const auto d = u.rows();
  const double dev = max_abs(u * u.adjoint() - ComplexMatrix::Identity(d, d));
  if (!(dev <= tol.unitarity)) {
    throw Error(ErrorCode::kNotUnitary, "max |U U^dagger - I| = " + std::to_string(dev));
  }
  u_ = u;
}

UnitaryFrame UnitaryFrame::identity(int d) {
  if (d < 1) throw Error(ErrorCode::kInvalidDimension, "frame dimension must be positive");
  return UnitaryFrame(ComplexMatrix::Identity(d, d));
}

UnitaryFrame UnitaryFrame::from_bloch_direction(const Eigen::Vector3d& p) {
  const double n = p.norm();
  if (!(n > 0.0)) throw Error(ErrorCode::kInvalidBloch, "zero direction");
  const Eigen::Vector3d u = p / n;
  ComplexMatrix h = u.x() * pauli(0) + u.y() * pauli(1) + u.z() * pauli(2);
  return eigenframe(h);
}

UnitaryFrame UnitaryFrame::adjoint() const {
  UnitaryFrame out;
  out.u_ = u_.adjoint();
  return out;
}

const ComplexMatrix& pauli(int axis) {
  static const std::array<ComplexMatrix, 3> kPauli = [] {
    std::array<ComplexMatrix, 3> p;
    const Complex i(0.0, 1.0);
    p[0] = ComplexMatrix(2, 2);
    p[0] << 0.0, 1.0, 1.0, 0.0;
    p[1] = ComplexMatrix(2, 2);
    p[1] << 0.0, -i, i, 0.0;
    p[2] = ComplexMatrix(2, 2);
    p[2] << 1.0, 0.0, 0.0, -1.0;
    return p;
  }();
  return kPauli.at(axis);
}

ComplexMatrix hadamard() {
  ComplexMatrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

DensityMatrix bloch_to_state(const BlochVector& q) {
  const double n = q.norm();
  if (!(n <= 1.0 + 1e-9)) {
    throw Error(ErrorCode::kInvalidBloch, "Bloch vector norm " + std::to_string(n));
  }
  ComplexMatrix rho = ComplexMatrix::Identity(2, 2);
  rho += q.x * pauli(0) + q.y * pauli(1) + q.z * pauli(2);
  return DensityMatrix(0.5 * rho);
}

BlochVector state_to_bloch(const DensityMatrix& rho) {
  if (rho.dim() != 2) {
    throw Error(ErrorCode::kDimensionMismatch, "Bloch vectors need a qubit state");
  }
  const auto& m = rho.matrix();
  return {(m * pauli(0)).trace().real(), (m * pauli(1)).trace().real(),
          (m * pauli(2)).trace().real()};
}

double overlap(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "overlap of states of different dimension");
  }
  const double v = (rho.matrix() * sigma.matrix()).trace().real();
  return std::clamp(v, 0.0, 1.0);
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "commutator of mismatched operators");
  }
  return spectral_norm(a * b - b * a);
}

double commutator_norm(const DensityMatrix& rho, const DensityMatrix& eta) {
  return commutator_norm(rho.matrix(), eta.matrix());
}

namespace {

void require_dim(int got, const UnitaryFrame& u) {
  if (got != u.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "frame of dimension " + std::to_string(u.dim()) +
                    " applied to dimension " + std::to_string(got));
  }
}

}  // namespace

ComplexMatrix conjugate(const ComplexMatrix& op, const UnitaryFrame& u) {
  require_dim(static_cast<int>(op.rows()), u);
  return u.matrix() * op * u.matrix().adjoint();
}

DensityMatrix conjugate(const DensityMatrix& rho, const UnitaryFrame& u) {
  return DensityMatrix(conjugate(rho.matrix(), u));
}

StateSet conjugate_set(const StateSet& s, const UnitaryFrame& u) {
  require_dim(s.dim(), u);
  std::vector<DensityMatrix> out;
  out.reserve(s.size());
  for (const auto& rho : s) out.push_back(conjugate(rho, u));
  return StateSet(std::move(out));
}

Povm conjugate_set(const Povm& m, const UnitaryFrame& u) {
  require_dim(m.dim(), u);
  std::vector<ComplexMatrix> out;
  out.reserve(m.size());
  for (int a = 0; a < m.size(); ++a) out.push_back(conjugate(m[a], u));
  return Povm(out);
}

MeasurementAssemblage conjugate_set(const MeasurementAssemblage& m,
                                    const UnitaryFrame& u) {
  std::vector<Povm> out;
  out.reserve(m.settings());
  for (const auto& povm : m.measurements()) out.push_back(conjugate_set(povm, u));
  return MeasurementAssemblage(std::move(out));
}

Povm product_povm(const MeasurementAssemblage& m, double commute_tol) {
  const int k = m.settings();
  for (int x = 0; x < k; ++x) {
    for (int y = x + 1; y < k; ++y) {
      for (int a = 0; a < m[x].size(); ++a) {
        for (int b = 0; b < m[y].size(); ++b) {
          const double c = commutator_norm(m[x][a], m[y][b]);
          if (c > commute_tol) {
            throw Error(ErrorCode::kNotCommuting,
                        "settings " + std::to_string(x) + " and " + std::to_string(y) +
                            " have commutator norm " + std::to_string(c));
          }
        }
      }
    }
  }
  const auto counts = m.outcome_counts();
  int total = 1;
  for (int c : counts) total *= c;
  std::vector<ComplexMatrix> joint;
  joint.reserve(total);
  std::vector<int> outcome(k, 0);
  for (int idx = 0; idx < total; ++idx) {
    int rest = idx;
    for (int x = k - 1; x >= 0; --x) {
      outcome[x] = rest % counts[x];
      rest /= counts[x];
    }
    ComplexMatrix g = m[0][outcome[0]];
    for (int x = 1; x < k; ++x) g = g * m[x][outcome[x]];
    // Products of commuting Hermitian operators are Hermitian up to rounding.
    joint.push_back(0.5 * (g + g.adjoint()));
  }
  Tolerances tol = default_tolerances();
  tol.hermiticity = std::max(tol.hermiticity, commute_tol);
  tol.positivity = std::max(tol.positivity, commute_tol);
  tol.completeness = std::max(tol.completeness, commute_tol);
  return Povm(joint, tol);
}

ComplexMatrix marginal(const Povm& joint, const MeasurementAssemblage& m,
                       int setting, int outcome) {
  const auto counts = m.outcome_counts();
  ComplexMatrix sum = ComplexMatrix::Zero(m.dim(), m.dim());
  for (int idx = 0; idx < joint.size(); ++idx) {
    int rest = idx;
    int ax = 0;
    for (int x = m.settings() - 1; x >= 0; --x) {
      if (x == setting) ax = rest % counts[x];
      rest /= counts[x];
    }
    if (ax == outcome) sum += joint[idx];
  }
  return sum;
}

EigenDecomposition eigh(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const auto n = h.rows();
  EigenDecomposition out;
  out.values = es.eigenvalues().reverse();
  out.vectors = es.eigenvectors().rowwise().reverse();
  (void)n;
  return out;
}

EigenDecomposition eigh(const HermitianMatrix& h) { return eigh(h.matrix()); }

ComplexMatrix expi_hermitian(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const auto& v = es.eigenvectors();
  ComplexVector phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k) {
    phases(k) = std::polar(1.0, es.eigenvalues()(k));
  }
  return v * phases.asDiagonal() * v.adjoint();
}

UnitaryFrame eigenframe(const ComplexMatrix& h) {
  return UnitaryFrame(eigh(h).vectors.adjoint());
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(seed ^ mix(counter + 0x632be59bd9b4e019ULL));
}

namespace {

void require_generator_dim(int d) {
  if (d < 2) throw Error(ErrorCode::kInvalidDimension, "dimension must be >= 2");
}

ComplexMatrix complex_gaussian(std::uint64_t seed, int d) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  }
  return g;
}

ComplexMatrix haar_matrix(std::uint64_t seed, int d) {
  const ComplexMatrix g = complex_gaussian(seed, d);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    const Complex phase = mag > 0.0 ? r(j, j) / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

}  // namespace

UnitaryFrame random_haar_unitary(std::uint64_t seed, int d) {
  require_generator_dim(d);
  return UnitaryFrame(haar_matrix(seed, d));
}

DensityMatrix random_pure_state(std::uint64_t seed, int d) {
  require_generator_dim(d);
  const ComplexVector psi = haar_matrix(seed, d).col(0);
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix random_density(std::uint64_t seed, int d) {
  require_generator_dim(d);
  const ComplexMatrix v = haar_matrix(derive_seed(seed, 1), d);
  std::mt19937_64 rng(derive_seed(seed, 2));
  std::exponential_distribution<double> expo(1.0);
  Eigen::VectorXd w(d);
  for (int i = 0; i < d; ++i) w(i) = expo(rng);
  w /= w.sum();
  return DensityMatrix(v * w.cast<Complex>().asDiagonal() * v.adjoint());
}

Povm random_povm(std::uint64_t seed, int d, int n) {
  require_generator_dim(d);
  if (n < 1) throw Error(ErrorCode::kUnsupportedInput, "POVM needs at least one outcome");
  std::vector<ComplexMatrix> w;
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (int a = 0; a < n; ++a) {
    const ComplexMatrix g = complex_gaussian(derive_seed(seed, a), d);
    w.push_back(g * g.adjoint());
    total += w.back();
  }
  const EigenDecomposition e = eigh(total);
  const Eigen::VectorXd inv_sqrt = e.values.cwiseSqrt().cwiseInverse();
  const ComplexMatrix s = e.vectors * inv_sqrt.cast<Complex>().asDiagonal() * e.vectors.adjoint();
  std::vector<ComplexMatrix> elements;
  for (const auto& x : w) elements.push_back(s * x * s);
  return Povm(elements);
}

Povm random_projective_povm(std::uint64_t seed, int d, int n) {
  require_generator_dim(d);
  if (n < 1 || n > d) {
    throw Error(ErrorCode::kUnsupportedInput, "projective POVM needs 1 <= n <= d outcomes");
  }
  const ComplexMatrix v = haar_matrix(seed, d);
  std::vector<ComplexMatrix> elements(n, ComplexMatrix::Zero(d, d));
  for (int k = 0; k < d; ++k) elements[k % n] += v.col(k) * v.col(k).adjoint();
  return Povm(elements);
}

}  // namespace setcoh
