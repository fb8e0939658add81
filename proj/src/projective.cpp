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

#include "setcoh/projective.hpp"

#include <cmath>

namespace setcoh {

namespace {

// Clamp threshold for float drift in the double pipeline.
constexpr double kDriftEps = 1e-12;

}  // namespace

StochasticMatrix<double> incoherent_matrix(const Povm& a, const UnitaryFrame& u, double tol) {
  if (a.dim() != u.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "POVM and frame differ in dimension");
  }
  const int d = a.dim();
  StochasticMatrix<double> m(d, a.size());
  for (int j = 0; j < a.size(); ++j) {
    const ComplexMatrix c = conjugate(a[j], u);
    const double off = max_off_diagonal(c);
    if (off > tol) {
      throw Error(ErrorCode::kNotIncoherent,
                  "element " + std::to_string(j) + " has off-diagonal magnitude " +
                      std::to_string(off));
    }
    for (int i = 0; i < d; ++i) m(i, j) = std::max(0.0, c(i, i).real());
  }
  // Renormalise rows so each is an exact probability vector.
  for (int i = 0; i < d; ++i) {
    double s = 0.0;
    for (int j = 0; j < a.size(); ++j) s += m(i, j);
    for (int j = 0; j < a.size(); ++j) m(i, j) /= s;
  }
  return m;
}

ProjectiveDecomposition decompose(const Povm& a, const UnitaryFrame& u) {
  const StochasticMatrix<double> m = incoherent_matrix(a, u);
  const DiagonalDecomposition<double> diag = decompose_matrix(m, kDriftEps);
  ProjectiveDecomposition out;
  out.dim = diag.dim;
  out.outcomes = diag.outcomes;
  out.method = diag.method;
  const ComplexMatrix& v = u.matrix();
  for (const auto& term : diag.terms) {
    std::vector<ComplexMatrix> elements(diag.outcomes, ComplexMatrix::Zero(diag.dim, diag.dim));
    for (int i = 0; i < diag.dim; ++i) {
      const ComplexVector e = v.row(i).adjoint();
      elements[term.assignment[i]] += e * e.adjoint();
    }
    out.weights.push_back(term.weight);
    out.components.emplace_back(elements);
    out.assignments.push_back(term.assignment);
  }
  return out;
}

bool verify_decomposition(const Povm& a, const ProjectiveDecomposition& dec,
                          const UnitaryFrame& u, double tol) {
  if (dec.weights.size() != dec.components.size() || dec.dim != a.dim() ||
      dec.outcomes != a.size() || u.dim() != a.dim()) {
    return false;
  }
  double total = 0.0;
  for (double w : dec.weights) {
    if (!(w > 0.0)) return false;
    total += w;
  }
  if (std::abs(total - 1.0) > tol) return false;
  for (const auto& p : dec.components) {
    if (p.size() != a.size() || !p.is_projective(tol)) return false;
  }
  for (int k = 0; k < a.size(); ++k) {
    ComplexMatrix sum = ComplexMatrix::Zero(a.dim(), a.dim());
    for (size_t t = 0; t < dec.weights.size(); ++t) sum += dec.weights[t] * dec.components[t][k];
    if (max_abs(sum - a[k]) > tol) return false;
  }
  return true;
}

DiagonalDecomposition<Rational> decompose_exact(const StochasticMatrix<Rational>& m) {
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (m(i, j) < 0) throw Error(ErrorCode::kNotPositive, "negative diagonal entry");
    }
  }
  for (const auto& s : m.row_sums()) {
    if (s != 1) throw Error(ErrorCode::kNotComplete, "row of the diagonal matrix does not sum to one");
  }
  return decompose_matrix(m, Rational(0));
}

std::string to_string(DecompositionMethod m) {
  return m == DecompositionMethod::kStripped ? "stripped" : "row-wise";
}

}  // namespace setcoh
