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

// Decomposition of incoherent POVMs into convex mixtures of projective
// measurements diagonal in the same frame. The pipeline works on the d x n
// matrix m(i, a) = <i|A_a|i>: strip trivial measurements until all column sums
// agree, split the rescaled matrix into integral transportation-polytope
// points, and peel each integral point into one-hot layers.
//
// The arithmetic is templated so the same code runs on doubles and on exact
// rationals.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "setcoh/core.hpp"

namespace setcoh {

using Rational = boost::multiprecision::cpp_rational;

// Dense row-major d x n matrix of nonnegative entries.
template <typename T>
class StochasticMatrix {
 public:
  StochasticMatrix() = default;
  StochasticMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(rows * cols, T(0)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

  std::vector<T> row_sums() const {
    std::vector<T> s(rows_, T(0));
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) s[i] += (*this)(i, j);
    }
    return s;
  }
  std::vector<T> col_sums() const {
    std::vector<T> s(cols_, T(0));
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) s[j] += (*this)(i, j);
    }
    return s;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> e_;
};

// Nonnegative integer matrix with row sums n and column sums d.
template <typename T>
struct IntegerVertex {
  StochasticMatrix<long long> r;
  T weight = T(0);
};

template <typename T>
struct StripResult {
  T t = T(0);
  // (colsum_j - t) / d, the weight of the trivial measurement on outcome j.
  std::vector<T> trivial_weights;
  // (d / t) (m(i, j) - trivial_weights[j]); rows sum to n, columns to d.
  StochasticMatrix<T> balanced;
};

// A projective measurement diagonal in the frame: basis element i is sent to
// outcome assignment[i].
template <typename T>
struct DiagonalTerm {
  T weight = T(0);
  std::vector<int> assignment;
};

enum class DecompositionMethod {
  // Trivial stripping followed by the integral vertex split.
  kStripped,
  // Direct split of the rows into deterministic assignments, used when the
  // stripped matrix would have negative entries.
  kRowWise,
};

template <typename T>
struct DiagonalDecomposition {
  int dim = 0;
  int outcomes = 0;
  DecompositionMethod method = DecompositionMethod::kStripped;
  std::vector<DiagonalTerm<T>> terms;
};

namespace detail {

template <typename T>
bool is_zero(const T& x, const T& eps) {
  return x <= eps && x >= -eps;
}

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.template convert_to<double>(); }

// Integral transportation plan with row supply `row`, column demand `col`,
// restricted to the support of `m`. Edmonds-Karp on the bipartite network.
template <typename T>
bool integral_plan(const StochasticMatrix<T>& m, long long row, long long col,
                   StochasticMatrix<long long>* out) {
  const int d = m.rows();
  const int n = m.cols();
  const int nodes = d + n + 2;
  const int source = d + n;
  const int sink = d + n + 1;
  std::vector<std::vector<long long>> cap(nodes, std::vector<long long>(nodes, 0));
  for (int i = 0; i < d; ++i) cap[source][i] = row;
  for (int j = 0; j < n; ++j) cap[d + j][sink] = col;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < n; ++j) {
      if (m(i, j) > T(0)) cap[i][d + j] = std::min(row, col);
    }
  }
  const std::vector<std::vector<long long>> initial = cap;
  long long flow = 0;
  while (true) {
    std::vector<int> parent(nodes, -1);
    parent[source] = source;
    std::queue<int> q;
    q.push(source);
    while (!q.empty() && parent[sink] < 0) {
      const int v = q.front();
      q.pop();
      for (int w = 0; w < nodes; ++w) {
        if (parent[w] < 0 && cap[v][w] > 0) {
          parent[w] = v;
          q.push(w);
        }
      }
    }
    if (parent[sink] < 0) break;
    long long push = std::numeric_limits<long long>::max();
    for (int v = sink; v != source; v = parent[v]) push = std::min(push, cap[parent[v]][v]);
    for (int v = sink; v != source; v = parent[v]) {
      cap[parent[v]][v] -= push;
      cap[v][parent[v]] += push;
    }
    flow += push;
  }
  if (flow != row * d) return false;
  *out = StochasticMatrix<long long>(d, n);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < n; ++j) (*out)(i, j) = initial[i][d + j] - cap[i][d + j];
  }
  return true;
}

}  // namespace detail

// Drops the trivial part so that all column sums equal t = min colsum.
// Throws kZeroColumn for a vanishing column and kStrippingInfeasible when an
// entry of the balanced matrix would be negative (beyond eps).
template <typename T>
StripResult<T> strip_trivial(const StochasticMatrix<T>& m, const T& eps = T(0)) {
  const int d = m.rows();
  const int n = m.cols();
  const std::vector<T> c = m.col_sums();
  StripResult<T> out;
  for (int j = 0; j < n; ++j) {
    if (c[j] <= eps) {
      throw Error(ErrorCode::kZeroColumn, "outcome " + std::to_string(j) + " has zero trace");
    }
  }
  out.t = *std::min_element(c.begin(), c.end());
  out.balanced = StochasticMatrix<T>(d, n);
  for (int j = 0; j < n; ++j) out.trivial_weights.push_back((c[j] - out.t) / T(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < n; ++j) {
      T v = T(d) / out.t * (m(i, j) - out.trivial_weights[j]);
      if (v < -eps) {
        throw Error(ErrorCode::kStrippingInfeasible,
                    "entry (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") of the balanced matrix is negative");
      }
      if (v < T(0)) v = T(0);
      out.balanced(i, j) = v;
    }
  }
  return out;
}

// Splits a matrix with row sums n and column sums d into a convex
// combination of integral points with the same margins. eps clamps drift.
template <typename T>
std::vector<IntegerVertex<T>> vertex_decompose(const StochasticMatrix<T>& balanced,
                                               const T& eps = T(0)) {
  const int d = balanced.rows();
  const int n = balanced.cols();
  StochasticMatrix<T> rest = balanced;
  T mass = T(1);
  std::vector<IntegerVertex<T>> out;
  const int max_terms = d * n;
  while (mass > eps && static_cast<int>(out.size()) < max_terms) {
    IntegerVertex<T> v;
    if (!detail::integral_plan(rest, n, d, &v.r)) {
      throw Error(ErrorCode::kDecompositionStall, "no integral point on the current support");
    }
    bool first = true;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < n; ++j) {
        if (v.r(i, j) == 0) continue;
        const T ratio = rest(i, j) / T(v.r(i, j));
        if (first || ratio < v.weight) v.weight = ratio;
        first = false;
      }
    }
    if (v.weight > mass) v.weight = mass;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < n; ++j) {
        rest(i, j) -= v.weight * T(v.r(i, j));
        if (rest(i, j) <= eps) rest(i, j) = T(0);
      }
    }
    mass -= v.weight;
    out.push_back(std::move(v));
  }
  // Float drift only: the exact weights sum to one.
  T total = T(0);
  for (const auto& v : out) total += v.weight;
  for (auto& v : out) v.weight /= total;
  return out;
}

// One-hot layers s^(0..n-1) of an integral point: layer l sends row i to the
// smallest outcome still carrying mass in row i.
inline std::vector<StochasticMatrix<long long>> integer_to_projective(
    const StochasticMatrix<long long>& r) {
  const int d = r.rows();
  const int n = r.cols();
  for (long long s : r.row_sums()) {
    if (s != n) throw Error(ErrorCode::kMalformedVertex, "row sum differs from the outcome count");
  }
  for (long long s : r.col_sums()) {
    if (s != d) throw Error(ErrorCode::kMalformedVertex, "column sum differs from the dimension");
  }
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < n; ++j) {
      if (r(i, j) < 0) throw Error(ErrorCode::kMalformedVertex, "negative entry");
    }
  }
  std::vector<StochasticMatrix<long long>> layers;
  StochasticMatrix<long long> rest = r;
  for (int l = 0; l < n; ++l) {
    StochasticMatrix<long long> s(d, n);
    for (int i = 0; i < d; ++i) {
      for (int b = 0; b < n; ++b) {
        if (rest(i, b) != 0) {
          s(i, b) = 1;
          rest(i, b) -= 1;
          break;
        }
      }
    }
    layers.push_back(std::move(s));
  }
  return layers;
}

// Convex split of the rows into deterministic assignments (each row of m
// sums to one). Every step zeroes at least one entry.
template <typename T>
std::vector<DiagonalTerm<T>> row_wise_decompose(const StochasticMatrix<T>& m,
                                                const T& eps = T(0)) {
  const int d = m.rows();
  const int n = m.cols();
  StochasticMatrix<T> rest = m;
  T mass = T(1);
  std::vector<DiagonalTerm<T>> out;
  while (mass > eps && static_cast<int>(out.size()) < d * n) {
    DiagonalTerm<T> term;
    term.assignment.assign(d, 0);
    for (int i = 0; i < d; ++i) {
      int best = 0;
      for (int j = 1; j < n; ++j) {
        if (rest(i, j) > rest(i, best)) best = j;
      }
      term.assignment[i] = best;
      if (i == 0 || rest(i, best) < term.weight) term.weight = rest(i, best);
    }
    if (!(term.weight > T(0))) {
      throw Error(ErrorCode::kDecompositionStall, "row-wise split ran out of mass");
    }
    for (int i = 0; i < d; ++i) {
      T& x = rest(i, term.assignment[i]);
      x -= term.weight;
      if (x <= eps) x = T(0);
    }
    mass -= term.weight;
    out.push_back(std::move(term));
  }
  T total = T(0);
  for (const auto& t : out) total += t.weight;
  for (auto& t : out) t.weight /= total;
  return out;
}

// Full pipeline on a d x n matrix whose rows sum to one. Zero columns keep
// their outcome label and never receive a basis element.
template <typename T>
DiagonalDecomposition<T> decompose_matrix(const StochasticMatrix<T>& m, const T& eps = T(0)) {
  const int d = m.rows();
  const int n = m.cols();
  DiagonalDecomposition<T> out;
  out.dim = d;
  out.outcomes = n;

  const std::vector<T> c = m.col_sums();
  std::vector<int> live;
  for (int j = 0; j < n; ++j) {
    if (c[j] > eps) live.push_back(j);
  }
  const int k = static_cast<int>(live.size());
  StochasticMatrix<T> reduced(d, k);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < k; ++j) reduced(i, j) = m(i, live[j]);
  }

  StripResult<T> strip;
  try {
    strip = strip_trivial(reduced, eps);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kStrippingInfeasible) throw;
    out.method = DecompositionMethod::kRowWise;
    out.terms = row_wise_decompose(reduced, eps);
    for (auto& t : out.terms) {
      for (int& a : t.assignment) a = live[a];
    }
    return out;
  }

  out.method = DecompositionMethod::kStripped;
  for (int j = 0; j < k; ++j) {
    if (strip.trivial_weights[j] > eps) {
      out.terms.push_back({strip.trivial_weights[j], std::vector<int>(d, live[j])});
    }
  }
  const T layer_scale = strip.t / T(d);
  for (const auto& v : vertex_decompose(strip.balanced, eps)) {
    for (const auto& s : integer_to_projective(v.r)) {
      DiagonalTerm<T> term;
      term.weight = layer_scale * v.weight;
      term.assignment.assign(d, 0);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < k; ++j) {
          if (s(i, j) == 1) term.assignment[i] = live[j];
        }
      }
      out.terms.push_back(std::move(term));
    }
  }
  return out;
}

// m(i, j) = <i| U A_j U^dagger |i>; throws kNotIncoherent when an
// off-diagonal entry of U A_j U^dagger exceeds tol.
StochasticMatrix<double> incoherent_matrix(const Povm& a, const UnitaryFrame& u,
                                           double tol = 1e-8);

struct ProjectiveDecomposition {
  int dim = 0;
  int outcomes = 0;
  DecompositionMethod method = DecompositionMethod::kStripped;
  std::vector<double> weights;
  // Projective POVMs in the original frame, one per weight.
  std::vector<Povm> components;
  // Basis element -> outcome in the frame, one per weight.
  std::vector<std::vector<int>> assignments;
};

// Decomposes a POVM that is diagonal in the frame u.
ProjectiveDecomposition decompose(const Povm& a, const UnitaryFrame& u);

// Re-sums the terms and compares with a (max entry), checks each component is
// projective and the weights form a probability vector.
bool verify_decomposition(const Povm& a, const ProjectiveDecomposition& dec,
                          const UnitaryFrame& u, double tol = 1e-8);

// Exact decomposition of a diagonal POVM given by its d x n diagonal matrix.
// Rows must sum to exactly one.
DiagonalDecomposition<Rational> decompose_exact(const StochasticMatrix<Rational>& m);

std::string to_string(DecompositionMethod m);

}  // namespace setcoh
