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

// Small dense semidefinite programs over block-diagonal Hermitian pencils:
//
//   minimize    c^T x
//   subject to  F(x) = F_0 + sum_k x_k F_k  is PSD (blockwise),
//               E x = e  (optional).
//
// The dual variable Z (one PSD block per pencil block) satisfies
// tr(F_k Z) = c_k + (E^T mu)_k and gives the lower bound
// c^T x >= e^T mu - tr(F_0 Z).

#pragma once

#include <string>
#include <vector>

#include "setcoh/core.hpp"

namespace setcoh {

class SdpProblem {
 public:
  SdpProblem(std::vector<int> block_dims, int num_variables);

  int num_variables() const { return num_variables_; }
  int num_blocks() const { return static_cast<int>(block_dims_.size()); }
  const std::vector<int>& block_dims() const { return block_dims_; }

  void set_objective(int variable, double coefficient);
  // F_0 += m on one block.
  void add_constant(int block, const ComplexMatrix& m);
  // F_variable += m on one block.
  void add_coefficient(int variable, int block, const ComplexMatrix& m);
  // F_variable(i,j) += v, and the mirrored entry when i != j.
  void add_coefficient_entry(int variable, int block, int i, int j, Complex v);
  // Appends the row sum_k row(k) x_k = rhs.
  void add_equality(const Eigen::VectorXd& row, double rhs);

  const Eigen::VectorXd& objective() const { return c_; }
  const std::vector<ComplexMatrix>& constant() const { return f0_; }
  // Dense coefficient of one variable on one block (zero when unused).
  ComplexMatrix coefficient(int variable, int block) const;
  const Eigen::MatrixXd& equality_matrix() const { return eq_a_; }
  const Eigen::VectorXd& equality_rhs() const { return eq_b_; }

  // F(x) blockwise.
  std::vector<ComplexMatrix> pencil(const Eigen::VectorXd& x) const;

 private:
  struct Term {
    int block;
    ComplexMatrix m;
  };

  std::vector<int> block_dims_;
  int num_variables_;
  Eigen::VectorXd c_;
  std::vector<ComplexMatrix> f0_;
  std::vector<std::vector<Term>> terms_;  // per variable
  Eigen::MatrixXd eq_a_;
  Eigen::VectorXd eq_b_;
};

struct SdpOptions {
  double gap_tolerance = 1e-9;          // relative duality gap target
  double feasibility_tolerance = 1e-10; // relative residual target
  int max_iterations = 100;
  // Acceptance thresholds for reporting kOptimal.
  double optimal_gap = 1e-7;
  double optimal_residual = 1e-8;
};

enum class SdpStatus { kOptimal, kInfeasible, kMaxIterations, kNumericalBreakdown };

std::string_view to_string(SdpStatus status);

struct SdpSolution {
  SdpStatus status = SdpStatus::kNumericalBreakdown;
  Eigen::VectorXd x;
  std::vector<ComplexMatrix> slack;  // F(x)
  std::vector<ComplexMatrix> dual;   // Z
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;                  // primal - dual
  double primal_residual = 0.0;      // max(-lambda_min F(x), |E x - e|)
  double dual_residual = 0.0;        // |tr(F_k Z) - c_k| after equalities
  int iterations = 0;
};

// Primal-dual interior point method with Nesterov-Todd scaling and a
// Mehrotra predictor-corrector step. Deterministic.
SdpSolution solve(const SdpProblem& problem, const SdpOptions& options = {});

// Throws kSolverFailure unless the status is kOptimal.
void require_optimal(const SdpSolution& solution, const std::string& context);

}  // namespace setcoh
