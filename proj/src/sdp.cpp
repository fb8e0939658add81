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

#include "setcoh/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace setcoh {

SdpProblem::SdpProblem(std::vector<int> block_dims, int num_variables)
    : block_dims_(std::move(block_dims)),
      num_variables_(num_variables),
      c_(Eigen::VectorXd::Zero(num_variables)),
      terms_(num_variables),
      eq_a_(0, num_variables),
      eq_b_(0) {
  if (num_variables < 1 || block_dims_.empty()) {
    throw Error(ErrorCode::kInvalidDimension, "SDP needs variables and blocks");
  }
  for (int n : block_dims_) {
    if (n < 1) throw Error(ErrorCode::kInvalidDimension, "SDP block dimension must be positive");
    f0_.push_back(ComplexMatrix::Zero(n, n));
  }
}

void SdpProblem::set_objective(int variable, double coefficient) {
  c_(variable) = coefficient;
}

void SdpProblem::add_constant(int block, const ComplexMatrix& m) {
  if (m.rows() != block_dims_.at(block) || m.cols() != block_dims_[block]) {
    throw Error(ErrorCode::kDimensionMismatch, "constant term does not fit its block");
  }
  f0_[block] += m;
}

void SdpProblem::add_coefficient(int variable, int block, const ComplexMatrix& m) {
  if (m.rows() != block_dims_.at(block) || m.cols() != block_dims_[block]) {
    throw Error(ErrorCode::kDimensionMismatch, "coefficient does not fit its block");
  }
  auto& list = terms_.at(variable);
  for (auto& t : list) {
    if (t.block == block) {
      t.m += m;
      return;
    }
  }
  list.push_back({block, m});
}

void SdpProblem::add_coefficient_entry(int variable, int block, int i, int j, Complex v) {
  const int n = block_dims_.at(block);
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  m(i, j) += v;
  if (i != j) m(j, i) += std::conj(v);
  add_coefficient(variable, block, m);
}

void SdpProblem::add_equality(const Eigen::VectorXd& row, double rhs) {
  if (row.size() != num_variables_) {
    throw Error(ErrorCode::kDimensionMismatch, "equality row has the wrong length");
  }
  eq_a_.conservativeResize(eq_a_.rows() + 1, Eigen::NoChange);
  eq_a_.row(eq_a_.rows() - 1) = row.transpose();
  eq_b_.conservativeResize(eq_b_.size() + 1);
  eq_b_(eq_b_.size() - 1) = rhs;
}

ComplexMatrix SdpProblem::coefficient(int variable, int block) const {
  const int n = block_dims_.at(block);
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (const auto& t : terms_.at(variable)) {
    if (t.block == block) m += t.m;
  }
  return m;
}

std::vector<ComplexMatrix> SdpProblem::pencil(const Eigen::VectorXd& x) const {
  std::vector<ComplexMatrix> out = f0_;
  for (int k = 0; k < num_variables_; ++k) {
    if (x(k) == 0.0) continue;
    for (const auto& t : terms_[k]) out[t.block] += x(k) * t.m;
  }
  return out;
}

std::string_view to_string(SdpStatus status) {
  switch (status) {
    case SdpStatus::kOptimal: return "optimal";
    case SdpStatus::kInfeasible: return "infeasible";
    case SdpStatus::kMaxIterations: return "max-iterations";
    case SdpStatus::kNumericalBreakdown: return "numerical-breakdown";
  }
  return "unknown";
}

void require_optimal(const SdpSolution& solution, const std::string& context) {
  if (solution.status != SdpStatus::kOptimal) {
    throw Error(ErrorCode::kSolverFailure,
                context + ": SDP status " + std::string(to_string(solution.status)) +
                    " after " + std::to_string(solution.iterations) + " iterations (gap " +
                    std::to_string(solution.gap) + ")");
  }
}

namespace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Blocks = std::vector<Matrix>;

// Hermitian H -> [[Re H, -Im H], [Im H, Re H]], or Re H for real blocks.
Matrix embed(const ComplexMatrix& h, bool complex_block) {
  if (!complex_block) return h.real();
  const auto n = h.rows();
  Matrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  out.bottomRightCorner(n, n) = h.real();
  return out;
}

// Inverse pairing of embed: tr(H Z) = <embed(H), X> for every Hermitian H.
ComplexMatrix unembed(const Matrix& x, bool complex_block) {
  if (!complex_block) return x.cast<Complex>();
  const auto n = x.rows() / 2;
  ComplexMatrix z(n, n);
  z.real() = x.topLeftCorner(n, n) + x.bottomRightCorner(n, n);
  z.imag() = x.bottomLeftCorner(n, n) - x.topRightCorner(n, n);
  return 0.5 * (z + z.adjoint());
}

double inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (size_t j = 0; j < a.size(); ++j) s += a[j].cwiseProduct(b[j]).sum();
  return s;
}

double frobenius(const Blocks& a) { return std::sqrt(inner(a, a)); }

Blocks symmetrize(Blocks a) {
  for (auto& m : a) m = 0.5 * (m + m.transpose()).eval();
  return a;
}

double min_eig_sym(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Largest alpha keeping L L^T + alpha * delta PSD, blockwise.
double max_step(const std::vector<Matrix>& chol_l, const Blocks& delta) {
  double alpha = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < delta.size(); ++j) {
    const auto& l = chol_l[j];
    Matrix t = l.triangularView<Eigen::Lower>().solve(delta[j]);
    t = l.triangularView<Eigen::Lower>().solve(t.transpose()).transpose().eval();
    t = 0.5 * (t + t.transpose()).eval();
    const double lo = min_eig_sym(t);
    if (lo < 0.0) alpha = std::min(alpha, -1.0 / lo);
  }
  return alpha;
}

struct StandardForm {
  // min <C,X> s.t. <A_k,X> = b_k, X PSD; dual max b^T y, S = C - sum y_k A_k.
  Blocks c;
  std::vector<Blocks> a;
  Vector b;
  std::vector<bool> complex_block;
  // x = x0 + basis * y maps the reduced variables back.
  Vector x0;
  Matrix basis;
  bool unbounded = false;
};

StandardForm reduce(const SdpProblem& p) {
  const int m = p.num_variables();
  const int nb = p.num_blocks();
  StandardForm sf;

  // Eliminate equalities: x = x0 + N z.
  Vector x0 = Vector::Zero(m);
  Matrix null_basis = Matrix::Identity(m, m);
  if (p.equality_matrix().rows() > 0) {
    Eigen::JacobiSVD<Matrix> svd(p.equality_matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = 1e-12 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
    int rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    const Matrix& u = svd.matrixU();
    const Matrix& v = svd.matrixV();
    Vector coef = u.leftCols(rank).transpose() * p.equality_rhs();
    for (int r = 0; r < rank; ++r) coef(r) /= sv(r);
    x0 = v.leftCols(rank) * coef;
    null_basis = v.rightCols(m - rank);
    if ((p.equality_matrix() * x0 - p.equality_rhs()).cwiseAbs().maxCoeff() > 1e-9) {
      sf.unbounded = true;  // inconsistent equalities: report as infeasible
    }
  }

  std::vector<ComplexMatrix> g0 = p.pencil(x0);
  std::vector<std::vector<ComplexMatrix>> fk(m);
  for (int k = 0; k < m; ++k) {
    fk[k].resize(nb);
    for (int j = 0; j < nb; ++j) fk[k][j] = p.coefficient(k, j);
  }
  auto combine = [&](const Vector& coeffs) {
    std::vector<ComplexMatrix> out(nb);
    for (int j = 0; j < nb; ++j) {
      out[j] = ComplexMatrix::Zero(p.block_dims()[j], p.block_dims()[j]);
      for (int k = 0; k < m; ++k) {
        if (coeffs(k) != 0.0) out[j] += coeffs(k) * fk[k][j];
      }
    }
    return out;
  };

  // Drop reduced directions that leave the pencil unchanged.
  const int nz = static_cast<int>(null_basis.cols());
  std::vector<std::vector<ComplexMatrix>> gz(nz);
  int rows = 0;
  for (int j = 0; j < nb; ++j) rows += 2 * p.block_dims()[j] * p.block_dims()[j];
  Matrix vec(rows, nz);
  for (int z = 0; z < nz; ++z) {
    gz[z] = combine(null_basis.col(z));
    int r = 0;
    for (int j = 0; j < nb; ++j) {
      for (Eigen::Index i = 0; i < gz[z][j].size(); ++i) {
        vec(r++, z) = gz[z][j](i).real();
        vec(r++, z) = gz[z][j](i).imag();
      }
    }
  }
  Matrix q = Matrix::Identity(nz, nz);
  int rank = nz;
  if (nz > 0) {
    Eigen::JacobiSVD<Matrix> svd(vec, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = 1e-12 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
    rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    if (rank < nz) q = svd.matrixV();
  }
  const Vector cz = null_basis.transpose() * p.objective();
  if (rank < nz) {
    const Vector lost = q.rightCols(nz - rank).transpose() * cz;
    if (lost.size() > 0 && lost.cwiseAbs().maxCoeff() > 1e-12 * (1.0 + cz.norm())) {
      sf.unbounded = true;
    }
  }
  const Matrix qr = q.leftCols(rank);
  sf.basis = null_basis * qr;
  sf.x0 = x0;
  const Vector cr = qr.transpose() * cz;

  std::vector<std::vector<ComplexMatrix>> gr(rank);
  for (int r = 0; r < rank; ++r) gr[r] = combine(sf.basis.col(r));

  sf.complex_block.assign(nb, false);
  auto has_imag = [](const ComplexMatrix& mm) {
    return mm.size() > 0 && mm.imag().cwiseAbs().maxCoeff() > 0.0;
  };
  for (int j = 0; j < nb; ++j) {
    bool cplx = has_imag(g0[j]);
    for (int r = 0; r < rank && !cplx; ++r) cplx = has_imag(gr[r][j]);
    sf.complex_block[j] = cplx;
  }
  sf.c.resize(nb);
  for (int j = 0; j < nb; ++j) sf.c[j] = embed(g0[j], sf.complex_block[j]);
  sf.a.resize(rank);
  for (int r = 0; r < rank; ++r) {
    sf.a[r].resize(nb);
    for (int j = 0; j < nb; ++j) sf.a[r][j] = -embed(gr[r][j], sf.complex_block[j]);
  }
  sf.b = -cr;
  return sf;
}

class InteriorPoint {
 public:
  InteriorPoint(const StandardForm& sf, const SdpOptions& opts) : sf_(sf), opts_(opts) {
    nb_ = static_cast<int>(sf.c.size());
    m_ = static_cast<int>(sf.a.size());
    total_dim_ = 0;
    for (const auto& c : sf.c) total_dim_ += static_cast<int>(c.rows());
    norm_b_ = sf.b.size() > 0 ? sf.b.norm() : 0.0;
    norm_c_ = frobenius(sf.c);
  }

  struct Iterate {
    Blocks x, s;
    Vector y;
  };

  Iterate run(int* iterations, SdpStatus* status) {
    init();
    Iterate best{x_, s_, y_};
    double best_merit = std::numeric_limits<double>::infinity();
    *status = SdpStatus::kMaxIterations;
    int stalls = 0;
    int it = 0;
    for (; it <= opts_.max_iterations; ++it) {
      residuals();
      const double mu = inner(x_, s_);
      const double pobj = inner(sf_.c, x_);
      const double dobj = sf_.b.size() > 0 ? sf_.b.dot(y_) : 0.0;
      const double rel_gap = mu / (1.0 + std::abs(pobj) + std::abs(dobj));
      const double pinf = (rp_.size() > 0 ? rp_.norm() : 0.0) / (1.0 + norm_b_);
      const double dinf = frobenius(rd_) / (1.0 + norm_c_);
      const double merit = std::max({rel_gap, pinf, dinf});
      if (merit < best_merit) {
        best_merit = merit;
        best = {x_, s_, y_};
      }
      if (rel_gap <= opts_.gap_tolerance && pinf <= opts_.feasibility_tolerance &&
          dinf <= opts_.feasibility_tolerance) {
        *status = SdpStatus::kOptimal;
        break;
      }
      if (std::abs(pobj) > 1e9 || std::abs(dobj) > 1e9) {
        *status = SdpStatus::kInfeasible;
        break;
      }
      if (it == opts_.max_iterations) break;
      double alpha = 0.0;
      if (!step(mu / total_dim_, &alpha)) {
        *status = SdpStatus::kNumericalBreakdown;
        break;
      }
      stalls = alpha < 1e-8 ? stalls + 1 : 0;
      if (stalls >= 3) {
        *status = SdpStatus::kNumericalBreakdown;
        break;
      }
    }
    *iterations = it;
    return best;
  }

 private:
  void init() {
    x_.resize(nb_);
    s_.resize(nb_);
    for (int j = 0; j < nb_; ++j) {
      const double n = static_cast<double>(sf_.c[j].rows());
      double xi = std::max(10.0, std::sqrt(n));
      double eta = std::max({10.0, std::sqrt(n), sf_.c[j].norm()});
      for (int k = 0; k < m_; ++k) {
        const double na = sf_.a[k][j].norm();
        xi = std::max(xi, n * (1.0 + std::abs(sf_.b(k))) / (1.0 + na));
        eta = std::max(eta, na);
      }
      x_[j] = xi * Matrix::Identity(sf_.c[j].rows(), sf_.c[j].rows());
      s_[j] = eta * Matrix::Identity(sf_.c[j].rows(), sf_.c[j].rows());
    }
    y_ = Vector::Zero(m_);
  }

  Vector apply_a(const Blocks& x) const {
    Vector out(m_);
    for (int k = 0; k < m_; ++k) out(k) = inner(sf_.a[k], x);
    return out;
  }

  Blocks apply_at(const Vector& y) const {
    Blocks out(nb_);
    for (int j = 0; j < nb_; ++j) {
      out[j] = Matrix::Zero(sf_.c[j].rows(), sf_.c[j].rows());
      for (int k = 0; k < m_; ++k) out[j] += y(k) * sf_.a[k][j];
    }
    return out;
  }

  void residuals() {
    rp_ = sf_.b - apply_a(x_);
    const Blocks aty = apply_at(y_);
    rd_.resize(nb_);
    for (int j = 0; j < nb_; ++j) rd_[j] = sf_.c[j] - s_[j] - aty[j];
  }

  // One predictor-corrector step. Returns false on breakdown.
  bool step(double mu, double* alpha_out) {
    std::vector<Matrix> lx(nb_), ls(nb_), g(nb_), ginv(nb_), w(nb_);
    std::vector<Vector> d(nb_);
    for (int j = 0; j < nb_; ++j) {
      Eigen::LLT<Matrix> cx(x_[j]);
      Eigen::LLT<Matrix> cs(s_[j]);
      if (cx.info() != Eigen::Success || cs.info() != Eigen::Success) return false;
      lx[j] = cx.matrixL();
      ls[j] = cs.matrixL();
      Matrix lsl = lx[j].transpose() * s_[j] * lx[j];
      Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (lsl + lsl.transpose()));
      Vector lam = es.eigenvalues().cwiseMax(1e-300);
      const Vector q4 = lam.array().pow(-0.25).matrix();
      g[j] = lx[j] * es.eigenvectors() * q4.asDiagonal();
      const Matrix linv = lx[j].triangularView<Eigen::Lower>().solve(
          Matrix::Identity(lx[j].rows(), lx[j].rows()));
      ginv[j] = lam.array().pow(0.25).matrix().asDiagonal() * es.eigenvectors().transpose() * linv;
      w[j] = g[j] * g[j].transpose();
      d[j] = lam.array().sqrt().matrix();
    }

    // Schur complement.
    std::vector<Blocks> wa(m_);
    for (int l = 0; l < m_; ++l) {
      wa[l].resize(nb_);
      for (int j = 0; j < nb_; ++j) wa[l][j] = w[j] * sf_.a[l][j] * w[j];
    }
    Matrix schur(m_, m_);
    for (int k = 0; k < m_; ++k) {
      for (int l = 0; l <= k; ++l) {
        schur(k, l) = inner(sf_.a[k], wa[l]);
        schur(l, k) = schur(k, l);
      }
    }
    Eigen::LLT<Matrix> chol(schur);
    const bool chol_ok = chol.info() == Eigen::Success;
    Eigen::FullPivLU<Matrix> lu;
    if (!chol_ok) lu.compute(schur);
    auto solve_schur = [&](const Vector& rhs) -> Vector {
      return chol_ok ? Vector(chol.solve(rhs)) : Vector(lu.solve(rhs));
    };

    Blocks wrdw(nb_);
    for (int j = 0; j < nb_; ++j) wrdw[j] = w[j] * rd_[j] * w[j];
    const Vector a_wrdw = apply_a(wrdw);

    auto direction = [&](const Blocks& h_scaled, Blocks* dx, Vector* dy, Blocks* ds) {
      Blocks rc(nb_);
      for (int j = 0; j < nb_; ++j) rc[j] = g[j] * h_scaled[j] * g[j].transpose();
      const Vector rhs = rp_ - apply_a(rc) + a_wrdw;
      *dy = solve_schur(rhs);
      const Blocks aty = apply_at(*dy);
      ds->resize(nb_);
      dx->resize(nb_);
      for (int j = 0; j < nb_; ++j) {
        (*ds)[j] = rd_[j] - aty[j];
        (*dx)[j] = rc[j] - w[j] * (*ds)[j] * w[j];
      }
      *dx = symmetrize(*dx);
      *ds = symmetrize(*ds);
    };

    // Predictor.
    Blocks h(nb_);
    for (int j = 0; j < nb_; ++j) h[j] = Matrix((-d[j]).asDiagonal());
    Blocks dxa, dsa;
    Vector dya;
    direction(h, &dxa, &dya, &dsa);
    const double ap = std::min(1.0, max_step(lx, dxa));
    const double ad = std::min(1.0, max_step(ls, dsa));
    Blocks xa(nb_), sa(nb_);
    for (int j = 0; j < nb_; ++j) {
      xa[j] = x_[j] + ap * dxa[j];
      sa[j] = s_[j] + ad * dsa[j];
    }
    const double mu_aff = inner(xa, sa) / total_dim_;
    const double expon = std::max(1.0, 3.0 * std::pow(std::min(ap, ad), 2));
    const double sigma = std::min(1.0, std::pow(std::max(mu_aff, 0.0) / mu, expon));

    // Corrector.
    for (int j = 0; j < nb_; ++j) {
      const Matrix dxs = ginv[j] * dxa[j] * ginv[j].transpose();
      const Matrix dss = g[j].transpose() * dsa[j] * g[j];
      const Matrix corr = dxs * dss + dss * dxs;
      const auto n = d[j].size();
      h[j].resize(n, n);
      for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
          double num = -corr(r, c);
          if (r == c) num += 2.0 * sigma * mu - 2.0 * d[j](r) * d[j](r);
          h[j](r, c) = num / (d[j](r) + d[j](c));
        }
      }
    }
    Blocks dx, ds;
    Vector dy;
    direction(h, &dx, &dy, &ds);
    const double gamma = 0.9 + 0.09 * std::min(ap, ad);
    const double alpha_p = std::min(1.0, gamma * max_step(lx, dx));
    const double alpha_d = std::min(1.0, gamma * max_step(ls, ds));
    for (int j = 0; j < nb_; ++j) {
      x_[j] += alpha_p * dx[j];
      s_[j] += alpha_d * ds[j];
    }
    y_ += alpha_d * dy;
    x_ = symmetrize(x_);
    s_ = symmetrize(s_);
    *alpha_out = std::min(alpha_p, alpha_d);
    return std::isfinite(*alpha_out);
  }

  const StandardForm& sf_;
  const SdpOptions& opts_;
  int nb_ = 0;
  int m_ = 0;
  int total_dim_ = 0;
  double norm_b_ = 0.0;
  double norm_c_ = 0.0;
  Blocks x_, s_, rd_;
  Vector y_, rp_;
};

}  // namespace

SdpSolution solve(const SdpProblem& problem, const SdpOptions& options) {
  const StandardForm sf = reduce(problem);
  SdpSolution sol;
  const int nb = problem.num_blocks();
  Eigen::VectorXd y;
  Blocks xs;
  if (sf.a.empty()) {
    // No free direction: x is pinned to x0 and Z = 0 is dual optimal.
    y = Eigen::VectorXd::Zero(0);
    for (int j = 0; j < nb; ++j) xs.push_back(Matrix::Zero(sf.c[j].rows(), sf.c[j].rows()));
    sol.status = SdpStatus::kOptimal;
  } else {
    InteriorPoint ipm(sf, options);
    auto best = ipm.run(&sol.iterations, &sol.status);
    y = best.y;
    xs = best.x;
  }

  sol.x = sf.x0 + (sf.basis.cols() > 0 ? Eigen::VectorXd(sf.basis * y)
                                       : Eigen::VectorXd::Zero(sf.x0.size()));
  sol.slack = problem.pencil(sol.x);
  sol.dual.resize(nb);
  for (int j = 0; j < nb; ++j) sol.dual[j] = unembed(xs[j], sf.complex_block[j]);

  sol.primal_objective = problem.objective().dot(sol.x);
  const auto f0x = problem.pencil(sf.x0);
  double pairing = 0.0;
  for (int j = 0; j < nb; ++j) pairing += (f0x[j] * sol.dual[j]).trace().real();
  sol.dual_objective = problem.objective().dot(sf.x0) - pairing;
  sol.gap = sol.primal_objective - sol.dual_objective;

  double pres = 0.0;
  double dres = 0.0;
  for (int j = 0; j < nb; ++j) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sol.slack[j], Eigen::EigenvaluesOnly);
    pres = std::max(pres, -es.eigenvalues()(0));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> ez(sol.dual[j], Eigen::EigenvaluesOnly);
    dres = std::max(dres, -ez.eigenvalues()(0));
  }
  if (problem.equality_matrix().rows() > 0) {
    pres = std::max(pres, (problem.equality_matrix() * sol.x - problem.equality_rhs())
                              .cwiseAbs()
                              .maxCoeff());
  }
  if (sf.basis.cols() > 0) {
    Eigen::VectorXd adj(problem.num_variables());
    for (int k = 0; k < problem.num_variables(); ++k) {
      double s = 0.0;
      for (int j = 0; j < nb; ++j) {
        s += (problem.coefficient(k, j) * sol.dual[j]).trace().real();
      }
      adj(k) = s - problem.objective()(k);
    }
    dres = std::max(dres, (sf.basis.transpose() * adj).cwiseAbs().maxCoeff());
  }
  sol.primal_residual = pres;
  sol.dual_residual = dres;

  if (sf.unbounded) {
    sol.status = SdpStatus::kInfeasible;
  } else if (sol.status == SdpStatus::kOptimal || sol.status == SdpStatus::kMaxIterations ||
             sol.status == SdpStatus::kNumericalBreakdown) {
    const bool good = std::abs(sol.gap) <= options.optimal_gap * (1.0 + std::abs(sol.primal_objective)) &&
                      pres <= options.optimal_residual && dres <= options.optimal_residual;
    if (good) {
      sol.status = SdpStatus::kOptimal;
    } else if (sol.status == SdpStatus::kOptimal) {
      sol.status = SdpStatus::kNumericalBreakdown;
    }
  }
  return sol;
}

}  // namespace setcoh
