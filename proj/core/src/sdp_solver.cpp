// Copyright 2026 The gamecert Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "gamecert/sdp.hpp"

namespace gamecert {

using Eigen::MatrixXd;
using Eigen::VectorXd;

const char* ToString(SdpStatus status) {
  switch (status) {
    case SdpStatus::kOptimal: return "Optimal";
    case SdpStatus::kPrimalInfeasible: return "PrimalInfeasible";
    case SdpStatus::kDualInfeasible: return "DualInfeasible";
    case SdpStatus::kIterationLimit: return "IterationLimit";
    case SdpStatus::kNumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

namespace {

void CheckEntry(const BlockEntry& e, const std::vector<int>& dims,
                const std::string& where) {
  if (e.block < 0 || e.block >= static_cast<int>(dims.size())) {
    throw std::invalid_argument(where + ": block index " + std::to_string(e.block) +
                                " out of range");
  }
  const int n = dims[e.block];
  if (e.row < 0 || e.col < 0 || e.row >= n || e.col >= n) {
    throw std::invalid_argument(where + ": entry (" + std::to_string(e.row) + "," +
                                std::to_string(e.col) + ") outside block of size " +
                                std::to_string(n));
  }
  if (e.row > e.col) {
    throw std::invalid_argument(where + ": entries must be upper triangular");
  }
  if (!std::isfinite(e.value)) throw std::invalid_argument(where + ": non-finite value");
}

}  // namespace

void SdpProblem::Validate() const {
  for (int d : block_dims) {
    if (d <= 0) throw std::invalid_argument("SdpProblem: block dimensions must be positive");
  }
  if (n_free < 0) throw std::invalid_argument("SdpProblem: negative free-variable count");
  if (free_objective.size() > static_cast<std::size_t>(n_free)) {
    throw std::invalid_argument("SdpProblem: free objective longer than n_free");
  }
  for (double v : free_objective) {
    if (!std::isfinite(v)) throw std::invalid_argument("SdpProblem: non-finite objective");
  }
  for (const auto& e : objective) CheckEntry(e, block_dims, "objective");
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& con = constraints[i];
    const std::string where = "constraint " + std::to_string(i);
    for (const auto& e : con.entries) CheckEntry(e, block_dims, where);
    for (const auto& [k, v] : con.free_coeffs) {
      if (k < 0 || k >= n_free) {
        throw std::invalid_argument(where + ": free variable index out of range");
      }
      if (!std::isfinite(v)) throw std::invalid_argument(where + ": non-finite value");
    }
    if (!std::isfinite(con.rhs)) throw std::invalid_argument(where + ": non-finite rhs");
  }
}

namespace {

// A symmetric sparse matrix expanded to both triangles.
struct FullEntry {
  int r;
  int c;
  double v;
};

struct BlockTerm {
  int constraint;
  std::vector<FullEntry> entries;
};

double InnerSparse(const std::vector<FullEntry>& a, const MatrixXd& y) {
  double s = 0.0;
  for (const auto& e : a) s += e.v * y(e.r, e.c);
  return s;
}

std::optional<double> MaxStep(const MatrixXd& x, const MatrixXd& dx) {
  Eigen::LLT<MatrixXd> llt(x);
  if (llt.info() != Eigen::Success) return std::nullopt;
  MatrixXd w = llt.matrixL().solve(dx);
  w = llt.matrixL().solve(w.transpose()).eval();
  w = 0.5 * (w + w.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(w, Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues().minCoeff();
  if (lmin >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

double MaxStepVector(const VectorXd& x, const VectorXd& dx) {
  double a = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (dx[i] < 0.0) a = std::min(a, -x[i] / dx[i]);
  }
  return a;
}

class InteriorPoint {
 public:
  InteriorPoint(const SdpProblem& p, const SdpOptions& o) : prob_(p), opt_(o) {}

  SdpSolution Run();

 private:
  struct Direction {
    std::vector<MatrixXd> dx;
    std::vector<MatrixXd> ds;
    VectorXd dx_lp;
    VectorXd ds_lp;
    VectorXd df;
    VectorXd dy;
    // Block directions in NT-scaled coordinates.
    std::vector<MatrixXd> dx_s;
    std::vector<MatrixXd> ds_s;
  };

  void Setup();
  void ComputeResiduals();
  double Mu() const;
  bool BuildSchur();
  bool SolveAugmented(const VectorXd& h, const VectorXd& rf, VectorXd& dy,
                      VectorXd& df) const;
  bool ComputeDirection(double target_mu, const Direction* affine, Direction& d);
  void StepLengths(const Direction& d, double fraction, double& ap, double& ad,
                   bool& ok) const;
  SdpSolution Finish(SdpStatus status, const std::string& message);

  const SdpProblem& prob_;
  const SdpOptions& opt_;

  int m_ = 0;
  int nblocks_ = 0;
  std::vector<int> dims_;
  std::vector<std::vector<BlockTerm>> block_terms_;  // per block
  std::vector<std::vector<FullEntry>> c_blocks_;
  std::vector<MatrixXd> c_dense_;
  VectorXd b_;
  MatrixXd f_;                 // m x n_free (active columns only)
  std::vector<int> free_map_;  // active column -> original free index
  VectorXd cf_;
  std::vector<int> slack_rows_;
  int n_lp_ = 0;
  double norm_b_ = 0.0;
  double norm_c_ = 0.0;

  std::vector<MatrixXd> x_, s_;
  // NT scaling per block: W = G G^T, scaled point diag(lam).
  std::vector<MatrixXd> g_, w_;
  std::vector<VectorXd> lam_;
  VectorXd x_lp_, s_lp_, free_, y_;

  // Residuals.
  VectorXd rp_;
  std::vector<MatrixXd> rd_;
  VectorXd rd_lp_, rf_;
  double pobj_ = 0.0, dobj_ = 0.0;
  double pinf_ = 0.0, dinf_ = 0.0, gap_ = 0.0;

  MatrixXd schur_;
  Eigen::LLT<MatrixXd> schur_llt_;
  Eigen::PartialPivLU<MatrixXd> aug_lu_;

  std::vector<IterateRecord> trace_;
  int iter_ = 0;
};

void InteriorPoint::Setup() {
  m_ = static_cast<int>(prob_.constraints.size());
  dims_ = prob_.block_dims;
  nblocks_ = static_cast<int>(dims_.size());
  block_terms_.assign(nblocks_, {});
  b_.resize(m_);

  for (int i = 0; i < m_; ++i) {
    const auto& con = prob_.constraints[i];
    b_[i] = con.rhs;
    std::vector<std::vector<FullEntry>> per_block(nblocks_);
    for (const auto& e : con.entries) {
      if (e.value == 0.0) continue;
      per_block[e.block].push_back({e.row, e.col, e.value});
      if (e.row != e.col) per_block[e.block].push_back({e.col, e.row, e.value});
    }
    for (int k = 0; k < nblocks_; ++k) {
      if (!per_block[k].empty()) block_terms_[k].push_back({i, std::move(per_block[k])});
    }
    if (con.relation == Relation::kLessEqual) slack_rows_.push_back(i);
  }
  n_lp_ = static_cast<int>(slack_rows_.size());

  c_blocks_.assign(nblocks_, {});
  c_dense_.clear();
  for (const auto& e : prob_.objective) {
    c_blocks_[e.block].push_back({e.row, e.col, e.value});
    if (e.row != e.col) c_blocks_[e.block].push_back({e.col, e.row, e.value});
  }
  for (int k = 0; k < nblocks_; ++k) {
    MatrixXd c = MatrixXd::Zero(dims_[k], dims_[k]);
    for (const auto& e : c_blocks_[k]) c(e.r, e.c) += e.v;
    c_dense_.push_back(std::move(c));
  }

  // Free variables whose column is empty cannot move the constraints; they sit
  // at zero.
  MatrixXd f_full = MatrixXd::Zero(m_, prob_.n_free);
  for (int i = 0; i < m_; ++i) {
    for (const auto& [k, v] : prob_.constraints[i].free_coeffs) f_full(i, k) += v;
  }
  for (int k = 0; k < prob_.n_free; ++k) {
    if (f_full.col(k).cwiseAbs().maxCoeff() > 0.0) free_map_.push_back(k);
  }
  f_.resize(m_, static_cast<Eigen::Index>(free_map_.size()));
  cf_.resize(static_cast<Eigen::Index>(free_map_.size()));
  for (std::size_t a = 0; a < free_map_.size(); ++a) {
    f_.col(a) = f_full.col(free_map_[a]);
    const int k = free_map_[a];
    cf_[a] = k < static_cast<int>(prob_.free_objective.size()) ? prob_.free_objective[k] : 0.0;
  }

  norm_b_ = m_ > 0 ? b_.cwiseAbs().maxCoeff() : 0.0;
  norm_c_ = cf_.size() > 0 ? cf_.cwiseAbs().maxCoeff() : 0.0;
  for (const auto& c : c_dense_) norm_c_ = std::max(norm_c_, c.cwiseAbs().maxCoeff());

  // Identity-scaled interior start.
  x_.clear();
  s_.clear();
  for (int k = 0; k < nblocks_; ++k) {
    const double n = dims_[k];
    double max_ratio = 0.0;
    double max_a = c_dense_[k].norm();
    for (const auto& term : block_terms_[k]) {
      double fro = 0.0;
      for (const auto& e : term.entries) fro += e.v * e.v;
      fro = std::sqrt(fro);
      max_ratio = std::max(max_ratio, (1.0 + std::abs(b_[term.constraint])) / (1.0 + fro));
      max_a = std::max(max_a, fro);
    }
    const double xi = std::max({10.0, std::sqrt(n), std::sqrt(n) * max_ratio});
    const double eta = std::max({10.0, std::sqrt(n), max_a});
    x_.push_back(xi * MatrixXd::Identity(dims_[k], dims_[k]));
    s_.push_back(eta * MatrixXd::Identity(dims_[k], dims_[k]));
  }
  const double lp_scale = std::max(10.0, 1.0 + norm_b_);
  x_lp_ = VectorXd::Constant(n_lp_, lp_scale);
  s_lp_ = VectorXd::Constant(n_lp_, 10.0);
  free_ = VectorXd::Zero(static_cast<Eigen::Index>(free_map_.size()));
  y_ = VectorXd::Zero(m_);

}

void InteriorPoint::ComputeResiduals() {
  // r_p = b - A(X) - slack - F f
  rp_ = b_ - f_ * free_;
  for (int k = 0; k < nblocks_; ++k) {
    for (const auto& term : block_terms_[k]) {
      rp_[term.constraint] -= InnerSparse(term.entries, x_[k]);
    }
  }
  for (int l = 0; l < n_lp_; ++l) rp_[slack_rows_[l]] -= x_lp_[l];

  // R_d = C - A^T(y) - S
  rd_.resize(nblocks_);
  for (int k = 0; k < nblocks_; ++k) {
    MatrixXd r = c_dense_[k] - s_[k];
    for (const auto& term : block_terms_[k]) {
      const double yi = y_[term.constraint];
      if (yi == 0.0) continue;
      for (const auto& e : term.entries) r(e.r, e.c) -= yi * e.v;
    }
    rd_[k] = std::move(r);
  }
  rd_lp_.resize(n_lp_);
  for (int l = 0; l < n_lp_; ++l) rd_lp_[l] = -y_[slack_rows_[l]] - s_lp_[l];
  rf_ = cf_ - f_.transpose() * y_;

  pobj_ = cf_.dot(free_);
  for (int k = 0; k < nblocks_; ++k) pobj_ += InnerSparse(c_blocks_[k], x_[k]);
  dobj_ = b_.dot(y_);

  double rp_max = m_ > 0 ? rp_.cwiseAbs().maxCoeff() : 0.0;
  double rd_max = 0.0;
  for (const auto& r : rd_) rd_max = std::max(rd_max, r.cwiseAbs().maxCoeff());
  if (n_lp_ > 0) rd_max = std::max(rd_max, rd_lp_.cwiseAbs().maxCoeff());
  if (rf_.size() > 0) rd_max = std::max(rd_max, rf_.cwiseAbs().maxCoeff());
  pinf_ = rp_max / (1.0 + norm_b_);
  dinf_ = rd_max / (1.0 + norm_c_);
  gap_ = std::abs(pobj_ - dobj_) / (1.0 + std::abs(pobj_) + std::abs(dobj_));
}

double InteriorPoint::Mu() const {
  double total = 0.0;
  double n = 0.0;
  for (int k = 0; k < nblocks_; ++k) {
    total += x_[k].cwiseProduct(s_[k]).sum();
    n += dims_[k];
  }
  total += x_lp_.dot(s_lp_);
  n += n_lp_;
  return n > 0 ? total / n : 0.0;
}

bool InteriorPoint::BuildSchur() {
  schur_ = MatrixXd::Zero(m_, m_);
  g_.resize(nblocks_);
  w_.resize(nblocks_);
  lam_.resize(nblocks_);
  for (int k = 0; k < nblocks_; ++k) {
    // NT scaling: with X = Lx Lx^T, S = Ls Ls^T and Ls^T Lx = U diag(l) V^T,
    // G = Lx V diag(l)^{-1/2} gives G^{-1} X G^{-T} = G^T S G = diag(l).
    Eigen::LLT<MatrixXd> lx(x_[k]);
    Eigen::LLT<MatrixXd> ls(s_[k]);
    if (lx.info() != Eigen::Success || ls.info() != Eigen::Success) return false;
    const MatrixXd lxm = lx.matrixL();
    const MatrixXd lsm = ls.matrixL();
    Eigen::JacobiSVD<MatrixXd> svd(lsm.transpose() * lxm, Eigen::ComputeFullV);
    const VectorXd& l = svd.singularValues();
    if (!(l.minCoeff() > 0.0)) return false;
    g_[k] = lxm * svd.matrixV() * l.cwiseSqrt().cwiseInverse().asDiagonal();
    w_[k] = g_[k] * g_[k].transpose();
    lam_[k] = l;

    const MatrixXd& w = w_[k];
    const auto& terms = block_terms_[k];
    MatrixXd t(dims_[k], dims_[k]);
    for (std::size_t jt = 0; jt < terms.size(); ++jt) {
      // T = W A_j W
      t.setZero();
      for (const auto& e : terms[jt].entries) t.noalias() += e.v * w.col(e.r) * w.row(e.c);
      const int j = terms[jt].constraint;
      for (std::size_t it = 0; it <= jt; ++it) {
        double v = 0.0;
        for (const auto& e : terms[it].entries) v += e.v * t(e.c, e.r);
        const int i = terms[it].constraint;
        schur_(i, j) += v;
        if (i != j) schur_(j, i) += v;
      }
    }
  }
  for (int l = 0; l < n_lp_; ++l) {
    schur_(slack_rows_[l], slack_rows_[l]) += x_lp_[l] / s_lp_[l];
  }

  if (m_ == 0) return true;
  if (f_.cols() > 0) {
    // [[M, F], [F^T, 0]] by pivoted LU: M alone may be singular along
    // directions the free variables pin down.
    const Eigen::Index nf = f_.cols();
    MatrixXd aug = MatrixXd::Zero(m_ + nf, m_ + nf);
    aug.topLeftCorner(m_, m_) = schur_;
    aug.topRightCorner(m_, nf) = f_;
    aug.bottomLeftCorner(nf, m_) = f_.transpose();
    aug_lu_.compute(aug);
    return std::isfinite(aug_lu_.rcond()) && aug_lu_.rcond() > 0.0;
  }
  const double max_diag = std::max(1.0, schur_.diagonal().cwiseAbs().maxCoeff());
  double delta = 0.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    MatrixXd reg = schur_;
    if (delta > 0.0) reg.diagonal().array() += delta;
    schur_llt_.compute(reg);
    if (schur_llt_.info() == Eigen::Success) return true;
    delta = delta == 0.0 ? 1e-14 * max_diag : delta * 100.0;
  }
  return false;
}

bool InteriorPoint::SolveAugmented(const VectorXd& h, const VectorXd& rf,
                                   VectorXd& dy, VectorXd& df) const {
  auto solve_once = [&](const VectorXd& r1, const VectorXd& r2, VectorXd& a,
                        VectorXd& bvec) {
    if (f_.cols() > 0) {
      VectorXd rhs(m_ + f_.cols());
      rhs << r1, r2;
      const VectorXd sol = aug_lu_.solve(rhs);
      a = sol.head(m_);
      bvec = sol.tail(f_.cols());
    } else {
      a = schur_llt_.solve(r1);
      bvec.resize(0);
    }
  };
  solve_once(h, rf, dy, df);
  // Iterative refinement against the unregularized system.
  for (int round = 0; round < 2; ++round) {
    VectorXd e1 = h - schur_ * dy;
    VectorXd e2 = rf;
    if (f_.cols() > 0) {
      e1 -= f_ * df;
      e2 -= f_.transpose() * dy;
    }
    VectorXd cy, cf;
    solve_once(e1, e2, cy, cf);
    dy += cy;
    if (f_.cols() > 0) df += cf;
  }
  return dy.allFinite() && df.allFinite();
}

bool InteriorPoint::ComputeDirection(double target_mu, const Direction* affine,
                                     Direction& d) {
  // Scaled complementarity: Lam (dX~ + dS~) + (dX~ + dS~) Lam = 2(mu I - Lam^2) - corr,
  // solved entrywise since Lam is diagonal; P = G (dX~ + dS~) G^T = dX + W dS W.
  VectorXd h = rp_;
  std::vector<MatrixXd> rt(nblocks_), p(nblocks_);
  for (int k = 0; k < nblocks_; ++k) {
    const VectorXd& l = lam_[k];
    const int n = dims_[k];
    MatrixXd rhs = MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) rhs(i, i) = 2.0 * (target_mu - l[i] * l[i]);
    if (affine != nullptr) {
      const MatrixXd c = affine->dx_s[k] * affine->ds_s[k];
      rhs -= c + c.transpose();
    }
    MatrixXd r(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) r(i, j) = rhs(i, j) / (l[i] + l[j]);
    }
    p[k] = g_[k] * r * g_[k].transpose();
    rt[k] = std::move(r);
    // h = r_p - A(P) + A(W R_d W)
    const MatrixXd q = p[k] - w_[k] * rd_[k] * w_[k];
    for (const auto& term : block_terms_[k]) {
      h[term.constraint] -= InnerSparse(term.entries, q);
    }
  }
  VectorXd dlp(n_lp_);
  for (int l = 0; l < n_lp_; ++l) {
    const double corr = affine != nullptr ? affine->dx_lp[l] * affine->ds_lp[l] : 0.0;
    dlp[l] = (target_mu - x_lp_[l] * s_lp_[l] - x_lp_[l] * rd_lp_[l] - corr) / s_lp_[l];
    h[slack_rows_[l]] -= dlp[l];
  }

  if (!SolveAugmented(h, rf_, d.dy, d.df)) return false;

  d.ds.resize(nblocks_);
  d.dx.resize(nblocks_);
  d.ds_s.resize(nblocks_);
  d.dx_s.resize(nblocks_);
  for (int k = 0; k < nblocks_; ++k) {
    MatrixXd ds = rd_[k];
    for (const auto& term : block_terms_[k]) {
      const double v = d.dy[term.constraint];
      if (v == 0.0) continue;
      for (const auto& e : term.entries) ds(e.r, e.c) -= v * e.v;
    }
    MatrixXd dx = p[k] - w_[k] * ds * w_[k];
    d.dx[k] = 0.5 * (dx + dx.transpose());
    d.ds_s[k] = g_[k].transpose() * ds * g_[k];
    d.dx_s[k] = rt[k] - d.ds_s[k];
    d.ds[k] = std::move(ds);
  }
  d.ds_lp.resize(n_lp_);
  d.dx_lp.resize(n_lp_);
  for (int l = 0; l < n_lp_; ++l) {
    d.ds_lp[l] = rd_lp_[l] - d.dy[slack_rows_[l]];
    const double corr = affine != nullptr ? affine->dx_lp[l] * affine->ds_lp[l] : 0.0;
    d.dx_lp[l] = (target_mu - x_lp_[l] * s_lp_[l] - x_lp_[l] * d.ds_lp[l] - corr) / s_lp_[l];
  }
  for (const auto& m : d.dx) {
    if (!m.allFinite()) return false;
  }
  return true;
}

void InteriorPoint::StepLengths(const Direction& d, double fraction, double& ap,
                                double& ad, bool& ok) const {
  double max_p = std::numeric_limits<double>::infinity();
  double max_d = std::numeric_limits<double>::infinity();
  ok = true;
  for (int k = 0; k < nblocks_; ++k) {
    auto sp = MaxStep(x_[k], d.dx[k]);
    auto sd = MaxStep(s_[k], d.ds[k]);
    if (!sp || !sd) {
      ok = false;
      return;
    }
    max_p = std::min(max_p, *sp);
    max_d = std::min(max_d, *sd);
  }
  if (n_lp_ > 0) {
    max_p = std::min(max_p, MaxStepVector(x_lp_, d.dx_lp));
    max_d = std::min(max_d, MaxStepVector(s_lp_, d.ds_lp));
  }
  ap = std::min(1.0, fraction * max_p);
  ad = std::min(1.0, fraction * max_d);
}

SdpSolution InteriorPoint::Finish(SdpStatus status, const std::string& message) {
  SdpSolution sol;
  sol.status = status;
  sol.primal_blocks = x_;
  sol.dual_slacks = s_;
  sol.free_values = VectorXd::Zero(prob_.n_free);
  for (std::size_t a = 0; a < free_map_.size(); ++a) sol.free_values[free_map_[a]] = free_[a];
  sol.duals = y_;
  sol.primal_objective = pobj_;
  sol.dual_objective = dobj_;
  sol.primal_infeasibility = pinf_;
  sol.dual_infeasibility = dinf_;
  sol.relative_gap = gap_;
  sol.iterations = iter_;
  sol.message = message;
  sol.trace = std::move(trace_);
  return sol;
}

SdpSolution InteriorPoint::Run() {
  prob_.Validate();
  Setup();

  // Free variables with an objective but no constraint column are unbounded.
  for (int k = 0; k < prob_.n_free; ++k) {
    if (std::find(free_map_.begin(), free_map_.end(), k) != free_map_.end()) continue;
    const double ck = k < static_cast<int>(prob_.free_objective.size()) ? prob_.free_objective[k] : 0.0;
    if (ck != 0.0) {
      ComputeResiduals();
      return Finish(SdpStatus::kDualInfeasible,
                    "free variable " + std::to_string(k) + " is unconstrained");
    }
  }

  int stalled = 0;
  for (iter_ = 0; iter_ <= opt_.max_iterations; ++iter_) {
    ComputeResiduals();
    const double mu = Mu();
    if (opt_.record_trace) {
      trace_.push_back({iter_, pobj_, dobj_, pinf_, dinf_, mu, 0.0, 0.0});
    }
    if (pinf_ <= opt_.feasibility_tol && dinf_ <= opt_.feasibility_tol &&
        gap_ <= opt_.gap_tol) {
      return Finish(SdpStatus::kOptimal, "converged");
    }

    // Infeasibility certificates from diverging iterates.
    if (iter_ > 2) {
      if (dobj_ > 0.0) {
        double ray = 0.0;
        for (int k = 0; k < nblocks_; ++k) ray += (c_dense_[k] - rd_[k]).norm();
        ray += (cf_ - rf_).norm() + rd_lp_.norm();
        if (ray <= opt_.infeasibility_tol * dobj_) {
          return Finish(SdpStatus::kPrimalInfeasible, "dual ray found");
        }
      }
      if (pobj_ < 0.0) {
        const double ray = (b_ - rp_).norm();
        if (ray <= opt_.infeasibility_tol * -pobj_) {
          return Finish(SdpStatus::kDualInfeasible, "primal ray found");
        }
      }
    }
    if (iter_ == opt_.max_iterations) break;

    if (m_ == 0) {
      return Finish(SdpStatus::kNumericalFailure, "problem without constraints");
    }
    if (!BuildSchur()) {
      return Finish(SdpStatus::kNumericalFailure, "Schur complement factorization failed");
    }

    Direction affine;
    if (!ComputeDirection(0.0, nullptr, affine)) {
      return Finish(SdpStatus::kNumericalFailure, "predictor direction not finite");
    }
    double ap = 0.0, ad = 0.0;
    bool ok = true;
    StepLengths(affine, 1.0, ap, ad, ok);
    if (!ok) return Finish(SdpStatus::kNumericalFailure, "lost positive definiteness");

    double mu_aff = 0.0, n_total = 0.0;
    for (int k = 0; k < nblocks_; ++k) {
      mu_aff += (x_[k] + ap * affine.dx[k]).cwiseProduct(s_[k] + ad * affine.ds[k]).sum();
      n_total += dims_[k];
    }
    mu_aff += (x_lp_ + ap * affine.dx_lp).dot(s_lp_ + ad * affine.ds_lp);
    n_total += n_lp_;
    mu_aff /= n_total;
    double sigma = std::pow(std::max(0.0, mu_aff) / mu, 3.0);
    sigma = std::clamp(sigma, 0.0, 1.0);

    Direction corr;
    if (!ComputeDirection(sigma * mu, &affine, corr)) {
      return Finish(SdpStatus::kNumericalFailure, "corrector direction not finite");
    }
    StepLengths(corr, opt_.step_fraction, ap, ad, ok);
    if (!ok) return Finish(SdpStatus::kNumericalFailure, "lost positive definiteness");

    for (int k = 0; k < nblocks_; ++k) {
      x_[k] += ap * corr.dx[k];
      s_[k] += ad * corr.ds[k];
      x_[k] = 0.5 * (x_[k] + x_[k].transpose()).eval();
      s_[k] = 0.5 * (s_[k] + s_[k].transpose()).eval();
    }
    x_lp_ += ap * corr.dx_lp;
    s_lp_ += ad * corr.ds_lp;
    free_ += ap * corr.df;
    y_ += ad * corr.dy;
    if (opt_.record_trace) {
      trace_.back().primal_step = ap;
      trace_.back().dual_step = ad;
    }

    if (ap < 1e-10 && ad < 1e-10) {
      if (++stalled >= 5) {
        ComputeResiduals();
        // Degenerate problems often stall just short of the requested gap.
        // The certificate audit downstream re-checks whatever we return.
        if (pinf_ <= 100 * opt_.feasibility_tol && dinf_ <= 100 * opt_.feasibility_tol &&
            gap_ <= 100 * opt_.gap_tol) {
          return Finish(SdpStatus::kOptimal, "stalled at reduced accuracy");
        }
        return Finish(SdpStatus::kNumericalFailure, "step lengths collapsed");
      }
    } else {
      stalled = 0;
    }
  }
  return Finish(SdpStatus::kIterationLimit, "iteration limit reached");
}

}  // namespace

SdpSolution SolveSdp(const SdpProblem& problem, const SdpOptions& options) {
  InteriorPoint ipm(problem, options);
  return ipm.Run();
}

double PrimalResidual(const SdpProblem& problem, const std::vector<MatrixXd>& blocks,
                      const VectorXd& free_values) {
  double worst = 0.0, norm_b = 0.0;
  for (const auto& con : problem.constraints) {
    double lhs = 0.0;
    for (const auto& e : con.entries) {
      const MatrixXd& x = blocks[e.block];
      lhs += e.row == e.col ? e.value * x(e.row, e.col)
                            : e.value * (x(e.row, e.col) + x(e.col, e.row));
    }
    for (const auto& [k, v] : con.free_coeffs) lhs += v * free_values[k];
    double r = con.rhs - lhs;
    if (con.relation == Relation::kLessEqual) r = std::min(r, 0.0);
    worst = std::max(worst, std::abs(r));
    norm_b = std::max(norm_b, std::abs(con.rhs));
  }
  return worst / (1.0 + norm_b);
}

}  // namespace gamecert
