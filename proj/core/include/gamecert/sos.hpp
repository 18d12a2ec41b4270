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

#ifndef GAMECERT_SOS_HPP_
#define GAMECERT_SOS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gamecert/game.hpp"
#include "gamecert/polynomial.hpp"
#include "gamecert/sdp.hpp"

namespace gamecert {

// Degree-l Putinar memberships
//
//   target(x; p) = sigma_0 + sum_j g_j sigma_j + sum_j h_j q_j,
//   deg(sigma_0), deg(g_j sigma_j), deg(h_j q_j) <= l,
//
// where the target is affine in scalar decision parameters p.

struct DecisionParam {
  std::string name;
  bool nonnegative = false;  // enforced through a 1x1 PSD block
};

// constant + sum_k p_{param_k} * poly_k.
struct AffinePolynomial {
  Polynomial constant;
  std::vector<std::pair<int, Polynomial>> linear;

  explicit AffinePolynomial(std::size_t n_vars = 0) : constant(n_vars) {}
  explicit AffinePolynomial(Polynomial c) : constant(std::move(c)) {}

  std::size_t n_vars() const { return constant.n_vars(); }
  int degree() const;
  // The polynomial at the given parameter values.
  Polynomial Evaluate(const std::vector<double>& params) const;
};

struct Membership {
  AffinePolynomial target;
  SemialgebraicSet set;
  int level = 0;
  std::string label;
};

// sum_k coeffs[k].second * p_{coeffs[k].first}  (= or <=)  rhs.
struct ParamConstraint {
  std::vector<std::pair<int, double>> coeffs;
  Relation relation = Relation::kEqual;
  double rhs = 0.0;
};

struct SosMembershipProblem {
  std::vector<DecisionParam> params;
  std::vector<Membership> memberships;
  // Minimize sum objective[k].second * p_{objective[k].first}.
  std::vector<std::pair<int, double>> objective;
  std::vector<ParamConstraint> constraints;
  // Small penalty on the trace of every Gram block. Sphere factors leave the
  // optimal face unbounded (sigma_0 and the equality multiplier can trade a
  // multiple of h^2 forever), which starves interior-point solvers of a dual
  // interior. The penalty bounds that face; its effect on the optimum is of
  // order weight times the trace of the optimal Gram matrices.
  double gram_trace_weight = 1e-8;

  int AddParam(std::string name, bool nonnegative = false);
};

// All monomials of total degree <= floor((level - constraint_degree) / 2) in
// grevlex order. Empty when level < constraint_degree; `warning` then receives
// a message.
std::vector<Monomial> GramBasis(int level, int constraint_degree, std::size_t n_vars,
                                std::string* warning = nullptr);

struct GramBlockLayout {
  int membership = 0;
  int inequality = -1;  // -1 for sigma_0
  int block = 0;
  std::vector<Monomial> basis;
};

struct FreeMultiplierLayout {
  int membership = 0;
  int equality = 0;
  int first_free = 0;
  std::vector<Monomial> basis;
};

struct CompiledSos {
  SdpProblem sdp;
  std::vector<int> param_free;   // free-variable index, or -1
  std::vector<int> param_block;  // 1x1 block index, or -1
  std::vector<GramBlockLayout> grams;
  std::vector<FreeMultiplierLayout> multipliers;
  std::vector<std::string> warnings;
  // Non-empty when some coefficient row cannot be matched by any multiplier
  // yet has a nonzero right-hand side: the problem is infeasible as posed and
  // the SDP must not be solved.
  std::string infeasible_reason;
};

// Throws std::invalid_argument for an empty problem, a target whose degree
// exceeds its level, mismatched variable counts, or bad parameter indices.
CompiledSos Compile(const SosMembershipProblem& problem);

struct GramCertificate {
  Polynomial multiplier_of;  // g_j, or the constant 1 for sigma_0
  std::vector<Monomial> basis;
  Eigen::MatrixXd gram;
  double min_eigenvalue = 0.0;
};

struct FreeCertificate {
  Polynomial equality;
  Polynomial multiplier;
};

struct MembershipCertificate {
  std::string label;
  int level = 0;
  Polynomial target;  // evaluated at the optimal parameters
  std::vector<GramCertificate> grams;
  std::vector<FreeCertificate> multipliers;
  double identity_residual = 0.0;

  // sigma_0 + sum g_j sigma_j + sum h_j q_j.
  Polynomial Expansion() const;
};

struct Certificate {
  int level = 0;
  double optimum = 0.0;
  std::vector<double> param_values;
  std::vector<MembershipCertificate> memberships;
  double identity_residual = 0.0;  // max over memberships
  double min_gram_eigenvalue = 0.0;
};

struct CertificateTolerances {
  double residual_tol = 1e-6;
  double psd_slack = 1e-7;
};

class CertificateRejected : public std::runtime_error {
 public:
  CertificateRejected(double residual, double min_eigenvalue);
  double residual() const { return residual_; }
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double residual_;
  double min_eigenvalue_;
};

// Reads Gram matrices and multipliers back from an optimal solution and
// re-expands the identity exactly. Throws CertificateRejected when the
// coefficient residual or the Gram eigenvalues are out of tolerance.
Certificate ExtractCertificate(const SosMembershipProblem& problem,
                               const CompiledSos& compiled, const SdpSolution& solution,
                               const CertificateTolerances& tol = {});

// Recomputes residual and eigenvalues of a certificate without trusting the
// stored values.
void AuditCertificate(Certificate& cert);

}  // namespace gamecert

#endif  // GAMECERT_SOS_HPP_
