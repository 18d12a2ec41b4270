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

#include <cmath>
#include <string>
#include <vector>

#include <doctest.h>

#include "gamecert/hierarchy.hpp"
#include "gamecert/oracles.hpp"
#include "gamecert/sos.hpp"
#include "test_util.hpp"

using namespace gamecert;
using namespace gamecert::testing;

TEST_SUITE("soscompile") {

TEST_CASE("gram basis degree follows the level and constraint degree") {
  CHECK(GramBasis(4, 0, 2).size() == 6);  // degree 2 in 2 variables
  CHECK(GramBasis(4, 2, 2).size() == 3);  // degree 1
  CHECK(GramBasis(5, 2, 2).size() == 3);  // floor(3 / 2) = 1
  CHECK(GramBasis(2, 2, 3).size() == 1);  // constants only
  std::string warning;
  CHECK(GramBasis(2, 3, 2, &warning).empty());
  CHECK_FALSE(warning.empty());
}

TEST_CASE("compiled layout for a univariate box program") {
  // min t s.t. t - x in Q_2({x >= 0, 1 - x >= 0}); the optimum is max x = 1.
  const std::size_t n = 1;
  SosMembershipProblem prob;
  const int t = prob.AddParam("t");
  AffinePolynomial target(-Polynomial::Variable(n, 0));
  target.linear.push_back({t, Polynomial::Constant(n, 1.0)});
  prob.memberships.push_back({target, UnitBox(n), 2, "box"});
  prob.objective.push_back({t, 1.0});
  const CompiledSos c = Compile(prob);
  // sigma_0 on {1, x}; sigma_1, sigma_2 constants.
  REQUIRE(c.grams.size() == 3);
  CHECK(c.grams[0].basis.size() == 2);
  CHECK(c.grams[1].basis.size() == 1);
  CHECK(c.sdp.constraints.size() == 3);  // coefficients of 1, x, x^2
  CHECK(c.param_free[t] >= 0);
  CHECK(c.infeasible_reason.empty());

  CertOptions opts;
  const SosSolveOutcome out = SolveSos(prob, opts);
  REQUIRE(out.certificate);
  CHECK(out.certificate->param_values[t] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(out.certificate->identity_residual <= 1e-7);
}

TEST_CASE("certificate identity is exact after expansion") {
  const PolynomialGame g = LoadCorpusGame("fig1");
  const CertResult r = CertifyMonotone(g, 2);
  REQUIRE(r.certificate);
  for (const auto& m : r.certificate->memberships) {
    CHECK(MaxCoefficientDistance(m.Expansion(), m.target) <= 1e-6);
    for (const auto& gram : m.grams) CHECK(gram.min_eigenvalue >= -1e-7);
  }
  Certificate audited = *r.certificate;
  audited.identity_residual = 123.0;
  AuditCertificate(audited);
  CHECK(audited.identity_residual == doctest::Approx(r.certificate->identity_residual).epsilon(1e-6));
  const SampledCheck chk = CheckCertificateSampled(*r.certificate, 200);
  CHECK(chk.ok);
}

TEST_CASE("unmatchable coefficients are flagged before solving") {
  // t - x^3 over an empty domain at level 2 cannot be written at all.
  const std::size_t n = 1;
  SosMembershipProblem prob;
  const int t = prob.AddParam("t");
  AffinePolynomial target(-Polynomial::Variable(n, 0) * Polynomial::Variable(n, 0) *
                          Polynomial::Variable(n, 0));
  target.linear.push_back({t, Polynomial::Constant(n, 1.0)});
  prob.memberships.push_back({target, SemialgebraicSet{n, {}, {}}, 2, "cubic"});
  prob.objective.push_back({t, 1.0});
  CHECK_THROWS_AS(Compile(prob), std::invalid_argument);  // degree exceeds level
  prob.memberships[0].level = 3;
  const CompiledSos c = Compile(prob);
  CHECK_FALSE(c.infeasible_reason.empty());
}

TEST_CASE("bad problems are rejected") {
  SosMembershipProblem empty;
  CHECK_THROWS_AS(Compile(empty), std::invalid_argument);
  SosMembershipProblem bad;
  AffinePolynomial target(Polynomial::Constant(1, 1.0));
  target.linear.push_back({5, Polynomial::Constant(1, 1.0)});
  bad.memberships.push_back({target, SemialgebraicSet{1, {}, {}}, 2, "x"});
  CHECK_THROWS_AS(Compile(bad), std::invalid_argument);
}

}  // TEST_SUITE
