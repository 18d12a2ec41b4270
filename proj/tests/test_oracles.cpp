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
#include <random>
#include <vector>

#include <doctest.h>

#include "gamecert/hierarchy.hpp"
#include "gamecert/oracles.hpp"
#include "test_util.hpp"

using namespace gamecert;
using namespace gamecert::testing;

TEST_SUITE("oracles") {

TEST_CASE("jacobi agrees with eigen") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 10;
    const Eigen::MatrixXd a = RandomSymmetric(rng, n);
    const auto jac = JacobiEigenvalues(a);
    const Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues();
    REQUIRE(static_cast<int>(jac.size()) == n);
    for (int k = 0; k < n; ++k) CHECK(std::abs(jac[k] - ref[k]) <= 1e-9 * (1.0 + a.norm()));
  }
}

TEST_CASE("bounding box inference") {
  const auto box = InferBoundingBox(UnitBox(2));
  REQUIRE(box);
  CHECK(box->lower == std::vector<double>{0.0, 0.0});
  CHECK(box->upper == std::vector<double>{1.0, 1.0});

  const auto ball = InferBoundingBox(AddBallConstraint(SemialgebraicSet{2, {}, {}}, 2.0));
  REQUIRE(ball);
  CHECK(ball->upper[1] == doctest::Approx(2.0));
  CHECK(ball->lower[0] == doctest::Approx(-2.0));

  // The simplex {x, y >= 0, 1 - x - y >= 0} needs propagation.
  const Polynomial x = Polynomial::Variable(2, 0), y = Polynomial::Variable(2, 1);
  const SemialgebraicSet simplex{2, {x, y, Polynomial::Constant(2, 1.0) - x - y}, {}};
  const auto s = InferBoundingBox(simplex);
  REQUIRE(s);
  CHECK(s->upper[0] == doctest::Approx(1.0));

  CHECK_FALSE(InferBoundingBox(SemialgebraicSet{2, {x}, {}}));
}

TEST_CASE("sampled maximum is a lower bound on the certificate") {
  for (const char* name : {"driver", "fig1", "deg4"}) {
    CAPTURE(name);
    const PolynomialGame g = LoadCorpusGame(name);
    const int level = std::max(2, MinimalLevel(g, CertKind::kMonotone));
    const CertResult r = CertifyMonotone(g, level + level % 2);
    SampleOptions so;
    so.n_samples = 3000;
    const SampleReport s = SampleMaxEigenvalue(g, CertKind::kMonotone, so);
    CHECK(s.samples == 3000);
    CHECK(r.lambda + 1e-6 >= s.max_eigenvalue);
    CHECK(g.domain().Contains(s.argmax, 1e-12));
  }
}

TEST_CASE("sampling does not depend on the thread count") {
  const PolynomialGame g = LoadCorpusGame("deg4");
  SampleOptions a;
  a.n_samples = 2000;
  SampleOptions b = a;
  b.threads = 3;
  const SampleReport ra = SampleMaxEigenvalue(g, CertKind::kMonotone, a);
  const SampleReport rb = SampleMaxEigenvalue(g, CertKind::kMonotone, b);
  CHECK(ra.max_eigenvalue == rb.max_eigenvalue);
  CHECK(ra.argmax == rb.argmax);
  CHECK(ra.attempts == rb.attempts);
}

TEST_CASE("sampling refuses unbounded domains") {
  const Polynomial x = Polynomial::Variable(1, 0);
  const PolynomialGame g({1}, {-x * x}, SemialgebraicSet{1, {x}, {}});
  CHECK_THROWS_AS(SampleMaxEigenvalue(g, CertKind::kMonotone), OracleError);
}

TEST_CASE("sampled check rejects a tampered certificate") {
  const CertResult r = CertifyMonotone(LoadCorpusGame("fig1"), 2);
  REQUIRE(r.certificate);
  Certificate bad = *r.certificate;
  bad.memberships[0].grams[0].gram(0, 0) += 1.0;
  CHECK(CheckCertificateSampled(*r.certificate, 100).ok);
  CHECK_FALSE(CheckCertificateSampled(bad, 100).ok);
}

}  // TEST_SUITE
