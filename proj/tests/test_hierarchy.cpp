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

TEST_SUITE("certhier") {

TEST_CASE("driver game is strictly monotone") {
  const CertResult r = CertifyMonotone(LoadCorpusGame("driver"), 2);
  CHECK(r.status == CertStatus::kStrictlyCertified);
  CHECK(r.lambda == doctest::Approx(-6.0).epsilon(1e-6));
}

TEST_CASE("fig1 game is inconclusive at every level tried") {
  const auto results = RunHierarchy(LoadCorpusGame("fig1"), CertKind::kMonotone, 2, 4);
  REQUIRE(results.size() == 3);
  for (const auto& r : results) {
    CHECK(r.error.empty());
    CHECK(r.status == CertStatus::kInconclusive);
    CHECK(r.lambda == doctest::Approx(10.0).epsilon(1e-6));
  }
}

TEST_CASE("constant symmetrized jacobian is certified exactly") {
  // J_S is constant for quadratic payoffs, so lambda is its top eigenvalue.
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 3;
    std::vector<Polynomial> payoffs;
    for (int i = 0; i < 3; ++i) payoffs.push_back(RandomPolynomial(rng, n, 2));
    const PolynomialGame g({1, 1, 1}, payoffs, UnitBox(n));
    const PolyMatrix js = SymmetrizedJacobian(g);
    Eigen::MatrixXd m(n, n);
    const std::vector<double> origin(n, 0.0);
    const auto vals = js.Evaluate(origin);
    for (std::size_t k = 0; k < n * n; ++k) m(k / n, k % n) = vals[k];
    const CertResult r = CertifyMonotone(g, 2);
    CHECK(r.lambda == doctest::Approx(JacobiMaxEigenvalue(m)).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("hierarchy bound on random box games") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    CAPTURE(trial);
    const PolynomialGame g = RandomBoxGame(rng);
    const auto results = RunHierarchy(g, CertKind::kMonotone, 4, 5);
    SampleOptions so;
    so.n_samples = 2000;
    so.seed = 100 + trial;
    const double sampled = SampleMaxEigenvalue(g, CertKind::kMonotone, so).max_eigenvalue;
    double previous = INFINITY;
    for (const auto& r : results) {
      REQUIRE(r.error.empty());
      CHECK(r.lambda + 1e-6 >= sampled);
      CHECK(r.lambda <= previous + 1e-6);
      previous = r.lambda;
    }
    const double eps = 0.5;
    const CertResult shifted = CertifyMonotone(Regularize(g, eps), 4);
    CHECK(std::abs(shifted.lambda - (results[0].lambda - eps)) <= 1e-6);
  }
}

TEST_CASE("strictness classification") {
  CertOptions o;
  CHECK(Classify(-1e-3, o) == CertStatus::kStrictlyCertified);
  CHECK(Classify(5e-7, o) == CertStatus::kCertified);
  CHECK(Classify(-5e-7, o) == CertStatus::kCertified);
  CHECK(Classify(1e-3, o) == CertStatus::kInconclusive);
  // The zero game sits exactly on the boundary.
  const std::size_t n = 2;
  const PolynomialGame zero({1, 1}, {Polynomial(n), Polynomial(n)}, UnitBox(n));
  CHECK(CertifyMonotone(zero, 2).status == CertStatus::kCertified);
}

TEST_CASE("concavity per player") {
  const PolynomialGame g = LoadCorpusGame("deg4");
  const CertResult r = CertifyConcave(g, 4);
  REQUIRE(r.per_player.size() == 2);
  CHECK(r.status == CertStatus::kStrictlyCertified);
  double worst = -INFINITY;
  for (const auto& p : r.per_player) worst = std::max(worst, p.lambda);
  CHECK(r.lambda == worst);
  SampleOptions so;
  so.n_samples = 2000;
  CHECK(r.lambda + 1e-6 >= SampleMaxEigenvalue(g, CertKind::kConcave, so).max_eigenvalue);

  CertOptions threaded;
  threaded.threads = 2;
  const CertResult t = CertifyConcave(g, 4, threaded);
  CHECK(t.lambda == r.lambda);
}

TEST_CASE("levels below the minimum are reported, not solved") {
  const PolynomialGame g = LoadCorpusGame("deg4");
  CHECK(MinimalLevel(g, CertKind::kMonotone) == 4);
  const auto results = RunHierarchy(g, CertKind::kMonotone, 2, 2);
  REQUIRE(results.size() == 1);
  CHECK_FALSE(results[0].error.empty());
}

}  // TEST_SUITE
