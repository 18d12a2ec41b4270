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
#include <vector>

#include <doctest.h>

#include "gamecert/hierarchy.hpp"
#include "gamecert/projector.hpp"
#include "test_util.hpp"

using namespace gamecert;
using namespace gamecert::testing;

namespace {

// Checks the three postconditions every projection must satisfy.
void CheckProjection(const ProjectionSpec& spec, const ProjectionResult& r) {
  REQUIRE(r.solved);
  CHECK(std::abs(r.distance - GameDistance(spec.reference, r.game)) <= 1e-8);
  CHECK(std::abs(r.distance - r.epigraph) <= 1e-6);
  REQUIRE(r.certificate);
  CHECK(r.certificate->identity_residual <= 1e-6);
  const CertResult again = Certify(r.game, spec.kind, spec.level);
  CHECK(again.lambda <= 1e-6);
}

}  // namespace

TEST_SUITE("projector") {

TEST_CASE("fig1 zero-sum projection keeping the support") {
  ProjectionSpec spec;
  spec.reference = LoadCorpusGame("fig1");
  spec.zero_sum = true;
  spec.preserve_support = true;
  const ProjectionResult r = Project(spec);
  CheckProjection(spec, r);
  CHECK(r.distance == doctest::Approx(10.0).epsilon(1e-4));
  CHECK(std::abs(r.game.payoff(0).coefficient(Monomial{1, 1, 0})) <= 1e-4);
  CHECK(MaxCoefficientDistance(r.game.payoff(0), -r.game.payoff(1)) <= 1e-9);
  // Monomials outside the support stay absent.
  for (std::size_t i = 0; i < 2; ++i) {
    for (const auto& [m, c] : r.game.payoff(i).terms()) {
      CHECK(spec.reference.payoff(i).coefficient(m) != 0.0);
    }
  }
}

TEST_CASE("unconstrained projection is no farther than the constrained one") {
  ProjectionSpec spec;
  spec.reference = LoadCorpusGame("fig1");
  const ProjectionResult free_r = Project(spec);
  CheckProjection(spec, free_r);
  spec.zero_sum = spec.preserve_support = true;
  CHECK(free_r.distance <= Project(spec).distance + 1e-6);
}

TEST_CASE("projection of a certified game is the game itself") {
  ProjectionSpec spec;
  spec.reference = LoadCorpusGame("driver");
  const ProjectionResult r = Project(spec);
  REQUIRE(r.solved);
  CHECK(r.distance <= 1e-6);
}

TEST_CASE("frozen coefficients keep their values") {
  ProjectionSpec spec;
  spec.reference = LoadCorpusGame("fig1");
  spec.preserve_support = true;
  spec.frozen.push_back({0, Monomial{1, 0, 1}});
  const ProjectionResult r = Project(spec);
  CheckProjection(spec, r);
  CHECK(r.game.payoff(0).coefficient(Monomial{1, 0, 1}) == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("infeasible constraints are reported") {
  // Freezing every coefficient of a non-monotone game leaves nothing to move.
  ProjectionSpec spec;
  spec.reference = LoadCorpusGame("fig1");
  spec.preserve_support = true;
  for (std::size_t i = 0; i < 2; ++i) {
    for (const auto& [m, c] : spec.reference.payoff(i).terms()) spec.frozen.push_back({i, m});
  }
  const ProjectionResult r = Project(spec);
  CHECK_FALSE(r.solved);
  CHECK(r.infeasible);
}

TEST_CASE("invalid specs are rejected") {
  ProjectionSpec spec;
  spec.reference = LoadCorpusGame("driver");
  spec.zero_sum = true;  // one player
  CHECK_THROWS_AS(spec.Validate(), std::invalid_argument);
}

TEST_CASE("gauge of constant-jacobian games") {
  const GaugeResult fig1 = Gauge(LoadCorpusGame("fig1"), 2);
  REQUIRE(fig1.solved);
  CHECK(fig1.epsilon == doctest::Approx(5.0).epsilon(1e-5));

  const Polynomial x = Polynomial::Variable(1, 0);
  const PolynomialGame quad({1}, {3.0 * x * x - 4.0 * x}, UnitBox(1));
  const GaugeResult q = Gauge(quad, 2);
  REQUIRE(q.solved);
  CHECK(q.epsilon == doctest::Approx(3.0).epsilon(1e-5));

  const GaugeResult zero = Gauge(LoadCorpusGame("driver"), 2);
  REQUIRE(zero.solved);
  CHECK(std::abs(zero.epsilon) <= 1e-6);
}

TEST_CASE("regularizing by the gauge certifies monotonicity") {
  for (const char* name : {"fig1", "fig3"}) {
    CAPTURE(name);
    const PolynomialGame g = LoadCorpusGame(name);
    const int level = MinimalLevel(g, CertKind::kMonotone) + MinimalLevel(g, CertKind::kMonotone) % 2;
    const GaugeResult r = Gauge(g, level);
    REQUIRE(r.solved);
    const CertResult c = CertifyMonotone(Regularize(g, 2 * r.epsilon + 1e-4), level);
    CHECK((c.status == CertStatus::kCertified || c.status == CertStatus::kStrictlyCertified));
  }
}

TEST_CASE("game distance") {
  const PolynomialGame a = LoadCorpusGame("fig1");
  CHECK(GameDistance(a, a) == 0.0);
  std::vector<Polynomial> p = a.payoffs();
  p[1].AddTerm(Monomial{0, 0, 2}, -2.5);
  CHECK(GameDistance(a, a.WithPayoffs(p)) == 2.5);
  CHECK_THROWS_AS(GameDistance(a, LoadCorpusGame("driver")), std::invalid_argument);
}

}  // TEST_SUITE
