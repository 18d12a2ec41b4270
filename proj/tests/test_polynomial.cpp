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

#include "gamecert/io.hpp"
#include "gamecert/polynomial.hpp"
#include "test_util.hpp"

using namespace gamecert;
using gamecert::testing::RandomPoint;
using gamecert::testing::RandomPolynomial;

namespace {

// Compares two polynomials that should be equal up to rounding.
void CheckClose(const Polynomial& a, const Polynomial& b, double tol = 1e-9) {
  CHECK(MaxCoefficientDistance(a, b) <= tol);
}

}  // namespace

TEST_SUITE("polyalg") {

TEST_CASE("monomial order and enumeration") {
  const auto basis = MonomialsUpToDegree(2, 2);
  REQUIRE(basis.size() == 6);
  CHECK(basis[0] == Monomial{0, 0});
  CHECK(basis[1] == Monomial{1, 0});
  CHECK(basis[2] == Monomial{0, 1});
  CHECK(basis[3] == Monomial{2, 0});
  CHECK(basis[4] == Monomial{1, 1});
  CHECK(basis[5] == Monomial{0, 2});
  // C(n + d, d) monomials in total.
  CHECK(MonomialsUpToDegree(4, 3).size() == 35);
  CHECK(MonomialsUpToDegree(3, -1).empty());
  CHECK(Monomial({2, 0, 3}).degree() == 5);
  CHECK(Monomial({1, 2}) * Monomial({0, 1}) == Monomial({1, 3}));
}

TEST_CASE("ring axioms hold on random triples") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const Polynomial p = RandomPolynomial(rng, n, 3);
    const Polynomial q = RandomPolynomial(rng, n, 3);
    const Polynomial r = RandomPolynomial(rng, n, 2);
    const Polynomial zero(n);
    const Polynomial one = Polynomial::Constant(n, 1.0);

    CHECK(p + q == q + p);
    CheckClose((p + q) + r, p + (q + r));
    CheckClose(p * q, q * p);
    CheckClose((p * q) * r, p * (q * r), 1e-8);
    CheckClose(p * (q + r), p * q + p * r, 1e-8);
    CHECK(p + zero == p);
    CHECK(p * one == p);
    CHECK((p - p).is_zero());
    CHECK((p * zero).is_zero());

    // Evaluation is a ring homomorphism.
    const auto x = RandomPoint(rng, n);
    CHECK((p * q).Evaluate(x) == doctest::Approx(p.Evaluate(x) * q.Evaluate(x)).epsilon(1e-12));
    CHECK((p + r).Evaluate(x) == doctest::Approx(p.Evaluate(x) + r.Evaluate(x)).epsilon(1e-12));
  }
}

TEST_CASE("derivatives agree with central differences") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3;
    const Polynomial p = RandomPolynomial(rng, n, 4);
    auto x = RandomPoint(rng, n);
    for (std::size_t k = 0; k < n; ++k) {
      const double h = 1e-6;
      auto xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      const double fd = (p.Evaluate(xp) - p.Evaluate(xm)) / (2 * h);
      CHECK(std::abs(p.Differentiate(k).Evaluate(x) - fd) <= 1e-6 * (1.0 + std::abs(fd)));
    }
  }
}

TEST_CASE("affine substitution matches evaluation at the substituted point") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3;
    const Polynomial p = RandomPolynomial(rng, n, 4);
    const Polynomial a = RandomPolynomial(rng, n, 1);
    const std::size_t var = trial % n;
    const Polynomial s = p.SubstituteAffine(var, a);
    const auto x = RandomPoint(rng, n);
    auto y = x;
    y[var] = a.Evaluate(x);
    CHECK(s.Evaluate(x) == doctest::Approx(p.Evaluate(y)).epsilon(1e-10));
  }
  // x0 -> 1 - x1 in x0 * x1 gives x1 - x1^2.
  const Polynomial x0 = Polynomial::Variable(2, 0), x1 = Polynomial::Variable(2, 1);
  CHECK((x0 * x1).SubstituteAffine(0, Polynomial::Constant(2, 1.0) - x1) == x1 - x1 * x1);
}

TEST_CASE("canonical form drops cancelled terms and tiny coefficients") {
  const Polynomial x = Polynomial::Variable(2, 0);
  const Polynomial y = Polynomial::Variable(2, 1);
  const Polynomial p = (x + y) * (x - y);
  CHECK(p.num_terms() == 2);
  CHECK(p.coefficient(Monomial{1, 1}) == 0.0);
  CHECK(p == x * x - y * y);

  Polynomial q = x;
  q.AddTerm(Monomial{0, 1}, 0.5 * kCanonicalThreshold);
  CHECK(q.num_terms() == 1);
  CHECK(Polynomial(2).degree() == 0);
  CHECK((x * x * y).degree() == 3);
}

TEST_CASE("embedding relocates variables") {
  const Polynomial p = Polynomial::Variable(2, 0) * Polynomial::Variable(2, 1);
  const Polynomial e = p.Embedded(4, 1);
  CHECK(e.coefficient(Monomial{0, 1, 1, 0}) == 1.0);
  const std::vector<double> x{9.0, 2.0, 3.0, 9.0};
  CHECK(e.Evaluate(x) == 6.0);
}

TEST_CASE("mismatched arity is rejected") {
  CHECK_THROWS_AS(Polynomial::Variable(2, 0) + Polynomial::Variable(3, 0), std::invalid_argument);
}

TEST_CASE("json round trip is exact") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial p = RandomPolynomial(rng, 3, 4);
    CHECK(PolynomialFromJson(PolynomialToJson(p)) == p);
  }
  CHECK_THROWS_AS(PolynomialFromJson(json::parse(R"({"n_vars": 2, "terms": [{"exps": [1], "coeff": 1}]})")),
                  FormatError);
}

}  // TEST_SUITE
