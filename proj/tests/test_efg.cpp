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
#include <string>
#include <vector>

#include <doctest.h>

#include "gamecert/efg.hpp"
#include "gamecert/io.hpp"
#include "test_util.hpp"

using namespace gamecert;
using namespace gamecert::testing;

namespace {

EfgTree LoadTree(const std::string& name) {
  return EfgFromJson(ReadJsonFile(CorpusPath(name + ".efg.json")));
}

BehavioralStrategy RandomStrategy(std::mt19937_64& rng, const InfosetVariableMap& map) {
  std::gamma_distribution<double> gamma(1.0, 1.0);
  BehavioralStrategy s;
  for (const auto& info : map.infosets) {
    std::vector<double> p(info.actions.size());
    double total = 0.0;
    for (auto& v : p) total += v = gamma(rng);
    for (auto& v : p) v /= total;
    s[info.id] = p;
  }
  return s;
}

EfgNode Leaf(std::vector<double> payoffs) {
  EfgNode n;
  n.kind = EfgNode::Kind::kTerminal;
  n.payoffs = std::move(payoffs);
  return n;
}

}  // namespace

TEST_SUITE("efgbridge") {

TEST_CASE("driver tree gives -3x^2 + 4x") {
  const EfgConversion c = EfgToGame(LoadTree("driver"));
  const Polynomial x = Polynomial::Variable(1, 0);
  CHECK(MaxCoefficientDistance(c.game.payoff(0), -3.0 * x * x + 4.0 * x) <= 1e-12);
}

TEST_CASE("fig1 tree gives the expected multilinear payoffs") {
  const EfgConversion c = EfgToGame(LoadTree("fig1"));
  REQUIRE(c.game.n_vars() == 3);
  const Polynomial x1 = Polynomial::Variable(3, 0), x2 = Polynomial::Variable(3, 1),
                   y = Polynomial::Variable(3, 2), one = Polynomial::Constant(3, 1.0);
  const Polynomial u1 =
      10.0 * x1 * x2 + 2.0 * x1 * y - 6.0 * x1 + 2.0 * x2 * y - 6.0 * x2 - 2.0 * y + one;
  CHECK(MaxCoefficientDistance(c.game.payoff(0), u1) <= 1e-12);
  CHECK(MaxCoefficientDistance(c.game.payoff(1), -u1) <= 1e-12);
}

TEST_CASE("converted games match the corpus game files") {
  for (const char* name : {"driver", "fig1", "fig3"}) {
    CAPTURE(name);
    const EfgConversion c = EfgToGame(LoadTree(name));
    const PolynomialGame g = LoadCorpusGame(name);
    CHECK(GameDistance(c.game, g) <= 1e-12);
    CHECK(c.game.block_sizes() == g.block_sizes());
  }
}

TEST_CASE("polynomials agree with tree evaluation") {
  std::mt19937_64 rng(51);
  for (const char* name : {"driver", "fig1", "fig3"}) {
    CAPTURE(name);
    const EfgTree tree = LoadTree(name);
    const EfgConversion c = EfgToGame(tree);
    for (int trial = 0; trial < 100; ++trial) {
      const BehavioralStrategy s = RandomStrategy(rng, c.map);
      const auto point = StrategyToPoint(c.map, s);
      CHECK(c.game.domain().Contains(point, 1e-12));
      const auto direct = ExpectedUtilityAt(tree, s);
      for (std::size_t i = 0; i < c.game.n_players(); ++i) {
        CHECK(std::abs(c.game.payoff(i).Evaluate(point) - direct[i]) <= 1e-10);
      }
      double total = 0.0;
      for (double p : LeafReachProbabilities(tree, s)) total += p;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("payoff degree is bounded by tree depth") {
  for (const char* name : {"driver", "fig1", "fig3"}) {
    const EfgTree tree = LoadTree(name);
    CHECK(EfgToGame(tree).game.payoff_degree() <= tree.Depth());
  }
}

TEST_CASE("zero-sum trees give payoffs summing to zero") {
  for (const char* name : {"fig1", "fig3"}) {
    const EfgConversion c = EfgToGame(LoadTree(name));
    CHECK((c.game.payoff(0) + c.game.payoff(1)).max_abs_coefficient() <= 1e-12);
  }
}

TEST_CASE("chance nodes weight their children") {
  EfgTree tree;
  tree.n_players = 1;
  EfgNode decide;
  decide.kind = EfgNode::Kind::kDecision;
  decide.infoset = "I";
  decide.actions = {"a", "b"};
  decide.children = {Leaf({4.0}), Leaf({0.0})};
  tree.root.kind = EfgNode::Kind::kChance;
  tree.root.actions = {"l", "r"};
  tree.root.chance_probs = {0.25, 0.75};
  tree.root.children = {decide, Leaf({8.0})};
  const EfgConversion c = EfgToGame(tree);
  // 0.25 * 4x + 0.75 * 8
  const Polynomial x = Polynomial::Variable(1, 0);
  CHECK(MaxCoefficientDistance(c.game.payoff(0), x + Polynomial::Constant(1, 6.0)) <= 1e-12);
  CHECK(EfgFromJson(EfgToJson(tree)).Depth() == 2);
}

TEST_CASE("a single leaf is a constant game") {
  EfgTree tree;
  tree.n_players = 2;
  tree.root = Leaf({1.5, -2.0});
  const EfgConversion c = EfgToGame(tree);
  CHECK(c.game.n_vars() == 0);
  CHECK(c.game.payoff(0).coefficient(Monomial::One(0)) == 1.5);
  CHECK(c.game.payoff(1).coefficient(Monomial::One(0)) == -2.0);
}

TEST_CASE("malformed trees are rejected") {
  EfgTree tree;
  tree.n_players = 1;
  tree.root.kind = EfgNode::Kind::kChance;
  tree.root.actions = {"l", "r"};
  tree.root.chance_probs = {0.5, 0.6};
  tree.root.children = {Leaf({0.0}), Leaf({1.0})};
  CHECK_THROWS_AS(tree.Validate(), EfgError);
  tree.root.chance_probs = {0.5, 0.5};
  tree.root.children.pop_back();
  CHECK_THROWS_AS(tree.Validate(), EfgError);
  tree.root.children = {Leaf({0.0}), Leaf({1.0, 2.0})};
  CHECK_THROWS_AS(tree.Validate(), EfgError);
  // One infoset seen with two different action lists.
  EfgNode a;
  a.kind = EfgNode::Kind::kDecision;
  a.infoset = "I";
  a.actions = {"x", "y"};
  a.children = {Leaf({0.0}), Leaf({1.0})};
  EfgNode b = a;
  b.actions = {"x", "y", "z"};
  b.children.push_back(Leaf({2.0}));
  tree.root.children = {a, b};
  CHECK_THROWS_AS(tree.Validate(), EfgError);
}

}  // TEST_SUITE
