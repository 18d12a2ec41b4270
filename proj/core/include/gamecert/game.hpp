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

#ifndef GAMECERT_GAME_HPP_
#define GAMECERT_GAME_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "gamecert/polynomial.hpp"

namespace gamecert {

// {x : g_j(x) >= 0 for all j, h_j(x) = 0 for all j}.
struct SemialgebraicSet {
  std::size_t n_vars = 0;
  std::vector<Polynomial> inequalities;
  std::vector<Polynomial> equalities;

  // Throws std::invalid_argument if a member polynomial has the wrong arity.
  void Validate() const;
  int degree() const;
  bool Contains(std::span<const double> point, double tol = 0.0) const;

  // The same set viewed inside a larger variable space, variables shifted by
  // `offset`.
  SemialgebraicSet Embedded(std::size_t n_vars, std::size_t offset = 0) const;

  // Cartesian product: `other`'s variables are appended after this set's.
  SemialgebraicSet Product(const SemialgebraicSet& other) const;
};

// The unit sphere {y in R^dim : 1 - y^T y = 0}.
SemialgebraicSet SphereSet(std::size_t dim);

// Appends R^2 - sum_i x_i^2 >= 0, making the quadratic module Archimedean.
SemialgebraicSet AddBallConstraint(const SemialgebraicSet& set, double radius);

// Player i controls variables [offset, offset + size).
struct PlayerBlock {
  std::size_t offset = 0;
  std::size_t size = 0;
};

class PolynomialGame {
 public:
  PolynomialGame() = default;
  // Blocks are laid out contiguously in player order.
  PolynomialGame(std::vector<std::size_t> block_sizes,
                 std::vector<Polynomial> payoffs, SemialgebraicSet domain);

  std::size_t n_players() const { return blocks_.size(); }
  std::size_t n_vars() const { return domain_.n_vars; }
  const std::vector<PlayerBlock>& blocks() const { return blocks_; }
  const PlayerBlock& block(std::size_t i) const { return blocks_.at(i); }
  const std::vector<Polynomial>& payoffs() const { return payoffs_; }
  const Polynomial& payoff(std::size_t i) const { return payoffs_.at(i); }
  const SemialgebraicSet& domain() const { return domain_; }
  std::vector<std::size_t> block_sizes() const;

  // Max degree over payoffs and domain constraints.
  int degree() const;
  int payoff_degree() const;

  PolynomialGame WithPayoffs(std::vector<Polynomial> payoffs) const;
  PolynomialGame WithDomain(SemialgebraicSet domain) const;

 private:
  void Validate() const;

  std::vector<PlayerBlock> blocks_;
  std::vector<Polynomial> payoffs_;
  SemialgebraicSet domain_;
};

// v(x) = (grad_{x_1} u_1, ..., grad_{x_n} u_n), stacked in block order.
std::vector<Polynomial> Pseudogradient(const PolynomialGame& game);

// J(x)_{kl} = d v_k / d x_l.
PolyMatrix Jacobian(const PolynomialGame& game);

// J_S(x) = (J(x) + J(x)^T) / 2, exactly symmetric.
PolyMatrix SymmetrizedJacobian(const PolynomialGame& game);

// Hessian of u_i with respect to the player's own variables, as a function of
// all variables.
PolyMatrix PlayerHessian(const PolynomialGame& game, std::size_t player);

// y^T M(x) y with y occupying variables [y_offset, y_offset + dim) of a space
// of y_offset + dim variables. Requires M symmetric and y_offset >= M.n_vars().
Polynomial QuadraticForm(const PolyMatrix& m, std::size_t y_offset);

// Payoffs u_i - (eps/2) ||x_i||^2; shifts J_S by -eps * I.
PolynomialGame Regularize(const PolynomialGame& game, double eps);

// Payoffs -||x_i||^2 on the game's domain (J_S = -2I).
PolynomialGame QuadraticGame(const PolynomialGame& game);

}  // namespace gamecert

#endif  // GAMECERT_GAME_HPP_
