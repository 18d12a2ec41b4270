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

#include "gamecert/game.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace gamecert {

void SemialgebraicSet::Validate() const {
  for (const auto& g : inequalities) {
    if (g.n_vars() != n_vars) {
      throw std::invalid_argument("SemialgebraicSet: inequality has " +
                                  std::to_string(g.n_vars()) +
                                  " variables, expected " + std::to_string(n_vars));
    }
  }
  for (const auto& h : equalities) {
    if (h.n_vars() != n_vars) {
      throw std::invalid_argument("SemialgebraicSet: equality has " +
                                  std::to_string(h.n_vars()) +
                                  " variables, expected " + std::to_string(n_vars));
    }
  }
}

int SemialgebraicSet::degree() const {
  int d = 0;
  for (const auto& g : inequalities) d = std::max(d, g.degree());
  for (const auto& h : equalities) d = std::max(d, h.degree());
  return d;
}

bool SemialgebraicSet::Contains(std::span<const double> point, double tol) const {
  for (const auto& g : inequalities) {
    if (g.Evaluate(point) < -tol) return false;
  }
  for (const auto& h : equalities) {
    const double v = h.Evaluate(point);
    if (v > tol || v < -tol) return false;
  }
  return true;
}

SemialgebraicSet SemialgebraicSet::Embedded(std::size_t new_n_vars,
                                            std::size_t offset) const {
  SemialgebraicSet out{new_n_vars, {}, {}};
  for (const auto& g : inequalities) out.inequalities.push_back(g.Embedded(new_n_vars, offset));
  for (const auto& h : equalities) out.equalities.push_back(h.Embedded(new_n_vars, offset));
  return out;
}

SemialgebraicSet SemialgebraicSet::Product(const SemialgebraicSet& other) const {
  const std::size_t total = n_vars + other.n_vars;
  SemialgebraicSet out = Embedded(total, 0);
  SemialgebraicSet tail = other.Embedded(total, n_vars);
  out.inequalities.insert(out.inequalities.end(), tail.inequalities.begin(),
                          tail.inequalities.end());
  out.equalities.insert(out.equalities.end(), tail.equalities.begin(),
                        tail.equalities.end());
  return out;
}

SemialgebraicSet SphereSet(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("SphereSet: dimension must be positive");
  Polynomial h = Polynomial::Constant(dim, 1.0);
  for (std::size_t k = 0; k < dim; ++k) {
    h.AddTerm(Monomial::Variable(dim, k, 2), -1.0);
  }
  return SemialgebraicSet{dim, {}, {h}};
}

SemialgebraicSet AddBallConstraint(const SemialgebraicSet& set, double radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("AddBallConstraint: radius must be positive");
  }
  SemialgebraicSet out = set;
  Polynomial ball = Polynomial::Constant(set.n_vars, radius * radius);
  for (std::size_t k = 0; k < set.n_vars; ++k) {
    ball.AddTerm(Monomial::Variable(set.n_vars, k, 2), -1.0);
  }
  out.inequalities.push_back(std::move(ball));
  return out;
}

// ---------------------------------------------------------------------------

PolynomialGame::PolynomialGame(std::vector<std::size_t> block_sizes,
                               std::vector<Polynomial> payoffs,
                               SemialgebraicSet domain)
    : payoffs_(std::move(payoffs)), domain_(std::move(domain)) {
  std::size_t offset = 0;
  for (std::size_t size : block_sizes) {
    blocks_.push_back({offset, size});
    offset += size;
  }
  Validate();
}

void PolynomialGame::Validate() const {
  if (payoffs_.size() != blocks_.size()) {
    throw std::invalid_argument("PolynomialGame: " + std::to_string(payoffs_.size()) +
                                " payoffs for " + std::to_string(blocks_.size()) +
                                " players");
  }
  std::size_t total = 0;
  for (const auto& b : blocks_) total += b.size;
  if (total != domain_.n_vars) {
    throw std::invalid_argument("PolynomialGame: blocks cover " + std::to_string(total) +
                                " variables but the domain has " +
                                std::to_string(domain_.n_vars));
  }
  for (const auto& u : payoffs_) {
    if (u.n_vars() != total) {
      throw std::invalid_argument("PolynomialGame: payoff has " +
                                  std::to_string(u.n_vars()) + " variables, expected " +
                                  std::to_string(total));
    }
  }
  domain_.Validate();
}

std::vector<std::size_t> PolynomialGame::block_sizes() const {
  std::vector<std::size_t> out;
  for (const auto& b : blocks_) out.push_back(b.size);
  return out;
}

int PolynomialGame::payoff_degree() const {
  int d = 0;
  for (const auto& u : payoffs_) d = std::max(d, u.degree());
  return d;
}

int PolynomialGame::degree() const {
  return std::max(payoff_degree(), domain_.degree());
}

PolynomialGame PolynomialGame::WithPayoffs(std::vector<Polynomial> payoffs) const {
  return PolynomialGame(block_sizes(), std::move(payoffs), domain_);
}

PolynomialGame PolynomialGame::WithDomain(SemialgebraicSet domain) const {
  return PolynomialGame(block_sizes(), payoffs_, std::move(domain));
}

std::vector<Polynomial> Pseudogradient(const PolynomialGame& game) {
  std::vector<Polynomial> v;
  v.reserve(game.n_vars());
  for (std::size_t i = 0; i < game.n_players(); ++i) {
    const auto& b = game.block(i);
    for (std::size_t k = 0; k < b.size; ++k) {
      v.push_back(game.payoff(i).Differentiate(b.offset + k));
    }
  }
  return v;
}

PolyMatrix Jacobian(const PolynomialGame& game) {
  const std::size_t m = game.n_vars();
  const auto v = Pseudogradient(game);
  PolyMatrix jac(m, m);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t l = 0; l < m; ++l) jac.at(k, l) = v[k].Differentiate(l);
  }
  return jac;
}

PolyMatrix SymmetrizedJacobian(const PolynomialGame& game) {
  const PolyMatrix jac = Jacobian(game);
  const std::size_t m = jac.dim();
  PolyMatrix sym(m, game.n_vars());
  for (std::size_t k = 0; k < m; ++k) {
    sym.at(k, k) = jac.at(k, k);
    for (std::size_t l = k + 1; l < m; ++l) {
      Polynomial s = (jac.at(k, l) + jac.at(l, k)) * 0.5;
      sym.at(k, l) = s;
      sym.at(l, k) = std::move(s);
    }
  }
  return sym;
}

PolyMatrix PlayerHessian(const PolynomialGame& game, std::size_t player) {
  if (player >= game.n_players()) {
    throw std::out_of_range("PlayerHessian: player index " + std::to_string(player));
  }
  const auto& b = game.block(player);
  const Polynomial& u = game.payoff(player);
  PolyMatrix hess(b.size, game.n_vars());
  for (std::size_t k = 0; k < b.size; ++k) {
    const Polynomial du = u.Differentiate(b.offset + k);
    for (std::size_t l = k; l < b.size; ++l) {
      Polynomial d2 = du.Differentiate(b.offset + l);
      hess.at(l, k) = d2;
      hess.at(k, l) = std::move(d2);
    }
  }
  return hess;
}

Polynomial QuadraticForm(const PolyMatrix& m, std::size_t y_offset) {
  if (!m.IsSymmetric()) throw std::invalid_argument("QuadraticForm: matrix not symmetric");
  if (y_offset < m.n_vars()) {
    throw std::invalid_argument("QuadraticForm: y variables overlap x variables");
  }
  const std::size_t n = y_offset + m.dim();
  Polynomial out(n);
  for (std::size_t k = 0; k < m.dim(); ++k) {
    for (std::size_t l = k; l < m.dim(); ++l) {
      const Polynomial& entry = m.at(k, l);
      if (entry.is_zero()) continue;
      std::vector<int> e(n, 0);
      e[y_offset + k] += 1;
      e[y_offset + l] += 1;
      const Monomial yy(std::move(e));
      const double factor = (k == l) ? 1.0 : 2.0;
      for (const auto& [mon, c] : entry.terms()) {
        out.AddTerm(mon.Embedded(n, 0) * yy, factor * c);
      }
    }
  }
  return out;
}

PolynomialGame Regularize(const PolynomialGame& game, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("Regularize: eps must be positive");
  std::vector<Polynomial> payoffs = game.payoffs();
  for (std::size_t i = 0; i < game.n_players(); ++i) {
    const auto& b = game.block(i);
    for (std::size_t k = 0; k < b.size; ++k) {
      payoffs[i].AddTerm(Monomial::Variable(game.n_vars(), b.offset + k, 2), -0.5 * eps);
    }
  }
  return game.WithPayoffs(std::move(payoffs));
}

PolynomialGame QuadraticGame(const PolynomialGame& game) {
  std::vector<Polynomial> payoffs;
  for (std::size_t i = 0; i < game.n_players(); ++i) {
    const auto& b = game.block(i);
    Polynomial u(game.n_vars());
    for (std::size_t k = 0; k < b.size; ++k) {
      u.AddTerm(Monomial::Variable(game.n_vars(), b.offset + k, 2), -1.0);
    }
    payoffs.push_back(std::move(u));
  }
  return game.WithPayoffs(std::move(payoffs));
}

}  // namespace gamecert
