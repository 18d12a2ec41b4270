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

#include "gamecert/projector.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gamecert {

double GameDistance(const PolynomialGame& a, const PolynomialGame& b) {
  if (a.n_players() != b.n_players() || a.n_vars() != b.n_vars()) {
    throw std::invalid_argument("GameDistance: games have different shapes");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < a.n_players(); ++i) {
    d = std::max(d, MaxCoefficientDistance(a.payoff(i), b.payoff(i)));
  }
  return d;
}

void ProjectionSpec::Validate() const {
  if (reference.n_players() == 0) throw std::invalid_argument("projection: game has no players");
  if (reference.n_vars() == 0) throw std::invalid_argument("projection: game has no variables");
  if (level < 0) throw std::invalid_argument("projection: negative level");
  if (zero_sum && reference.n_players() != 2) {
    throw std::invalid_argument("projection: zero_sum requires exactly 2 players");
  }
  for (const auto& f : frozen) {
    if (f.player >= reference.n_players()) {
      throw std::invalid_argument("projection: frozen coefficient for player " +
                                  std::to_string(f.player) + " out of range");
    }
    if (f.monomial.n_vars() != reference.n_vars()) {
      throw std::invalid_argument("projection: frozen monomial has wrong arity");
    }
  }
}

std::vector<std::vector<Monomial>> CandidateBases(const ProjectionSpec& spec) {
  spec.Validate();
  const PolynomialGame& g = spec.reference;
  std::vector<std::vector<Monomial>> bases(g.n_players());
  if (spec.preserve_support) {
    for (std::size_t i = 0; i < g.n_players(); ++i) {
      for (const auto& [m, c] : g.payoff(i).terms()) bases[i].push_back(m);
    }
  } else {
    const auto full = MonomialsUpToDegree(g.n_vars(), g.payoff_degree());
    for (auto& b : bases) b = full;
  }
  for (auto& b : bases) std::sort(b.begin(), b.end(), MonomialOrder{});
  return bases;
}

namespace {

// Parameter layout: 0 is the epigraph variable, then one per candidate
// coefficient.
struct Layout {
  std::vector<std::vector<Monomial>> bases;
  std::vector<std::vector<int>> param;  // param[i][k] for bases[i][k]
};

Layout MakeLayout(const ProjectionSpec& spec, SosMembershipProblem& prob) {
  Layout lay;
  lay.bases = CandidateBases(spec);
  prob.AddParam("t");
  lay.param.resize(lay.bases.size());
  for (std::size_t i = 0; i < lay.bases.size(); ++i) {
    for (const auto& m : lay.bases[i]) {
      lay.param[i].push_back(prob.AddParam("u" + std::to_string(i) + "[" + m.ToString() + "]"));
    }
  }
  return lay;
}

int FindParam(const Layout& lay, std::size_t player, const Monomial& m) {
  const auto& b = lay.bases[player];
  const auto it = std::lower_bound(b.begin(), b.end(), m, MonomialOrder{});
  if (it == b.end() || !(*it == m)) return -1;
  return lay.param[player][static_cast<std::size_t>(it - b.begin())];
}

// The form that the membership target negates, for a game whose only nonzero
// payoff is the monomial m for `player`.
Polynomial UnitForm(const PolynomialGame& ref, std::size_t player, const Monomial& m,
                    CertKind kind) {
  std::vector<Polynomial> payoffs(ref.n_players(), Polynomial(ref.n_vars()));
  payoffs[player] = Polynomial::FromMonomial(m);
  const PolynomialGame unit = ref.WithPayoffs(std::move(payoffs));
  if (kind == CertKind::kMonotone) return QuadraticForm(SymmetrizedJacobian(unit), ref.n_vars());
  return QuadraticForm(PlayerHessian(unit, player), ref.n_vars());
}

}  // namespace

SosMembershipProblem ProjectionProgram(const ProjectionSpec& spec) {
  SosMembershipProblem prob;
  const Layout lay = MakeLayout(spec, prob);
  const PolynomialGame& g = spec.reference;
  const std::size_t n = g.n_vars();

  if (spec.kind == CertKind::kMonotone) {
    const std::size_t m = n;
    AffinePolynomial target(Polynomial(n + m));
    for (std::size_t i = 0; i < g.n_players(); ++i) {
      for (std::size_t k = 0; k < lay.bases[i].size(); ++k) {
        Polynomial q = UnitForm(g, i, lay.bases[i][k], spec.kind);
        if (!q.is_zero()) target.linear.emplace_back(lay.param[i][k], -q);
      }
    }
    prob.memberships.push_back(
        {std::move(target), g.domain().Product(SphereSet(m)), spec.level, "monotone"});
  } else {
    for (std::size_t i = 0; i < g.n_players(); ++i) {
      const std::size_t m = g.block(i).size;
      if (m == 0) continue;
      AffinePolynomial target(Polynomial(n + m));
      for (std::size_t k = 0; k < lay.bases[i].size(); ++k) {
        Polynomial q = UnitForm(g, i, lay.bases[i][k], spec.kind);
        if (!q.is_zero()) target.linear.emplace_back(lay.param[i][k], -q);
      }
      prob.memberships.push_back({std::move(target), g.domain().Product(SphereSet(m)),
                                  spec.level, "concave player " + std::to_string(i)});
    }
  }

  // Epigraph: |c - c*| <= t per coefficient.
  for (std::size_t i = 0; i < g.n_players(); ++i) {
    for (std::size_t k = 0; k < lay.bases[i].size(); ++k) {
      const double ref = g.payoff(i).coefficient(lay.bases[i][k]);
      const int p = lay.param[i][k];
      prob.constraints.push_back({{{p, 1.0}, {0, -1.0}}, Relation::kLessEqual, ref});
      prob.constraints.push_back({{{p, -1.0}, {0, -1.0}}, Relation::kLessEqual, -ref});
    }
  }

  if (spec.zero_sum) {
    std::vector<Monomial> all = lay.bases[0];
    all.insert(all.end(), lay.bases[1].begin(), lay.bases[1].end());
    std::sort(all.begin(), all.end(), MonomialOrder{});
    all.erase(std::unique(all.begin(), all.end()), all.end());
    for (const auto& mon : all) {
      ParamConstraint c;
      for (std::size_t i = 0; i < 2; ++i) {
        const int p = FindParam(lay, i, mon);
        if (p >= 0) c.coeffs.emplace_back(p, 1.0);
      }
      prob.constraints.push_back(std::move(c));
    }
  }

  for (const auto& f : spec.frozen) {
    const int p = FindParam(lay, f.player, f.monomial);
    if (p < 0) {
      // Outside the candidate basis the coefficient is already fixed at zero.
      if (g.payoff(f.player).coefficient(f.monomial) != 0.0) {
        throw std::invalid_argument("projection: frozen monomial " + f.monomial.ToString() +
                                    " is outside the candidate basis");
      }
      continue;
    }
    prob.constraints.push_back(
        {{{p, 1.0}}, Relation::kEqual, g.payoff(f.player).coefficient(f.monomial)});
  }

  prob.objective.emplace_back(0, 1.0);
  return prob;
}

int MinimalProjectionLevel(const ProjectionSpec& spec) {
  int d = std::max(2, spec.reference.domain().degree());
  for (const auto& m : ProjectionProgram(spec).memberships) d = std::max(d, m.target.degree());
  return d + (d % 2);
}

ProjectionResult Project(const ProjectionSpec& spec, const CertOptions& options) {
  ProjectionResult result;
  const SosMembershipProblem prob = ProjectionProgram(spec);
  result.bases = CandidateBases(spec);
  const SosSolveOutcome outcome = SolveSos(prob, options);
  result.solver = outcome.stats;
  result.diagnostics = outcome.diagnostics;
  result.infeasible = outcome.infeasible;
  if (!outcome.certificate) return result;

  const Certificate& cert = *outcome.certificate;
  const PolynomialGame& g = spec.reference;
  std::vector<Polynomial> payoffs(g.n_players(), Polynomial(g.n_vars()));
  int p = 1;
  for (std::size_t i = 0; i < g.n_players(); ++i) {
    for (const auto& m : result.bases[i]) payoffs[i].AddTerm(m, cert.param_values[p++]);
  }
  result.game = g.WithPayoffs(std::move(payoffs));
  result.distance = GameDistance(result.game, g);
  result.epigraph = cert.param_values[0];
  result.certificate = cert;
  result.solved = true;
  return result;
}

SosMembershipProblem GaugeProgram(const PolynomialGame& game, int level) {
  if (game.n_vars() == 0) throw std::invalid_argument("gauge: game has no variables");
  const std::size_t n = game.n_vars();
  SosMembershipProblem prob;
  const int eps = prob.AddParam("eps", true);
  // J_S of G^quad is -2I, so the target is -y^T J_S y + 2 eps y^T y.
  AffinePolynomial target(-QuadraticForm(SymmetrizedJacobian(game), n));
  Polynomial yy(2 * n);
  for (std::size_t k = 0; k < n; ++k) yy.AddTerm(Monomial::Variable(2 * n, n + k, 2), 2.0);
  target.linear.emplace_back(eps, std::move(yy));
  prob.memberships.push_back(
      {std::move(target), game.domain().Product(SphereSet(n)), level, "gauge"});
  prob.objective.emplace_back(eps, 1.0);
  return prob;
}

GaugeResult Gauge(const PolynomialGame& game, int level, const CertOptions& options) {
  GaugeResult result;
  const SosSolveOutcome outcome = SolveSos(GaugeProgram(game, level), options);
  result.solver = outcome.stats;
  result.diagnostics = outcome.diagnostics;
  result.infeasible = outcome.infeasible;
  if (result.infeasible) {
    result.diagnostics.push_back(
        "no eps makes the game SOS-monotone at this level; consider adding a ball constraint");
  }
  if (!outcome.certificate) return result;
  result.epsilon = std::max(0.0, outcome.certificate->optimum);
  result.certificate = outcome.certificate;
  result.solved = true;
  return result;
}

}  // namespace gamecert
