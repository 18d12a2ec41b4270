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

#ifndef GAMECERT_PROJECTOR_HPP_
#define GAMECERT_PROJECTOR_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gamecert/game.hpp"
#include "gamecert/hierarchy.hpp"
#include "gamecert/polynomial.hpp"
#include "gamecert/sos.hpp"

namespace gamecert {

// ||G - G'|| = max_i ||coeffs(u_i) - coeffs(u'_i)||_inf, absent monomials
// counting as zero. Throws if the games have different shapes.
double GameDistance(const PolynomialGame& a, const PolynomialGame& b);

// Pins coefficient `monomial` of player `player`'s payoff to its reference
// value.
struct FrozenCoefficient {
  std::size_t player = 0;
  Monomial monomial;
};

struct ProjectionSpec {
  PolynomialGame reference;
  int level = 2;
  CertKind kind = CertKind::kMonotone;
  bool zero_sum = false;          // u_2 = -u_1; two players only
  bool preserve_support = false;  // candidates use the reference's monomials
  std::vector<FrozenCoefficient> frozen;

  // Throws std::invalid_argument on an inconsistent spec.
  void Validate() const;
};

struct ProjectionResult {
  bool solved = false;
  bool infeasible = false;
  PolynomialGame game;     // valid when solved
  double distance = 0.0;   // recomputed from the returned coefficients
  double epigraph = 0.0;   // the SDP's lambda, for comparison with distance
  std::optional<Certificate> certificate;
  // Candidate monomials per player, graded reverse lexicographic.
  std::vector<std::vector<Monomial>> bases;
  SolverStats solver;
  std::vector<std::string> diagnostics;
};

// Candidate coefficient basis for each player, given the projection options.
std::vector<std::vector<Monomial>> CandidateBases(const ProjectionSpec& spec);

// The projection program before compilation. Parameter 0 is the epigraph
// variable; the remaining parameters follow CandidateBases player by player.
SosMembershipProblem ProjectionProgram(const ProjectionSpec& spec);

// Smallest even level at least the degree of every membership target and of
// the domain constraints.
int MinimalProjectionLevel(const ProjectionSpec& spec);

ProjectionResult Project(const ProjectionSpec& spec, const CertOptions& options = {});

struct GaugeResult {
  bool solved = false;
  bool infeasible = false;
  double epsilon = 0.0;
  std::optional<Certificate> certificate;
  SolverStats solver;
  std::vector<std::string> diagnostics;
};

// min eps >= 0 such that G + eps * G^quad is level-SOS-monotone, where G^quad
// has payoffs -||x_i||^2.
SosMembershipProblem GaugeProgram(const PolynomialGame& game, int level);
GaugeResult Gauge(const PolynomialGame& game, int level, const CertOptions& options = {});

}  // namespace gamecert

#endif  // GAMECERT_PROJECTOR_HPP_
