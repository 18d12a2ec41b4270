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

#ifndef GAMECERT_HIERARCHY_HPP_
#define GAMECERT_HIERARCHY_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gamecert/game.hpp"
#include "gamecert/sdp.hpp"
#include "gamecert/sos.hpp"

namespace gamecert {

enum class CertKind { kMonotone, kConcave };
enum class CertStatus { kStrictlyCertified, kCertified, kInconclusive, kInfeasible };

const char* ToString(CertKind kind);
const char* ToString(CertStatus status);
CertKind ParseCertKind(const std::string& text);

struct CertOptions {
  double strict_tol = 1e-6;
  double cert_tol = 1e-6;
  SdpOptions sdp;
  CertificateTolerances certificate;
  // Worker threads for per-player concavity programs. Results do not depend
  // on this value.
  int threads = 1;
};

struct SolverStats {
  std::string status;
  int iterations = 0;
  int constraints = 0;
  int free_variables = 0;
  std::vector<int> block_dims;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  double relative_gap = 0.0;
};

struct PlayerLambda {
  std::size_t player = 0;
  double lambda = 0.0;
};

struct CertResult {
  CertKind kind = CertKind::kMonotone;
  int level = 0;
  // SOS value; for concavity the max over players. NaN when unavailable.
  double lambda = 0.0;
  CertStatus status = CertStatus::kInconclusive;
  std::optional<Certificate> certificate;
  std::vector<PlayerLambda> per_player;
  std::vector<SolverStats> solver;  // one per SDP solved
  std::vector<std::string> diagnostics;
  std::string error;  // set when the level could not be attempted
};

// min lambda s.t. lambda - y^T J_S(x) y in Q_l(X x S^{m-1}).
// Variables: x (game variables) then y (m = game.n_vars()).
SosMembershipProblem MonotoneProgram(const PolynomialGame& game, int level);

// min lambda_i s.t. lambda_i - y_i^T H_i(x) y_i in Q_l(X x S^{m_i-1}).
SosMembershipProblem ConcaveProgram(const PolynomialGame& game, std::size_t player,
                                    int level);

// Smallest level whose Putinar templates can hold the target.
int MinimalLevel(const PolynomialGame& game, CertKind kind);

CertStatus Classify(double lambda, const CertOptions& options);

CertResult CertifyMonotone(const PolynomialGame& game, int level,
                           const CertOptions& options = {});
CertResult CertifyConcave(const PolynomialGame& game, int level,
                          const CertOptions& options = {});
CertResult Certify(const PolynomialGame& game, CertKind kind, int level,
                   const CertOptions& options = {});

// Levels first..last inclusive. A level that cannot be attempted is recorded
// with its error and the sweep continues.
std::vector<CertResult> RunHierarchy(const PolynomialGame& game, CertKind kind, int first,
                                     int last, const CertOptions& options = {},
                                     bool stop_on_strict = false);

// Solves a membership problem, retrying once at tighter tolerances when the
// first certificate is rejected. Used by the hierarchy and the projector.
struct SosSolveOutcome {
  SdpSolution solution;
  std::optional<Certificate> certificate;
  SolverStats stats;
  std::vector<std::string> diagnostics;
  bool infeasible = false;
};
SosSolveOutcome SolveSos(const SosMembershipProblem& problem, const CertOptions& options);

}  // namespace gamecert

#endif  // GAMECERT_HIERARCHY_HPP_
