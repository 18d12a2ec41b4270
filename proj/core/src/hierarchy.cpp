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

#include "gamecert/hierarchy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace gamecert {

const char* ToString(CertKind kind) {
  return kind == CertKind::kMonotone ? "monotone" : "concave";
}

const char* ToString(CertStatus status) {
  switch (status) {
    case CertStatus::kStrictlyCertified: return "StrictlyCertified";
    case CertStatus::kCertified: return "Certified";
    case CertStatus::kInconclusive: return "Inconclusive";
    case CertStatus::kInfeasible: return "Infeasible";
  }
  return "Unknown";
}

CertKind ParseCertKind(const std::string& text) {
  if (text == "monotone") return CertKind::kMonotone;
  if (text == "concave") return CertKind::kConcave;
  throw std::invalid_argument("unknown kind '" + text + "' (expected monotone or concave)");
}

namespace {

SosMembershipProblem QuadraticFormProgram(const PolyMatrix& matrix,
                                          const SemialgebraicSet& domain, int level,
                                          const std::string& label) {
  const std::size_t n = domain.n_vars;
  const std::size_t m = matrix.dim();
  const Polynomial q = QuadraticForm(matrix, n);
  SosMembershipProblem prob;
  const int lambda = prob.AddParam("lambda");
  AffinePolynomial target(-q);
  target.linear.emplace_back(lambda, Polynomial::Constant(n + m, 1.0));
  prob.memberships.push_back({std::move(target), domain.Product(SphereSet(m)), level, label});
  prob.objective.emplace_back(lambda, 1.0);
  return prob;
}

SolverStats StatsOf(const SdpProblem& sdp, const SdpSolution& sol) {
  SolverStats s;
  s.status = ToString(sol.status);
  s.iterations = sol.iterations;
  s.constraints = static_cast<int>(sdp.constraints.size());
  s.free_variables = sdp.n_free;
  s.block_dims = sdp.block_dims;
  s.primal_infeasibility = sol.primal_infeasibility;
  s.dual_infeasibility = sol.dual_infeasibility;
  s.relative_gap = sol.relative_gap;
  return s;
}

}  // namespace

SosMembershipProblem MonotoneProgram(const PolynomialGame& game, int level) {
  if (game.n_vars() == 0) throw std::invalid_argument("MonotoneProgram: game has no variables");
  return QuadraticFormProgram(SymmetrizedJacobian(game), game.domain(), level, "monotone");
}

SosMembershipProblem ConcaveProgram(const PolynomialGame& game, std::size_t player,
                                    int level) {
  if (game.block(player).size == 0) {
    throw std::invalid_argument("ConcaveProgram: player " + std::to_string(player) +
                                " has no variables");
  }
  return QuadraticFormProgram(PlayerHessian(game, player), game.domain(), level,
                              "concave player " + std::to_string(player));
}

int MinimalLevel(const PolynomialGame& game, CertKind kind) {
  int d = 0;
  if (kind == CertKind::kMonotone) {
    d = SymmetrizedJacobian(game).degree();
  } else {
    for (std::size_t i = 0; i < game.n_players(); ++i) {
      if (game.block(i).size > 0) d = std::max(d, PlayerHessian(game, i).degree());
    }
  }
  return std::max({2, d + 2, game.domain().degree()});
}

CertStatus Classify(double lambda, const CertOptions& options) {
  if (lambda < -options.strict_tol) return CertStatus::kStrictlyCertified;
  if (lambda <= options.cert_tol) return CertStatus::kCertified;
  return CertStatus::kInconclusive;
}

SosSolveOutcome SolveSos(const SosMembershipProblem& problem, const CertOptions& options) {
  SosSolveOutcome out;
  const CompiledSos compiled = Compile(problem);
  for (const auto& w : compiled.warnings) out.diagnostics.push_back(w);
  if (!compiled.infeasible_reason.empty()) {
    out.infeasible = true;
    out.diagnostics.push_back(compiled.infeasible_reason);
    out.stats.status = "NotSolved";
    return out;
  }

  SdpOptions sdp_opts = options.sdp;
  for (int attempt = 0; attempt < 2; ++attempt) {
    out.solution = SolveSdp(compiled.sdp, sdp_opts);
    out.stats = StatsOf(compiled.sdp, out.solution);
    if (out.solution.status == SdpStatus::kPrimalInfeasible) {
      out.infeasible = true;
      out.diagnostics.push_back("SDP is primal infeasible: no decomposition at this level");
      return out;
    }
    if (out.solution.status != SdpStatus::kOptimal) {
      out.diagnostics.push_back(std::string("SDP solver stopped with status ") +
                                ToString(out.solution.status) + ": " + out.solution.message);
      return out;
    }
    try {
      out.certificate = ExtractCertificate(problem, compiled, out.solution, options.certificate);
      return out;
    } catch (const CertificateRejected& e) {
      out.diagnostics.push_back(e.what());
      if (attempt == 0) {
        sdp_opts.feasibility_tol = std::min(sdp_opts.feasibility_tol, 1e-11);
        sdp_opts.gap_tol = std::min(sdp_opts.gap_tol, 1e-10);
        out.diagnostics.push_back("retrying with tightened solver tolerances");
      }
    }
  }
  return out;
}

namespace {

// Fills lambda/status/certificate for a single-membership program outcome.
void Absorb(const SosSolveOutcome& outcome, CertResult& result, double& lambda, bool& ok,
            bool& infeasible) {
  result.solver.push_back(outcome.stats);
  result.diagnostics.insert(result.diagnostics.end(), outcome.diagnostics.begin(),
                            outcome.diagnostics.end());
  infeasible = outcome.infeasible;
  ok = outcome.certificate.has_value();
  lambda = ok ? outcome.certificate->optimum : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

CertResult CertifyMonotone(const PolynomialGame& game, int level, const CertOptions& options) {
  CertResult result;
  result.kind = CertKind::kMonotone;
  result.level = level;
  const SosSolveOutcome outcome = SolveSos(MonotoneProgram(game, level), options);
  double lambda = 0.0;
  bool ok = false, infeasible = false;
  Absorb(outcome, result, lambda, ok, infeasible);
  result.lambda = lambda;
  if (infeasible) {
    result.status = CertStatus::kInfeasible;
  } else if (ok) {
    result.status = Classify(lambda, options);
    result.certificate = outcome.certificate;
  } else {
    result.status = CertStatus::kInconclusive;
  }
  return result;
}

CertResult CertifyConcave(const PolynomialGame& game, int level, const CertOptions& options) {
  CertResult result;
  result.kind = CertKind::kConcave;
  result.level = level;

  std::vector<std::size_t> players;
  for (std::size_t i = 0; i < game.n_players(); ++i) {
    if (game.block(i).size > 0) players.push_back(i);
  }
  std::vector<SosMembershipProblem> programs;
  for (std::size_t i : players) programs.push_back(ConcaveProgram(game, i, level));

  std::vector<SosSolveOutcome> outcomes(players.size());
  std::vector<std::string> errors(players.size());
  const int threads = std::clamp(options.threads, 1, static_cast<int>(std::max<std::size_t>(1, players.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k = next++; k < players.size(); k = next++) {
      try {
        outcomes[k] = SolveSos(programs[k], options);
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw std::runtime_error(e);
  }

  bool all_ok = true, any_infeasible = false;
  double worst = -std::numeric_limits<double>::infinity();
  Certificate combined;
  combined.level = level;
  combined.min_gram_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < players.size(); ++k) {
    double lambda = 0.0;
    bool ok = false, infeasible = false;
    Absorb(outcomes[k], result, lambda, ok, infeasible);
    result.per_player.push_back({players[k], lambda});
    any_infeasible = any_infeasible || infeasible;
    all_ok = all_ok && ok;
    if (ok) {
      worst = std::max(worst, lambda);
      const Certificate& c = *outcomes[k].certificate;
      combined.param_values.insert(combined.param_values.end(), c.param_values.begin(),
                                   c.param_values.end());
      combined.memberships.insert(combined.memberships.end(), c.memberships.begin(),
                                  c.memberships.end());
      combined.identity_residual = std::max(combined.identity_residual, c.identity_residual);
      combined.min_gram_eigenvalue = std::min(combined.min_gram_eigenvalue, c.min_gram_eigenvalue);
    }
  }
  if (players.empty()) {
    // No player has variables: every own-block Hessian is empty.
    worst = 0.0;
    combined.min_gram_eigenvalue = 0.0;
  }
  combined.optimum = worst;

  if (any_infeasible) {
    result.status = CertStatus::kInfeasible;
    result.lambda = std::numeric_limits<double>::quiet_NaN();
  } else if (all_ok) {
    result.lambda = worst;
    result.status = Classify(worst, options);
    result.certificate = std::move(combined);
  } else {
    result.lambda = std::numeric_limits<double>::quiet_NaN();
    result.status = CertStatus::kInconclusive;
  }
  return result;
}

CertResult Certify(const PolynomialGame& game, CertKind kind, int level,
                   const CertOptions& options) {
  return kind == CertKind::kMonotone ? CertifyMonotone(game, level, options)
                                     : CertifyConcave(game, level, options);
}

std::vector<CertResult> RunHierarchy(const PolynomialGame& game, CertKind kind, int first,
                                     int last, const CertOptions& options,
                                     bool stop_on_strict) {
  if (first < 0 || last < first) {
    throw std::invalid_argument("RunHierarchy: invalid level range " + std::to_string(first) +
                                ".." + std::to_string(last));
  }
  std::vector<CertResult> results;
  for (int level = first; level <= last; ++level) {
    CertResult r;
    try {
      r = Certify(game, kind, level, options);
    } catch (const std::exception& e) {
      r.kind = kind;
      r.level = level;
      r.lambda = std::numeric_limits<double>::quiet_NaN();
      r.status = CertStatus::kInconclusive;
      r.error = e.what();
    }
    results.push_back(std::move(r));
    if (stop_on_strict && results.back().status == CertStatus::kStrictlyCertified) break;
  }
  return results;
}

}  // namespace gamecert
