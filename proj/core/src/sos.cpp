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

#include "gamecert/sos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>

namespace gamecert {

int AffinePolynomial::degree() const {
  int d = constant.degree();
  for (const auto& [k, q] : linear) d = std::max(d, q.degree());
  return d;
}

Polynomial AffinePolynomial::Evaluate(const std::vector<double>& params) const {
  Polynomial out = constant;
  for (const auto& [k, q] : linear) {
    if (k < 0 || k >= static_cast<int>(params.size())) {
      throw std::out_of_range("AffinePolynomial: parameter index " + std::to_string(k));
    }
    out += q * params[k];
  }
  return out;
}

int SosMembershipProblem::AddParam(std::string name, bool nonnegative) {
  params.push_back({std::move(name), nonnegative});
  return static_cast<int>(params.size()) - 1;
}

std::vector<Monomial> GramBasis(int level, int constraint_degree, std::size_t n_vars,
                                std::string* warning) {
  if (level < constraint_degree) {
    if (warning != nullptr) {
      *warning = "level " + std::to_string(level) + " is below constraint degree " +
                 std::to_string(constraint_degree) + "; multiplier dropped";
    }
    return {};
  }
  return MonomialsUpToDegree(n_vars, (level - constraint_degree) / 2);
}

namespace {

struct Row {
  std::vector<BlockEntry> entries;
  std::map<int, double> free;
  std::map<int, double> scalar_blocks;  // nonnegative parameters
  double rhs = 0.0;
};

void CheckParam(int k, std::size_t n_params, const char* where) {
  if (k < 0 || k >= static_cast<int>(n_params)) {
    throw std::invalid_argument(std::string(where) + ": parameter index " +
                                std::to_string(k) + " out of range");
  }
}

}  // namespace

CompiledSos Compile(const SosMembershipProblem& problem) {
  if (problem.memberships.empty()) {
    throw std::invalid_argument("Compile: problem has no membership constraints");
  }
  CompiledSos out;
  SdpProblem& sdp = out.sdp;
  const std::size_t n_params = problem.params.size();

  for (const auto& p : problem.params) {
    if (p.nonnegative) {
      out.param_block.push_back(static_cast<int>(sdp.block_dims.size()));
      out.param_free.push_back(-1);
      sdp.block_dims.push_back(1);
    } else {
      out.param_block.push_back(-1);
      out.param_free.push_back(sdp.n_free++);
    }
  }

  auto add_param_coeff = [&](Row& row, int k, double v) {
    if (out.param_free[k] >= 0) {
      row.free[out.param_free[k]] += v;
    } else {
      row.scalar_blocks[out.param_block[k]] += v;
    }
  };

  std::vector<Row> rows;
  for (std::size_t mi = 0; mi < problem.memberships.size(); ++mi) {
    const Membership& mem = problem.memberships[mi];
    const std::string name = mem.label.empty() ? "membership " + std::to_string(mi) : mem.label;
    const std::size_t n = mem.set.n_vars;
    mem.set.Validate();
    if (mem.level < 0) throw std::invalid_argument(name + ": negative level");
    if (mem.target.n_vars() != n) {
      throw std::invalid_argument(name + ": target has " + std::to_string(mem.target.n_vars()) +
                                  " variables, set has " + std::to_string(n));
    }
    for (const auto& [k, q] : mem.target.linear) {
      CheckParam(k, n_params, "Compile");
      if (q.n_vars() != n) throw std::invalid_argument(name + ": parameter polynomial arity");
    }
    if (mem.target.degree() > mem.level) {
      throw std::invalid_argument(name + ": target degree " +
                                  std::to_string(mem.target.degree()) + " exceeds level " +
                                  std::to_string(mem.level));
    }

    const auto monomials = MonomialsUpToDegree(n, mem.level);
    std::unordered_map<Monomial, std::size_t, MonomialHash> index;
    index.reserve(monomials.size() * 2);
    const std::size_t first_row = rows.size();
    for (std::size_t r = 0; r < monomials.size(); ++r) index.emplace(monomials[r], first_row + r);
    rows.resize(first_row + monomials.size());

    for (const auto& [mon, c] : mem.target.constant.terms()) rows[index.at(mon)].rhs += c;
    for (const auto& [k, q] : mem.target.linear) {
      for (const auto& [mon, c] : q.terms()) add_param_coeff(rows[index.at(mon)], k, -c);
    }

    // Gram blocks: sigma_0 then one per inequality.
    std::vector<Polynomial> gs;
    gs.push_back(Polynomial::Constant(n, 1.0));
    for (const auto& g : mem.set.inequalities) gs.push_back(g);
    for (std::size_t j = 0; j < gs.size(); ++j) {
      const Polynomial& g = gs[j];
      if (g.is_zero()) continue;
      std::string warning;
      auto basis = GramBasis(mem.level, g.degree(), n, &warning);
      if (basis.empty()) {
        out.warnings.push_back(name + ", inequality " + std::to_string(j - 1) + ": " + warning);
        continue;
      }
      const int block = static_cast<int>(sdp.block_dims.size());
      sdp.block_dims.push_back(static_cast<int>(basis.size()));
      for (std::size_t u = 0; u < basis.size(); ++u) {
        for (std::size_t v = u; v < basis.size(); ++v) {
          const Monomial uv = basis[u] * basis[v];
          for (const auto& [gm, gc] : g.terms()) {
            rows[index.at(uv * gm)].entries.push_back(
                {block, static_cast<int>(u), static_cast<int>(v), gc});
          }
        }
      }
      out.grams.push_back({static_cast<int>(mi), static_cast<int>(j) - 1, block, std::move(basis)});
    }

    // Free multipliers, one per equality.
    for (std::size_t j = 0; j < mem.set.equalities.size(); ++j) {
      const Polynomial& h = mem.set.equalities[j];
      if (h.is_zero()) continue;
      if (h.degree() > mem.level) {
        out.warnings.push_back(name + ", equality " + std::to_string(j) + ": level " +
                               std::to_string(mem.level) + " is below its degree " +
                               std::to_string(h.degree()) + "; multiplier dropped");
        continue;
      }
      auto basis = MonomialsUpToDegree(n, mem.level - h.degree());
      const int first = sdp.n_free;
      sdp.n_free += static_cast<int>(basis.size());
      for (std::size_t b = 0; b < basis.size(); ++b) {
        for (const auto& [hm, hc] : h.terms()) {
          rows[index.at(basis[b] * hm)].free[first + static_cast<int>(b)] += hc;
        }
      }
      out.multipliers.push_back({static_cast<int>(mi), static_cast<int>(j), first, std::move(basis)});
    }
  }

  for (const auto& pc : problem.constraints) {
    Row row;
    for (const auto& [k, v] : pc.coeffs) {
      CheckParam(k, n_params, "Compile constraint");
      add_param_coeff(row, k, v);
    }
    row.rhs = pc.rhs;
    SdpConstraint con;
    for (const auto& [blk, v] : row.scalar_blocks) con.entries.push_back({blk, 0, 0, v});
    for (const auto& [f, v] : row.free) con.free_coeffs.emplace_back(f, v);
    con.rhs = row.rhs;
    con.relation = pc.relation;
    if (con.entries.empty() && con.free_coeffs.empty()) {
      const bool violated = pc.relation == Relation::kEqual ? row.rhs != 0.0 : row.rhs < 0.0;
      if (violated) out.infeasible_reason = "parameter constraint without variables is violated";
      continue;
    }
    sdp.constraints.push_back(std::move(con));
  }

  // Coefficient-matching rows, each scaled to unit infinity norm.
  std::vector<SdpConstraint> matching;
  for (auto& row : rows) {
    double scale = 0.0;
    for (const auto& e : row.entries) scale = std::max(scale, std::abs(e.value));
    for (const auto& [f, v] : row.free) scale = std::max(scale, std::abs(v));
    for (const auto& [b, v] : row.scalar_blocks) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) {
      if (row.rhs != 0.0 && out.infeasible_reason.empty()) {
        out.infeasible_reason = "target has a coefficient no multiplier can produce";
      }
      continue;
    }
    SdpConstraint con;
    con.entries = std::move(row.entries);
    for (auto& e : con.entries) e.value /= scale;
    for (const auto& [b, v] : row.scalar_blocks) {
      if (v != 0.0) con.entries.push_back({b, 0, 0, v / scale});
    }
    for (const auto& [f, v] : row.free) {
      if (v != 0.0) con.free_coeffs.emplace_back(f, v / scale);
    }
    con.rhs = row.rhs / scale;
    matching.push_back(std::move(con));
  }
  sdp.constraints.insert(sdp.constraints.begin(), matching.begin(), matching.end());

  sdp.free_objective.assign(sdp.n_free, 0.0);
  for (const auto& [k, v] : problem.objective) {
    CheckParam(k, n_params, "Compile objective");
    if (out.param_free[k] >= 0) {
      sdp.free_objective[out.param_free[k]] += v;
    } else {
      sdp.objective.push_back({out.param_block[k], 0, 0, v});
    }
  }
  if (problem.gram_trace_weight < 0.0 || !std::isfinite(problem.gram_trace_weight)) {
    throw std::invalid_argument("Compile: gram_trace_weight must be finite and nonnegative");
  }
  if (problem.gram_trace_weight > 0.0) {
    for (const auto& g : out.grams) {
      for (std::size_t i = 0; i < g.basis.size(); ++i) {
        sdp.objective.push_back(
            {g.block, static_cast<int>(i), static_cast<int>(i), problem.gram_trace_weight});
      }
    }
  }
  sdp.Validate();
  return out;
}

// ---------------------------------------------------------------------------

CertificateRejected::CertificateRejected(double residual, double min_eigenvalue)
    : std::runtime_error("certificate rejected: identity residual " +
                         std::to_string(residual) + ", min Gram eigenvalue " +
                         std::to_string(min_eigenvalue)),
      residual_(residual),
      min_eigenvalue_(min_eigenvalue) {}

Polynomial MembershipCertificate::Expansion() const {
  const std::size_t n = target.n_vars();
  std::map<Monomial, double, MonomialOrder> acc;
  for (const auto& g : grams) {
    const auto& b = g.basis;
    for (std::size_t u = 0; u < b.size(); ++u) {
      for (std::size_t v = 0; v < b.size(); ++v) {
        const double q = g.gram(u, v);
        if (q == 0.0) continue;
        const Monomial uv = b[u] * b[v];
        for (const auto& [gm, gc] : g.multiplier_of.terms()) acc[uv * gm] += q * gc;
      }
    }
  }
  for (const auto& f : multipliers) {
    for (const auto& [pm, pc] : f.multiplier.terms()) {
      for (const auto& [hm, hc] : f.equality.terms()) acc[pm * hm] += pc * hc;
    }
  }
  Polynomial out(n);
  for (const auto& [m, c] : acc) out.AddTerm(m, c);
  return out;
}

namespace {

double MinEigenvalue(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

}  // namespace

void AuditCertificate(Certificate& cert) {
  cert.identity_residual = 0.0;
  cert.min_gram_eigenvalue = std::numeric_limits<double>::infinity();
  for (auto& mc : cert.memberships) {
    mc.identity_residual = MaxCoefficientDistance(mc.target, mc.Expansion());
    cert.identity_residual = std::max(cert.identity_residual, mc.identity_residual);
    for (auto& g : mc.grams) {
      g.min_eigenvalue = MinEigenvalue(g.gram);
      cert.min_gram_eigenvalue = std::min(cert.min_gram_eigenvalue, g.min_eigenvalue);
    }
  }
  if (!std::isfinite(cert.min_gram_eigenvalue)) cert.min_gram_eigenvalue = 0.0;
}

Certificate ExtractCertificate(const SosMembershipProblem& problem,
                               const CompiledSos& compiled, const SdpSolution& solution,
                               const CertificateTolerances& tol) {
  if (solution.status != SdpStatus::kOptimal) {
    throw std::invalid_argument(std::string("ExtractCertificate: solution status ") +
                                ToString(solution.status));
  }
  Certificate cert;
  for (std::size_t k = 0; k < problem.params.size(); ++k) {
    cert.param_values.push_back(compiled.param_free[k] >= 0
                                    ? solution.free_values[compiled.param_free[k]]
                                    : solution.primal_blocks[compiled.param_block[k]](0, 0));
  }
  cert.optimum = 0.0;
  for (const auto& [k, v] : problem.objective) cert.optimum += v * cert.param_values[k];

  for (const auto& mem : problem.memberships) {
    MembershipCertificate mc;
    mc.label = mem.label;
    mc.level = mem.level;
    mc.target = mem.target.Evaluate(cert.param_values);
    cert.level = std::max(cert.level, mem.level);
    cert.memberships.push_back(std::move(mc));
  }
  for (const auto& gl : compiled.grams) {
    const Membership& mem = problem.memberships[gl.membership];
    GramCertificate gc;
    gc.multiplier_of = gl.inequality < 0 ? Polynomial::Constant(mem.set.n_vars, 1.0)
                                         : mem.set.inequalities[gl.inequality];
    gc.basis = gl.basis;
    const Eigen::MatrixXd& x = solution.primal_blocks[gl.block];
    gc.gram = 0.5 * (x + x.transpose());
    cert.memberships[gl.membership].grams.push_back(std::move(gc));
  }
  for (const auto& fl : compiled.multipliers) {
    const Membership& mem = problem.memberships[fl.membership];
    FreeCertificate fc{mem.set.equalities[fl.equality], Polynomial(mem.set.n_vars)};
    for (std::size_t b = 0; b < fl.basis.size(); ++b) {
      fc.multiplier.AddTerm(fl.basis[b], solution.free_values[fl.first_free + static_cast<int>(b)]);
    }
    cert.memberships[fl.membership].multipliers.push_back(std::move(fc));
  }
  AuditCertificate(cert);
  if (cert.identity_residual > tol.residual_tol || cert.min_gram_eigenvalue < -tol.psd_slack) {
    throw CertificateRejected(cert.identity_residual, cert.min_gram_eigenvalue);
  }
  return cert;
}

}  // namespace gamecert
