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

#include "gamecert/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace gamecert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Affine part of p when p has degree <= 1: constant and per-variable slopes.
bool AffineParts(const Polynomial& p, double& c0, std::vector<double>& c) {
  if (p.degree() > 1) return false;
  c0 = 0.0;
  c.assign(p.n_vars(), 0.0);
  for (const auto& [m, v] : p.terms()) {
    if (m.degree() == 0) {
      c0 = v;
      continue;
    }
    for (std::size_t i = 0; i < m.n_vars(); ++i) {
      if (m[i] == 1) c[i] = v;
    }
  }
  return true;
}

// c - sum a_k x_k^2 with c > 0 and every a_k > 0: |x_k| <= sqrt(c / a_k).
void BallBounds(const Polynomial& p, Box& box) {
  double c = 0.0;
  std::vector<std::pair<std::size_t, double>> squares;
  for (const auto& [m, v] : p.terms()) {
    if (m.degree() == 0) {
      c = v;
      continue;
    }
    if (m.degree() != 2 || v >= 0.0) return;
    std::size_t k = 0;
    bool pure = false;
    for (std::size_t i = 0; i < m.n_vars(); ++i) {
      if (m[i] == 2) {
        k = i;
        pure = true;
      }
    }
    if (!pure) return;
    squares.emplace_back(k, -v);
  }
  if (c <= 0.0 || squares.empty()) return;
  for (const auto& [k, a] : squares) {
    const double r = std::sqrt(c / a);
    box.lower[k] = std::max(box.lower[k], -r);
    box.upper[k] = std::min(box.upper[k], r);
  }
}

std::vector<double> SamplePoint(std::mt19937_64& rng, const Box& box) {
  std::vector<double> x(box.lower.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::uniform_real_distribution<double> u(box.lower[i], box.upper[i]);
    x[i] = box.lower[i] == box.upper[i] ? box.lower[i] : u(rng);
  }
  return x;
}

Eigen::MatrixXd ToMatrix(const std::vector<double>& flat, std::size_t dim) {
  Eigen::MatrixXd m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = flat[i * dim + j];
  }
  return m;
}

}  // namespace

std::mt19937_64 SampleRng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(SplitMix64(seed ^ SplitMix64(index)));
}

std::vector<double> JacobiEigenvalues(const Eigen::MatrixXd& a_in, double tol, int max_sweeps) {
  if (a_in.rows() != a_in.cols()) throw std::invalid_argument("JacobiEigenvalues: not square");
  Eigen::MatrixXd a = 0.5 * (a_in + a_in.transpose());
  const Eigen::Index n = a.rows();
  const double scale = a.norm();
  auto off = [&]() {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i != j) s += a(i, j) * a(i, j);
      }
    }
    return std::sqrt(s);
  };
  for (int sweep = 0; sweep < max_sweeps && off() > tol * scale; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        // Rotation zeroing a(p, q).
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

double JacobiMaxEigenvalue(const Eigen::MatrixXd& a) {
  const auto ev = JacobiEigenvalues(a);
  return ev.empty() ? -kInf : ev.back();
}

std::optional<Box> InferBoundingBox(const SemialgebraicSet& set) {
  const std::size_t n = set.n_vars;
  Box box{std::vector<double>(n, -kInf), std::vector<double>(n, kInf)};
  std::vector<Polynomial> ge = set.inequalities;
  for (const auto& h : set.equalities) {
    ge.push_back(h);
    ge.push_back(-h);
  }
  for (const auto& g : ge) BallBounds(g, box);

  std::vector<std::pair<double, std::vector<double>>> affine;
  for (const auto& g : ge) {
    double c0;
    std::vector<double> c;
    if (AffineParts(g, c0, c)) affine.emplace_back(c0, std::move(c));
  }
  // Interval propagation: c_k x_k >= -(c0 + sum_{j != k} max c_j x_j).
  for (std::size_t round = 0; round < n + 2; ++round) {
    bool changed = false;
    for (const auto& [c0, c] : affine) {
      for (std::size_t k = 0; k < n; ++k) {
        if (c[k] == 0.0) continue;
        double rest = c0;
        for (std::size_t j = 0; j < n && std::isfinite(rest); ++j) {
          if (j == k || c[j] == 0.0) continue;
          rest += c[j] > 0.0 ? c[j] * box.upper[j] : c[j] * box.lower[j];
        }
        if (!std::isfinite(rest)) continue;
        if (c[k] > 0.0) {
          const double lo = -rest / c[k];
          if (lo > box.lower[k]) {
            box.lower[k] = lo;
            changed = true;
          }
        } else {
          const double hi = rest / -c[k];
          if (hi < box.upper[k]) {
            box.upper[k] = hi;
            changed = true;
          }
        }
      }
    }
    if (!changed) break;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(box.lower[i]) || !std::isfinite(box.upper[i])) return std::nullopt;
    if (box.lower[i] > box.upper[i]) return std::nullopt;
  }
  return box;
}

SampleReport SampleMaxEigenvalue(const PolynomialGame& game, CertKind kind,
                                 const SampleOptions& options) {
  const std::size_t n = game.n_vars();
  std::optional<Box> box = options.box ? options.box : InferBoundingBox(game.domain());
  if (!box) {
    throw OracleError("no bounding box for the domain; supply one explicitly");
  }
  if (box->lower.size() != n || box->upper.size() != n) {
    throw OracleError("bounding box has the wrong dimension");
  }
  if (options.n_samples == 0) throw OracleError("n_samples must be positive");

  std::vector<PolyMatrix> mats;
  if (kind == CertKind::kMonotone) {
    mats.push_back(SymmetrizedJacobian(game));
  } else {
    for (std::size_t i = 0; i < game.n_players(); ++i) {
      if (game.block(i).size > 0) mats.push_back(PlayerHessian(game, i));
    }
  }

  // Candidate j is accepted or not independently of the others, so batches can
  // be split over threads without changing the result.
  struct Eval {
    bool accepted = false;
    double value = 0.0;
  };
  auto evaluate = [&](std::uint64_t j) {
    auto rng = SampleRng(options.seed, j);
    const std::vector<double> x = SamplePoint(rng, *box);
    Eval e;
    if (!game.domain().Contains(x, options.membership_tol)) return e;
    e.accepted = true;
    e.value = mats.empty() ? 0.0 : -kInf;
    for (const auto& m : mats) {
      e.value = std::max(e.value, JacobiMaxEigenvalue(ToMatrix(m.Evaluate(x), m.dim())));
    }
    return e;
  };

  SampleReport report;
  report.max_eigenvalue = -kInf;
  const std::size_t batch = std::max<std::size_t>(1024, options.n_samples);
  const double min_rate = options.min_acceptance;
  const std::size_t probe = static_cast<std::size_t>(std::ceil(10.0 / min_rate));
  std::vector<Eval> results(batch);
  const int threads = std::max(1, options.threads);
  std::uint64_t next = 0;
  while (report.samples < options.n_samples) {
    if (threads == 1) {
      for (std::size_t k = 0; k < batch; ++k) results[k] = evaluate(next + k);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
          for (std::size_t k = static_cast<std::size_t>(t); k < batch;
               k += static_cast<std::size_t>(threads)) {
            results[k] = evaluate(next + k);
          }
        });
      }
      for (auto& th : pool) th.join();
    }
    for (std::size_t k = 0; k < batch && report.samples < options.n_samples; ++k) {
      ++report.attempts;
      if (!results[k].accepted) continue;
      ++report.samples;
      if (results[k].value > report.max_eigenvalue) {
        report.max_eigenvalue = results[k].value;
        auto rng = SampleRng(options.seed, next + k);
        report.argmax = SamplePoint(rng, *box);
      }
    }
    next += batch;
    const double rate =
        static_cast<double>(report.samples) / static_cast<double>(report.attempts);
    if (report.samples < options.n_samples && report.attempts >= probe && rate < min_rate) {
      throw OracleError("rejection sampling acceptance rate " + std::to_string(rate) +
                        " is below " + std::to_string(min_rate) +
                        "; the domain may have empty interior or the box is too loose");
    }
  }
  report.acceptance_rate =
      static_cast<double>(report.samples) / static_cast<double>(report.attempts);
  return report;
}

SampledCheck CheckCertificateSampled(const Certificate& cert, std::size_t n_samples,
                                     std::uint64_t seed, double identity_tol, double psd_tol) {
  SampledCheck out;
  out.worst_psd = kInf;
  std::uint64_t index = 0;
  for (const auto& mc : cert.memberships) {
    const std::size_t n = mc.target.n_vars();
    const Box box{std::vector<double>(n, -1.0), std::vector<double>(n, 1.0)};
    for (std::size_t s = 0; s < n_samples; ++s, ++index) {
      auto rng = SampleRng(seed, index);
      const std::vector<double> x = SamplePoint(rng, box);
      double expansion = 0.0;
      for (const auto& g : mc.grams) {
        Eigen::VectorXd b(static_cast<Eigen::Index>(g.basis.size()));
        for (std::size_t k = 0; k < g.basis.size(); ++k) {
          b[static_cast<Eigen::Index>(k)] = g.basis[k].Evaluate(x);
        }
        const double form = b.dot(g.gram * b);
        expansion += g.multiplier_of.Evaluate(x) * form;
        const double nb = b.squaredNorm();
        if (nb > 0.0) out.worst_psd = std::min(out.worst_psd, form / nb);
      }
      for (const auto& f : mc.multipliers) {
        expansion += f.equality.Evaluate(x) * f.multiplier.Evaluate(x);
      }
      out.worst_identity = std::max(out.worst_identity, std::abs(mc.target.Evaluate(x) - expansion));
      ++out.samples;
    }
  }
  if (!std::isfinite(out.worst_psd)) out.worst_psd = 0.0;
  out.ok = out.worst_identity <= identity_tol && out.worst_psd >= -psd_tol;
  return out;
}

double FiniteDifferenceAudit(const PolynomialGame& game, std::size_t n_points,
                             std::uint64_t seed, double step) {
  const std::size_t n = game.n_vars();
  Box box{std::vector<double>(n, -1.0), std::vector<double>(n, 1.0)};
  if (auto inferred = InferBoundingBox(game.domain())) box = *inferred;
  const std::vector<Polynomial> v = Pseudogradient(game);
  double worst = 0.0;
  for (std::size_t s = 0; s < n_points; ++s) {
    auto rng = SampleRng(seed, s);
    std::vector<double> x = SamplePoint(rng, box);
    for (std::size_t i = 0; i < game.n_players(); ++i) {
      const PlayerBlock& b = game.block(i);
      for (std::size_t k = 0; k < b.size; ++k) {
        const std::size_t var = b.offset + k;
        const double x0 = x[var];
        x[var] = x0 + step;
        const double up = game.payoff(i).Evaluate(x);
        x[var] = x0 - step;
        const double down = game.payoff(i).Evaluate(x);
        x[var] = x0;
        const double fd = (up - down) / (2.0 * step);
        worst = std::max(worst, std::abs(v[var].Evaluate(x) - fd));
      }
    }
  }
  return worst;
}

}  // namespace gamecert
