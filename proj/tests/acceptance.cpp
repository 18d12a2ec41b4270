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

// Prints one PASS/FAIL line per acceptance criterion and exits non-zero if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gamecert/efg.hpp"
#include "gamecert/game.hpp"
#include "gamecert/hierarchy.hpp"
#include "gamecert/io.hpp"
#include "gamecert/oracles.hpp"
#include "gamecert/projector.hpp"
#include "gamecert/sdp.hpp"
#include "gamecert/sos.hpp"
#include "test_util.hpp"

using namespace gamecert;
using namespace gamecert::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

class Stopwatch {
 public:
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Outcome CertifyCriterion(const char* name, int level, double expected, double tol,
                         CertStatus status, double budget) {
  const PolynomialGame g = LoadCorpusGame(name);
  Stopwatch sw;
  const CertResult r = CertifyMonotone(g, level);
  const double t = sw.Seconds();
  const bool ok = std::abs(r.lambda - expected) <= tol && r.status == status && t < budget;
  return {ok, "lambda=" + Fmt("%.6f", r.lambda) + " status=" + ToString(r.status) +
                  " time=" + Fmt("%.3fs", t)};
}

Outcome Criterion3() {
  ProjectionSpec spec;
  spec.reference = LoadCorpusGame("fig1");
  spec.level = 2;
  spec.zero_sum = true;
  spec.preserve_support = true;
  Stopwatch sw;
  const ProjectionResult r = Project(spec);
  const double t = sw.Seconds();
  if (!r.solved || !r.certificate) return {false, "projection not solved"};
  const double x1x2 = r.game.payoff(0).coefficient(Monomial{1, 1, 0});
  const bool ok = std::abs(r.distance - 10.0) <= 1e-3 && r.certificate->identity_residual <= 1e-6 &&
                  std::abs(x1x2) <= 1e-4 && t < 2.0;
  return {ok, "distance=" + Fmt("%.6f", r.distance) + " residual=" +
                  Fmt("%.2e", r.certificate->identity_residual) + " x1x2=" + Fmt("%.2e", x1x2) +
                  " time=" + Fmt("%.3fs", t)};
}

Outcome Criterion5() {
  ProjectionSpec spec;
  spec.reference = LoadCorpusGame("fig3");
  spec.zero_sum = true;
  spec.preserve_support = true;
  const int first = MinimalProjectionLevel(spec);
  std::string table;
  for (int level = first; level <= 8; ++level) {
    spec.level = level;
    Stopwatch sw;
    const ProjectionResult r = Project(spec);
    const double t = sw.Seconds();
    table += " l=" + std::to_string(level) + ":" + (r.solved ? Fmt("%.4f", r.distance) : "fail");
    if (r.solved && std::abs(r.distance - 49.0) <= 0.5 && t < 30.0) {
      return {true, "distance=" + Fmt("%.4f", r.distance) + " level=" + std::to_string(level) +
                        " time=" + Fmt("%.3fs", t) + (level == first ? "" : " table:" + table)};
    }
  }
  return {false, "table:" + table};
}

Outcome Criterion6() {
  const PolynomialGame g = LoadCorpusGame("deg8");
  const SdpProblem p = Compile(MonotoneProgram(g, 8)).sdp;
  std::stringstream first;
  WriteSdpa(p, first);
  const std::string text = first.str();
  std::stringstream in(text);
  const SdpProblem back = ReadSdpa(in);
  std::stringstream second;
  WriteSdpa(back, second);
  const bool ok = back == p && second.str() == text;
  return {ok, "rows=" + std::to_string(p.constraints.size()) + " blocks=" +
                  std::to_string(p.block_dims.size()) + " bytes=" + std::to_string(text.size())};
}

Outcome Criterion7() {
  double worst_coeff = 0.0, worst_eval = 0.0;
  std::mt19937_64 rng(kDefaultSeed);
  const std::size_t n1 = 3;
  const Polynomial x = Polynomial::Variable(1, 0);
  const Polynomial x1 = Polynomial::Variable(n1, 0), x2 = Polynomial::Variable(n1, 1),
                   y = Polynomial::Variable(n1, 2);
  const Polynomial u1 = 10.0 * x1 * x2 + 2.0 * x1 * y - 6.0 * x1 + 2.0 * x2 * y - 6.0 * x2 -
                        2.0 * y + Polynomial::Constant(n1, 1.0);
  const std::vector<std::pair<const char*, std::vector<Polynomial>>> cases = {
      {"driver", {-3.0 * x * x + 4.0 * x}}, {"fig1", {u1, -u1}}};
  for (const auto& [name, expected] : cases) {
    const EfgTree tree = EfgFromJson(ReadJsonFile(CorpusPath(std::string(name) + ".efg.json")));
    const EfgConversion c = EfgToGame(tree);
    for (std::size_t i = 0; i < expected.size(); ++i) {
      worst_coeff = std::max(worst_coeff, MaxCoefficientDistance(c.game.payoff(i), expected[i]));
    }
    std::gamma_distribution<double> gamma(1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
      BehavioralStrategy s;
      for (const auto& info : c.map.infosets) {
        std::vector<double> p(info.actions.size());
        double total = 0.0;
        for (auto& v : p) total += v = gamma(rng);
        for (auto& v : p) v /= total;
        s[info.id] = p;
      }
      const auto point = StrategyToPoint(c.map, s);
      const auto direct = ExpectedUtilityAt(tree, s);
      for (std::size_t i = 0; i < direct.size(); ++i) {
        worst_eval = std::max(worst_eval, std::abs(c.game.payoff(i).Evaluate(point) - direct[i]));
      }
    }
  }
  return {worst_coeff <= 1e-12 && worst_eval <= 1e-10,
          "coeff_err=" + Fmt("%.1e", worst_coeff) + " eval_err=" + Fmt("%.1e", worst_eval)};
}

Outcome Criterion8() {
  std::mt19937_64 rng(kDefaultSeed);
  int bad_monotone = 0, bad_bound = 0, bad_shift = 0, failed = 0;
  double worst_gap = INFINITY;
  for (int trial = 0; trial < 20; ++trial) {
    const PolynomialGame g = RandomBoxGame(rng);
    const int first = MinimalLevel(g, CertKind::kMonotone);
    const auto results = RunHierarchy(g, CertKind::kMonotone, first, first + 2);
    SampleOptions so;
    so.seed = kDefaultSeed + trial;
    const double sampled = SampleMaxEigenvalue(g, CertKind::kMonotone, so).max_eigenvalue;
    double previous = INFINITY;
    for (const auto& r : results) {
      if (!r.error.empty() || !std::isfinite(r.lambda)) {
        ++failed;
        continue;
      }
      if (r.lambda > previous + 1e-6) ++bad_monotone;
      if (r.lambda < sampled - 1e-6) ++bad_bound;
      worst_gap = std::min(worst_gap, r.lambda - sampled);
      previous = r.lambda;
    }
    const double eps = 0.1 * (1 + trial % 5);
    const CertResult shifted = CertifyMonotone(Regularize(g, eps), first);
    if (!(std::abs(shifted.lambda - (results[0].lambda - eps)) <= 1e-6)) ++bad_shift;
  }
  const bool ok = bad_monotone == 0 && bad_bound == 0 && bad_shift == 0 && failed == 0;
  return {ok, "games=20 unsolved=" + std::to_string(failed) + " nonmonotone=" +
                  std::to_string(bad_monotone) + " below_sample=" + std::to_string(bad_bound) +
                  " shift_mismatch=" + std::to_string(bad_shift) +
                  " min(lambda-sampled)=" + Fmt("%.2e", worst_gap)};
}

Outcome Criterion9() {
  std::mt19937_64 rng(kDefaultSeed);
  int bad_random = 0, bad_eig = 0, bad_probe = 0;
  double worst_gap = 0.0, worst_eig = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const SdpSolution s = SolveSdp(RandomFeasibleSdp(rng));
    if (s.status != SdpStatus::kOptimal || s.relative_gap > 1e-7) ++bad_random;
    worst_gap = std::max(worst_gap, s.relative_gap);
  }
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::MatrixXd a = RandomSymmetric(rng, 1 + trial % 12);
    const SdpSolution s = SolveSdp(MaxEigenvalueSdp(a));
    const double err = std::abs(-s.primal_objective - JacobiMaxEigenvalue(a));
    worst_eig = std::max(worst_eig, err);
    if (s.status != SdpStatus::kOptimal || err > 1e-6) ++bad_eig;
  }
  {
    SdpProblem p;
    p.block_dims = {2};
    p.constraints.push_back({{{0, 0, 0, 1.0}, {0, 1, 1, 1.0}}, {}, -1.0, Relation::kEqual});
    if (SolveSdp(p).status != SdpStatus::kPrimalInfeasible) ++bad_probe;
    SdpProblem q;
    q.block_dims = {2};
    q.objective = {{0, 1, 1, -1.0}};
    q.constraints.push_back({{{0, 0, 0, 1.0}}, {}, 1.0, Relation::kEqual});
    if (SolveSdp(q).status != SdpStatus::kDualInfeasible) ++bad_probe;
  }
  return {bad_random == 0 && bad_eig == 0 && bad_probe == 0,
          "random_fail=" + std::to_string(bad_random) + " max_gap=" + Fmt("%.1e", worst_gap) +
              " eig_fail=" + std::to_string(bad_eig) + " max_eig_err=" + Fmt("%.1e", worst_eig) +
              " probe_fail=" + std::to_string(bad_probe)};
}

// Smallest eps with certify_monotone(Regularize(g, 2 eps)) certified.
double BisectGauge(const PolynomialGame& g, int level) {
  double lo = 0.0, hi = 1.0;
  auto certified = [&](double eps) {
    const CertStatus s = CertifyMonotone(Regularize(g, 2.0 * eps), level).status;
    return s == CertStatus::kCertified || s == CertStatus::kStrictlyCertified;
  };
  while (!certified(hi)) hi *= 2.0;
  while (hi - lo > 1e-5) {
    const double mid = 0.5 * (lo + hi);
    (certified(mid) ? hi : lo) = mid;
  }
  return hi;
}

Outcome Criterion10() {
  const PolynomialGame fig1 = LoadCorpusGame("fig1");
  const Polynomial x = Polynomial::Variable(1, 0);
  const PolynomialGame quad({1}, {3.0 * x * x - 4.0 * x}, UnitBox(1));
  const GaugeResult a = Gauge(fig1, 2), b = Gauge(quad, 2);
  const double ba = BisectGauge(fig1, 2), bb = BisectGauge(quad, 2);
  const bool ok = a.solved && b.solved && std::abs(a.epsilon - 5.0) <= 1e-3 &&
                  std::abs(b.epsilon - 3.0) <= 1e-3 && std::abs(ba - a.epsilon) <= 1e-3 &&
                  std::abs(bb - b.epsilon) <= 1e-3;
  return {ok, "fig1=" + Fmt("%.6f", a.epsilon) + " (bisection " + Fmt("%.5f", ba) + ") quad=" +
                  Fmt("%.6f", b.epsilon) + " (bisection " + Fmt("%.5f", bb) + ")"};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria = {
      [] { return CertifyCriterion("driver", 2, -6.0, 1e-4, CertStatus::kStrictlyCertified, 0.5); },
      [] { return CertifyCriterion("fig1", 2, 10.0, 1e-3, CertStatus::kInconclusive, 1.0); },
      Criterion3,
      [] { return CertifyCriterion("deg4", 4, -1.0, 1e-2, CertStatus::kStrictlyCertified, 60.0); },
      Criterion5,
      Criterion6,
      Criterion7,
      Criterion8,
      Criterion9,
      Criterion10,
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %zu: %s  %s\n", k + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
