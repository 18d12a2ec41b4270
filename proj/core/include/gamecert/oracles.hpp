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

#ifndef GAMECERT_ORACLES_HPP_
#define GAMECERT_ORACLES_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gamecert/game.hpp"
#include "gamecert/hierarchy.hpp"
#include "gamecert/sos.hpp"

namespace gamecert {

// Brute-force checks that share no code with the SDP path beyond polynomial
// evaluation.

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

// Generator for sample `index` of a stream, independent of how samples are
// split across threads.
std::mt19937_64 SampleRng(std::uint64_t seed, std::uint64_t index);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
// Stops when the off-diagonal Frobenius norm is <= tol * ||A||_F.
std::vector<double> JacobiEigenvalues(const Eigen::MatrixXd& a, double tol = 1e-12,
                                      int max_sweeps = 100);
double JacobiMaxEigenvalue(const Eigen::MatrixXd& a);

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;
};

// Bounds from interval propagation over affine constraints and from ball-like
// constraints c - sum a_k x_k^2 >= 0 (or = 0). nullopt if some variable stays
// unbounded.
std::optional<Box> InferBoundingBox(const SemialgebraicSet& set);

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SampleReport {
  std::size_t samples = 0;   // accepted points
  std::size_t attempts = 0;  // candidates drawn
  double max_eigenvalue = 0.0;
  std::vector<double> argmax;
  double acceptance_rate = 0.0;
};

struct SampleOptions {
  std::size_t n_samples = 10000;
  std::optional<Box> box;  // inferred from the domain when absent
  std::uint64_t seed = kDefaultSeed;
  int threads = 1;
  double membership_tol = 1e-12;
  double min_acceptance = 1e-4;
};

// Max over sampled x in X of lambda_max(J_S(x)) (monotone) or of
// max_i lambda_max(H_i(x)) (concave). A lower bound on the true maximum.
// Throws OracleError when no box is available or acceptance is too low.
SampleReport SampleMaxEigenvalue(const PolynomialGame& game, CertKind kind,
                                 const SampleOptions& options = {});

struct SampledCheck {
  bool ok = false;
  double worst_identity = 0.0;  // max |target - expansion| over samples
  double worst_psd = 0.0;       // min over samples of b^T Q b / |b|^2
  std::size_t samples = 0;
};

// Evaluates every membership identity of the certificate at random points of
// [-1, 1]^n, and each Gram form at the basis vectors there.
SampledCheck CheckCertificateSampled(const Certificate& cert, std::size_t n_samples,
                                     std::uint64_t seed = kDefaultSeed,
                                     double identity_tol = 1e-5, double psd_tol = 1e-7);

// max over sampled points of ||v(x) - central-difference gradient||_inf.
double FiniteDifferenceAudit(const PolynomialGame& game, std::size_t n_points,
                             std::uint64_t seed = kDefaultSeed, double step = 1e-6);

}  // namespace gamecert

#endif  // GAMECERT_ORACLES_HPP_
