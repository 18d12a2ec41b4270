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

#ifndef GAMECERT_SDP_HPP_
#define GAMECERT_SDP_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace gamecert {

// Problem form (minimization):
//
//   minimize    sum_k <C_k, X_k> + c^T f
//   subject to  sum_k <A_ik, X_k> + a_i^T f  (= or <=)  b_i,   i = 1..m
//               X_k PSD,  f free.
//
// Block matrices are symmetric and stored sparsely by their upper triangle:
// an entry (row, col, v) with row < col stands for v at both (row, col) and
// (col, row).

enum class Relation { kEqual, kLessEqual };

struct BlockEntry {
  int block = 0;
  int row = 0;
  int col = 0;
  double value = 0.0;

  friend bool operator==(const BlockEntry&, const BlockEntry&) = default;
};

struct SdpConstraint {
  std::vector<BlockEntry> entries;
  std::vector<std::pair<int, double>> free_coeffs;
  double rhs = 0.0;
  Relation relation = Relation::kEqual;

  friend bool operator==(const SdpConstraint&, const SdpConstraint&) = default;
};

struct SdpProblem {
  std::vector<int> block_dims;
  int n_free = 0;
  std::vector<BlockEntry> objective;
  std::vector<double> free_objective;  // size n_free (missing entries are 0)
  std::vector<SdpConstraint> constraints;

  // Throws std::invalid_argument on dimension mismatches or non-finite data.
  void Validate() const;

  friend bool operator==(const SdpProblem&, const SdpProblem&) = default;
};

enum class SdpStatus {
  kOptimal,
  kPrimalInfeasible,
  kDualInfeasible,
  kIterationLimit,
  kNumericalFailure,
};

const char* ToString(SdpStatus status);

struct SdpOptions {
  double feasibility_tol = 1e-8;
  double gap_tol = 1e-8;
  int max_iterations = 200;
  // A normalized infeasibility ray below this residual is accepted.
  double infeasibility_tol = 1e-8;
  // Fraction of the distance to the cone boundary taken per step.
  double step_fraction = 0.95;
  bool record_trace = false;
};

struct IterateRecord {
  int iteration = 0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  double mu = 0.0;
  double primal_step = 0.0;
  double dual_step = 0.0;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::kNumericalFailure;
  std::vector<Eigen::MatrixXd> primal_blocks;  // X_k
  std::vector<Eigen::MatrixXd> dual_slacks;    // S_k
  Eigen::VectorXd free_values;                 // f
  Eigen::VectorXd duals;                       // y, one per constraint
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_infeasibility = 0.0;  // relative
  double dual_infeasibility = 0.0;    // relative
  double relative_gap = 0.0;
  int iterations = 0;
  std::string message;
  std::vector<IterateRecord> trace;
};

// Primal-dual path-following interior-point method (NT direction, Mehrotra
// predictor-corrector, dense Schur complement, free variables through an
// augmented system). Deterministic for identical input and options.
SdpSolution SolveSdp(const SdpProblem& problem, const SdpOptions& options = {});

// Relative residuals of a candidate primal point, useful for audits.
double PrimalResidual(const SdpProblem& problem,
                      const std::vector<Eigen::MatrixXd>& blocks,
                      const Eigen::VectorXd& free_values);

// --- SDPA sparse format -----------------------------------------------------

class SdpaParseError : public std::runtime_error {
 public:
  SdpaParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Writes SDPA sparse ("dat-s") text. Our primal form is SDPA's dual form:
// F0 = -C, F_i = A_i, c = b. Free variables become a diagonal block of
// (f+, f-) pairs; <= rows get a nonnegative slack in a trailing diagonal
// block. Both blocks are announced in leading comment lines so the file
// re-imports to the identical problem. Values use 17 significant digits.
void WriteSdpa(const SdpProblem& problem, std::ostream& out);
void ExportSdpa(const SdpProblem& problem, const std::filesystem::path& path);

// Parses SDPA sparse text. Diagonal blocks not announced as free-split or
// slack blocks become runs of 1x1 PSD blocks.
SdpProblem ReadSdpa(std::istream& in);
SdpProblem ImportSdpa(const std::filesystem::path& path);

}  // namespace gamecert

#endif  // GAMECERT_SDP_HPP_
