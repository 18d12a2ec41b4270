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

#ifndef GAMECERT_POLYNOMIAL_HPP_
#define GAMECERT_POLYNOMIAL_HPP_

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gamecert {

// Coefficients with magnitude below this are dropped after every arithmetic
// operation.
inline constexpr double kCanonicalThreshold = 1e-14;

// A monomial over a fixed number of variables, stored as an exponent vector.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents);
  Monomial(std::initializer_list<int> exponents);

  static Monomial One(std::size_t n_vars);
  static Monomial Variable(std::size_t n_vars, std::size_t index, int power = 1);

  std::size_t n_vars() const { return exps_.size(); }
  int degree() const;
  int operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<int>& exponents() const { return exps_; }

  Monomial operator*(const Monomial& other) const;
  // Pads with zero exponents up to `n_vars`, placing the existing exponents
  // starting at `offset`.
  Monomial Embedded(std::size_t n_vars, std::size_t offset = 0) const;

  // x^exps evaluated at `point`.
  double Evaluate(std::span<const double> point) const;

  // Human-readable form such as "x0^2*x3"; "1" for the unit monomial.
  std::string ToString() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<int> exps_;
};

// Strict weak order used for every enumerated monomial basis: ascending total
// degree, and within one degree, descending graded reverse lexicographic order
// (x0 > x1 > ...). The degree-2 basis in two variables is therefore
// 1, x0, x1, x0^2, x0*x1, x1^2.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const;
};

// All monomials in `n_vars` variables of total degree <= max_degree, in
// MonomialOrder. Empty when max_degree < 0.
std::vector<Monomial> MonomialsUpToDegree(std::size_t n_vars, int max_degree);

// Sparse multivariate polynomial with real coefficients. Immutable value type:
// every operation returns a new canonical polynomial.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, double, MonomialOrder>;

  Polynomial() = default;
  explicit Polynomial(std::size_t n_vars);
  Polynomial(std::size_t n_vars, std::vector<std::pair<Monomial, double>> terms);

  static Polynomial Constant(std::size_t n_vars, double value);
  static Polynomial Variable(std::size_t n_vars, std::size_t index,
                             double coeff = 1.0);
  static Polynomial FromMonomial(const Monomial& m, double coeff = 1.0);

  std::size_t n_vars() const { return n_vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }
  // Zero polynomial has degree 0.
  int degree() const;
  double coefficient(const Monomial& m) const;
  double max_abs_coefficient() const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(double scalar) const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);

  // Adds coeff * m in place (canonicalizing that single term).
  void AddTerm(const Monomial& m, double coeff);

  Polynomial Differentiate(std::size_t var_index) const;
  double Evaluate(std::span<const double> point) const;

  // Replaces variable `var_index` with an affine `replacement` and expands.
  Polynomial SubstituteAffine(std::size_t var_index,
                              const Polynomial& replacement) const;

  // Re-expresses the polynomial in `n_vars` variables, moving variable k to
  // k + offset.
  Polynomial Embedded(std::size_t n_vars, std::size_t offset = 0) const;

  std::string ToString() const;

  // Term-by-term equality of the canonical forms.
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void CheckSameVars(const Polynomial& other, const char* op) const;

  std::size_t n_vars_ = 0;
  TermMap terms_;
};

inline Polynomial operator*(double scalar, const Polynomial& p) {
  return p * scalar;
}

// max_k |p_k - q_k| over the union of supports.
double MaxCoefficientDistance(const Polynomial& p, const Polynomial& q);

// Square matrix of polynomials, row-major.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t dim, std::size_t n_vars);

  std::size_t dim() const { return dim_; }
  std::size_t n_vars() const { return n_vars_; }
  const Polynomial& at(std::size_t i, std::size_t j) const {
    return entries_[i * dim_ + j];
  }
  Polynomial& at(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }

  // Entry (i, j) equals entry (j, i) term by term.
  bool IsSymmetric() const;
  int degree() const;

  // Numeric evaluation, row-major dim x dim.
  std::vector<double> Evaluate(std::span<const double> point) const;

 private:
  std::size_t dim_ = 0;
  std::size_t n_vars_ = 0;
  std::vector<Polynomial> entries_;
};

}  // namespace gamecert

#endif  // GAMECERT_POLYNOMIAL_HPP_
