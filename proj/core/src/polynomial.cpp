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

#include "gamecert/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gamecert {

Monomial::Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) {
    if (e < 0) throw std::invalid_argument("Monomial: negative exponent");
  }
}

Monomial::Monomial(std::initializer_list<int> exponents)
    : Monomial(std::vector<int>(exponents)) {}

Monomial Monomial::One(std::size_t n_vars) {
  return Monomial(std::vector<int>(n_vars, 0));
}

Monomial Monomial::Variable(std::size_t n_vars, std::size_t index, int power) {
  if (index >= n_vars) throw std::out_of_range("Monomial::Variable: index");
  std::vector<int> e(n_vars, 0);
  e[index] = power;
  return Monomial(std::move(e));
}

int Monomial::degree() const {
  return std::accumulate(exps_.begin(), exps_.end(), 0);
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (other.exps_.size() != exps_.size()) {
    throw std::invalid_argument("Monomial product: variable-count mismatch");
  }
  Monomial out = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] += other.exps_[i];
  return out;
}

Monomial Monomial::Embedded(std::size_t n_vars, std::size_t offset) const {
  if (offset + exps_.size() > n_vars) {
    throw std::invalid_argument("Monomial::Embedded: target space too small");
  }
  std::vector<int> e(n_vars, 0);
  std::copy(exps_.begin(), exps_.end(), e.begin() + static_cast<long>(offset));
  return Monomial(std::move(e));
}

double Monomial::Evaluate(std::span<const double> point) const {
  double v = 1.0;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    for (int k = 0; k < exps_[i]; ++k) v *= point[i];
  }
  return v;
}

std::string Monomial::ToString() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (!first) os << '*';
    os << 'x' << i;
    if (exps_[i] > 1) os << '^' << exps_[i];
    first = false;
  }
  return first ? "1" : os.str();
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da < db;
  // Same degree: a precedes b when a > b in grevlex, i.e. the last nonzero
  // entry of a - b is negative.
  for (std::size_t i = a.n_vars(); i-- > 0;) {
    const int diff = a[i] - b[i];
    if (diff != 0) return diff < 0;
  }
  return false;
}

std::size_t MonomialHash::operator()(const Monomial& m) const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int e : m.exponents()) {
    h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

void EnumerateExactDegree(std::size_t n_vars, int degree, std::size_t pos,
                          std::vector<int>& current,
                          std::vector<Monomial>& out) {
  if (pos + 1 == n_vars) {
    current[pos] = degree;
    out.emplace_back(current);
    current[pos] = 0;
    return;
  }
  for (int e = degree; e >= 0; --e) {
    current[pos] = e;
    EnumerateExactDegree(n_vars, degree - e, pos + 1, current, out);
  }
  current[pos] = 0;
}

}  // namespace

std::vector<Monomial> MonomialsUpToDegree(std::size_t n_vars, int max_degree) {
  std::vector<Monomial> out;
  if (max_degree < 0) return out;
  if (n_vars == 0) {
    out.emplace_back(std::vector<int>{});
    return out;
  }
  std::vector<int> current(n_vars, 0);
  for (int d = 0; d <= max_degree; ++d) {
    const std::size_t start = out.size();
    EnumerateExactDegree(n_vars, d, 0, current, out);
    std::sort(out.begin() + static_cast<long>(start), out.end(),
              MonomialOrder{});
  }
  return out;
}

// ---------------------------------------------------------------------------

Polynomial::Polynomial(std::size_t n_vars) : n_vars_(n_vars) {}

Polynomial::Polynomial(std::size_t n_vars,
                       std::vector<std::pair<Monomial, double>> terms)
    : n_vars_(n_vars) {
  for (auto& [m, c] : terms) AddTerm(m, c);
}

Polynomial Polynomial::Constant(std::size_t n_vars, double value) {
  Polynomial p(n_vars);
  p.AddTerm(Monomial::One(n_vars), value);
  return p;
}

Polynomial Polynomial::Variable(std::size_t n_vars, std::size_t index,
                                double coeff) {
  Polynomial p(n_vars);
  p.AddTerm(Monomial::Variable(n_vars, index), coeff);
  return p;
}

Polynomial Polynomial::FromMonomial(const Monomial& m, double coeff) {
  Polynomial p(m.n_vars());
  p.AddTerm(m, coeff);
  return p;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

double Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

double Polynomial::max_abs_coefficient() const {
  double v = 0.0;
  for (const auto& [m, c] : terms_) v = std::max(v, std::abs(c));
  return v;
}

void Polynomial::CheckSameVars(const Polynomial& other, const char* op) const {
  if (other.n_vars_ != n_vars_) {
    throw std::invalid_argument(std::string("Polynomial ") + op +
                                ": variable-count mismatch (" +
                                std::to_string(n_vars_) + " vs " +
                                std::to_string(other.n_vars_) + ")");
  }
}

void Polynomial::AddTerm(const Monomial& m, double coeff) {
  if (m.n_vars() != n_vars_) {
    throw std::invalid_argument("Polynomial::AddTerm: monomial has " +
                                std::to_string(m.n_vars()) +
                                " variables, expected " +
                                std::to_string(n_vars_));
  }
  if (coeff == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(m, coeff);
  if (!inserted) it->second += coeff;
  if (std::abs(it->second) < kCanonicalThreshold) terms_.erase(it);
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial out = *this;
  out += other;
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  Polynomial out = *this;
  out -= other;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  CheckSameVars(other, "add");
  for (const auto& [m, c] : other.terms_) AddTerm(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  CheckSameVars(other, "subtract");
  for (const auto& [m, c] : other.terms_) AddTerm(m, -c);
  return *this;
}

Polynomial Polynomial::operator-() const { return *this * -1.0; }

Polynomial Polynomial::operator*(const Polynomial& other) const {
  CheckSameVars(other, "multiply");
  // Accumulate unthresholded, then canonicalize once.
  std::map<Monomial, double, MonomialOrder> acc;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) acc[ma * mb] += ca * cb;
  }
  Polynomial out(n_vars_);
  for (auto& [m, c] : acc) {
    if (std::abs(c) >= kCanonicalThreshold) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

Polynomial Polynomial::operator*(double scalar) const {
  Polynomial out(n_vars_);
  for (const auto& [m, c] : terms_) {
    const double v = c * scalar;
    if (std::abs(v) >= kCanonicalThreshold) out.terms_.emplace_hint(out.terms_.end(), m, v);
  }
  return out;
}

Polynomial Polynomial::Differentiate(std::size_t var_index) const {
  if (var_index >= n_vars_) {
    throw std::out_of_range("Polynomial::Differentiate: variable index " +
                            std::to_string(var_index) + " out of range");
  }
  Polynomial out(n_vars_);
  for (const auto& [m, c] : terms_) {
    const int e = m[var_index];
    if (e == 0) continue;
    std::vector<int> exps = m.exponents();
    exps[var_index] = e - 1;
    out.AddTerm(Monomial(std::move(exps)), c * e);
  }
  return out;
}

double Polynomial::Evaluate(std::span<const double> point) const {
  if (point.size() != n_vars_) {
    throw std::invalid_argument("Polynomial::Evaluate: point has dimension " +
                                std::to_string(point.size()) + ", expected " +
                                std::to_string(n_vars_));
  }
  double v = 0.0;
  for (const auto& [m, c] : terms_) v += c * m.Evaluate(point);
  return v;
}

Polynomial Polynomial::SubstituteAffine(std::size_t var_index,
                                        const Polynomial& replacement) const {
  if (var_index >= n_vars_) {
    throw std::out_of_range("Polynomial::SubstituteAffine: variable index");
  }
  CheckSameVars(replacement, "substitute");
  if (replacement.degree() > 1) {
    throw std::invalid_argument(
        "Polynomial::SubstituteAffine: replacement must have degree <= 1");
  }
  // Powers of the replacement, computed on demand.
  std::vector<Polynomial> powers{Polynomial::Constant(n_vars_, 1.0)};
  Polynomial out(n_vars_);
  for (const auto& [m, c] : terms_) {
    const int e = m[var_index];
    while (static_cast<int>(powers.size()) <= e) {
      powers.push_back(powers.back() * replacement);
    }
    std::vector<int> exps = m.exponents();
    exps[var_index] = 0;
    out += Polynomial::FromMonomial(Monomial(std::move(exps)), c) * powers[e];
  }
  return out;
}

Polynomial Polynomial::Embedded(std::size_t n_vars, std::size_t offset) const {
  Polynomial out(n_vars);
  for (const auto& [m, c] : terms_) out.AddTerm(m.Embedded(n_vars, offset), c);
  return out;
}

std::string Polynomial::ToString() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    os << std::abs(c);
    if (m.degree() > 0) os << '*' << m.ToString();
    first = false;
  }
  return os.str();
}

double MaxCoefficientDistance(const Polynomial& p, const Polynomial& q) {
  double d = 0.0;
  for (const auto& [m, c] : p.terms()) d = std::max(d, std::abs(c - q.coefficient(m)));
  for (const auto& [m, c] : q.terms()) {
    if (p.terms().count(m) == 0) d = std::max(d, std::abs(c));
  }
  return d;
}

// ---------------------------------------------------------------------------

PolyMatrix::PolyMatrix(std::size_t dim, std::size_t n_vars)
    : dim_(dim), n_vars_(n_vars), entries_(dim * dim, Polynomial(n_vars)) {}

bool PolyMatrix::IsSymmetric() const {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) {
      if (!(at(i, j) == at(j, i))) return false;
    }
  }
  return true;
}

int PolyMatrix::degree() const {
  int d = 0;
  for (const auto& p : entries_) d = std::max(d, p.degree());
  return d;
}

std::vector<double> PolyMatrix::Evaluate(std::span<const double> point) const {
  std::vector<double> out(dim_ * dim_);
  for (std::size_t k = 0; k < entries_.size(); ++k) out[k] = entries_[k].Evaluate(point);
  return out;
}

}  // namespace gamecert
