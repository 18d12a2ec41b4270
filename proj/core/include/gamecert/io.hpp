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

#ifndef GAMECERT_IO_HPP_
#define GAMECERT_IO_HPP_

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "gamecert/efg.hpp"
#include "gamecert/game.hpp"
#include "gamecert/hierarchy.hpp"
#include "gamecert/polynomial.hpp"
#include "gamecert/projector.hpp"
#include "gamecert/sos.hpp"

namespace gamecert {

// JSON encodings of the library's data. Readers validate shape and throw
// FormatError with a JSON-pointer-like location.
//
//   Polynomial: {"n_vars": n, "terms": [{"exps": [e1, ..., en], "coeff": c}, ...]}
//   Game:       {"players": [{"m": m_i}, ...], "payoffs": [Polynomial, ...],
//                "domain": {"ineq": [Polynomial, ...], "eq": [Polynomial, ...]}}
//   EFG:        {"players": n, "root": node}, node = {"owner": int | "chance" |
//               "terminal", "infoset": id, "actions": [...], "chance_probs":
//               [...], "children": [...], "payoffs": [...]}

using nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json PolynomialToJson(const Polynomial& p);
Polynomial PolynomialFromJson(const json& j, const std::string& where = "");

json GameToJson(const PolynomialGame& game);
PolynomialGame GameFromJson(const json& j);

json EfgToJson(const EfgTree& tree);
EfgTree EfgFromJson(const json& j);
json InfosetMapToJson(const InfosetVariableMap& map);

json SolverStatsToJson(const SolverStats& s);
// Gram matrices are included only when `full` is set; they can be large.
json CertificateToJson(const Certificate& c, bool full);
json CertResultToJson(const CertResult& r, bool full_certificate = false);
json ProjectionResultToJson(const ProjectionResult& r);
json GaugeResultToJson(const GaugeResult& r);

// Library version, e.g. "0.1.0".
const char* LibraryVersion();

// NaN and infinities become null.
json NumberOrNull(double v);

json ReadJsonFile(const std::string& path);
// Two-space indentation and a trailing newline; output is deterministic.
void WriteJsonFile(const std::string& path, const json& j);

}  // namespace gamecert

#endif  // GAMECERT_IO_HPP_
