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

#include "gamecert/io.hpp"

#include <cmath>
#include <fstream>
#include <utility>
#include <vector>

namespace gamecert {

namespace {

[[noreturn]] void Fail(const std::string& where, const std::string& what) {
  throw FormatError((where.empty() ? std::string("/") : where) + ": " + what);
}

const json& Field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) Fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) Fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

const json& Array(const json& j, const std::string& where) {
  if (!j.is_array()) Fail(where, "expected an array");
  return j;
}

double Number(const json& j, const std::string& where) {
  if (!j.is_number()) Fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) Fail(where, "non-finite number");
  return v;
}

std::size_t Count(const json& j, const std::string& where) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) Fail(where, "expected an integer");
  const long long v = j.get<long long>();
  if (v < 0) Fail(where, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

std::vector<Polynomial> PolyList(const json& j, std::size_t n_vars, const std::string& where) {
  std::vector<Polynomial> out;
  for (std::size_t k = 0; k < Array(j, where).size(); ++k) {
    const std::string w = where + "/" + std::to_string(k);
    Polynomial p = PolynomialFromJson(j[k], w);
    if (p.n_vars() != n_vars) {
      Fail(w, "polynomial has n_vars " + std::to_string(p.n_vars()) + ", expected " +
                  std::to_string(n_vars));
    }
    out.push_back(std::move(p));
  }
  return out;
}

json MatrixToJson(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

json NodeToJson(const EfgNode& node) {
  json j = json::object();
  switch (node.kind) {
    case EfgNode::Kind::kTerminal:
      j["owner"] = "terminal";
      j["payoffs"] = node.payoffs;
      return j;
    case EfgNode::Kind::kChance:
      j["owner"] = "chance";
      j["chance_probs"] = node.chance_probs;
      break;
    case EfgNode::Kind::kDecision:
      j["owner"] = node.owner;
      j["infoset"] = node.infoset;
      break;
  }
  j["actions"] = node.actions;
  json children = json::array();
  for (const auto& c : node.children) children.push_back(NodeToJson(c));
  j["children"] = std::move(children);
  return j;
}

EfgNode NodeFromJson(const json& j, const std::string& where) {
  EfgNode node;
  const json& owner = Field(j, "owner", where);
  if (owner.is_string()) {
    const auto s = owner.get<std::string>();
    if (s == "terminal") {
      node.kind = EfgNode::Kind::kTerminal;
    } else if (s == "chance") {
      node.kind = EfgNode::Kind::kChance;
    } else {
      Fail(where + "/owner", "expected a player index, \"chance\" or \"terminal\"");
    }
  } else {
    node.kind = EfgNode::Kind::kDecision;
    node.owner = Count(owner, where + "/owner");
  }

  if (node.kind == EfgNode::Kind::kTerminal) {
    const json& pay = Array(Field(j, "payoffs", where), where + "/payoffs");
    for (std::size_t k = 0; k < pay.size(); ++k) {
      node.payoffs.push_back(Number(pay[k], where + "/payoffs/" + std::to_string(k)));
    }
    return node;
  }
  if (node.kind == EfgNode::Kind::kDecision) {
    const json& id = Field(j, "infoset", where);
    if (id.is_string()) {
      node.infoset = id.get<std::string>();
    } else if (id.is_number_integer()) {
      node.infoset = std::to_string(id.get<long long>());
    } else {
      Fail(where + "/infoset", "expected a string or integer id");
    }
  }
  const json& actions = Array(Field(j, "actions", where), where + "/actions");
  for (std::size_t k = 0; k < actions.size(); ++k) {
    if (actions[k].is_string()) {
      node.actions.push_back(actions[k].get<std::string>());
    } else {
      node.actions.push_back(actions[k].dump());
    }
  }
  if (node.kind == EfgNode::Kind::kChance) {
    const json& probs = Array(Field(j, "chance_probs", where), where + "/chance_probs");
    for (std::size_t k = 0; k < probs.size(); ++k) {
      node.chance_probs.push_back(Number(probs[k], where + "/chance_probs/" + std::to_string(k)));
    }
  }
  const json& children = Array(Field(j, "children", where), where + "/children");
  for (std::size_t k = 0; k < children.size(); ++k) {
    node.children.push_back(NodeFromJson(children[k], where + "/children/" + std::to_string(k)));
  }
  return node;
}

}  // namespace

const char* LibraryVersion() { return GAMECERT_VERSION; }

json NumberOrNull(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json PolynomialToJson(const Polynomial& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    terms.push_back({{"exps", m.exponents()}, {"coeff", c}});
  }
  return {{"n_vars", p.n_vars()}, {"terms", std::move(terms)}};
}

Polynomial PolynomialFromJson(const json& j, const std::string& where) {
  const std::size_t n = Count(Field(j, "n_vars", where), where + "/n_vars");
  const json& terms = Array(Field(j, "terms", where), where + "/terms");
  Polynomial p(n);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string w = where + "/terms/" + std::to_string(k);
    const json& exps = Array(Field(terms[k], "exps", w), w + "/exps");
    if (exps.size() != n) {
      Fail(w + "/exps", "has " + std::to_string(exps.size()) + " exponents, expected " +
                            std::to_string(n));
    }
    std::vector<int> e;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t v = Count(exps[i], w + "/exps/" + std::to_string(i));
      if (v > 1000) Fail(w + "/exps/" + std::to_string(i), "exponent too large");
      e.push_back(static_cast<int>(v));
    }
    p.AddTerm(Monomial(std::move(e)), Number(Field(terms[k], "coeff", w), w + "/coeff"));
  }
  return p;
}

json GameToJson(const PolynomialGame& game) {
  json players = json::array();
  for (std::size_t m : game.block_sizes()) players.push_back({{"m", m}});
  json payoffs = json::array();
  for (const auto& u : game.payoffs()) payoffs.push_back(PolynomialToJson(u));
  json ineq = json::array();
  for (const auto& g : game.domain().inequalities) ineq.push_back(PolynomialToJson(g));
  json eq = json::array();
  for (const auto& h : game.domain().equalities) eq.push_back(PolynomialToJson(h));
  return {{"players", std::move(players)},
          {"payoffs", std::move(payoffs)},
          {"domain", {{"ineq", std::move(ineq)}, {"eq", std::move(eq)}}}};
}

PolynomialGame GameFromJson(const json& j) {
  const json& players = Array(Field(j, "players", ""), "/players");
  std::vector<std::size_t> sizes;
  std::size_t n = 0;
  for (std::size_t k = 0; k < players.size(); ++k) {
    const std::string w = "/players/" + std::to_string(k);
    sizes.push_back(Count(Field(players[k], "m", w), w + "/m"));
    n += sizes.back();
  }
  if (sizes.empty()) Fail("/players", "game has no players");
  std::vector<Polynomial> payoffs = PolyList(Field(j, "payoffs", ""), n, "/payoffs");
  if (payoffs.size() != sizes.size()) {
    Fail("/payoffs", std::to_string(payoffs.size()) + " payoffs for " +
                         std::to_string(sizes.size()) + " players");
  }
  SemialgebraicSet domain{n, {}, {}};
  if (j.contains("domain")) {
    const json& d = j["domain"];
    if (!d.is_object()) Fail("/domain", "expected an object");
    if (d.contains("ineq")) domain.inequalities = PolyList(d["ineq"], n, "/domain/ineq");
    if (d.contains("eq")) domain.equalities = PolyList(d["eq"], n, "/domain/eq");
  }
  try {
    return PolynomialGame(std::move(sizes), std::move(payoffs), std::move(domain));
  } catch (const std::invalid_argument& e) {
    Fail("", e.what());
  }
}

json EfgToJson(const EfgTree& tree) {
  return {{"players", tree.n_players}, {"root", NodeToJson(tree.root)}};
}

EfgTree EfgFromJson(const json& j) {
  EfgTree tree;
  tree.n_players = Count(Field(j, "players", ""), "/players");
  tree.root = NodeFromJson(Field(j, "root", ""), "/root");
  return tree;
}

json InfosetMapToJson(const InfosetVariableMap& map) {
  json out = json::array();
  for (const auto& info : map.infosets) {
    out.push_back({{"infoset", info.id},
                   {"player", info.player},
                   {"actions", info.actions},
                   {"variables", info.variables}});
  }
  return out;
}

json SolverStatsToJson(const SolverStats& s) {
  return {{"status", s.status},
          {"iterations", s.iterations},
          {"constraints", s.constraints},
          {"free_variables", s.free_variables},
          {"block_dims", s.block_dims},
          {"primal_infeasibility", NumberOrNull(s.primal_infeasibility)},
          {"dual_infeasibility", NumberOrNull(s.dual_infeasibility)},
          {"relative_gap", NumberOrNull(s.relative_gap)}};
}

json CertificateToJson(const Certificate& c, bool full) {
  json members = json::array();
  for (const auto& m : c.memberships) {
    json mj = {{"label", m.label},
               {"level", m.level},
               {"identity_residual", NumberOrNull(m.identity_residual)}};
    json grams = json::array();
    for (const auto& g : m.grams) {
      json gj = {{"multiplier_of", PolynomialToJson(g.multiplier_of)},
                 {"size", g.basis.size()},
                 {"min_eigenvalue", NumberOrNull(g.min_eigenvalue)}};
      if (full) {
        json basis = json::array();
        for (const auto& b : g.basis) basis.push_back(b.exponents());
        gj["basis"] = std::move(basis);
        gj["gram"] = MatrixToJson(g.gram);
      }
      grams.push_back(std::move(gj));
    }
    mj["grams"] = std::move(grams);
    if (full) {
      mj["target"] = PolynomialToJson(m.target);
      json mults = json::array();
      for (const auto& f : m.multipliers) {
        mults.push_back({{"equality", PolynomialToJson(f.equality)},
                         {"multiplier", PolynomialToJson(f.multiplier)}});
      }
      mj["multipliers"] = std::move(mults);
    }
    members.push_back(std::move(mj));
  }
  return {{"level", c.level},
          {"optimum", NumberOrNull(c.optimum)},
          {"identity_residual", NumberOrNull(c.identity_residual)},
          {"min_gram_eigenvalue", NumberOrNull(c.min_gram_eigenvalue)},
          {"memberships", std::move(members)}};
}

json CertResultToJson(const CertResult& r, bool full_certificate) {
  json per_player = json::array();
  for (const auto& p : r.per_player) {
    per_player.push_back({{"player", p.player}, {"lambda", NumberOrNull(p.lambda)}});
  }
  json solver = json::array();
  for (const auto& s : r.solver) solver.push_back(SolverStatsToJson(s));
  json j = {{"kind", ToString(r.kind)},
            {"level", r.level},
            {"lambda", NumberOrNull(r.lambda)},
            {"status", ToString(r.status)},
            {"per_player", std::move(per_player)},
            {"solver", std::move(solver)},
            {"residual", r.certificate ? NumberOrNull(r.certificate->identity_residual)
                                       : json(nullptr)},
            {"diagnostics", r.diagnostics}};
  if (!r.error.empty()) j["error"] = r.error;
  if (r.certificate) j["certificate"] = CertificateToJson(*r.certificate, full_certificate);
  return j;
}

json ProjectionResultToJson(const ProjectionResult& r) {
  json j = {{"solved", r.solved},
            {"infeasible", r.infeasible},
            {"distance", r.solved ? NumberOrNull(r.distance) : json(nullptr)},
            {"epigraph", r.solved ? NumberOrNull(r.epigraph) : json(nullptr)},
            {"solver", SolverStatsToJson(r.solver)},
            {"diagnostics", r.diagnostics}};
  if (r.certificate) j["certificate"] = CertificateToJson(*r.certificate, false);
  return j;
}

json GaugeResultToJson(const GaugeResult& r) {
  json j = {{"solved", r.solved},
            {"infeasible", r.infeasible},
            {"epsilon", r.solved ? NumberOrNull(r.epsilon) : json(nullptr)},
            {"solver", SolverStatsToJson(r.solver)},
            {"diagnostics", r.diagnostics}};
  if (r.certificate) j["certificate"] = CertificateToJson(*r.certificate, false);
  return j;
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void WriteJsonFile(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace gamecert
