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

#include "gamecert/efg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>
#include <utility>

namespace gamecert {

namespace {

constexpr double kChanceSumTol = 1e-12;
constexpr double kStrategyTol = 1e-9;

std::string Where(const std::string& path) { return path.empty() ? "root" : "node " + path; }

std::string ChildPath(const std::string& path, std::size_t a) {
  return path.empty() ? std::to_string(a) : path + "." + std::to_string(a);
}

struct InfosetSeen {
  std::size_t player;
  std::vector<std::string> actions;
  std::string first_path;
};

// Walks the tree, checking node shape and infoset consistency. Infosets are
// appended to `order` on first sight.
void Check(const EfgNode& node, std::size_t n_players, const std::string& path,
           std::unordered_map<std::string, InfosetSeen>& seen,
           std::vector<std::string>& order) {
  using Kind = EfgNode::Kind;
  switch (node.kind) {
    case Kind::kTerminal:
      if (!node.children.empty() || !node.actions.empty()) {
        throw EfgError(Where(path) + ": terminal node has actions");
      }
      if (node.payoffs.size() != n_players) {
        throw EfgError(Where(path) + ": terminal node has " +
                       std::to_string(node.payoffs.size()) + " payoffs for " +
                       std::to_string(n_players) + " players");
      }
      for (double p : node.payoffs) {
        if (!std::isfinite(p)) throw EfgError(Where(path) + ": non-finite payoff");
      }
      return;
    case Kind::kChance: {
      if (node.actions.empty()) throw EfgError(Where(path) + ": chance node has no actions");
      if (node.chance_probs.size() != node.actions.size()) {
        throw EfgError(Where(path) + ": chance node needs one probability per action");
      }
      double sum = 0.0;
      for (double p : node.chance_probs) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
          throw EfgError(Where(path) + ": negative or non-finite chance probability");
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > kChanceSumTol) {
        throw EfgError(Where(path) + ": chance probabilities sum to " + std::to_string(sum));
      }
      break;
    }
    case Kind::kDecision: {
      if (node.owner >= n_players) {
        throw EfgError(Where(path) + ": owner " + std::to_string(node.owner) +
                       " is not a player");
      }
      if (node.actions.empty()) throw EfgError(Where(path) + ": decision node has no actions");
      if (node.infoset.empty()) throw EfgError(Where(path) + ": decision node has no infoset");
      auto [it, inserted] =
          seen.try_emplace(node.infoset, InfosetSeen{node.owner, node.actions, path});
      if (inserted) {
        order.push_back(node.infoset);
      } else {
        if (it->second.player != node.owner) {
          throw EfgError(Where(path) + ": infoset '" + node.infoset +
                         "' is owned by player " + std::to_string(it->second.player) +
                         " at " + Where(it->second.first_path));
        }
        if (it->second.actions != node.actions) {
          throw EfgError(Where(path) + ": infoset '" + node.infoset +
                         "' has different actions at " + Where(it->second.first_path));
        }
      }
      break;
    }
  }
  if (node.children.size() != node.actions.size()) {
    throw EfgError(Where(path) + ": " + std::to_string(node.actions.size()) + " actions but " +
                   std::to_string(node.children.size()) + " children");
  }
  for (std::size_t a = 0; a < node.children.size(); ++a) {
    Check(node.children[a], n_players, ChildPath(path, a), seen, order);
  }
}

InfosetVariableMap BuildMap(const EfgTree& tree) {
  if (tree.n_players == 0) throw EfgError("game has no players");
  std::unordered_map<std::string, InfosetSeen> seen;
  std::vector<std::string> order;
  Check(tree.root, tree.n_players, "", seen, order);

  InfosetVariableMap map;
  map.block_sizes.assign(tree.n_players, 0);
  std::size_t next = 0;
  for (std::size_t p = 0; p < tree.n_players; ++p) {
    for (const auto& id : order) {
      const InfosetSeen& s = seen.at(id);
      if (s.player != p) continue;
      InfosetInfo info{id, p, s.actions, {}};
      for (std::size_t a = 0; a + 1 < s.actions.size(); ++a) info.variables.push_back(next++);
      map.block_sizes[p] += info.variables.size();
      map.infosets.push_back(std::move(info));
    }
  }
  return map;
}

// Probability of action `a` at `info`: its variable, or 1 - sum for the last.
Polynomial ActionTerm(const InfosetInfo& info, std::size_t a, std::size_t n) {
  if (a + 1 < info.actions.size()) return Polynomial::Variable(n, info.variables[a]);
  Polynomial rest = Polynomial::Constant(n, 1.0);
  for (std::size_t v : info.variables) rest -= Polynomial::Variable(n, v);
  return rest;
}

void CheckStrategy(const InfosetInfo& info, const BehavioralStrategy& strategy) {
  const auto it = strategy.find(info.id);
  if (it == strategy.end()) throw EfgError("strategy has no entry for infoset '" + info.id + "'");
  const auto& probs = it->second;
  if (probs.size() != info.actions.size()) {
    throw EfgError("strategy for infoset '" + info.id + "' has " +
                   std::to_string(probs.size()) + " probabilities for " +
                   std::to_string(info.actions.size()) + " actions");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= -kStrategyTol && p <= 1.0 + kStrategyTol)) {
      throw EfgError("strategy for infoset '" + info.id + "' has a probability outside [0, 1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kStrategyTol) {
    throw EfgError("strategy for infoset '" + info.id + "' sums to " + std::to_string(sum));
  }
}

// Visits leaves with their reach probability under `strategy`.
void WalkLeaves(const EfgNode& node, double reach, const BehavioralStrategy& strategy,
                const std::function<void(const EfgNode&, double)>& visit) {
  switch (node.kind) {
    case EfgNode::Kind::kTerminal:
      visit(node, reach);
      return;
    case EfgNode::Kind::kChance:
      for (std::size_t a = 0; a < node.children.size(); ++a) {
        WalkLeaves(node.children[a], reach * node.chance_probs[a], strategy, visit);
      }
      return;
    case EfgNode::Kind::kDecision: {
      const auto& probs = strategy.at(node.infoset);
      for (std::size_t a = 0; a < node.children.size(); ++a) {
        WalkLeaves(node.children[a], reach * probs[a], strategy, visit);
      }
      return;
    }
  }
}

void CheckAll(const EfgTree& tree, const BehavioralStrategy& strategy) {
  const InfosetVariableMap map = BuildMap(tree);
  for (const auto& info : map.infosets) CheckStrategy(info, strategy);
}

}  // namespace

void EfgTree::Validate() const { BuildMap(*this); }

int EfgTree::Depth() const {
  std::function<int(const EfgNode&)> depth = [&](const EfgNode& node) {
    int d = 0;
    for (const auto& c : node.children) d = std::max(d, 1 + depth(c));
    return d;
  };
  return depth(root);
}

std::size_t InfosetVariableMap::n_vars() const {
  std::size_t n = 0;
  for (std::size_t b : block_sizes) n += b;
  return n;
}

const InfosetInfo& InfosetVariableMap::Find(const std::string& id) const {
  for (const auto& info : infosets) {
    if (info.id == id) return info;
  }
  throw EfgError("unknown infoset '" + id + "'");
}

EfgConversion EfgToGame(const EfgTree& tree) {
  EfgConversion out;
  out.map = BuildMap(tree);
  const std::size_t n = out.map.n_vars();
  std::unordered_map<std::string, const InfosetInfo*> by_id;
  for (const auto& info : out.map.infosets) by_id.emplace(info.id, &info);

  const auto var = [n](std::size_t v) { return Polynomial::Variable(n, v); };
  const Polynomial one = Polynomial::Constant(n, 1.0);

  std::vector<Polynomial> utility(tree.n_players, Polynomial(n));
  std::function<void(const EfgNode&, const Polynomial&)> walk = [&](const EfgNode& node,
                                                                    const Polynomial& reach) {
    switch (node.kind) {
      case EfgNode::Kind::kTerminal:
        for (std::size_t i = 0; i < tree.n_players; ++i) {
          if (node.payoffs[i] != 0.0) utility[i] += reach * node.payoffs[i];
        }
        return;
      case EfgNode::Kind::kChance:
        for (std::size_t a = 0; a < node.children.size(); ++a) {
          if (node.chance_probs[a] == 0.0) continue;
          walk(node.children[a], reach * node.chance_probs[a]);
        }
        return;
      case EfgNode::Kind::kDecision: {
        const InfosetInfo& info = *by_id.at(node.infoset);
        for (std::size_t a = 0; a < node.children.size(); ++a) {
          walk(node.children[a], reach * ActionTerm(info, a, n));
        }
        return;
      }
    }
  };
  walk(tree.root, one);

  SemialgebraicSet domain{n, {}, {}};
  for (const auto& info : out.map.infosets) {
    if (info.variables.empty()) continue;
    Polynomial rest = one;
    for (std::size_t v : info.variables) {
      domain.inequalities.push_back(var(v));
      rest -= var(v);
    }
    domain.inequalities.push_back(std::move(rest));
  }
  out.game = PolynomialGame(out.map.block_sizes, std::move(utility), std::move(domain));
  return out;
}

std::vector<double> ExpectedUtilityAt(const EfgTree& tree, const BehavioralStrategy& strategy) {
  CheckAll(tree, strategy);
  std::vector<double> u(tree.n_players, 0.0);
  WalkLeaves(tree.root, 1.0, strategy, [&](const EfgNode& leaf, double reach) {
    for (std::size_t i = 0; i < tree.n_players; ++i) u[i] += reach * leaf.payoffs[i];
  });
  return u;
}

std::vector<double> LeafReachProbabilities(const EfgTree& tree,
                                           const BehavioralStrategy& strategy) {
  CheckAll(tree, strategy);
  std::vector<double> out;
  WalkLeaves(tree.root, 1.0, strategy,
             [&](const EfgNode&, double reach) { out.push_back(reach); });
  return out;
}

std::vector<double> StrategyToPoint(const InfosetVariableMap& map,
                                    const BehavioralStrategy& strategy) {
  std::vector<double> point(map.n_vars(), 0.0);
  for (const auto& info : map.infosets) {
    CheckStrategy(info, strategy);
    const auto& probs = strategy.at(info.id);
    for (std::size_t a = 0; a < info.variables.size(); ++a) point[info.variables[a]] = probs[a];
  }
  return point;
}

}  // namespace gamecert
