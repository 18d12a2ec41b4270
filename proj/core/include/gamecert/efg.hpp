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

#ifndef GAMECERT_EFG_HPP_
#define GAMECERT_EFG_HPP_

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gamecert/game.hpp"

namespace gamecert {

// Extensive-form games, possibly with imperfect recall, and their conversion
// to polynomial games in behavioral-strategy probabilities.

struct EfgNode {
  enum class Kind { kDecision, kChance, kTerminal };

  Kind kind = Kind::kTerminal;
  std::size_t owner = 0;             // decision nodes: player index
  std::string infoset;               // decision nodes
  std::vector<std::string> actions;  // decision and chance nodes
  std::vector<double> chance_probs;  // chance nodes, one per action
  std::vector<EfgNode> children;     // one per action
  std::vector<double> payoffs;       // terminal nodes, one per player
};

class EfgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EfgTree {
  std::size_t n_players = 0;
  EfgNode root;

  // Throws EfgError naming the offending node path.
  void Validate() const;
  // Longest root-to-leaf path, counted in edges.
  int Depth() const;
};

struct InfosetInfo {
  std::string id;
  std::size_t player = 0;
  std::vector<std::string> actions;
  // Global variable indices of actions 0..k-2; the last action has
  // probability 1 - sum of these.
  std::vector<std::size_t> variables;
};

// Infosets ordered by player, then by first appearance in a depth-first,
// left-to-right traversal. Variables are assigned in the same order, so each
// player's variables are contiguous.
struct InfosetVariableMap {
  std::vector<InfosetInfo> infosets;
  std::vector<std::size_t> block_sizes;  // per player

  std::size_t n_vars() const;
  const InfosetInfo& Find(const std::string& id) const;
};

struct EfgConversion {
  PolynomialGame game;
  InfosetVariableMap map;
};

// Expected utilities as polynomials over the product of per-infoset
// simplices {x >= 0, 1 - sum x >= 0}.
EfgConversion EfgToGame(const EfgTree& tree);

// Infoset id -> probability per action.
using BehavioralStrategy = std::map<std::string, std::vector<double>>;

// Direct tree evaluation. Throws EfgError on missing infosets or invalid
// probability vectors.
std::vector<double> ExpectedUtilityAt(const EfgTree& tree, const BehavioralStrategy& strategy);

// Reach probability of every leaf, in depth-first left-to-right order.
std::vector<double> LeafReachProbabilities(const EfgTree& tree,
                                           const BehavioralStrategy& strategy);

// The point in the converted game's variable space that encodes `strategy`.
std::vector<double> StrategyToPoint(const InfosetVariableMap& map,
                                    const BehavioralStrategy& strategy);

}  // namespace gamecert

#endif  // GAMECERT_EFG_HPP_
