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

#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gamecert/sdp.hpp"

namespace gamecert {

namespace {

constexpr const char* kFreeMarker = "free-split-block";
constexpr const char* kSlackMarker = "slack-block";

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void WriteEntry(std::ostream& out, int mat, int block, int row, int col, double v) {
  out << mat << ' ' << block << ' ' << row << ' ' << col << ' ' << Num(v) << '\n';
}

}  // namespace

void WriteSdpa(const SdpProblem& problem, std::ostream& out) {
  problem.Validate();
  const int n_psd = static_cast<int>(problem.block_dims.size());
  int n_slack = 0;
  for (const auto& con : problem.constraints) {
    if (con.relation == Relation::kLessEqual) ++n_slack;
  }
  int n_blocks = n_psd;
  const int free_block = problem.n_free > 0 ? ++n_blocks : 0;
  const int slack_block = n_slack > 0 ? ++n_blocks : 0;

  out << "* SDPA sparse format, dual form: max <F0,Y> s.t. <Fi,Y> = ci, Y psd\n";
  if (free_block > 0) out << "* " << kFreeMarker << ' ' << free_block << ' ' << problem.n_free << '\n';
  if (slack_block > 0) out << "* " << kSlackMarker << ' ' << slack_block << ' ' << n_slack << '\n';
  out << problem.constraints.size() << '\n' << n_blocks << '\n';
  for (int d : problem.block_dims) out << d << ' ';
  if (free_block > 0) out << -2 * problem.n_free << ' ';
  if (slack_block > 0) out << -n_slack << ' ';
  out << '\n';
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    out << (i ? " " : "") << Num(problem.constraints[i].rhs);
  }
  out << '\n';

  for (const auto& e : problem.objective) {
    WriteEntry(out, 0, e.block + 1, e.row + 1, e.col + 1, -e.value);
  }
  for (std::size_t k = 0; k < problem.free_objective.size(); ++k) {
    const double c = problem.free_objective[k];
    if (c == 0.0) continue;
    WriteEntry(out, 0, free_block, 2 * k + 1, 2 * k + 1, -c);
    WriteEntry(out, 0, free_block, 2 * k + 2, 2 * k + 2, c);
  }
  int slack = 0;
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    const auto& con = problem.constraints[i];
    const int mat = static_cast<int>(i) + 1;
    for (const auto& e : con.entries) WriteEntry(out, mat, e.block + 1, e.row + 1, e.col + 1, e.value);
    for (const auto& [k, v] : con.free_coeffs) {
      WriteEntry(out, mat, free_block, 2 * k + 1, 2 * k + 1, v);
      WriteEntry(out, mat, free_block, 2 * k + 2, 2 * k + 2, -v);
    }
    if (con.relation == Relation::kLessEqual) {
      ++slack;
      WriteEntry(out, mat, slack_block, slack, slack, 1.0);
    }
  }
}

void ExportSdpa(const SdpProblem& problem, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  WriteSdpa(problem, out);
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

namespace {

class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  // Returns false at end of input.
  bool Next(std::string& tok) {
    while (pending_.empty()) {
      std::string line;
      if (!std::getline(in_, line)) return false;
      ++line_no_;
      if (!line.empty() && (line[0] == '*' || line[0] == '"')) {
        comments_.push_back(line);
        continue;
      }
      for (char& ch : line) {
        if (ch == '{' || ch == '}' || ch == '(' || ch == ')' || ch == ',') ch = ' ';
      }
      std::istringstream ss(line);
      std::string t;
      while (ss >> t) pending_.push_back(t);
      pos_ = 0;
      if (pending_.empty()) continue;
    }
    tok = pending_[pos_++];
    if (pos_ == pending_.size()) pending_.clear();
    return true;
  }

  // Drops remaining tokens of the current line.
  void SkipRestOfLine() { pending_.clear(); }

  int line() const { return line_no_; }
  const std::vector<std::string>& comments() const { return comments_; }

  long Int(const char* what) {
    std::string t;
    if (!Next(t)) throw SdpaParseError(line_no_, std::string("missing ") + what);
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(t, &used);
    } catch (const std::exception&) {
      throw SdpaParseError(line_no_, std::string("expected integer ") + what + ", got '" + t + "'");
    }
    if (used != t.size()) {
      throw SdpaParseError(line_no_, std::string("expected integer ") + what + ", got '" + t + "'");
    }
    return v;
  }

  double Real(const char* what) {
    std::string t;
    if (!Next(t)) throw SdpaParseError(line_no_, std::string("missing ") + what);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw SdpaParseError(line_no_, std::string("expected number ") + what + ", got '" + t + "'");
    }
    if (used != t.size()) {
      throw SdpaParseError(line_no_, std::string("expected number ") + what + ", got '" + t + "'");
    }
    return v;
  }

 private:
  std::istream& in_;
  std::vector<std::string> pending_;
  std::size_t pos_ = 0;
  int line_no_ = 0;
  std::vector<std::string> comments_;
};

enum class BlockKind { kPsd, kDiagonal, kFreeSplit, kSlack };

struct BlockInfo {
  BlockKind kind = BlockKind::kPsd;
  int size = 0;
  int first_index = 0;  // first problem block (PSD, diagonal) or variable index
};

}  // namespace

SdpProblem ReadSdpa(std::istream& in) {
  TokenReader tr(in);
  const long m = tr.Int("constraint count");
  tr.SkipRestOfLine();
  if (m < 0) throw SdpaParseError(tr.line(), "negative constraint count");
  const long nb = tr.Int("block count");
  tr.SkipRestOfLine();
  if (nb < 0) throw SdpaParseError(tr.line(), "negative block count");

  std::map<long, long> free_blocks, slack_blocks;
  for (const auto& c : tr.comments()) {
    std::istringstream ss(c.substr(1));
    std::string tag;
    long blk = 0, n = 0;
    if (!(ss >> tag)) continue;
    if (tag == kFreeMarker && ss >> blk >> n) free_blocks[blk] = n;
    if (tag == kSlackMarker && ss >> blk >> n) slack_blocks[blk] = n;
  }

  SdpProblem p;
  std::vector<BlockInfo> blocks(nb);
  int n_slack_total = 0;
  for (long b = 0; b < nb; ++b) {
    const long size = tr.Int("block size");
    if (size == 0) throw SdpaParseError(tr.line(), "block size 0");
    BlockInfo& info = blocks[b];
    if (size > 0) {
      info = {BlockKind::kPsd, static_cast<int>(size), static_cast<int>(p.block_dims.size())};
      p.block_dims.push_back(static_cast<int>(size));
    } else if (free_blocks.count(b + 1)) {
      if (-size != 2 * free_blocks[b + 1]) {
        throw SdpaParseError(tr.line(), "free-split block size does not match its marker");
      }
      info = {BlockKind::kFreeSplit, static_cast<int>(-size), p.n_free};
      p.n_free += static_cast<int>(-size / 2);
    } else if (slack_blocks.count(b + 1)) {
      if (-size != slack_blocks[b + 1]) {
        throw SdpaParseError(tr.line(), "slack block size does not match its marker");
      }
      info = {BlockKind::kSlack, static_cast<int>(-size), n_slack_total};
      n_slack_total += static_cast<int>(-size);
    } else {
      info = {BlockKind::kDiagonal, static_cast<int>(-size),
              static_cast<int>(p.block_dims.size())};
      for (long k = 0; k < -size; ++k) p.block_dims.push_back(1);
    }
  }
  tr.SkipRestOfLine();
  p.constraints.resize(m);
  for (long i = 0; i < m; ++i) p.constraints[i].rhs = tr.Real("objective coefficient");
  tr.SkipRestOfLine();
  p.free_objective.assign(p.n_free, 0.0);

  // Slack variable index -> owning constraint.
  std::vector<long> slack_owner(n_slack_total, -1);
  std::map<std::pair<long, int>, double> free_plus;  // (mat, var) -> value

  std::string tok;
  while (tr.Next(tok)) {
    const int line = tr.line();
    long mat = 0;
    try {
      std::size_t used = 0;
      mat = std::stol(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw SdpaParseError(line, "expected matrix number, got '" + tok + "'");
    }
    const long blk = tr.Int("block number");
    long r = tr.Int("row index");
    long c = tr.Int("column index");
    const double v = tr.Real("entry value");
    tr.SkipRestOfLine();
    if (mat < 0 || mat > m) throw SdpaParseError(line, "matrix number out of range");
    if (blk < 1 || blk > nb) throw SdpaParseError(line, "block number out of range");
    const BlockInfo& info = blocks[blk - 1];
    if (r < 1 || c < 1 || r > info.size || c > info.size) {
      throw SdpaParseError(line, "entry index out of range");
    }
    if (r > c) std::swap(r, c);
    if (info.kind != BlockKind::kPsd && r != c) {
      throw SdpaParseError(line, "off-diagonal entry in a diagonal block");
    }
    switch (info.kind) {
      case BlockKind::kPsd: {
        BlockEntry e{info.first_index, static_cast<int>(r - 1), static_cast<int>(c - 1),
                     mat == 0 ? -v : v};
        if (mat == 0) {
          p.objective.push_back(e);
        } else {
          p.constraints[mat - 1].entries.push_back(e);
        }
        break;
      }
      case BlockKind::kDiagonal: {
        BlockEntry e{info.first_index + static_cast<int>(r - 1), 0, 0, mat == 0 ? -v : v};
        if (mat == 0) {
          p.objective.push_back(e);
        } else {
          p.constraints[mat - 1].entries.push_back(e);
        }
        break;
      }
      case BlockKind::kFreeSplit: {
        const int var = info.first_index + static_cast<int>((r - 1) / 2);
        const bool plus = (r - 1) % 2 == 0;
        const double val = mat == 0 ? -v : v;
        const auto key = std::make_pair(mat, var);
        if (plus) {
          free_plus[key] = val;
          if (mat == 0) {
            p.free_objective[var] = val;
          } else {
            p.constraints[mat - 1].free_coeffs.emplace_back(var, val);
          }
        } else {
          auto it = free_plus.find(key);
          if (it == free_plus.end() || it->second != -val) {
            throw SdpaParseError(line, "free-split pair is not antisymmetric");
          }
        }
        break;
      }
      case BlockKind::kSlack: {
        if (mat == 0) {
          if (v != 0.0) throw SdpaParseError(line, "slack variable with an objective");
          break;
        }
        if (v != 1.0) throw SdpaParseError(line, "slack coefficient must be 1");
        const int var = info.first_index + static_cast<int>(r - 1);
        if (slack_owner[var] != -1) throw SdpaParseError(line, "slack variable used twice");
        slack_owner[var] = mat - 1;
        if (p.constraints[mat - 1].relation == Relation::kLessEqual) {
          throw SdpaParseError(line, "constraint has two slack variables");
        }
        p.constraints[mat - 1].relation = Relation::kLessEqual;
        break;
      }
    }
  }
  p.Validate();
  return p;
}

SdpProblem ImportSdpa(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return ReadSdpa(in);
}

}  // namespace gamecert
