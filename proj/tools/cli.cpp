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

#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "gamecert/efg.hpp"
#include "gamecert/game.hpp"
#include "gamecert/hierarchy.hpp"
#include "gamecert/io.hpp"
#include "gamecert/oracles.hpp"
#include "gamecert/projector.hpp"
#include "gamecert/sdp.hpp"
#include "gamecert/sos.hpp"

namespace gamecert::cli {
namespace {

// Thrown for bad flag values that CLI11 cannot check on its own.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every field is echoed into the report, so defaults live here.
struct RunConfig {
  std::string command;
  std::string input;
  std::string output;
  std::string kind = "monotone";
  int level = 0;  // 0: smallest admissible even level
  std::string levels;
  bool stop_on_strict = false;
  std::size_t verify = 0;
  double add_ball = 0.0;  // 0: off
  double sdp_tol = 1e-8;
  int sdp_max_iter = 200;
  std::uint64_t seed = kDefaultSeed;
  int threads = 1;
  bool full_certificate = false;
  // project
  bool zero_sum = false;
  bool preserve_support = false;
  std::vector<std::string> freeze;
  std::string game_out;
  // export-sdpa
  std::string program = "certify";
  std::size_t player = 0;
};

int EvenUp(int level) { return level + (level % 2); }

std::pair<int, int> ParseLevelRange(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw UsageError("--levels expects A..B, got '" + text + "'");
  try {
    std::size_t used = 0;
    const int a = std::stoi(text.substr(0, dots), &used);
    if (used != dots) throw std::invalid_argument(text);
    const std::string rest = text.substr(dots + 2);
    const int b = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(text);
    if (a < 0 || b < a) throw UsageError("--levels range '" + text + "' is empty or negative");
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("--levels expects A..B, got '" + text + "'");
  }
}

// "P:e1,e2,...,en" pins player P's coefficient of x^e.
FrozenCoefficient ParseFreeze(const std::string& text, std::size_t n_vars) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--freeze expects P:e1,...,en");
  FrozenCoefficient f;
  std::vector<int> exps;
  try {
    f.player = static_cast<std::size_t>(std::stoul(text.substr(0, colon)));
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) exps.push_back(std::stoi(item));
  } catch (const std::logic_error&) {
    throw UsageError("--freeze expects P:e1,...,en, got '" + text + "'");
  }
  if (exps.size() != n_vars) {
    throw UsageError("--freeze '" + text + "' has " + std::to_string(exps.size()) +
                     " exponents for " + std::to_string(n_vars) + " variables");
  }
  for (int e : exps) {
    if (e < 0) throw UsageError("--freeze '" + text + "' has a negative exponent");
  }
  f.monomial = Monomial(std::move(exps));
  return f;
}

int ThreadsFromEnvironment() {
  const char* env = std::getenv("GAMECERT_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  try {
    std::size_t used = 0;
    const int t = std::stoi(env, &used);
    if (used == std::string(env).size() && t >= 1) return t;
  } catch (const std::logic_error&) {
  }
  throw UsageError(std::string("GAMECERT_THREADS must be a positive integer, got '") + env +
                   "'");
}

json ConfigToJson(const RunConfig& c) {
  json j = {{"command", c.command}, {"input", c.input}, {"output", c.output}};
  if (c.command == "efg2poly") return j;
  j["level"] = c.level;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["sdp_tol"] = c.sdp_tol;
  j["sdp_max_iter"] = c.sdp_max_iter;
  j["add_ball"] = c.add_ball > 0.0 ? json(c.add_ball) : json(nullptr);
  if (c.command == "certify") {
    j["kind"] = c.kind;
    j["levels"] = c.levels.empty() ? json(nullptr) : json(c.levels);
    j["stop_on_strict"] = c.stop_on_strict;
    j["verify"] = c.verify;
    j["full_certificate"] = c.full_certificate;
  } else if (c.command == "project") {
    j["kind"] = c.kind;
    j["levels"] = c.levels.empty() ? json(nullptr) : json(c.levels);
    j["zero_sum"] = c.zero_sum;
    j["preserve_support"] = c.preserve_support;
    j["freeze"] = c.freeze;
    j["game_out"] = c.game_out;
  } else if (c.command == "export-sdpa") {
    j["program"] = c.program;
    j["kind"] = c.kind;
    j["player"] = c.player;
    j["zero_sum"] = c.zero_sum;
    j["preserve_support"] = c.preserve_support;
  }
  return j;
}

json ReportHeader(const RunConfig& c) {
  return {{"version", LibraryVersion()}, {"config", ConfigToJson(c)}};
}

void Emit(const json& report, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << report.dump(2) << '\n';
  } else {
    WriteJsonFile(path, report);
  }
}

CertOptions OptionsFrom(const RunConfig& c) {
  if (!(c.sdp_tol > 0.0) || c.sdp_tol >= 1.0) throw UsageError("--sdp-tol must be in (0, 1)");
  if (c.sdp_max_iter < 1) throw UsageError("--sdp-max-iter must be positive");
  CertOptions o;
  o.sdp.feasibility_tol = c.sdp_tol;
  o.sdp.gap_tol = c.sdp_tol;
  o.sdp.max_iterations = c.sdp_max_iter;
  o.threads = c.threads;
  return o;
}

PolynomialGame LoadGame(const RunConfig& c) {
  PolynomialGame game = GameFromJson(ReadJsonFile(c.input));
  if (c.add_ball < 0.0) throw UsageError("--add-ball radius must be positive");
  if (c.add_ball > 0.0) game = game.WithDomain(AddBallConstraint(game.domain(), c.add_ball));
  return game;
}

int ExitFor(CertStatus s) {
  switch (s) {
    case CertStatus::kStrictlyCertified:
    case CertStatus::kCertified:
      return kExitCertified;
    case CertStatus::kInconclusive:
      return kExitInconclusive;
    case CertStatus::kInfeasible:
      return kExitInfeasible;
  }
  return kExitError;
}

// Sampled lower bound on the certified quantity plus a pointwise check of the
// certificate. Returns false when either check fails.
bool Verify(const PolynomialGame& game, CertKind kind, const CertResult& r, const RunConfig& c,
            json& out) {
  SampleOptions so;
  so.n_samples = c.verify;
  so.seed = c.seed;
  so.threads = c.threads;
  const SampleReport s = SampleMaxEigenvalue(game, kind, so);
  const bool bound_ok = !(r.lambda + 1e-6 < s.max_eigenvalue);
  out = {{"samples", s.samples},
         {"attempts", s.attempts},
         {"sampled_max", s.max_eigenvalue},
         {"argmax", s.argmax},
         {"bound_holds", bound_ok}};
  bool cert_ok = true;
  if (r.certificate) {
    const SampledCheck chk = CheckCertificateSampled(*r.certificate, c.verify, c.seed);
    cert_ok = chk.ok;
    out["certificate_check"] = {{"ok", chk.ok},
                                {"worst_identity", chk.worst_identity},
                                {"worst_psd", chk.worst_psd},
                                {"samples", chk.samples}};
  }
  return bound_ok && cert_ok;
}

int CmdCertify(RunConfig& c, std::ostream& out, std::ostream& err) {
  const PolynomialGame game = LoadGame(c);
  const CertKind kind = ParseCertKind(c.kind);
  const CertOptions options = OptionsFrom(c);
  json report = ReportHeader(c);

  CertResult result;
  if (!c.levels.empty()) {
    const auto [first, last] = ParseLevelRange(c.levels);
    const auto all = RunHierarchy(game, kind, first, last, options, c.stop_on_strict);
    json table = json::array();
    const CertResult* best = nullptr;
    for (const auto& r : all) {
      table.push_back(CertResultToJson(r, false));
      if (r.error.empty()) best = &r;
    }
    report["levels"] = std::move(table);
    if (best == nullptr) {
      report["error"] = "no level in " + c.levels + " could be attempted";
      Emit(report, c.output, out);
      err << "gamecert: " << report["error"].get<std::string>() << '\n';
      return kExitError;
    }
    result = *best;
  } else {
    if (c.level == 0) c.level = EvenUp(MinimalLevel(game, kind));
    report["config"]["level"] = c.level;
    result = Certify(game, kind, c.level, options);
  }
  report["result"] = CertResultToJson(result, c.full_certificate);

  if (!result.error.empty()) {
    Emit(report, c.output, out);
    err << "gamecert: " << result.error << '\n';
    return kExitError;
  }
  if (c.verify > 0) {
    json v;
    const bool ok = Verify(game, kind, result, c, v);
    report["verify"] = std::move(v);
    if (!ok) {
      Emit(report, c.output, out);
      err << "gamecert: sampled verification failed\n";
      return kExitError;
    }
  }
  Emit(report, c.output, out);
  return ExitFor(result.status);
}

int ProjectionExit(const ProjectionResult& r) {
  if (r.solved) return kExitCertified;
  return r.infeasible ? kExitInfeasible : kExitInconclusive;
}

int CmdProject(RunConfig& c, std::ostream& out, std::ostream& err) {
  ProjectionSpec spec;
  spec.reference = LoadGame(c);
  spec.kind = ParseCertKind(c.kind);
  spec.zero_sum = c.zero_sum;
  spec.preserve_support = c.preserve_support;
  for (const auto& f : c.freeze) spec.frozen.push_back(ParseFreeze(f, spec.reference.n_vars()));
  spec.Validate();
  const CertOptions options = OptionsFrom(c);
  json report = ReportHeader(c);

  std::vector<int> levels;
  if (!c.levels.empty()) {
    const auto [first, last] = ParseLevelRange(c.levels);
    for (int l = first; l <= last; ++l) levels.push_back(l);
  } else {
    if (c.level == 0) c.level = MinimalProjectionLevel(spec);
    report["config"]["level"] = c.level;
    levels.push_back(c.level);
  }

  std::optional<ProjectionResult> best;
  int best_level = 0;
  json table = json::array();
  for (int l : levels) {
    spec.level = l;
    ProjectionResult r;
    try {
      r = Project(spec, options);
    } catch (const std::invalid_argument& e) {
      // Too low a level for the targets; only reachable in a sweep.
      if (levels.size() == 1) throw;
      table.push_back({{"level", l}, {"error", e.what()}});
      continue;
    }
    json row = ProjectionResultToJson(r);
    row["level"] = l;
    table.push_back(std::move(row));
    // Later levels can only shrink the distance, so keep the last solved one.
    if (r.solved || !best) {
      best = std::move(r);
      best_level = l;
    }
  }
  if (!best) {
    report["levels"] = std::move(table);
    report["error"] = "no level in " + c.levels + " could be attempted";
    Emit(report, c.output, out);
    err << "gamecert: " << report["error"].get<std::string>() << '\n';
    return kExitError;
  }
  if (!c.levels.empty()) report["levels"] = std::move(table);
  json result = ProjectionResultToJson(*best);
  result["level"] = best_level;
  if (best->solved) result["game"] = GameToJson(best->game);
  report["result"] = std::move(result);
  if (best->solved && !c.game_out.empty()) WriteJsonFile(c.game_out, GameToJson(best->game));
  Emit(report, c.output, out);
  return ProjectionExit(*best);
}

int CmdGauge(RunConfig& c, std::ostream& out, std::ostream&) {
  const PolynomialGame game = LoadGame(c);
  const CertOptions options = OptionsFrom(c);
  if (c.level == 0) c.level = EvenUp(MinimalLevel(game, CertKind::kMonotone));
  json report = ReportHeader(c);
  const GaugeResult r = Gauge(game, c.level, options);
  report["result"] = GaugeResultToJson(r);
  Emit(report, c.output, out);
  if (r.solved) return kExitCertified;
  return r.infeasible ? kExitInfeasible : kExitInconclusive;
}

int CmdEfg2Poly(RunConfig& c, std::ostream& out, std::ostream&) {
  const EfgTree tree = EfgFromJson(ReadJsonFile(c.input));
  const EfgConversion conv = EfgToGame(tree);
  json j = GameToJson(conv.game);
  j["infosets"] = InfosetMapToJson(conv.map);
  Emit(j, c.output, out);
  return kExitCertified;
}

int CmdExportSdpa(RunConfig& c, std::ostream& out, std::ostream& err) {
  const PolynomialGame game = LoadGame(c);
  const CertKind kind = ParseCertKind(c.kind);
  SosMembershipProblem problem;
  if (c.program == "certify") {
    if (c.level == 0) c.level = EvenUp(MinimalLevel(game, kind));
    if (kind == CertKind::kMonotone) {
      problem = MonotoneProgram(game, c.level);
    } else {
      if (c.player >= game.n_players()) throw UsageError("--player out of range");
      problem = ConcaveProgram(game, c.player, c.level);
    }
  } else if (c.program == "project") {
    ProjectionSpec spec;
    spec.reference = game;
    spec.kind = kind;
    spec.zero_sum = c.zero_sum;
    spec.preserve_support = c.preserve_support;
    if (c.level == 0) c.level = MinimalProjectionLevel(spec);
    spec.level = c.level;
    problem = ProjectionProgram(spec);
  } else if (c.program == "gauge") {
    if (c.level == 0) c.level = EvenUp(MinimalLevel(game, CertKind::kMonotone));
    problem = GaugeProgram(game, c.level);
  } else {
    throw UsageError("--program must be certify, project or gauge");
  }
  const CompiledSos compiled = Compile(problem);
  json report = ReportHeader(c);
  if (!compiled.infeasible_reason.empty()) {
    report["infeasible"] = compiled.infeasible_reason;
    Emit(report, "", out);
    err << "gamecert: " << compiled.infeasible_reason << '\n';
    return kExitInfeasible;
  }
  ExportSdpa(compiled.sdp, c.output);
  report["sdp"] = {{"constraints", compiled.sdp.constraints.size()},
                   {"block_dims", compiled.sdp.block_dims},
                   {"free_variables", compiled.sdp.n_free},
                   {"warnings", compiled.warnings}};
  // -o names the .dat-s file, so the summary always goes to the stream.
  Emit(report, "", out);
  return kExitCertified;
}

void AddSolverFlags(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--sdp-tol", c.sdp_tol, "Feasibility and gap tolerance of the SDP solver")
      ->capture_default_str();
  cmd->add_option("--sdp-max-iter", c.sdp_max_iter, "Iteration limit of the SDP solver")
      ->capture_default_str();
  cmd->add_option("--threads", c.threads, "Worker threads (default: GAMECERT_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--add-ball", c.add_ball,
                  "Add R^2 - |x|^2 >= 0 to the domain (opt-in Archimedean certificate)");
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Sum-of-squares certificates for polynomial games", "gamecert"};
  app.set_version_flag("--version", std::string(LibraryVersion()));
  app.require_subcommand(1);

  bool threads_given = false;
  const auto kinds = CLI::IsMember({"monotone", "concave"});

  auto* certify = app.add_subcommand("certify", "Bound lambda_max of J_S or of player Hessians");
  certify->add_option("game", c.input, "Game JSON file")->required();
  certify->add_option("--kind", c.kind)->check(kinds)->capture_default_str();
  certify->add_option("--level", c.level, "Hierarchy level (default: smallest even admissible)");
  certify->add_option("--levels", c.levels, "Sweep levels A..B; reports the last one attempted");
  certify->add_flag("--stop-on-strict", c.stop_on_strict, "Stop a sweep at the first strict level");
  certify->add_option("--verify", c.verify, "Cross-check with N sampled points");
  certify->add_option("--seed", c.seed, "Seed for --verify")->capture_default_str();
  certify->add_flag("--full-certificate", c.full_certificate, "Include Gram matrices");
  certify->add_option("-o,--output", c.output, "Report path (default: stdout)");
  AddSolverFlags(certify, c);

  auto* project = app.add_subcommand("project", "Closest game with a level-l certificate");
  project->add_option("game", c.input, "Game JSON file")->required();
  project->add_option("--kind", c.kind)->check(kinds)->capture_default_str();
  project->add_option("--level", c.level, "Hierarchy level (default: smallest even admissible)");
  project->add_option("--levels", c.levels, "Distance table over levels A..B");
  project->add_flag("--zero-sum", c.zero_sum, "Require u_2 = -u_1");
  project->add_flag("--preserve-support", c.preserve_support,
                    "Only use monomials present in the input");
  project->add_option("--freeze", c.freeze, "Pin a coefficient: P:e1,...,en");
  project->add_option("--game-out", c.game_out, "Write the projected game here");
  project->add_option("-o,--output", c.output, "Report path (default: stdout)");
  AddSolverFlags(project, c);

  auto* gauge = app.add_subcommand("gauge", "Smallest regularization that certifies monotonicity");
  gauge->add_option("game", c.input, "Game JSON file")->required();
  gauge->add_option("--level", c.level, "Hierarchy level (default: smallest even admissible)");
  gauge->add_option("-o,--output", c.output, "Report path (default: stdout)");
  AddSolverFlags(gauge, c);

  auto* efg = app.add_subcommand("efg2poly", "Convert an extensive-form game to a game JSON");
  efg->add_option("efg", c.input, "EFG JSON file")->required();
  efg->add_option("-o,--output", c.output, "Game path (default: stdout)");

  auto* sdpa = app.add_subcommand("export-sdpa", "Write the compiled SDP in SDPA sparse format");
  sdpa->add_option("game", c.input, "Game JSON file")->required();
  sdpa->add_option("--program", c.program)
      ->check(CLI::IsMember({"certify", "project", "gauge"}))
      ->capture_default_str();
  sdpa->add_option("--kind", c.kind)->check(kinds)->capture_default_str();
  sdpa->add_option("--level", c.level, "Hierarchy level (default: smallest even admissible)");
  sdpa->add_option("--player", c.player, "Player for --kind concave")->capture_default_str();
  sdpa->add_flag("--zero-sum", c.zero_sum, "Projection program: require u_2 = -u_1");
  sdpa->add_flag("--preserve-support", c.preserve_support,
                 "Projection program: only use monomials present in the input");
  sdpa->add_option("-o,--output", c.output, ".dat-s path")->required();
  sdpa->add_option("--add-ball", c.add_ball, "Add R^2 - |x|^2 >= 0 to the domain");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitCertified : kExitError;
  }

  try {
    for (auto* sub : {certify, project, gauge}) {
      if (sub->parsed()) threads_given = sub->count("--threads") > 0;
    }
    if (!threads_given) c.threads = ThreadsFromEnvironment();
    if (certify->parsed()) {
      c.command = "certify";
      return CmdCertify(c, out, err);
    }
    if (project->parsed()) {
      c.command = "project";
      return CmdProject(c, out, err);
    }
    if (gauge->parsed()) {
      c.command = "gauge";
      return CmdGauge(c, out, err);
    }
    if (efg->parsed()) {
      c.command = "efg2poly";
      return CmdEfg2Poly(c, out, err);
    }
    c.command = "export-sdpa";
    return CmdExportSdpa(c, out, err);
  } catch (const std::exception& e) {
    err << "gamecert: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace gamecert::cli
