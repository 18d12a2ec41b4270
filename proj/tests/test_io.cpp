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

#include <filesystem>
#include <string>

#include <doctest.h>

#include "gamecert/hierarchy.hpp"
#include "gamecert/io.hpp"
#include "test_util.hpp"

using namespace gamecert;
using namespace gamecert::testing;

TEST_SUITE("io") {

TEST_CASE("game files round trip") {
  for (const char* name : {"driver", "fig1", "fig3", "deg4", "deg8"}) {
    CAPTURE(name);
    const PolynomialGame g = LoadCorpusGame(name);
    const PolynomialGame back = GameFromJson(GameToJson(g));
    CHECK(GameDistance(g, back) == 0.0);
    CHECK(back.domain().inequalities == g.domain().inequalities);
    CHECK(back.block_sizes() == g.block_sizes());
  }
}

TEST_CASE("format errors name the location") {
  const json bad = json::parse(R"({"players": [{"m": 1}], "payoffs": [{"n_vars": 1, "terms": [{"exps": [1], "coeff": "x"}]}]})");
  try {
    GameFromJson(bad);
    FAIL("expected a format error");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("/payoffs/0") != std::string::npos);
  }
  CHECK_THROWS_AS(GameFromJson(json::parse(R"({"players": []})")), FormatError);
  CHECK_THROWS_AS(ReadJsonFile("/nonexistent/game.json"), FormatError);
}

TEST_CASE("efg files round trip") {
  for (const char* name : {"driver", "fig1", "fig3"}) {
    const json j = ReadJsonFile(CorpusPath(std::string(name) + ".efg.json"));
    CHECK(EfgToJson(EfgFromJson(j)) == EfgToJson(EfgFromJson(EfgToJson(EfgFromJson(j)))));
  }
}

TEST_CASE("reports are valid json without non-finite numbers") {
  const CertResult r = CertifyMonotone(LoadCorpusGame("fig1"), 2);
  const json j = CertResultToJson(r, true);
  CHECK(j["status"] == "Inconclusive");
  CHECK(j["certificate"]["memberships"][0]["grams"][0].contains("gram"));
  CHECK(NumberOrNull(std::nan("")).is_null());
  CHECK(json::parse(j.dump()) == j);

  const auto path = std::filesystem::temp_directory_path() / "gamecert_io_test.json";
  WriteJsonFile(path.string(), j);
  CHECK(ReadJsonFile(path.string()) == j);
  std::filesystem::remove(path);
}

}  // TEST_SUITE
