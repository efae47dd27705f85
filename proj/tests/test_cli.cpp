// Copyright 2026 The Authors.
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
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "closlab/cli.hpp"
#include "closlab/io.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"

namespace closlab {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct Run {
  int code = 0;
  Json report;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_command(args, out, err);
  r.report = Json::parse(out.str());
  r.err = err.str();
  return r;
}

// A fresh scratch directory per test case.
struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() /
          ("closlab_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
  std::stringstream buf;
  buf << std::ifstream(path).rdbuf();
  return buf.str();
}

Json rat(long num, long den) { return Json{{"num", num}, {"den", den}}; }

TEST_CASE("documented invocations") {
  Scratch s;
  const std::string c5 = s.write("c5.digraph", format_digraph(undirected_cycle(5)));

  const Run ranks = run({"ranks", "--input", c5, "--kind", "digraph", "--subset", "{1,2}"});
  REQUIRE(ranks.code == 0);
  CHECK(ranks.report["command"] == "ranks");
  CHECK(ranks.report["status"] == "ok");
  CHECK(ranks.report["operator"]["n"] == 5);
  CHECK(ranks.report["operator"]["rank"] == 3);
  CHECK(ranks.report["result"]["ork"] == 2);
  CHECK(ranks.report["result"]["irk"] == 2);
  CHECK(ranks.report["result"]["urk"] == 2);
  CHECK(ranks.report["result"]["subset"] == Json{1, 2});

  const Run se = run({"shannon", "--input", c5, "--kind", "digraph"});
  REQUIRE(se.code == 0);
  CHECK(se.report["result"]["value"] == rat(5, 2));

  const std::string tree = s.path("t.tree");
  REQUIRE(run({"construct", "tree", "2", "3/2", "--out", tree}).code == 0);
  const Run tree_se = run({"shannon", "--input", tree});
  REQUIRE(tree_se.code == 0);
  CHECK(tree_se.report["result"]["value"] == rat(3, 2));
  const Run pinch = run({"shannon", "--input", tree, "--pinch"});
  CHECK(pinch.report["result"]["pinched"] == true);
  CHECK(pinch.report["result"]["value"] == rat(3, 2));
}

TEST_CASE("exit codes and error reports") {
  Scratch s;
  Run r = run({"ranks", "--bogus"});
  CHECK(r.code == kExitInput);
  CHECK(r.report["status"] == "error");
  CHECK(r.report["error"]["kind"] == "usage");
  CHECK(run({}).code == kExitInput);
  CHECK(run({"ranks"}).code == kExitInput);  // no --input
  CHECK(run({"ranks", "--input", s.path("missing")}).code == kExitInput);

  r = run({"ranks", "--input", s.write("bad.digraph", "digraph 2\n1 3\n")});
  CHECK(r.code == kExitInput);
  CHECK(r.report["error"]["kind"] == "parse");
  CHECK(r.report["error"]["message"].get<std::string>().find("line 2") != std::string::npos);

  const std::string bad_table = s.write("bad.table", "closure 1\n{} -> {}\n{1} -> {}\n");
  r = run({"flats", "--input", bad_table});
  CHECK(r.code == kExitInput);
  CHECK(r.report["error"]["kind"] == "validation");
  r = run({"validate", "--input", bad_table});
  CHECK(r.code == kExitInput);
  CHECK(r.report["status"] == "invalid");
  CHECK(r.report["result"]["violations"][0]["rule"] == "extensive");
  CHECK(r.report["result"]["violations"][0]["subset"] == Json{1});

  // The header says table, the kind says digraph.
  CHECK(run({"ranks", "--input", bad_table, "--kind", "digraph"}).code == kExitInput);
  // A set operator is not accepted where a closure operator is needed.
  const std::string setop = s.write("a.setop", "setop 1\n{} -> {1}\n{1} -> {}\n");
  CHECK(run({"shannon", "--input", setop}).report["error"]["kind"] == "validation");
  CHECK(run({"construct", "tree", "2", "1.5"}).code == kExitInput);
  CHECK(run({"construct", "nonsense", "3"}).code == kExitInput);

  const std::string c4 = s.write("c4.digraph", format_digraph(undirected_cycle(4)));
  r = run({"solve", "--input", c4, "--alphabet", "3", "--budget", "5"});
  CHECK(r.code == kExitBudget);
  CHECK(r.report["status"] == "budget_exceeded");
  CHECK(r.report["result"]["budget_exhausted"] == true);

  const std::string big = s.path("big.setop");
  REQUIRE(run({"construct", "randomset", "8", "--out", big}).code == 0);
  r = run({"reduce", "--input", big, "--equivalence", "2", "4"});
  CHECK(r.code == kExitBudget);
  CHECK(r.report["error"]["kind"] == "budget");

  const std::string wide = s.path("wide.tree");
  REQUIRE(run({"construct", "tree", "2", "5/4", "--out", wide}).code == 0);
  r = run({"ranks", "--input", wide});
  CHECK(r.code == kExitBudget);
  CHECK(r.report["error"]["kind"] == "size_limit");

  std::ostringstream help, help_err;
  CHECK(run_command({"--help"}, help, help_err) == 0);
  CHECK(help.str().find("construct") != std::string::npos);
}

TEST_CASE("analysis commands") {
  Scratch s;
  const std::string c4 = s.write("c4.digraph", format_digraph(undirected_cycle(4)));
  const std::string c5 = s.write("c5.digraph", format_digraph(undirected_cycle(5)));

  Run r = run({"matroid", "--input", c4});
  REQUIRE(r.code == 0);
  CHECK(r.report["result"]["matroid"] == false);
  CHECK(r.report["result"]["consistent"] == true);
  CHECK(r.report["result"]["span_operator"]["uniform_rank"] == 2);
  r = run({"matroid", "--input", c5});
  CHECK_FALSE(r.report["result"]["ork_submodularity_violation"].is_null());

  r = run({"complemented", "--input", c5});
  CHECK(r.report["result"]["outer_complemented"] == true);
  CHECK(r.report["result"]["outer_count"] == 32);
  CHECK(run({"complemented", "--input", c5, "--subset", "{1,3}"}).report["result"]["outer"] ==
        true);

  CHECK_FALSE(run({"obstruction", "--input", c5}).report["result"]["obstruction"].is_null());
  CHECK(run({"obstruction", "--input", c4}).report["result"]["obstruction"].is_null());

  r = run({"flats", "--input", s.write("u24.table", format_closure_table(uniform(2, 4)))});
  CHECK(r.report["result"]["flats"].size() == 1 + 4 + 1);

  r = run({"ranks", "--input", c4});
  CHECK(r.report["result"]["ranks"].size() == 16);

  r = run({"solve", "--input", c4, "--alphabet", "2", "--chain"});
  REQUIRE(r.code == 0);
  CHECK(r.report["result"]["solvable"] == true);
  CHECK(r.report["result"]["best"] == rat(2, 1));
  CHECK(r.report["result"]["chain"]["holds"] == true);

  CHECK(run({"shannon", "--input", c4, "--mode", "full"}).report["result"]["value"] ==
        run({"shannon", "--input", c4}).report["result"]["value"]);

  const std::string u12 = s.write("u12.table", format_closure_table(uniform(1, 2)));
  for (const char* op : {"disjoint", "uni", "bi"}) {
    r = run({"combine", "--op", op, u12, c4, "--shannon"});
    REQUIRE(r.code == 0);
    CHECK(r.report["operator"]["n"] == 6);
    CHECK(r.report["result"]["shannon"]["holds"] == true);
  }
}

TEST_CASE("construct, reduce and files") {
  Scratch s;
  const std::string table = s.path("r.table");
  REQUIRE(run({"construct", "random", "5", "--seed", "7", "--out", table}).code == 0);
  CHECK(run({"validate", "--input", table}).report["result"]["valid"] == true);
  // The printed file equals the written one.
  const Run inline_file = run({"construct", "random", "5", "--seed", "7"});
  CHECK(inline_file.report["result"]["file"] == slurp(table));

  const std::string setop = s.write("swap.setop", "setop 1\n{} -> {1}\n{1} -> {}\n");
  const std::string reduced = s.path("swap.table");
  Run r = run({"reduce", "--input", setop, "--equivalence", "2", "3", "--out", reduced});
  REQUIRE(r.code == 0);
  CHECK(r.report["result"]["closure_valid"] == true);
  CHECK(r.report["result"]["equivalence"]["equivalent"] == true);
  CHECK(same_table(parse_closure_table(slurp(reduced)), uniform(0, 1)));

  const std::string empty = s.write("empty.setop", "setop 1\n{} -> {}\n{1} -> {}\n");
  r = run({"reduce", "--input", empty});
  CHECK(r.report["result"]["union_of_images_not_extensive"] == Json{1});

  // --out on an analysis command receives the report.
  const std::string report = s.path("report.json");
  std::ostringstream out, err;
  CHECK(run_command({"validate", "--input", table, "--out", report}, out, err) == 0);
  CHECK(out.str().empty());
  std::ifstream report_in(report);
  CHECK(Json::parse(report_in)["result"]["valid"] == true);
}

TEST_CASE("reports are deterministic") {
  Scratch s;
  const std::string c4 = s.write("c4.digraph", format_digraph(undirected_cycle(4)));
  const std::vector<std::string> args = {"solve", "--input", c4, "--alphabet", "2", "--chain"};
  std::ostringstream a, b, err;
  run_command(args, a, err);
  run_command(args, b, err);
  CHECK(a.str() == b.str());
  std::vector<std::string> threaded = args;
  threaded.insert(threaded.end(), {"--threads", "2"});
  CHECK(run(threaded).report["result"] == run(args).report["result"]);
  CHECK(run({"construct", "random", "6", "--seed", "3"}).report ==
        run({"construct", "random", "6", "--seed", "3"}).report);
}

}  // namespace
}  // namespace closlab
