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

#include <chrono>
#include <random>
#include <string>

#include "closlab/errors.hpp"
#include "closlab/io.hpp"
#include "doctest.h"
#include "fixtures.hpp"

namespace closlab {
namespace {

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

TEST_CASE("digraph files") {
  const Digraph k2 = parse_digraph("digraph 2\n1 2\n2 1\n");
  CHECK(same_table(from_digraph(k2), from_digraph(complete_digraph(2))));

  const Digraph fig = parse_digraph(
      "# irk not monotone\n"
      "digraph 5\n"
      "1 3\n2 3\n3 4\n4 5\n5 4\n4 1\n4 2\n");
  CHECK(fig.arcs() == fixtures::nonmonotone_irk_digraph().arcs());
  CHECK(format_digraph(parse_digraph(format_digraph(fig))) == format_digraph(fig));

  CHECK(same_table(from_digraph(parse_digraph("digraph 1\n1 1\n")), uniform(1, 1)));

  CHECK_THROWS_AS(parse_digraph("graph 2\n"), ParseError);
  CHECK_THROWS_AS(parse_digraph(""), ParseError);
  const std::string range = error_of([] { parse_digraph("digraph 2\n1 3\n"); });
  CHECK(range.find("line 2") != std::string::npos);
  CHECK(range.find("out of range") != std::string::npos);
  const std::string dup = error_of([] { parse_digraph("digraph 2\n1 2\n\n1 2\n"); });
  CHECK(dup.find("line 4") != std::string::npos);
  CHECK(dup.find("duplicate") != std::string::npos);
  CHECK_THROWS_AS(parse_digraph("digraph 2\n1 x\n"), ParseError);
}

TEST_CASE("closure tables round trip") {
  for (const ClosureOperator& op : {chain(3), uniform(2, 4), fixtures::c5(),
                                   from_digraph(fixtures::nonmonotone_irk_digraph())}) {
    const std::string text = format_closure_table(op);
    CHECK(same_table(parse_closure_table(text), op));
    CHECK(format_closure_table(parse_closure_table(text)) == text);
  }
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const ClosureOperator op = random_moore(1 + static_cast<int>(rng() % 6), rng());
    CHECK(same_table(parse_closure_table(format_closure_table(op)), op));
    const SetOperator a = random_set_operator(static_cast<int>(rng() % 5), rng());
    CHECK(parse_setop_table(format_setop_table(a)) == a);
  }
  CHECK(format_closure_table(chain(1)) == "closure 1\n{} -> {}\n{1} -> {1}\n");
}

TEST_CASE("closure table errors") {
  // Extensivity fails at {1}.
  const std::string bad = "closure 1\n{} -> {}\n{1} -> {}\n";
  const std::string msg = error_of([&] { parse_closure_table(bad); });
  CHECK(msg.find("extensive") != std::string::npos);
  CHECK(msg.find("{1}") != std::string::npos);
  CHECK_THROWS_AS(parse_closure_table(bad), ValidationError);
  CHECK(parse_closure_table(bad, false)(1) == 0);
  CHECK(parse_setop_table(bad)(1) == 0);

  CHECK_THROWS_AS(parse_closure_table("setop 1\n{} -> {}\n{1} -> {1}\n"), ParseError);
  CHECK(error_of([] { parse_table("closure 1\n{} -> {}\n"); }).find("missing") !=
        std::string::npos);
  CHECK(error_of([] { parse_table("closure 1\n{} -> {}\n{} -> {1}\n{1} -> {1}\n"); })
            .find("line 3") != std::string::npos);
  CHECK_THROWS_AS(parse_table("closure 2\n{} -> {}\n{1} -> {1}\n{2} -> {2}\n{2,1} -> {1,2}\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_table("closure 1\n{} -> {}\n{1 -> {1}\n"), ParseError);
  CHECK_THROWS_AS(parse_table("closure 1\n{} -> {}\n{1} {1}\n"), ParseError);
  CHECK_THROWS_AS(parse_table("closure 1\n{} -> {}\n{1} -> {2}\n"), ParseError);
}

TEST_CASE("n = 4 table parses quickly") {
  const std::string text = format_closure_table(from_digraph(undirected_cycle(4)));
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 10; ++i) parse_closure_table(text);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  CHECK(elapsed < std::chrono::milliseconds(100));
}

TEST_CASE("coding function files") {
  const CodingFunction f = c4_solution(2);
  const std::string text = format_coding_function(f);
  const CodingFunction g = parse_coding_function(text, f.op);
  CHECK(g.q == f.q);
  CHECK(g.r == f.r);
  CHECK(g.parts == f.parts);
  CHECK(is_solution(g));
  CHECK_THROWS_AS(parse_coding_function("coding 3 2 2\n0\n0\n0\n", f.op), ParseError);
  CHECK_THROWS_AS(parse_coding_function("coding 4 2 2\n0011\n", f.op), ParseError);
}

}  // namespace
}  // namespace closlab
