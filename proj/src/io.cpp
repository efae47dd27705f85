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

#include "closlab/io.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "closlab/errors.hpp"

namespace closlab {
namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Non-blank, non-comment lines.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    const std::size_t end = text.find('\n');
    const std::string_view raw = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
    ++number;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    out.push_back({number, line});
  }
  return out;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

int parse_int(std::string_view word, std::size_t line, const char* what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
  if (ec != std::errc() || ptr != word.data() + word.size()) {
    throw ParseError(std::string("expected ") + what + ", got \"" + std::string(word) + "\"", line);
  }
  return v;
}

// Header "<keyword> <ints...>"; returns the ints.
std::vector<int> header(const std::vector<Line>& lines, std::string_view keyword, std::size_t count) {
  if (lines.empty()) throw ParseError("empty input, expected a \"" + std::string(keyword) + "\" header");
  const auto w = words(lines[0].text);
  if (w.empty() || w[0] != keyword || w.size() != count + 1) {
    throw ParseError("bad header \"" + std::string(lines[0].text) + "\"", lines[0].number);
  }
  std::vector<int> out;
  for (std::size_t i = 1; i < w.size(); ++i) out.push_back(parse_int(w[i], lines[0].number, "an integer"));
  return out;
}

// Parses a subset written with strictly increasing vertices.
Mask sorted_subset(std::string_view text, int n, std::size_t line) {
  Mask x = 0;
  try {
    x = parse_subset(text, n);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line);
  }
  std::string compact;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) compact += ch;
  }
  if (compact != format_subset(x)) {
    throw ParseError("vertices of " + std::string(text) + " must be listed in increasing order", line);
  }
  return x;
}

}  // namespace

Digraph parse_digraph(std::string_view text) {
  const std::vector<Line> lines = content_lines(text);
  const int n = header(lines, "digraph", 1)[0];
  if (n < 0 || n > kMaxGroundSet) {
    throw ParseError("vertex count must be in 0.." + std::to_string(kMaxGroundSet), lines[0].number);
  }
  Digraph d(n);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto w = words(lines[i].text);
    if (w.size() != 2) throw ParseError("expected \"u v\"", lines[i].number);
    const int u = parse_int(w[0], lines[i].number, "a vertex");
    const int v = parse_int(w[1], lines[i].number, "a vertex");
    if (u < 1 || u > n || v < 1 || v > n) {
      throw ParseError("arc " + std::to_string(u) + " " + std::to_string(v) + " out of range 1.." +
                           std::to_string(n),
                       lines[i].number);
    }
    if (d.has_arc(u, v)) {
      throw ParseError("duplicate arc " + std::to_string(u) + " " + std::to_string(v),
                       lines[i].number);
    }
    d.add_arc(u, v);
  }
  return d;
}

std::string format_digraph(const Digraph& d) {
  std::ostringstream out;
  out << "digraph " << d.size() << '\n';
  for (const auto& [u, v] : d.arcs()) out << u << ' ' << v << '\n';
  return out.str();
}

TableFile parse_table(std::string_view text) {
  const std::vector<Line> lines = content_lines(text);
  if (lines.empty()) throw ParseError("empty input, expected a \"closure\" or \"setop\" header");
  TableFile out;
  const auto w = words(lines[0].text);
  if (w.size() != 2 || (w[0] != "closure" && w[0] != "setop")) {
    throw ParseError("bad header \"" + std::string(lines[0].text) + "\"", lines[0].number);
  }
  out.setop = w[0] == "setop";
  out.n = parse_int(w[1], lines[0].number, "a vertex count");
  if (out.n < 0 || out.n > kMaxTableSize) {
    throw ParseError("table size must be in 0.." + std::to_string(kMaxTableSize), lines[0].number);
  }
  const std::size_t count = subset_count(out.n);
  out.table.assign(count, 0);
  std::vector<bool> seen(count);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string_view line = lines[i].text;
    const std::size_t arrow = line.find("->");
    if (arrow == std::string_view::npos) throw ParseError("expected \"{...} -> {...}\"", lines[i].number);
    const Mask x = sorted_subset(trim(line.substr(0, arrow)), out.n, lines[i].number);
    const Mask y = sorted_subset(trim(line.substr(arrow + 2)), out.n, lines[i].number);
    if (seen[x]) throw ParseError("subset " + format_subset(x) + " listed twice", lines[i].number);
    seen[x] = true;
    out.table[x] = y;
  }
  for (Mask x = 0; x < count; ++x) {
    if (!seen[x]) throw ParseError("subset " + format_subset(x) + " is missing");
  }
  return out;
}

ClosureOperator parse_closure_table(std::string_view text, bool validate) {
  TableFile file = parse_table(text);
  if (file.setop) throw ParseError("expected a \"closure\" table, got \"setop\"", 1);
  if (validate) {
    const ValidationReport report = validate_closure_table(file.n, file.table);
    if (!report.valid) {
      const Violation& v = report.violations.front();
      throw ValidationError("not a closure operator: " + v.rule + " fails at " +
                            format_subset(v.subset) + " (" + v.detail + ")");
    }
  }
  return ClosureOperator(file.n, std::move(file.table));
}

SetOperator parse_setop_table(std::string_view text) {
  TableFile file = parse_table(text);
  return SetOperator(file.n, std::move(file.table));
}

namespace {

std::string format_table(const char* keyword, int n, const std::vector<Mask>& table) {
  std::string out = std::string(keyword) + " " + std::to_string(n) + "\n";
  for (Mask x = 0; x < table.size(); ++x) {
    out += format_subset(x);
    out += " -> ";
    out += format_subset(table[x]);
    out += '\n';
  }
  return out;
}

}  // namespace

std::string format_closure_table(const ClosureOperator& op) {
  return format_table("closure", op.size(), op.materialize());
}

std::string format_setop_table(const SetOperator& a) {
  return format_table("setop", a.size(), a.table());
}

TreeFile parse_tree_file(std::string_view text) {
  const std::vector<Line> lines = content_lines(text);
  if (lines.empty()) throw ParseError("empty input, expected a \"tree\" header");
  const auto w = words(lines[0].text);
  if (w.size() != 3 || w[0] != "tree") {
    throw ParseError("bad header \"" + std::string(lines[0].text) + "\"", lines[0].number);
  }
  if (lines.size() > 1) throw ParseError("unexpected content after the tree header", lines[1].number);
  TreeFile out;
  out.r = parse_int(w[1], lines[0].number, "a rank");
  try {
    out.H = BigRational::parse(w[2]);
  } catch (const std::exception& e) {
    throw ParseError(e.what(), lines[0].number);
  }
  return out;
}

std::string format_tree_file(int r, const BigRational& H) {
  return "tree " + std::to_string(r) + " " + H.str() + "\n";
}

std::string header_keyword(std::string_view text) {
  const std::vector<Line> lines = content_lines(text);
  if (lines.empty()) return {};
  return std::string(words(lines[0].text)[0]);
}

CodingFunction parse_coding_function(std::string_view text, const ClosureOperator& op) {
  const std::vector<Line> lines = content_lines(text);
  const std::vector<int> h = header(lines, "coding", 3);
  if (h[0] != op.size()) {
    throw ParseError("coding function has " + std::to_string(h[0]) + " vertices, the operator " +
                         std::to_string(op.size()),
                     lines[0].number);
  }
  if (lines.size() != static_cast<std::size_t>(h[0]) + 1) {
    throw ParseError("expected one partition line per vertex");
  }
  CodingFunction f;
  f.op = op;
  f.q = h[1];
  f.r = h[2];
  for (std::size_t i = 1; i < lines.size(); ++i) {
    try {
      f.parts.push_back(Partition::parse_rgs(lines[i].text));
    } catch (const std::exception& e) {
      throw ParseError(e.what(), lines[i].number);
    }
  }
  return f;
}

std::string format_coding_function(const CodingFunction& f) {
  std::string out = "coding " + std::to_string(f.parts.size()) + " " + std::to_string(f.q) + " " +
                    std::to_string(f.r) + "\n";
  for (const Partition& p : f.parts) out += p.rgs() + "\n";
  return out;
}

}  // namespace closlab
