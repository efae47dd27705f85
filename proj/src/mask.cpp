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

#include "closlab/mask.hpp"

#include <cctype>
#include <charconv>

namespace closlab {

std::vector<int> vertices_of(Mask x) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(cardinality(x)));
  while (x != 0) {
    out.push_back(std::countr_zero(x) + 1);
    x &= x - 1;
  }
  return out;
}

std::string format_subset(Mask x) {
  std::string out = "{";
  bool first = true;
  for (int v : vertices_of(x)) {
    if (!first) out += ',';
    out += std::to_string(v);
    first = false;
  }
  out += '}';
  return out;
}

Mask parse_subset(std::string_view text, int n) {
  auto skip_ws = [&](std::size_t& i) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  std::size_t i = 0;
  skip_ws(i);
  if (i >= text.size() || text[i] != '{') {
    throw ParseError("subset must start with '{': \"" + std::string(text) + "\"");
  }
  ++i;
  Mask out = 0;
  skip_ws(i);
  if (i < text.size() && text[i] == '}') {
    ++i;
  } else {
    while (true) {
      skip_ws(i);
      int v = 0;
      const auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
      if (ec != std::errc()) {
        throw ParseError("expected a vertex number in \"" + std::string(text) + "\"");
      }
      i = static_cast<std::size_t>(ptr - text.data());
      if (v < 1 || v > n) {
        throw ParseError("vertex " + std::to_string(v) + " out of range 1.." + std::to_string(n));
      }
      if (has_vertex(out, v)) {
        throw ParseError("vertex " + std::to_string(v) + " repeated in subset");
      }
      out |= vertex_bit(v);
      skip_ws(i);
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == '}') {
        ++i;
        break;
      }
      throw ParseError("malformed braces in \"" + std::string(text) + "\"");
    }
  }
  skip_ws(i);
  if (i != text.size()) throw ParseError("trailing text after subset \"" + std::string(text) + "\"");
  return out;
}

}  // namespace closlab
