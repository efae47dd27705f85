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


// Shared operators for the test binaries.

#ifndef CLOSLAB_TESTS_FIXTURES_HPP_
#define CLOSLAB_TESTS_FIXTURES_HPP_

#include "closlab/closure.hpp"
#include "closlab/constructors.hpp"

namespace closlab::fixtures {

// Inner rank is not monotone here: cl(4) = V but irk({1,2,3}) = 2.
inline Digraph nonmonotone_irk_digraph() {
  return Digraph(5, {{1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 4}, {4, 1}, {4, 2}});
}

inline ClosureOperator c4() { return from_digraph(undirected_cycle(4)).with_label("C4"); }
inline ClosureOperator c5() { return from_digraph(undirected_cycle(5)).with_label("C5"); }

// cl(1) = 12, cl(2) = 2, cl(3) = 3, cl(13) = cl(23) = V.
inline ClosureOperator three_vertex_nonmatroid() {
  return moore_closure(3, {0b000, 0b010, 0b100, 0b011}).with_label("three-vertex");
}

// ork = urk at X = {2,3} fails although its only outer basis {1} is a basis.
inline ClosureOperator outer_basis_counterexample() {
  return moore_closure(3, {0b000, 0b010, 0b100, 0b110}).with_label("outer-basis-counterexample");
}

}  // namespace closlab::fixtures

#endif  // CLOSLAB_TESTS_FIXTURES_HPP_
