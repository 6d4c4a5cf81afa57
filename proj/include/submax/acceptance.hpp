// Copyright 2025 The Authors.
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
//
// The guarantee-and-property verification suite behind `submax verify`:
// twelve desk-scale criteria checked against brute-force optima and the
// exact coverage multilinear oracle, one pass/fail line each.

#ifndef SUBMAX_ACCEPTANCE_HPP_
#define SUBMAX_ACCEPTANCE_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace submax::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// Runs criteria (all twelve if `only` is empty) printing one line per
// criterion to `out` as they finish.
std::vector<CriterionResult> run(std::ostream& out,
                                 const std::vector<int>& only = {});

// Convenience wrapper: 0 iff every criterion passed.
int run_as_main(std::ostream& out, const std::vector<int>& only = {});

}  // namespace submax::acceptance

#endif  // SUBMAX_ACCEPTANCE_HPP_
