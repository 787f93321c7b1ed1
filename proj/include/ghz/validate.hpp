// Copyright 2026 The ghzsim Authors
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

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ghz/oracle.hpp"
#include "ghz/protocol.hpp"

namespace ghz {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Operator algebra, Hermiticity, excitation conservation, analytic Raman
// identities, trace/positivity of a protocol run and the Liouvillian oracle,
// all at the given setup and b.
std::vector<CheckResult> run_invariant_suite(const ProtocolSetup& setup, double b);

// Piecewise-constant comparison of one protocol step against the Liouvillian
// exponential. Step one starts from |e,0,1,0>, step two from the ideal
// step-one output (|e,0,1,0> + i|g,1,0,0>)/sqrt(2).
OracleComparison step_oracle_check(const ProtocolSetup& setup, double b, Step step,
                                   std::size_t slices);

}  // namespace ghz
