// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The chirpwave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace chirpwave {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  bool small = false;  // desk-scale variant of the sweeps
  std::vector<int> only;  // empty runs all
};

// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& os);

}  // namespace chirpwave
