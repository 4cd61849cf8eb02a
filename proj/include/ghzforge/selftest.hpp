// Copyright 2026 The ghzforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Built-in invariant suite, runnable from the CLI on a fresh install.

#ifndef GHZFORGE_SELFTEST_HPP
#define GHZFORGE_SELFTEST_HPP

#include <string>
#include <vector>

namespace ghzforge {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct SelftestOptions {
  bool quick = false;
  /// Deliberately corrupts one input so the matching check must fail.
  std::string inject_fault;
};

/// Names accepted by SelftestOptions::inject_fault.
std::vector<std::string> selftest_fault_names();

std::vector<CheckResult> run_selftest(const SelftestOptions& options);

}  // namespace ghzforge

#endif  // GHZFORGE_SELFTEST_HPP
