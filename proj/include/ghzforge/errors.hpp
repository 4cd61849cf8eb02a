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

#ifndef GHZFORGE_ERRORS_HPP
#define GHZFORGE_ERRORS_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghzforge {

/// Malformed or out-of-range input (bad scenario file, dimension mismatch,
/// parameter outside its physical domain). CLI exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical precondition does not hold (step too large for the fastest
/// frequency, degenerate denominator). CLI exit code 3.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A GHZ phase condition has no solution for the requested integers.
/// CLI exit code 4.
class UnsolvableConditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Non-fatal diagnostics (RWA ratio too large, truncation suspicious, ...)
// go through a process-wide sink. The default writes to stderr.
using WarningSink = std::function<void(const std::string&)>;

/// Installs `sink` and returns the previous one. Thread-safe.
WarningSink set_warning_sink(WarningSink sink);

void warn(const std::string& message);

/// Collects warnings for the lifetime of the object; restores the previous
/// sink on destruction.
class ScopedWarningCapture {
 public:
  ScopedWarningCapture();
  ~ScopedWarningCapture();
  ScopedWarningCapture(const ScopedWarningCapture&) = delete;
  ScopedWarningCapture& operator=(const ScopedWarningCapture&) = delete;

  const std::vector<std::string>& messages() const { return messages_; }
  bool contains(const std::string& fragment) const;

 private:
  std::vector<std::string> messages_;
  WarningSink previous_;
};

}  // namespace ghzforge

#endif  // GHZFORGE_ERRORS_HPP
