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

#include "ghzforge/errors.hpp"

#include <algorithm>
#include <iostream>
#include <mutex>
#include <utility>

namespace ghzforge {
namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

WarningSink& current_sink() {
  static WarningSink sink = [](const std::string& message) {
    std::cerr << "ghzforge: warning: " << message << '\n';
  };
  return sink;
}

}  // namespace

WarningSink set_warning_sink(WarningSink sink) {
  std::lock_guard lock(sink_mutex());
  return std::exchange(current_sink(), std::move(sink));
}

void warn(const std::string& message) {
  std::lock_guard lock(sink_mutex());
  if (current_sink()) current_sink()(message);
}

ScopedWarningCapture::ScopedWarningCapture() {
  previous_ = set_warning_sink([this](const std::string& message) { messages_.push_back(message); });
}

ScopedWarningCapture::~ScopedWarningCapture() { set_warning_sink(std::move(previous_)); }

bool ScopedWarningCapture::contains(const std::string& fragment) const {
  return std::any_of(messages_.begin(), messages_.end(),
                     [&](const std::string& m) { return m.find(fragment) != std::string::npos; });
}

}  // namespace ghzforge
