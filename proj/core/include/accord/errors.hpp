// Copyright 2026 The Accord Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace accord {

/// Malformed documents, unknown ids, schema violations, enumeration-cap
/// overruns. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// An instance or a set of demand reports breaks the gross-complements
/// precondition the engine relies on. The CLI maps this to exit code 3.
class GcViolation : public std::runtime_error {
 public:
  explicit GcViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace accord
