// Copyright 2026 The pirlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PIRLAB_ERRORS_HPP
#define PIRLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pirlab {

/// No scheme with positive rate (or a full-file download) exists for the
/// requested parameters.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Two independent verification routes disagreed.  This always indicates an
/// implementation bug, never a property of the scheme under test.
class ConsistencyError : public std::logic_error {
 public:
  explicit ConsistencyError(const std::string& what)
      : std::logic_error(what) {}
};

/// A configuration file failed validation; `what()` names the field path.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pirlab

#endif  // PIRLAB_ERRORS_HPP
