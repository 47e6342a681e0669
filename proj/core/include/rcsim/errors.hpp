// Copyright 2026 The rcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RCSIM_ERRORS_HPP
#define RCSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rcsim {

/// A request exceeds a configured size limit (dense qubit cap, lightcone
/// width, ...). The CLI maps this to its sizing exit code.
struct capacity_error : std::runtime_error {
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

/// Internal consistency violation (corrupted tableau, negative probability
/// beyond tolerance, ...).
struct integrity_error : std::runtime_error {
  explicit integrity_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rcsim

#endif
