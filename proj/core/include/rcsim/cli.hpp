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

#ifndef RCSIM_CLI_HPP
#define RCSIM_CLI_HPP

namespace rcsim {

/// Entry point shared by the rcsim binary and the in-process CLI tests.
/// Exit codes: 0 success, 2 validation failure, 3 sizing/capacity error,
/// 1 anything else.
int cli_main(int argc, const char* const* argv);

}  // namespace rcsim

#endif
