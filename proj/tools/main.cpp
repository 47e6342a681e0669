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

#include <cstdlib>

#include "rcsim/cli.hpp"

int main(int argc, char** argv) {
  // Keep BLAS single-threaded: realizations parallelize at the worker level
  // and results must not depend on the BLAS pool size.
  setenv("OPENBLAS_NUM_THREADS", "1", 0);
  return rcsim::cli_main(argc, argv);
}
