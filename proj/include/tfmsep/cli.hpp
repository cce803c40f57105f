// Copyright 2026 The tfmsep Authors
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

#ifndef TFMSEP_CLI_HPP_
#define TFMSEP_CLI_HPP_

namespace tfmsep {

// The tfmsep command line: synth | train | separate | evaluate, options
// layered as desk-scale defaults, then --config file, then explicit
// flags. Returns the process exit code: 0 success, 2 usage/parameter
// errors, 3 data errors, 4 numeric errors.
int run_cli(int argc, const char* const* argv);

}  // namespace tfmsep

#endif  // TFMSEP_CLI_HPP_
