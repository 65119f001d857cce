// Copyright 2026 The brip Authors.
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

#ifndef BRIP_CLI_HPP
#define BRIP_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace brip::cli {

/// Dispatches the subcommands (sample, audit-bias, hw-moments, rip-exact,
/// jl-tail, recover-demo, budget). Exit codes: 0 success, 1 verification
/// failure or runtime error, 2 invalid arguments, 3 capacity exceeded.
/// All randomness flows from --master-seed; --entropy draws one from the
/// platform and prints it.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// argv wrapper used by the binary.
int run_main(int argc, char** argv);

}  // namespace brip::cli

#endif  // BRIP_CLI_HPP
