// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef UAVTIER_CLI_HPP
#define UAVTIER_CLI_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace uavtier::cli {

inline constexpr std::string_view kSchemaVersion = "1.0";

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 2,
    kNumeric = 3,
    kBudget = 4,
};

/// Runs `uavtier <args...>` (args excludes the program name). Reports go to
/// `out`, diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// RFC 4180 field: quoted when it holds a comma, quote, CR or LF.
std::string csv_field(std::string_view value);

} // namespace uavtier::cli

#endif // UAVTIER_CLI_HPP
