// Copyright 2026 The cvcorr Authors
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

#ifndef CVCORR_TOOLS_CLI_HPP
#define CVCORR_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace cvcorr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Parses start:stop:step (endpoints inclusive within half a step), a
/// comma-separated list, or a single number. Throws ParseError.
std::vector<double> parse_grid(const std::string &spec);

/// args excludes the program name. Output files go to --out, otherwise to
/// `out`; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace cvcorr::cli

#endif  // CVCORR_TOOLS_CLI_HPP
