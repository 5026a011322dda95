// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace levymart::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitCheckFailed = 3;
inline constexpr int kExitInconclusive = 4;

/// Runs one subcommand. `args` excludes the program name. Exactly one JSON
/// document is written to `out`; diagnostics and usage go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace levymart::cli
