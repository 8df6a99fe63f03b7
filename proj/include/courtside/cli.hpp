// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>

namespace courtside {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/// Subcommands: analyze, classify, evaluate, synth, synth-refs, demo-data, explain, serve.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace courtside
