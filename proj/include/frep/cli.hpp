#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "frep/io.hpp"

namespace frep {

constexpr const char* kVersion = "0.1.0";

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitAssertion = 1, kExitInput = 2 };

/// Runs the `frep` command line (args excludes the program name). The JSON
/// report goes to `out` unless --out is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs `body` and maps its outcome to an exit code: InputError -> 2,
/// AssertionFailure -> 1, each with a one-line diagnostic on `err`.
int guarded(const std::string& what, const std::function<void()>& body, std::ostream& err);

/// Resolves a representation source: "pauli", "trivial:<d>", "haar:<d>:<seed>"
/// or a path to a representation JSON file.
Representation load_rep_source(const std::string& source, int k = 2);

}  // namespace frep
