/// @file  cli.hpp
/// @brief Entry point of the symta command-line tool

#pragma once

#include <iosfwd>

namespace symta::cli {

enum ExitCode : int {
  kOk = 0,
  /// Negative answer of is-empty, incl and member.
  kNo = 1,
  kUsage = 2,
  kIo = 3,
  kFormat = 4,
  kInternal = 5,
};

/// Runs one command. Answers go to `out`, diagnostics to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace symta::cli
