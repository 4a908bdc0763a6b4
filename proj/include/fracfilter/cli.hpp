#pragma once

#include <ostream>
#include <string>

namespace fracfilter {

// Exit codes of the command-line front end.
enum ExitCode : int { kOk = 0, kUsage = 1, kRegime = 2, kNumerical = 3, kVerifyFailed = 4 };

// Runs `fracfilter <steady|sweep|verify> ...`. CSV and reports go to out,
// diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Locale-independent shortest round-trip text at `digits` significant digits.
std::string format_number(double v, int digits = 12);

}  // namespace fracfilter
