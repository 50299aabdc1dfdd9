#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bidcg::cli {

/// Exit codes besides 0 and CLI11's own usage errors.
inline constexpr int kSuiteFailed = 1;
inline constexpr int kBadInput = 2;
inline constexpr int kCounterexample = 3;

/// Runs one command line (args excludes the program name). Output goes to
/// `out`, or to the --out file when given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "3", "0..4" or "0,2,4".
std::vector<int> parse_tb_range(const std::string& text);

}  // namespace bidcg::cli
