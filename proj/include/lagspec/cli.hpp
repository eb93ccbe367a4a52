#pragma once

// Command-line front end: approx-const, spectrum, height, penetration,
// duality-check and closure-report.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lagspec {

struct RunConfig {
    std::string setting = "rational";  // rational | bianchi | heisenberg
    std::int64_t m = 1;
    std::string ideal = "1";
    std::int64_t norm_bound = 0;  // 0: command default
    int word_length = 0;          // 0: command default
    int depth = 40;
    std::string format = "csv";
    std::string out;
    std::uint64_t seed = 1;
};

/// Exit codes: 0 success, 1 usage or parse error, 2 domain precondition,
/// 3 internal failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lagspec
