#pragma once

#include "c2f/parser.hpp"

#include <string>

namespace c2f {

// Exit codes: 0 decisive, 1 error, 2 Unknown (scriptable without JSON parsing).
struct CliResult {
    int exit_code = 0;
    std::string json;
};

struct CliOptions {
    std::string field_flag;       // --field <spec>
    std::uint64_t seed = 0;       // --seed
    long long budget = -1;        // --budget (brute candidate cap)
    int monomial_deg = 2;         // --deg
    bool stable_time = false;     // --stable-json: elapsed_ms reported as 0
};

/// Run one command line (the batch-line grammar) and emit the JSON document.
CliResult run_command_line(const std::string& line, const CliOptions& opt = {});

/// Full argv entry point (also handles `batch <file>`).
int cli_main(int argc, char** argv);

}  // namespace c2f
