#pragma once

// Subcommand dispatch: turns a validated RunConfig into a CSV table with
// provenance comments. Deterministic by construction (fixed formatting, no
// clocks, no randomness), so identical configs give byte-identical output.

#include <stdexcept>
#include <string>
#include <vector>

#include "qworldline/config.hpp"

namespace qwl::cli {

struct NonConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CsvTable {
    std::vector<std::string> provenance;  // comment lines, emitted with '# '
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_string() const;
};

// 12 significant digits, lowercase scientific notation.
std::string format_number(double v);

CsvTable run(const RunConfig& config);

}  // namespace qwl::cli
