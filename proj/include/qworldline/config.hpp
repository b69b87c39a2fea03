#pragma once

// Flat key-value run configuration: `key = value` lines, `#` comments, one
// `command = ...` selector, per-command key schemas with defaults. Unknown
// or ill-typed keys are hard errors carrying the offending key name.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace qwl::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    // Keys the document actually set (validated); defaults live in the
    // schema and are applied by the accessors below.
    std::map<std::string, std::string> values;

    bool has(const std::string& key) const { return values.count(key) != 0; }
    // Typed accessors falling back to the schema default for the command.
    double real(const std::string& key) const;
    long integer(const std::string& key) const;
    std::string str(const std::string& key) const;

    bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& text);

// Canonical form: `command = ...` first, then the set keys sorted by name,
// each `key = value` with single spaces. Parsing its own output is the
// identity, which pins the config hash.
std::string canonical_serialize(const RunConfig& config);

// FNV-1a (64-bit) over the canonical serialization.
std::uint64_t config_hash(const RunConfig& config);

// Range syntax `start:stop:count` used by sweep parameters.
struct SweepRange {
    double start = 0.0;
    double stop = 0.0;
    long count = 0;

    double at(long i) const;
};
SweepRange parse_range(const std::string& key, const std::string& text);

// Rendered documentation of every command's keys and defaults (--help body).
std::string config_reference();

}  // namespace qwl::cli
