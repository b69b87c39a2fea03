#include "qworldline/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace qwl::cli {

namespace {

enum class ValueKind { Real, PositiveReal, NonNegativeReal, Integer, Enum, Auto, KeyList };

struct KeySpec {
    const char* key;
    ValueKind kind;
    const char* fallback;  // nullptr: required; "": optional without default
    long int_min = 0;
    std::vector<const char*> choices{};
    bool sweepable = false;
};

const std::vector<KeySpec>& schema_for(const std::string& command) {
    static const std::vector<KeySpec> bound = {
        {"a", ValueKind::NonNegativeReal, "0", 0, {}, true},
        {"alpha", ValueKind::Real, "0", 0, {}, true},
        {"tau_min", ValueKind::Real, "0"},
        {"tau_max", ValueKind::Real, "0"},
        {"tau_count", ValueKind::Integer, "1", 1},
    };
    static const std::vector<KeySpec> spectrum = {
        {"m", ValueKind::PositiveReal, "1", 0, {}, true},
        {"omega", ValueKind::NonNegativeReal, "1", 0, {}, true},
        {"alpha", ValueKind::Real, "0", 0, {}, true},
        {"a", ValueKind::Real, "0", 0, {}, true},
        {"x_min", ValueKind::Real, "-10"},
        {"x_max", ValueKind::Real, "10"},
        {"n_points", ValueKind::Integer, "2001", 8},
        {"levels", ValueKind::Integer, "6", 1},
        {"mode", ValueKind::Enum, "leading", 0, {"bare", "symmetrized", "leading"}},
    };
    static const std::vector<KeySpec> respond = {
        {"omega", ValueKind::Real, "1", 0, {}, true},
        {"lambda", ValueKind::Real, "0.01", 0, {}, true},
        {"T", ValueKind::PositiveReal, "20", 0, {}, true},
        {"a", ValueKind::NonNegativeReal, "0", 0, {}, true},
        {"epsilon", ValueKind::Auto, "auto"},
        {"n", ValueKind::Integer, "0", 0},
        {"m", ValueKind::Integer, "1", 0},
        {"mass", ValueKind::PositiveReal, "1", 0, {}, true},
        {"omega_internal", ValueKind::Auto, "auto"},
        {"alpha", ValueKind::Real, "0", 0, {}, true},
        {"probe_threshold", ValueKind::PositiveReal, "0.1"},
    };
    static const std::vector<KeySpec> validate = {
        {"m", ValueKind::PositiveReal, "1", 0, {}, true},
        {"omega", ValueKind::PositiveReal, "1", 0, {}, true},
        {"level", ValueKind::Integer, "0", 0},
        {"a", ValueKind::NonNegativeReal, "0", 0, {}, true},
        {"alpha", ValueKind::Real, "0", 0, {}, true},
        {"threshold", ValueKind::PositiveReal, "0.01"},
        {"hydrogen_n", ValueKind::Integer, "", 1},
        {"a_si", ValueKind::NonNegativeReal, "0", 0, {}, true},
        {"lambda_r_si", ValueKind::NonNegativeReal, "0", 0, {}, true},
    };
    static const std::vector<KeySpec> sweep = {
        {"run", ValueKind::Enum, nullptr, 0, {"bound", "spectrum", "respond", "validate"}},
        {"over", ValueKind::KeyList, nullptr},
    };
    if (command == "bound") return bound;
    if (command == "spectrum") return spectrum;
    if (command == "respond") return respond;
    if (command == "validate") return validate;
    if (command == "sweep") return sweep;
    throw ConfigError("unknown command '" + command + "'");
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_real_value(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw ConfigError("key '" + key + "': empty value");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw ConfigError("key '" + key + "': expected a number, got '" + t + "'");
    if (!std::isfinite(v)) throw ConfigError("key '" + key + "': value must be finite");
    return v;
}

long parse_int_value(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw ConfigError("key '" + key + "': empty value");
    char* end = nullptr;
    const long v = std::strtol(t.c_str(), &end, 10);
    if (end != t.c_str() + t.size())
        throw ConfigError("key '" + key + "': expected an integer, got '" + t + "'");
    return v;
}

const KeySpec* find_key(const std::vector<KeySpec>& schema, const std::string& key) {
    for (const auto& spec : schema)
        if (key == spec.key) return &spec;
    return nullptr;
}

void check_value(const KeySpec& spec, const std::string& key, const std::string& value) {
    switch (spec.kind) {
        case ValueKind::Real:
            parse_real_value(key, value);
            break;
        case ValueKind::PositiveReal:
            if (!(parse_real_value(key, value) > 0.0))
                throw ConfigError("key '" + key + "': value must be > 0");
            break;
        case ValueKind::NonNegativeReal:
            if (parse_real_value(key, value) < 0.0)
                throw ConfigError("key '" + key + "': value must be >= 0");
            break;
        case ValueKind::Integer:
            if (parse_int_value(key, value) < spec.int_min)
                throw ConfigError("key '" + key + "': value must be >= " +
                                  std::to_string(spec.int_min));
            break;
        case ValueKind::Enum: {
            const std::string t = trim(value);
            for (const char* c : spec.choices)
                if (t == c) return;
            throw ConfigError("key '" + key + "': unsupported value '" + t + "'");
        }
        case ValueKind::Auto:
            if (trim(value) != "auto" && !(parse_real_value(key, value) > 0.0))
                throw ConfigError("key '" + key + "': value must be > 0 or 'auto'");
            break;
        case ValueKind::KeyList:
            if (trim(value).empty()) throw ConfigError("key '" + key + "': empty value");
            break;
    }
}

std::vector<std::string> split_words(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string word;
    while (in >> word) out.push_back(word);
    return out;
}

void validate_sweep(RunConfig& config) {
    if (!config.has("run")) throw ConfigError("sweep: missing required key 'run'");
    if (!config.has("over")) throw ConfigError("sweep: missing required key 'over'");
    const std::string base_command = trim(config.values.at("run"));
    if (base_command == "sweep") throw ConfigError("sweep: nested sweeps are not supported");
    const auto& base_schema = schema_for(base_command);

    const auto swept = split_words(config.values.at("over"));
    if (swept.empty()) throw ConfigError("key 'over': empty value");
    for (const auto& key : swept) {
        const KeySpec* spec = find_key(base_schema, key);
        if (!spec)
            throw ConfigError("unknown key '" + key + "' for command '" + base_command + "'");
        if (!spec->sweepable)
            throw ConfigError("key '" + key + "' cannot be swept");
        if (!config.has(key))
            throw ConfigError("sweep: swept key '" + key + "' has no range");
        parse_range(key, config.values.at(key));
        if (std::count(swept.begin(), swept.end(), key) > 1)
            throw ConfigError("sweep: key '" + key + "' listed twice in 'over'");
    }
    for (const auto& [key, value] : config.values) {
        if (key == "run" || key == "over") continue;
        if (std::find(swept.begin(), swept.end(), key) != swept.end()) continue;
        const KeySpec* spec = find_key(base_schema, key);
        if (!spec)
            throw ConfigError("unknown key '" + key + "' for command '" + base_command + "'");
        check_value(*spec, key, value);
    }
}

}  // namespace

double RunConfig::real(const std::string& key) const {
    return parse_real_value(key, str(key));
}

long RunConfig::integer(const std::string& key) const {
    return parse_int_value(key, str(key));
}

std::string RunConfig::str(const std::string& key) const {
    auto it = values.find(key);
    if (it != values.end()) return trim(it->second);
    const KeySpec* spec = find_key(schema_for(command), key);
    if (!spec || !spec->fallback || std::string(spec->fallback).empty())
        throw ConfigError("key '" + key + "': no value and no default");
    return spec->fallback;
}

RunConfig parse_config(const std::string& text) {
    RunConfig config;
    std::map<std::string, std::string> pending;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        if (key == "command") {
            if (!config.command.empty()) throw ConfigError("duplicate key 'command'");
            config.command = value;
            continue;
        }
        if (pending.count(key)) throw ConfigError("duplicate key '" + key + "'");
        pending.emplace(key, value);
    }
    if (config.command.empty()) throw ConfigError("missing required key 'command'");

    const auto& schema = schema_for(config.command);
    config.values = std::move(pending);
    if (config.command == "sweep") {
        validate_sweep(config);
        return config;
    }
    for (const auto& [key, value] : config.values) {
        const KeySpec* spec = find_key(schema, key);
        if (!spec)
            throw ConfigError("unknown key '" + key + "' for command '" + config.command + "'");
        check_value(*spec, key, value);
    }
    for (const auto& spec : schema)
        if (spec.fallback == nullptr && !config.has(spec.key))
            throw ConfigError(config.command + ": missing required key '" +
                              std::string(spec.key) + "'");
    return config;
}

std::string canonical_serialize(const RunConfig& config) {
    std::string out = "command = " + config.command + "\n";
    for (const auto& [key, value] : config.values) out += key + " = " + trim(value) + "\n";
    return out;
}

std::uint64_t config_hash(const RunConfig& config) {
    const std::string text = canonical_serialize(config);
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

double SweepRange::at(long i) const {
    if (count == 1) return start;
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
}

SweepRange parse_range(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    const auto c1 = t.find(':');
    const auto c2 = t.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos || t.find(':', c2 + 1) != std::string::npos)
        throw ConfigError("key '" + key + "': expected range 'start:stop:count', got '" + t + "'");
    SweepRange range;
    range.start = parse_real_value(key, t.substr(0, c1));
    range.stop = parse_real_value(key, t.substr(c1 + 1, c2 - c1 - 1));
    range.count = parse_int_value(key, t.substr(c2 + 1));
    if (range.count < 1) throw ConfigError("key '" + key + "': range count must be >= 1");
    return range;
}

std::string config_reference() {
    std::ostringstream out;
    out << "Config grammar: one `key = value` per line; `#` starts a comment.\n"
        << "Every config needs `command = <name>` matching the subcommand.\n\n";
    const char* commands[] = {"bound", "spectrum", "respond", "validate", "sweep"};
    for (const char* command : commands) {
        out << command << ":\n";
        for (const auto& spec : schema_for(command)) {
            out << "  " << spec.key;
            if (spec.kind == ValueKind::Enum) {
                out << " (one of:";
                for (const char* c : spec.choices) out << " " << c;
                out << ")";
            }
            if (spec.fallback == nullptr)
                out << "  [required]";
            else if (std::string(spec.fallback).empty())
                out << "  [optional]";
            else
                out << "  [default " << spec.fallback << "]";
            if (spec.sweepable) out << "  [sweepable]";
            out << "\n";
        }
    }
    out << "\nsweep: set `run` to the base command, `over` to the swept keys\n"
        << "(space separated), and give each swept key a `start:stop:count`\n"
        << "range; remaining keys pass through to the base command.\n";
    return out.str();
}

}  // namespace qwl::cli
