#include "qworldline/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "qworldline/detector.hpp"
#include "qworldline/geometry.hpp"
#include "qworldline/quantum.hpp"
#include "qworldline/version.hpp"

namespace qwl::cli {

namespace {

constexpr const char* kUnbounded = "unbounded";
constexpr const char* kUndefined = "undefined";

std::string hash_hex(const RunConfig& config) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(config_hash(config)));
    return buf;
}

std::vector<std::string> provenance_for(const RunConfig& config) {
    return {std::string("qworldline ") + qwl::version, "command: " + config.command,
            "config: fnv1a64:" + hash_hex(config)};
}

std::string format_or(double v, const char* infinite) {
    return std::isinf(v) ? infinite : format_number(v);
}

geometry::TrajectoryModel trajectory_from(double a, double alpha) {
    if (alpha != 0.0) return geometry::TrajectoryModel::constant_curvature(alpha, {a, 0.0, 0.0});
    return geometry::TrajectoryModel::uniform_acceleration(a);
}

CsvTable run_bound(const RunConfig& config) {
    const double a = config.real("a");
    const double alpha = config.real("alpha");
    const double tau_min = config.real("tau_min");
    const double tau_max = config.real("tau_max");
    const long tau_count = config.integer("tau_count");
    if (tau_count > 1 && !(tau_max > tau_min))
        throw ConfigError("key 'tau_max': must exceed tau_min when tau_count > 1");

    const auto traj = trajectory_from(a, alpha);
    CsvTable table;
    table.provenance = provenance_for(config);
    table.header = {"tau", "a", "lambda_R", "ell"};
    double infimum = std::numeric_limits<double>::infinity();
    for (long i = 0; i < tau_count; ++i) {
        const double tau =
            tau_count == 1 ? tau_min
                           : tau_min + (tau_max - tau_min) * static_cast<double>(i) /
                                           static_cast<double>(tau_count - 1);
        const auto frame = traj.frame_at(tau);
        const double a_mag = frame.accel_magnitude();
        const double lam = geometry::lambda_R(frame.R0i0j);
        const double denom = a_mag + std::sqrt(lam);
        const double ell = denom > 0.0 ? 1.0 / denom : std::numeric_limits<double>::infinity();
        infimum = std::min(infimum, ell);
        table.rows.push_back(
            {format_number(tau), format_number(a_mag), format_number(lam), format_or(ell, kUnbounded)});
    }
    table.rows.push_back({"infimum", "", "", format_or(infimum, kUnbounded)});
    return table;
}

CsvTable run_spectrum(const RunConfig& config) {
    const double m = config.real("m");
    const double omega = config.real("omega");
    const double alpha = config.real("alpha");
    const double a = config.real("a");
    const double x_min = config.real("x_min");
    const double x_max = config.real("x_max");
    const long n_points = config.integer("n_points");
    const long levels = config.integer("levels");
    const std::string mode_name = config.str("mode");
    if (!(x_max > x_min)) throw ConfigError("key 'x_max': must exceed x_min");
    if (levels > n_points - 2)
        throw ConfigError("key 'levels': at most n_points - 2 levels are available");

    quantum::HamiltonianMode mode = quantum::HamiltonianMode::Leading;
    if (mode_name == "bare") mode = quantum::HamiltonianMode::Bare;
    else if (mode_name == "symmetrized") mode = quantum::HamiltonianMode::Symmetrized;

    const auto grid = quantum::Grid1D::uniform(static_cast<int>(n_points), x_min, x_max);
    const auto frame = geometry::constant_curvature_sample(0.0, alpha, {a, 0.0, 0.0});
    const quantum::OscillatorSpec osc(m, omega, 1);
    const auto hamiltonian = quantum::assemble_hamiltonian(osc, frame, mode, grid);
    const auto pairs = quantum::diagonalize(hamiltonian, grid, static_cast<int>(levels));

    // Reference energies: the flat oscillator for the bare mode, the
    // corrected closed form otherwise.
    double omega_ref = omega;
    double shift_ref = 0.0;
    if (mode != quantum::HamiltonianMode::Bare) {
        const auto corrected = quantum::oscillator_corrected_spectrum(osc, alpha, {a, 0.0, 0.0});
        if (!corrected.valid)
            throw std::domain_error(
                "spectrum: corrected oscillator not bound (omega^2 <= alpha)");
        omega_ref = corrected.omega_prime;
        shift_ref = corrected.ground_shift;
    }

    CsvTable table;
    table.provenance = provenance_for(config);
    table.header = {"k", "E_num", "E_analytic", "abs_delta", "E_minus_m"};
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const double e_num = pairs[k].energy;
        const double e_ref = m + shift_ref + omega_ref * (static_cast<double>(k) + 0.5);
        table.rows.push_back({std::to_string(k), format_number(e_num), format_number(e_ref),
                              format_number(std::abs(e_num - e_ref)), format_number(e_num - m)});
    }
    return table;
}

CsvTable run_respond(const RunConfig& config) {
    const double omega = config.real("omega");
    const double lambda = config.real("lambda");
    const double width = config.real("T");
    const double a = config.real("a");
    const double alpha = config.real("alpha");
    const long n = config.integer("n");
    const long m = config.integer("m");
    const double mass = config.real("mass");
    const double probe_threshold = config.real("probe_threshold");
    if (n == m) throw ConfigError("key 'm': transition needs distinct levels n and m");

    const auto switching = detector::GaussianSwitching::of(width);
    double omega_internal;
    if (config.str("omega_internal") == "auto") {
        if (omega == 0.0)
            throw ConfigError("key 'omega_internal': cannot derive from omega = 0, set it explicitly");
        omega_internal = std::abs(omega) / std::abs(static_cast<double>(m - n));
    } else {
        omega_internal = config.real("omega_internal");
    }
    double epsilon;
    if (config.str("epsilon") == "auto")
        epsilon = detector::default_epsilon(switching, a);
    else
        epsilon = config.real("epsilon");

    detector::UDWDetector det;
    det.gap = omega;
    det.coupling = lambda;
    det.switching = switching;
    det.internal = quantum::OscillatorSpec(mass, omega_internal, 1);

    const auto spec = a > 0.0 ? detector::WightmanSpec::rindler(a, epsilon)
                              : detector::WightmanSpec::inertial(epsilon);
    const auto frame = geometry::constant_curvature_sample(0.0, alpha, {a, 0.0, 0.0});
    const auto report = detector::response_report(det, spec, frame, static_cast<int>(n),
                                                  static_cast<int>(m), probe_threshold);
    if (!report.converged)
        throw NonConvergenceError("respond: field-response quadrature did not converge");

    CsvTable table;
    table.provenance = provenance_for(config);
    table.provenance.push_back(
        "second-order probabilities only; the mixed field/noise term has no "
        "second-order contribution for states with vanishing odd moments");
    table.header = {"omega", "p_field", "p_rel", "noise_ratio", "error"};
    table.rows.push_back({format_number(omega), format_number(report.p_field),
                          format_number(report.p_rel),
                          report.noise_ratio_defined ? format_number(report.noise_ratio)
                                                     : kUndefined,
                          format_number(report.quadrature_error_estimate)});
    return table;
}

CsvTable run_validate(const RunConfig& config) {
    const double m = config.real("m");
    const double omega = config.real("omega");
    const long level = config.integer("level");
    const double a = config.real("a");
    const double alpha = config.real("alpha");
    const double threshold = config.real("threshold");

    const auto frame = geometry::constant_curvature_sample(0.0, alpha, {a, 0.0, 0.0});
    const double localization =
        std::sqrt(2.0 * static_cast<double>(level) + 1.0) / std::sqrt(m * omega);
    const double h_nr = (static_cast<double>(level) + 0.5) * omega;
    const auto report = quantum::validity_report(localization, frame, m, h_nr, threshold);

    CsvTable table;
    table.provenance = provenance_for(config);
    table.header = {"criterion", "value", "bound", "pass"};
    table.rows.push_back({"localization", format_number(report.localization),
                          format_or(report.bound, kUnbounded), report.localized_ok ? "1" : "0"});
    table.rows.push_back({"energy_ratio", format_number(report.energy_ratio),
                          format_number(threshold), report.nonrelativistic_ok ? "1" : "0"});
    if (config.has("hydrogen_n")) {
        const long n = config.integer("hydrogen_n");
        const double a_si = config.real("a_si");
        const double lambda_si = config.real("lambda_r_si");
        constexpr double c = 299792458.0;
        const double value = a_si + c * c * std::sqrt(lambda_si);
        const double bound = quantum::hydrogen_threshold_si(static_cast<int>(n));
        const bool pass = quantum::hydrogen_validity(static_cast<int>(n), a_si, lambda_si);
        table.rows.push_back(
            {"hydrogen", format_number(value), format_number(bound), pass ? "1" : "0"});
    }
    return table;
}

std::vector<std::string> split_words(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string word;
    while (in >> word) out.push_back(word);
    return out;
}

std::string format_point(const std::vector<std::string>& keys, const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (i) out += ", ";
        out += keys[i] + " = " + format_number(values[i]);
    }
    return out;
}

double parse_cell(const std::string& cell) {
    return std::strtod(cell.c_str(), nullptr);
}

CsvTable run_sweep(const RunConfig& config) {
    const std::string base_command = config.str("run");
    const auto swept = split_words(config.str("over"));
    std::vector<SweepRange> ranges;
    for (const auto& key : swept) ranges.push_back(parse_range(key, config.values.at(key)));

    std::vector<std::string> summary_cols;
    if (base_command == "bound") summary_cols = {"ell"};
    else if (base_command == "spectrum") summary_cols = {"max_abs_delta"};
    else if (base_command == "respond") summary_cols = {"p_field", "p_rel", "noise_ratio", "error"};
    else summary_cols = {"all_pass"};

    CsvTable table;
    table.provenance = provenance_for(config);
    table.header = swept;
    table.header.insert(table.header.end(), summary_cols.begin(), summary_cols.end());

    // Row-major Cartesian product: the last declared key varies fastest.
    long total = 1;
    for (const auto& r : ranges) total *= r.count;
    for (long flat = 0; flat < total; ++flat) {
        std::vector<double> point(swept.size());
        long rest = flat;
        for (std::size_t i = swept.size(); i-- > 0;) {
            point[i] = ranges[i].at(rest % ranges[i].count);
            rest /= ranges[i].count;
        }

        RunConfig base;
        base.command = base_command;
        for (const auto& [key, value] : config.values) {
            if (key == "run" || key == "over") continue;
            if (std::find(swept.begin(), swept.end(), key) != swept.end()) continue;
            base.values[key] = value;
        }
        for (std::size_t i = 0; i < swept.size(); ++i) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", point[i]);
            base.values[swept[i]] = buf;
        }

        CsvTable inner;
        try {
            inner = run(base);
        } catch (const ConfigError&) {
            throw;
        } catch (const NonConvergenceError& e) {
            throw NonConvergenceError(std::string(e.what()) + " (at " +
                                      format_point(swept, point) + ")");
        } catch (const std::exception& e) {
            throw std::domain_error(std::string(e.what()) + " (at " +
                                    format_point(swept, point) + ")");
        }

        std::vector<std::string> row;
        for (double v : point) row.push_back(format_number(v));
        if (base_command == "bound") {
            row.push_back(inner.rows.back()[3]);
        } else if (base_command == "spectrum") {
            double worst = 0.0;
            for (const auto& r : inner.rows) worst = std::max(worst, parse_cell(r[3]));
            row.push_back(format_number(worst));
        } else if (base_command == "respond") {
            const auto& r = inner.rows.front();
            row.insert(row.end(), {r[1], r[2], r[3], r[4]});
        } else {
            bool all = true;
            for (const auto& r : inner.rows) all = all && r[3] == "1";
            row.push_back(all ? "1" : "0");
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

std::string CsvTable::to_string() const {
    std::string out;
    for (const auto& line : provenance) out += "# " + line + "\n";
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ",";
        out += header[i];
    }
    out += "\n";
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::logic_error("csv: ragged row");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += row[i];
        }
        out += "\n";
    }
    return out;
}

CsvTable run(const RunConfig& config) {
    if (config.command == "bound") return run_bound(config);
    if (config.command == "spectrum") return run_spectrum(config);
    if (config.command == "respond") return run_respond(config);
    if (config.command == "validate") return run_validate(config);
    if (config.command == "sweep") return run_sweep(config);
    throw ConfigError("unknown command '" + config.command + "'");
}

}  // namespace qwl::cli
