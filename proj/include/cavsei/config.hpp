// config.hpp — INI-style run configuration: strict parse, canonical serialize, resolution
#pragma once

#include <optional>
#include <string>

#include "cavsei/model.hpp"
#include "cavsei/sweep.hpp"

namespace cavsei::config {

enum class OutputFormat { csv, json };

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Parsed configuration. Frequencies are stored in the declared units:
// dimensionless (units of g_a) or physical ((2π)·kHz, suffixes kHz/MHz
// accepted). phi is radians either way; ratio-mode delta values are ratios.
struct RunConfig {
    model::UnitSystem units = model::UnitSystem::dimensionless_ga;
    double g_a = 1.0; // physical: the scale itself, in kHz
    double kappa_a = 0.125;
    double gamma = 0.0625;
    double gamma_e = 0.0;
    double Omega = 0.025;
    double Delta_a = 0.0;
    double delta = 0.5;
    double phi = 0.0;
    double V = 0.0;
    model::DeltaMode delta_mode = model::DeltaMode::ratio_of_Delta_a;
    sweep::GammaEMode gamma_e_mode = sweep::GammaEMode::from_sei;

    struct AxisSpec {
        sweep::AxisParam param;
        double lo, hi;
        int points;
    };
    std::optional<AxisSpec> axis1, axis2;
    sweep::Trajectory trajectory = sweep::Trajectory::none;
    std::vector<sweep::Observable> observables; // empty → all
    int cutoff = 7;
    bool convergence_check = true;

    std::string out_path;
    OutputFormat format = OutputFormat::csv;
    int threads = 1;
};

// Strict parse: unknown sections/keys, duplicate keys, malformed values, and a
// missing `units` key raise ConfigError naming the line and key. Comments start
// with '#' or ';' (whole line) or ' #' (trailing).
RunConfig parse_string(const std::string& text);
RunConfig parse_file(const std::string& path);

// canonical text form; parse(serialize(c)) reproduces serialize(c) exactly
std::string serialize(const RunConfig& c);

// dimensionless sweep specification; physical configs are rescaled by g_a.
// Without an axis1 this yields a 1-point sweep at the configured Delta_a.
sweep::SweepSpec to_sweep_spec(const RunConfig& c);

// single command-line override, "key=value" or "section.key=value" (bare keys
// resolve to [model]); same strictness as the file parser
void apply_override(RunConfig& c, const std::string& assignment);

// physical-unit presentation scale when units = physical
std::optional<model::PhysicalScale> physical_scale(const RunConfig& c);

} // namespace cavsei::config
