#pragma once

#include "spinflip/analysis.hpp"
#include "spinflip/bloch.hpp"
#include "spinflip/cost.hpp"
#include "spinflip/protocols.hpp"
#include "spinflip/schedule.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spinflip {

enum class OutputFormat { csv, json };

OutputFormat parse_format(std::string_view name);

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);
/// Strict parse of a full string as a double; throws std::invalid_argument.
double parse_double(std::string_view s);

/// Settings shared by the CLI subcommands. Loadable from a key=value file.
struct RunConfig {
    double epsilon = 1.0;
    double A = 1.0;
    Protocol protocol = Protocol::square;
    double e = 0.0;
    std::optional<double> step;
    int samples_per_unit = 2000;
    OutputFormat format = OutputFormat::csv;
    std::string output_path;  ///< empty means stdout

    /// Throws std::invalid_argument naming the offending key.
    void validate() const;
    SynthesisOptions synthesis_options() const;
};

/// Reads key=value lines ('#' starts a comment) on top of base. Unknown keys are rejected.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

// Schedule files: CSV with a '#'-prefixed JSON metadata line, or a single JSON document.
void write_schedule(std::ostream& out, const PulseSchedule& schedule, OutputFormat format);
/// Detects the format from the first character.
PulseSchedule read_schedule(std::istream& in);

void write_trajectory(std::ostream& out, const Trajectory& traj, OutputFormat format);
void write_sweep(std::ostream& out, const SweepResult& sweep, OutputFormat format);

/// Outcome of simulating a schedule and checking it against the protocol contract.
struct SimulationReport {
    Protocol protocol = Protocol::custom;
    double initial_sz = 0.0;
    double final_sz = 0.0;
    double max_abs_sy = 0.0;
    double norm_drift = 0.0;
    CostBreakdown quadrature;
    std::optional<double> closed_form_cost;
    std::optional<double> relative_error;
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
};

struct VerificationTolerances {
    double max_abs_sy = 1e-6;
    double pole = 1e-6;
    double norm_drift = 1e-10;
    double cost_relative = 1e-6;
};

/// Custom schedules are only checked for norm drift; protocol schedules also need
/// the flip from sz = -1 to sz = +1, <sigma_y> = 0, and the closed-form cost.
SimulationReport verify_simulation(const PulseSchedule& schedule, const Trajectory& traj,
                                   const VerificationTolerances& tol = {});

std::string report_to_json(const SimulationReport& report);

}  // namespace spinflip
