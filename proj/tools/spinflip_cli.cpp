#include "spinflip/analysis.hpp"
#include "spinflip/bloch.hpp"
#include "spinflip/io.hpp"
#include "spinflip/protocols.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>

using namespace spinflip;
using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kVerification = 2;

// Raw flag values; only the flags actually given override the config file.
struct Flags {
    std::string config;
    double epsilon = 1.0;
    double A = 1.0;
    double e = 0.0;
    std::string protocol;
    double step = 0.0;
    int samples_per_unit = 2000;
    std::string out;
    std::string format;
};

struct FlagOptions {
    CLI::Option* epsilon = nullptr;
    CLI::Option* A = nullptr;
    CLI::Option* e = nullptr;
    CLI::Option* protocol = nullptr;
    CLI::Option* step = nullptr;
    CLI::Option* samples_per_unit = nullptr;
    CLI::Option* out = nullptr;
    CLI::Option* format = nullptr;
};

FlagOptions add_common(CLI::App* cmd, Flags& f, bool physics) {
    FlagOptions o;
    cmd->add_option("--config", f.config, "key=value config file");
    o.out = cmd->add_option("--out", f.out, "output file (default: stdout)");
    o.format = cmd->add_option("--format", f.format, "csv or json");
    if (physics) {
        o.epsilon = cmd->add_option("--epsilon", f.epsilon, "bias epsilon >= 0");
        o.A = cmd->add_option("--A", f.A, "alignment weight A > 0");
        o.e = cmd->add_option("--e", f.e, "sine-Gordon energy e >= 0");
        o.protocol = cmd->add_option("--protocol", f.protocol, "square, sine_gordon or shortcut");
        o.samples_per_unit = cmd->add_option("--samples-per-unit", f.samples_per_unit, "grid density");
    }
    o.step = cmd->add_option("--step", f.step, "integration step");
    return o;
}

RunConfig resolve(const Flags& f, const FlagOptions& o) {
    RunConfig cfg = f.config.empty() ? RunConfig{} : load_config(f.config);
    auto given = [](CLI::Option* opt) { return opt != nullptr && opt->count() > 0; };
    if (given(o.epsilon)) cfg.epsilon = f.epsilon;
    if (given(o.A)) cfg.A = f.A;
    if (given(o.e)) cfg.e = f.e;
    if (given(o.protocol)) cfg.protocol = parse_protocol(f.protocol);
    if (given(o.step)) cfg.step = f.step;
    if (given(o.samples_per_unit)) cfg.samples_per_unit = f.samples_per_unit;
    if (given(o.out)) cfg.output_path = f.out;
    if (given(o.format)) cfg.format = parse_format(f.format);
    cfg.validate();
    return cfg;
}

void emit(const std::string& path, const std::function<void(std::ostream&)>& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file " + path);
    write(out);
    if (!out) throw std::runtime_error("failed writing " + path);
}

// Writes a single record either as a JSON object or as a two-line CSV.
void write_record(std::ostream& out, const ordered_json& record, OutputFormat format) {
    if (format == OutputFormat::json) {
        out << record.dump(2) << '\n';
        return;
    }
    std::string header, row;
    for (const auto& [key, value] : record.items()) {
        if (!header.empty()) {
            header += ',';
            row += ',';
        }
        header += key;
        if (value.is_number()) row += format_double(value.get<double>());
        else if (value.is_string()) row += value.get<std::string>();
        else if (value.is_boolean()) row += value.get<bool>() ? "true" : "false";
    }
    out << header << '\n' << row << '\n';
}

int cmd_synthesize(const RunConfig& cfg) {
    const PulseSchedule s = synthesize(cfg.protocol, SystemParams(cfg.epsilon, cfg.A), cfg.e, cfg.synthesis_options());
    emit(cfg.output_path, [&](std::ostream& out) { write_schedule(out, s, cfg.format); });
    return kOk;
}

int cmd_simulate(const RunConfig& cfg, const std::string& schedule_path, const std::string& report_path) {
    std::ifstream in(schedule_path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open schedule file " + schedule_path);
    const PulseSchedule s = read_schedule(in);
    const Trajectory traj = evolve(SpinState::spin_down(), s, s.params(), cfg.step);
    const SimulationReport report = verify_simulation(s, traj);
    emit(cfg.output_path, [&](std::ostream& out) { write_trajectory(out, traj, cfg.format); });
    const std::string text = report_to_json(report) + '\n';
    if (report_path.empty()) std::cerr << text;
    else emit(report_path, [&](std::ostream& out) { out << text; });
    if (!report.passed()) {
        for (const auto& f : report.failures) std::cerr << "verification failed: " << f << '\n';
        return kVerification;
    }
    return kOk;
}

int cmd_cost(const RunConfig& cfg) {
    const SystemParams p(cfg.epsilon, cfg.A);
    double cost = 0.0;
    double duration = 0.0;
    switch (cfg.protocol) {
        case Protocol::square:
            cost = square_cost(p, square_duration(p));
            duration = square_duration(p);
            break;
        case Protocol::sine_gordon:
            cost = sg_cost(p, cfg.e);
            duration = sg_duration(p, cfg.e);
            break;
        case Protocol::shortcut:
            cost = shortcut_cost(p);
            duration = shortcut_boundary_time(p);
            break;
        case Protocol::custom: throw std::invalid_argument("cost needs a named protocol");
    }
    ordered_json record;
    record["protocol"] = std::string(to_string(cfg.protocol));
    record["epsilon"] = cfg.epsilon;
    record["A"] = cfg.A;
    record["e"] = cfg.e;
    record["gamma"] = p.gamma();
    record["T"] = duration;
    record["cost"] = cost;
    emit(cfg.output_path, [&](std::ostream& out) { write_record(out, record, cfg.format); });
    return kOk;
}

int cmd_sweep(const RunConfig& cfg, double lo, double hi, int n, bool log_spaced, double A) {
    if (n < 2) throw std::invalid_argument("sweep needs n >= 2");
    const auto grid = log_spaced ? log_grid(lo, hi, static_cast<std::size_t>(n))
                                 : linear_grid(lo, hi, static_cast<std::size_t>(n));
    const SweepResult r = sweep(grid, A);
    emit(cfg.output_path, [&](std::ostream& out) { write_sweep(out, r, cfg.format); });
    return kOk;
}

int cmd_limits(const RunConfig& cfg) {
    const RatioLimits l = ratio_limits();
    ordered_json record;
    record["gamma_small"] = l.gamma_small;
    record["gamma_large"] = l.gamma_large;
    record["ratio_u_small"] = l.ratio_u_small;
    record["exact_u_small"] = l.exact_u_small;
    record["ratio_u_large"] = l.ratio_u_large;
    record["exact_u_large"] = l.exact_u_large;
    record["ratio_sg_small"] = l.ratio_sg_small;
    record["exact_sg_small"] = l.exact_sg_small;
    record["ratio_sg_large"] = l.ratio_sg_large;
    record["exact_sg_large"] = l.exact_sg_large;
    emit(cfg.output_path, [&](std::ostream& out) { write_record(out, record, cfg.format); });
    return kOk;
}

int cmd_ratio_max(const RunConfig& cfg) {
    const RatioMaximum m = find_ratio_max();
    ordered_json record;
    record["gamma"] = m.gamma;
    record["ratio_u"] = m.ratio;
    emit(cfg.output_path, [&](std::ostream& out) { write_record(out, record, cfg.format); });
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal spin-flip protocols for a biased two-level system"};
    app.require_subcommand(1);

    Flags f;

    auto* synth = app.add_subcommand("synthesize", "write a pulse schedule");
    const FlagOptions synth_opts = add_common(synth, f, true);

    auto* simulate = app.add_subcommand("simulate", "integrate a schedule and verify it");
    const FlagOptions sim_opts = add_common(simulate, f, false);
    std::string schedule_path, report_path;
    simulate->add_option("schedule", schedule_path, "schedule file")->required();
    simulate->add_option("--report", report_path, "report file (default: stderr)");

    auto* cost = app.add_subcommand("cost", "closed-form optimal cost of a protocol");
    const FlagOptions cost_opts = add_common(cost, f, true);

    auto* sw = app.add_subcommand("sweep", "cost ratios over a gamma grid");
    const FlagOptions sweep_opts = add_common(sw, f, false);
    double lo = 0.0, hi = 0.0, sweep_A = 1.0;
    int n = 0;
    bool log_spaced = false;
    sw->add_option("gamma_lo", lo)->required();
    sw->add_option("gamma_hi", hi)->required();
    sw->add_option("n", n)->required();
    sw->add_flag("--log", log_spaced, "log-spaced grid");
    sw->add_option("--A", sweep_A, "alignment weight A > 0");

    auto* limits = app.add_subcommand("limits", "cost ratios at small and large gamma");
    const FlagOptions limit_opts = add_common(limits, f, false);

    auto* rmax = app.add_subcommand("ratio-max", "maximum of C_min / C_u over gamma");
    const FlagOptions rmax_opts = add_common(rmax, f, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError& ex) {
        app.exit(ex);
        return kValidation;
    }

    try {
        if (*synth) return cmd_synthesize(resolve(f, synth_opts));
        if (*simulate) return cmd_simulate(resolve(f, sim_opts), schedule_path, report_path);
        if (*cost) return cmd_cost(resolve(f, cost_opts));
        if (*sw) return cmd_sweep(resolve(f, sweep_opts), lo, hi, n, log_spaced, sweep_A);
        if (*limits) return cmd_limits(resolve(f, limit_opts));
        if (*rmax) return cmd_ratio_max(resolve(f, rmax_opts));
    } catch (const IntegrationError& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kVerification;
    } catch (const std::logic_error& ex) {
        // invalid_argument, domain_error and out_of_range all derive from logic_error
        std::cerr << "error: " << ex.what() << '\n';
        return kValidation;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kValidation;
    }
    return kValidation;
}
