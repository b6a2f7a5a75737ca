#include "spinflip/io.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace spinflip {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const auto next = line.find(sep, pos);
        parts.push_back(line.substr(pos, next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return parts;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& meta, const char* key) {
    if (!meta.contains(key) || meta.at(key).is_null()) return std::nullopt;
    return meta.at(key).get<double>();
}

json schedule_meta(const PulseSchedule& s) {
    json meta;
    meta["protocol"] = std::string(to_string(s.protocol));
    meta["epsilon"] = s.epsilon;
    meta["A"] = s.A;
    meta["e"] = s.e;
    meta["T"] = s.duration;
    meta["closed_form_cost"] = optional_number(s.closed_form_cost);
    meta["t_start"] = s.t_start;
    meta["stage_boundary"] = optional_number(s.stage_boundary);
    meta["samples"] = s.samples.size();
    return meta;
}

PulseSchedule schedule_from_meta(const json& meta) {
    PulseSchedule s;
    try {
        s.protocol = parse_protocol(meta.at("protocol").get<std::string>());
        s.epsilon = meta.at("epsilon").get<double>();
        s.A = meta.at("A").get<double>();
        s.e = meta.value("e", 0.0);
        s.duration = meta.value("T", 0.0);
        s.closed_form_cost = read_optional(meta, "closed_form_cost");
        s.stage_boundary = read_optional(meta, "stage_boundary");
    } catch (const json::exception& ex) {
        throw std::invalid_argument(std::string("schedule metadata: ") + ex.what());
    }
    return s;
}

void finish_schedule(PulseSchedule& s) {
    s.validate();
    s.t_start = s.samples.front().t;
    (void)s.params();  // rejects invalid epsilon / A
}

PulseSchedule read_schedule_csv(std::istream& in) {
    std::string line;
    std::optional<PulseSchedule> s;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        const std::string body = trim(line);
        if (body.empty()) continue;
        if (body.front() == '#') {
            if (!s) {
                try {
                    s = schedule_from_meta(json::parse(body.substr(1)));
                } catch (const json::parse_error& ex) {
                    throw std::invalid_argument(std::string("schedule header is not valid JSON: ") + ex.what());
                }
            }
            continue;
        }
        if (body.front() == 't') continue;  // column header
        if (!s) throw std::invalid_argument("schedule file is missing the '#' metadata line");
        const auto cols = split(body, ',');
        if (cols.size() != 4 && cols.size() != 5) {
            throw std::invalid_argument("schedule row " + std::to_string(row) + ": expected 4 or 5 columns");
        }
        s->samples.push_back({parse_double(trim(cols[0])), parse_double(trim(cols[1])),
                              parse_double(trim(cols[2])), parse_double(trim(cols[3]))});
    }
    if (!s) throw std::invalid_argument("empty schedule file");
    finish_schedule(*s);
    return std::move(*s);
}

PulseSchedule read_schedule_json(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& ex) {
        throw std::invalid_argument(std::string("schedule JSON: ") + ex.what());
    }
    if (!doc.contains("meta") || !doc.contains("samples")) {
        throw std::invalid_argument("schedule JSON needs 'meta' and 'samples'");
    }
    PulseSchedule s = schedule_from_meta(doc.at("meta"));
    for (const auto& r : doc.at("samples")) {
        if (!r.is_array() || r.size() < 4) throw std::invalid_argument("schedule JSON: sample needs 4 numbers");
        s.samples.push_back({r[0].get<double>(), r[1].get<double>(), r[2].get<double>(), r[3].get<double>()});
    }
    finish_schedule(s);
    return s;
}

void write_table(std::ostream& out, const std::vector<std::string>& columns,
                 const std::vector<std::vector<double>>& rows, OutputFormat format, const json* meta = nullptr) {
    if (format == OutputFormat::json) {
        json doc;
        if (meta) doc["meta"] = *meta;
        doc["columns"] = columns;
        doc["rows"] = rows;
        out << doc.dump() << '\n';
        return;
    }
    if (meta) out << "# " << meta->dump() << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_double(r[i]);
        out << '\n';
    }
}

}  // namespace

OutputFormat parse_format(std::string_view name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw std::invalid_argument("unknown format '" + std::string(name) + "' (expected csv or json)");
}

std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf.data(), end);
}

double parse_double(std::string_view s) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) {
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    }
    return v;
}

// ---------------------------------------------------------------- config

void RunConfig::validate() const {
    (void)SystemParams(epsilon, A);
    if (!std::isfinite(e) || e < 0.0) throw std::invalid_argument("e must be finite and >= 0");
    if (step && !(*step > 0.0)) throw std::invalid_argument("step must be > 0");
    if (samples_per_unit <= 0) throw std::invalid_argument("samples_per_unit must be > 0");
}

SynthesisOptions RunConfig::synthesis_options() const {
    return {static_cast<double>(samples_per_unit)};
}

RunConfig parse_config(std::istream& in, RunConfig cfg) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        const std::string body = trim(std::string_view(line).substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        try {
            if (key == "epsilon") cfg.epsilon = parse_double(value);
            else if (key == "A") cfg.A = parse_double(value);
            else if (key == "e") cfg.e = parse_double(value);
            else if (key == "protocol") cfg.protocol = parse_protocol(value);
            else if (key == "step") cfg.step = parse_double(value);
            else if (key == "samples_per_unit") cfg.samples_per_unit = static_cast<int>(parse_double(value));
            else if (key == "format" || key == "output_format") cfg.format = parse_format(value);
            else if (key == "out" || key == "output_path") cfg.output_path = value;
            else throw std::invalid_argument("unknown key");
        } catch (const std::invalid_argument& ex) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + " (" + key + "): " + ex.what());
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    return parse_config(in, std::move(base));
}

// ---------------------------------------------------------------- schedules

void write_schedule(std::ostream& out, const PulseSchedule& s, OutputFormat format) {
    const json meta = schedule_meta(s);
    if (format == OutputFormat::json) {
        json doc;
        doc["meta"] = meta;
        doc["columns"] = {"t", "bx", "by", "bz"};
        json rows = json::array();
        for (const auto& f : s.samples) rows.push_back({f.t, f.bx, f.by, f.bz});
        doc["samples"] = std::move(rows);
        out << doc.dump() << '\n';
        return;
    }
    const auto boundary = s.boundary_index();
    out << "# " << meta.dump() << '\n';
    out << "t,bx,by,bz,boundary\n";
    for (std::size_t i = 0; i < s.samples.size(); ++i) {
        const auto& f = s.samples[i];
        out << format_double(f.t) << ',' << format_double(f.bx) << ',' << format_double(f.by) << ','
            << format_double(f.bz) << ',' << (boundary && *boundary == i ? 1 : 0) << '\n';
    }
}

PulseSchedule read_schedule(std::istream& in) {
    in >> std::ws;
    if (in.peek() == '{') return read_schedule_json(in);
    return read_schedule_csv(in);
}

void write_trajectory(std::ostream& out, const Trajectory& traj, OutputFormat format) {
    std::vector<std::vector<double>> rows;
    rows.reserve(traj.size());
    for (const auto& p : traj.points()) rows.push_back({p.t, p.sx, p.sy, p.sz, p.state.norm()});
    write_table(out, {"t", "sx", "sy", "sz", "norm"}, rows, format);
}

void write_sweep(std::ostream& out, const SweepResult& r, OutputFormat format) {
    std::vector<std::vector<double>> rows;
    rows.reserve(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        rows.push_back({r.gamma[i], r.c_min[i], r.c_sg[i], r.c_u[i], r.ratio_u[i], r.ratio_sg[i]});
    }
    write_table(out, {"gamma", "c_min", "c_sg", "c_u", "ratio_u", "ratio_sg"}, rows, format);
}

// ---------------------------------------------------------------- verification

SimulationReport verify_simulation(const PulseSchedule& schedule, const Trajectory& traj,
                                   const VerificationTolerances& tol) {
    SimulationReport r;
    const SystemParams params = schedule.params();
    r.protocol = schedule.protocol;
    r.initial_sz = traj.front().sz;
    r.final_sz = traj.back().sz;
    r.max_abs_sy = traj.max_abs_sy();
    r.norm_drift = traj.max_norm_drift();
    r.quadrature = cost_quadrature(traj, schedule, params);
    r.closed_form_cost = schedule.closed_form_cost;
    if (r.closed_form_cost) {
        r.relative_error = std::abs(r.quadrature.total - *r.closed_form_cost) / std::abs(*r.closed_form_cost);
    }

    auto fail = [&](std::string what, double value, double limit) {
        std::ostringstream msg;
        msg << what << " = " << format_double(value) << " exceeds " << format_double(limit);
        r.failures.push_back(msg.str());
    };
    if (r.norm_drift > tol.norm_drift) fail("norm drift", r.norm_drift, tol.norm_drift);
    if (schedule.protocol == Protocol::custom) return r;

    if (r.max_abs_sy > tol.max_abs_sy) fail("max |<sigma_y>|", r.max_abs_sy, tol.max_abs_sy);
    if (std::abs(r.initial_sz + 1.0) > tol.pole) fail("|initial sz + 1|", std::abs(r.initial_sz + 1.0), tol.pole);
    if (std::abs(r.final_sz - 1.0) > tol.pole) fail("|final sz - 1|", std::abs(r.final_sz - 1.0), tol.pole);
    if (r.relative_error && *r.relative_error > tol.cost_relative) {
        fail("cost relative error", *r.relative_error, tol.cost_relative);
    }
    return r;
}

std::string report_to_json(const SimulationReport& r) {
    json j;
    j["protocol"] = std::string(to_string(r.protocol));
    j["initial_sz"] = r.initial_sz;
    j["final_sz"] = r.final_sz;
    j["max_abs_sy"] = r.max_abs_sy;
    j["norm_drift"] = r.norm_drift;
    j["quadrature_cost"] = {{"alignment_penalty", r.quadrature.alignment_penalty},
                            {"field_energy", r.quadrature.field_energy},
                            {"total", r.quadrature.total}};
    j["closed_form_cost"] = optional_number(r.closed_form_cost);
    j["relative_error"] = optional_number(r.relative_error);
    j["passed"] = r.passed();
    j["failures"] = r.failures;
    return j.dump(2);
}

}  // namespace spinflip
