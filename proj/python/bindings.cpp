#include "spinflip/analysis.hpp"
#include "spinflip/bloch.hpp"
#include "spinflip/cost.hpp"
#include "spinflip/io.hpp"
#include "spinflip/protocols.hpp"
#include "spinflip/special_functions.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace spinflip;

namespace {

py::array_t<double> column(const std::vector<FieldSample>& samples, double FieldSample::*member) {
    py::array_t<double> out(static_cast<py::ssize_t>(samples.size()));
    auto view = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < samples.size(); ++i) view(static_cast<py::ssize_t>(i)) = samples[i].*member;
    return out;
}

py::array_t<double> to_array(const std::vector<double>& v) {
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::dict simulate(const PulseSchedule& schedule, std::optional<double> step) {
    const Trajectory tr = evolve(SpinState::spin_down(), schedule, schedule.params(), step);
    const SimulationReport r = verify_simulation(schedule, tr);
    std::vector<double> t, sx, sy, sz, norm;
    for (const auto& p : tr.points()) {
        t.push_back(p.t);
        sx.push_back(p.sx);
        sy.push_back(p.sy);
        sz.push_back(p.sz);
        norm.push_back(p.state.norm());
    }
    py::dict out;
    out["t"] = to_array(t);
    out["sx"] = to_array(sx);
    out["sy"] = to_array(sy);
    out["sz"] = to_array(sz);
    out["norm"] = to_array(norm);
    out["initial_sz"] = r.initial_sz;
    out["final_sz"] = r.final_sz;
    out["max_abs_sy"] = r.max_abs_sy;
    out["norm_drift"] = r.norm_drift;
    out["quadrature_cost"] = r.quadrature.total;
    out["alignment_penalty"] = r.quadrature.alignment_penalty;
    out["field_energy"] = r.quadrature.field_energy;
    out["closed_form_cost"] = r.closed_form_cost;
    out["relative_error"] = r.relative_error;
    out["failures"] = r.failures;
    out["passed"] = r.passed();
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Optimal spin-flip protocols for a biased two-level system";

    m.def("ellip_k", [](double x) { return ellip_k(EllipticParameter(x)); }, py::arg("m"));
    m.def("ellip_e", [](double x) { return ellip_e(EllipticParameter(x)); }, py::arg("m"));
    m.def("ellip_f", [](double phi, double x) { return ellip_f(phi, EllipticParameter(x)); }, py::arg("phi"),
          py::arg("m"));
    m.def("ellip_e_inc", [](double phi, double x) { return ellip_e_inc(phi, EllipticParameter(x)); },
          py::arg("phi"), py::arg("m"));
    m.def("jacobi_sn", [](double u, double x) { return jacobi_sn(u, EllipticParameter(x)); }, py::arg("u"),
          py::arg("m"));

    py::enum_<Protocol>(m, "Protocol")
        .value("square", Protocol::square)
        .value("sine_gordon", Protocol::sine_gordon)
        .value("shortcut", Protocol::shortcut)
        .value("custom", Protocol::custom);

    py::class_<PulseSchedule>(m, "PulseSchedule")
        .def_readonly("protocol", &PulseSchedule::protocol)
        .def_readonly("epsilon", &PulseSchedule::epsilon)
        .def_readonly("A", &PulseSchedule::A)
        .def_readonly("e", &PulseSchedule::e)
        .def_readonly("t_start", &PulseSchedule::t_start)
        .def_readonly("duration", &PulseSchedule::duration)
        .def_readonly("closed_form_cost", &PulseSchedule::closed_form_cost)
        .def_readonly("stage_boundary", &PulseSchedule::stage_boundary)
        .def_property_readonly("t", [](const PulseSchedule& s) { return column(s.samples, &FieldSample::t); })
        .def_property_readonly("bx", [](const PulseSchedule& s) { return column(s.samples, &FieldSample::bx); })
        .def_property_readonly("by", [](const PulseSchedule& s) { return column(s.samples, &FieldSample::by); })
        .def_property_readonly("bz", [](const PulseSchedule& s) { return column(s.samples, &FieldSample::bz); })
        .def("__len__", [](const PulseSchedule& s) { return s.samples.size(); })
        .def("to_string", [](const PulseSchedule& s, const std::string& format) {
            std::ostringstream out;
            write_schedule(out, s, parse_format(format));
            return out.str();
        }, py::arg("format") = "csv");

    m.def("parse_schedule", [](const std::string& text) {
        std::istringstream in(text);
        return read_schedule(in);
    }, py::arg("text"));

    m.def("synthesize", [](const std::string& protocol, double epsilon, double A, double e, double samples_per_unit) {
        return synthesize(parse_protocol(protocol), SystemParams(epsilon, A), e, SynthesisOptions{samples_per_unit});
    }, py::arg("protocol"), py::arg("epsilon"), py::arg("A"), py::arg("e") = 0.0,
       py::arg("samples_per_unit") = 2000.0);

    m.def("simulate", &simulate, py::arg("schedule"), py::arg("step") = py::none());

    m.def("square_cost", [](double eps, double A) {
        const SystemParams p(eps, A);
        return square_cost(p, square_duration(p));
    }, py::arg("epsilon"), py::arg("A"));
    m.def("sg_cost", [](double eps, double A, double e) { return sg_cost(SystemParams(eps, A), e); },
          py::arg("epsilon"), py::arg("A"), py::arg("e") = 0.0);
    m.def("shortcut_cost", [](double eps, double A) { return shortcut_cost(SystemParams(eps, A)); },
          py::arg("epsilon"), py::arg("A"));

    m.def("costs_of_gamma", [](double gamma, double A) {
        const ProtocolCosts c = costs_of_gamma(gamma, A);
        py::dict out;
        out["c_min"] = c.c_min;
        out["c_sg"] = c.c_sg;
        out["c_u"] = c.c_u;
        out["ratio_u"] = c.ratio_u();
        out["ratio_sg"] = c.ratio_sg();
        return out;
    }, py::arg("gamma"), py::arg("A") = 1.0);

    m.def("sweep", [](const std::vector<double>& gammas, double A) {
        const SweepResult r = sweep(gammas, A);
        py::dict out;
        out["gamma"] = to_array(r.gamma);
        out["c_min"] = to_array(r.c_min);
        out["c_sg"] = to_array(r.c_sg);
        out["c_u"] = to_array(r.c_u);
        out["ratio_u"] = to_array(r.ratio_u);
        out["ratio_sg"] = to_array(r.ratio_sg);
        return out;
    }, py::arg("gammas"), py::arg("A") = 1.0);

    m.def("find_ratio_max", [](double tol) {
        const RatioMaximum r = find_ratio_max(tol);
        return py::make_tuple(r.gamma, r.ratio);
    }, py::arg("tol") = 1e-10);

    m.def("ratio_limits", [](double small, double large) {
        const RatioLimits l = ratio_limits(small, large);
        py::dict out;
        out["ratio_u_small"] = l.ratio_u_small;
        out["ratio_u_large"] = l.ratio_u_large;
        out["ratio_sg_small"] = l.ratio_sg_small;
        out["ratio_sg_large"] = l.ratio_sg_large;
        out["exact_u_small"] = l.exact_u_small;
        out["exact_u_large"] = l.exact_u_large;
        out["exact_sg_small"] = l.exact_sg_small;
        out["exact_sg_large"] = l.exact_sg_large;
        return out;
    }, py::arg("gamma_small") = 1e-9, py::arg("gamma_large") = 1e6);

    m.def("optimal_sg_energy", [](double eps, double A) {
        const ScalarMinimum r = optimal_sg_energy(SystemParams(eps, A));
        return py::make_tuple(r.x, r.f);
    }, py::arg("epsilon"), py::arg("A"));
}
