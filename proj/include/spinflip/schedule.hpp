#pragma once

#include "spinflip/system.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spinflip {

enum class Protocol { square, sine_gordon, shortcut, custom };

std::string_view to_string(Protocol p) noexcept;
/// Accepts "square", "sine_gordon" (or "sine-gordon"), "shortcut", "custom".
Protocol parse_protocol(std::string_view name);

/**
 * Sampled external field on a uniform grid over [t_start, 0].
 *
 * Schedules built by the protocol synthesizers also carry the closed-form
 * field generator, which the integrator uses between samples. Schedules read
 * back from disk only have the samples and are linearly interpolated.
 */
struct PulseSchedule {
    Protocol protocol = Protocol::custom;
    double epsilon = 0.0;
    double A = 0.0;
    /// Sine-Gordon energy parameter; 0 for the other protocols.
    double e = 0.0;
    double t_start = 0.0;
    /// Protocol duration as defined by the protocol (T_u, T_0, or the stage-2 length T
    /// for the shortcut, whose stage 1 extends back to t_start).
    double duration = 0.0;
    std::optional<double> closed_form_cost;
    /// Time of the phi = 0 stage boundary (shortcut only).
    std::optional<double> stage_boundary;
    std::vector<FieldSample> samples;
    std::function<FieldSample(double)> exact_field;

    SystemParams params() const { return SystemParams(epsilon, A); }
    double spacing() const;
    /// Index of the sample at stage_boundary, if any.
    std::optional<std::size_t> boundary_index() const;
    /// Field at an arbitrary t in [t_start, 0].
    FieldSample field_at(double t) const;
    /// Throws std::invalid_argument if samples are not a strictly increasing grid ending at 0.
    void validate() const;
};

}  // namespace spinflip
