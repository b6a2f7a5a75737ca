#include "spinflip/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spinflip {

std::string_view to_string(Protocol p) noexcept {
    switch (p) {
        case Protocol::square: return "square";
        case Protocol::sine_gordon: return "sine_gordon";
        case Protocol::shortcut: return "shortcut";
        case Protocol::custom: return "custom";
    }
    return "custom";
}

Protocol parse_protocol(std::string_view name) {
    if (name == "square") return Protocol::square;
    if (name == "sine_gordon" || name == "sine-gordon") return Protocol::sine_gordon;
    if (name == "shortcut") return Protocol::shortcut;
    if (name == "custom") return Protocol::custom;
    throw std::invalid_argument("unknown protocol '" + std::string(name) +
                                "' (expected square, sine_gordon, shortcut or custom)");
}

double PulseSchedule::spacing() const {
    if (samples.size() < 2) return 0.0;
    return (samples.back().t - samples.front().t) / static_cast<double>(samples.size() - 1);
}

std::optional<std::size_t> PulseSchedule::boundary_index() const {
    if (!stage_boundary || samples.empty()) return std::nullopt;
    const double h = spacing();
    const auto it = std::min_element(samples.begin(), samples.end(), [&](const auto& a, const auto& b) {
        return std::abs(a.t - *stage_boundary) < std::abs(b.t - *stage_boundary);
    });
    if (std::abs(it->t - *stage_boundary) > 0.5 * h) return std::nullopt;
    return static_cast<std::size_t>(it - samples.begin());
}

FieldSample PulseSchedule::field_at(double t) const {
    if (exact_field) return exact_field(t);
    if (samples.empty()) throw std::logic_error("field_at on an empty schedule");
    if (t <= samples.front().t) return samples.front();
    if (t >= samples.back().t) return samples.back();
    const auto hi = std::upper_bound(samples.begin(), samples.end(), t,
                                     [](double v, const FieldSample& s) { return v < s.t; });
    const auto lo = hi - 1;
    const double w = (t - lo->t) / (hi->t - lo->t);
    return {t, lo->bx + w * (hi->bx - lo->bx), lo->by + w * (hi->by - lo->by),
            lo->bz + w * (hi->bz - lo->bz)};
}

void PulseSchedule::validate() const {
    if (samples.size() < 2) throw std::invalid_argument("schedule needs at least two samples");
    if (samples.back().t != 0.0) throw std::invalid_argument("schedule must end at t = 0");
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (!(samples[i].t > samples[i - 1].t)) {
            throw std::invalid_argument("schedule times must be strictly increasing (row " +
                                        std::to_string(i) + ")");
        }
    }
}

}  // namespace spinflip
