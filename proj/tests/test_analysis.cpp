#include <doctest.h>

#include "spinflip/analysis.hpp"
#include "spinflip/protocols.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace spinflip;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("costs of gamma") {
    const ProtocolCosts zero = costs_of_gamma(0.0);
    CHECK(zero.ratio_u() == doctest::Approx(2.0 * std::sqrt(2.0) / kPi).epsilon(1e-14));
    CHECK(zero.ratio_sg() == 1.0);
    CHECK(std::abs(costs_of_gamma(1e6).ratio_u() - (0.5 + 1.0 / kPi)) < 1e-3);
    CHECK(std::abs(costs_of_gamma(1e6).ratio_sg() - (0.5 + 1.0 / kPi)) < 1e-3);
    CHECK_THROWS_AS(costs_of_gamma(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(costs_of_gamma(1.0, 0.0), std::invalid_argument);

    SUBCASE("closed forms agree with the protocol formulas") {
        for (double eps : {0.3, 1.0, 3.0}) {
            for (double A : {0.3, 1.0, 3.0}) {
                const SystemParams p(eps, A);
                const ProtocolCosts c = costs_of_gamma(p.gamma(), A);
                CHECK(c.c_min == doctest::Approx(shortcut_cost(p)).epsilon(1e-13));
                CHECK(c.c_sg == doctest::Approx(sg_cost(p, 0.0)).epsilon(1e-13));
                CHECK(c.c_u == doctest::Approx(*protocol_square(p, {10.0}).closed_form_cost).epsilon(1e-13));
            }
        }
    }
    SUBCASE("ratios depend only on gamma") {
        for (double s : {0.01, 0.5, 7.0, 300.0}) {
            const SystemParams p(0.8, 1.3), q(0.8 * std::sqrt(s), 1.3 * s);
            CHECK(std::abs(shortcut_cost(p) / square_cost(p, square_duration(p)) -
                           shortcut_cost(q) / square_cost(q, square_duration(q))) < 1e-12);
            CHECK(std::abs(shortcut_cost(p) / sg_cost(p, 0.0) - shortcut_cost(q) / sg_cost(q, 0.0)) < 1e-12);
        }
    }
}

TEST_CASE("ratio limits") {
    const RatioLimits l = ratio_limits();
    CHECK(std::abs(l.ratio_u_small - 2.0 * std::sqrt(2.0) / kPi) < 1e-6);
    CHECK(std::abs(l.ratio_u_large - (0.5 + 1.0 / kPi)) < 1e-3);
    CHECK(std::abs(l.ratio_sg_small - 1.0) < 1e-6);
    CHECK(std::abs(l.ratio_sg_large - (0.5 + 1.0 / kPi)) < 1e-3);
    CHECK(l.exact_u_small == doctest::Approx(0.900).epsilon(1e-3));
    CHECK(l.exact_u_large == doctest::Approx(0.818).epsilon(1e-3));
}

TEST_CASE("ratio maximum") {
    const RatioMaximum m = find_ratio_max();
    CHECK(std::abs(m.gamma - 0.0504) < 1e-3);
    CHECK(std::abs(m.ratio - 0.905) < 1e-3);
    CHECK(m.ratio > costs_of_gamma(0.0).ratio_u());
    CHECK(m.ratio > costs_of_gamma(1.0).ratio_u());
}

TEST_CASE("minimize_scalar") {
    const auto sq = minimize_scalar([](double x) { return (x - 2.0) * (x - 2.0); }, 0.0, 5.0, 1e-9);
    CHECK(std::abs(sq.x - 2.0) < 1e-9);

    const SystemParams p(1.0, 1.0);
    const auto tu = minimize_scalar([&](double T) { return square_cost(p, T); }, 0.1, 5.0, 1e-7);
    CHECK(std::abs(tu.x - kPi / (2.0 * std::sqrt(1.5))) < 1e-7);

    const auto e = minimize_scalar([&](double x) { return sg_cost(p, x); }, 0.0, 10.0, 1e-9);
    CHECK(e.x < 1e-6);

    // boundary minimum at the upper end
    CHECK(minimize_scalar([](double x) { return -x; }, 0.0, 1.0, 1e-9).x == 1.0);

    CHECK_THROWS_AS(minimize_scalar([](double) { return 0.0; }, 1.0, 1.0, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(minimize_scalar([](double) { return 0.0; }, 0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(minimize_scalar([](double x) { return std::log(x - 0.5); }, 0.0, 1.0, 1e-9), std::domain_error);
}

TEST_CASE("sine-Gordon energy optimum is e = 0") {
    for (double eps : {0.3, 1.0, 3.0}) {
        for (double A : {0.3, 1.0, 3.0}) {
            const SystemParams p(eps, A);
            CHECK(optimal_sg_energy(p).x < 1e-6);
            CHECK(sg_cost_slope_at_zero(p) >= -1e-8);
        }
    }
}

TEST_CASE("sweep ordering and bounds") {
    const std::vector<double> grid = default_gamma_grid();
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 20.0);
    const SweepResult r = sweep(grid);
    REQUIRE(r.size() == grid.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        CAPTURE(r.gamma[i]);
        CHECK(r.c_min[i] <= r.c_sg[i]);
        CHECK(r.c_min[i] < r.c_u[i]);
        CHECK(r.ratio_u[i] < 1.0);
        CHECK(r.ratio_sg[i] <= 1.0);
        CHECK(r.ratio_u[i] > 0.81);
        CHECK(r.ratio_u[i] < 0.91);
        if (i > 0) CHECK(r.gamma[i] > r.gamma[i - 1]);
    }
    CHECK(r.ratio_sg.front() == 1.0);
}

TEST_CASE("grids") {
    const auto lin = linear_grid(0.0, 20.0, 200);
    CHECK(lin.size() == 200);
    CHECK(lin.front() == 0.0);
    CHECK(lin.back() == 20.0);
    const auto lg = log_grid(1e-3, 20.0, 200);
    CHECK(lg.front() == 1e-3);
    CHECK(lg.back() == 20.0);
    CHECK(lg[1] / lg[0] == doctest::Approx(lg[100] / lg[99]));
    CHECK_THROWS_AS(linear_grid(1.0, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(linear_grid(-1.0, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(linear_grid(0.0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(log_grid(0.0, 1.0, 5), std::invalid_argument);
}
