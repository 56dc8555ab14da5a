#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "stewart/errors.hpp"
#include "stewart/estimation.hpp"
#include "stewart/sim.hpp"

using namespace stewart;
using namespace stewart::test;

namespace {

SimConfig short_step_config(double duration) {
    SimConfig config;
    config.run.scenario = "step";
    config.run.duration = duration;
    return config;
}

// Both rings on one ray: every leg vertical at r = 0, so the force map is
// structurally singular and the run cannot even initialize.
SimConfig degenerate_config() {
    SimConfig config;
    config.geometry.r_p = config.geometry.r_b;
    config.geometry.base_pair_centers_deg = {0.0, 0.0, 0.0};
    config.geometry.platform_pair_centers_deg = {0.0, 0.0, 0.0};
    config.run.duration = 0.1;
    return config;
}

}  // namespace

TEST_CASE("scenario resolution fills defaults and validates the grid") {
    SimConfig config;
    config.run.scenario = "step";
    CHECK(make_scenario(config).duration == 60.0);
    CHECK(make_scenario(config).kind == ScenarioKind::step);

    config.run.scenario = "sinusoid";
    CHECK(make_scenario(config).duration == 20.0);
    CHECK(make_scenario(config).kind == ScenarioKind::sinusoid);

    config.run.duration = 5.0;
    CHECK(make_scenario(config).duration == 5.0);

    config.run.duration = 0.015;   // not a multiple of dt = 0.01
    CHECK_THROWS_AS(make_scenario(config), ConfigError);

    config.run.duration = 1.0;
    config.run.dt = -0.01;
    CHECK_THROWS_AS(make_scenario(config), ConfigError);

    config = SimConfig{};
    config.run.scenario = "circle";
    CHECK_THROWS_AS(make_scenario(config), ConfigError);

    config = SimConfig{};
    config.run.literal_reference = true;
    CHECK(make_scenario(config).literal_rate_typo);
}

TEST_CASE("step reference walks one axis per ten-second window") {
    ScenarioSpec spec;
    spec.kind = ScenarioKind::step;

    auto at = [&](double t) { return reference(spec, t); };

    // z is held at 0.4 m throughout; commanded axes move one at a time.
    for (double t : {0.0, 5.0, 12.0, 25.0, 37.0, 48.0, 59.9}) {
        CHECK(at(t)(2) == 0.4);
        CHECK(at(t).tail<6>().cwiseAbs().maxCoeff() == 0.0);
    }

    CHECK(at(5.0).head<2>().cwiseAbs().maxCoeff() == 0.0);
    CHECK(at(10.0)(0) == 0.075);
    CHECK(at(19.99)(0) == 0.075);
    CHECK(at(20.0)(0) == 0.0);
    CHECK(at(20.0)(1) == 0.075);
    CHECK(at(30.0)(1) == 0.0);
    CHECK(at(30.0)(3) == 0.15);
    CHECK(at(40.0)(3) == 0.0);
    CHECK(at(40.0)(4) == 0.15);
    CHECK(at(50.0)(4) == 0.0);
    CHECK(at(50.0)(5) == 0.15);
    CHECK(at(60.0)(5) == 0.15);   // the yaw command holds to the end
    CHECK(at(60.0)(3) == 0.0);
    CHECK(at(60.0)(4) == 0.0);
}

TEST_CASE("sinusoid reference circles roll and pitch with matching rates") {
    ScenarioSpec spec;
    spec.kind = ScenarioKind::sinusoid;

    const Vec12 start = reference(spec, 0.0);
    CHECK(start(2) == 0.4);
    CHECK(start(3) == 0.0);
    CHECK(start(4) == 0.1);
    CHECK(start(9) == 0.1);
    CHECK(start(10) == 0.0);
    CHECK(start(8) == 0.0);

    for (double t : {0.3, 1.7, 4.2}) {
        const Vec12 xi = reference(spec, t);
        CHECK(xi(3) == doctest::Approx(0.1 * std::sin(t)).epsilon(1e-15));
        CHECK(xi(4) == doctest::Approx(0.1 * std::cos(t)).epsilon(1e-15));
        // The rate entries are the exact derivatives of the angle entries.
        CHECK(xi(9) == doctest::Approx(0.1 * std::cos(t)).epsilon(1e-15));
        CHECK(xi(10) == doctest::Approx(-0.1 * std::sin(t)).epsilon(1e-15));
    }

    spec.literal_rate_typo = true;
    CHECK(reference(spec, 1.0)(8) == 0.4);
}

TEST_CASE("plant integration converges under substep refinement") {
    const PlatformGeometry geom = default_geometry();
    const RigidBodyParams params = default_params();

    Vec12 xi = Vec12::Zero();
    xi.head<3>() = home_pose().t;

    Vec6 F = gravity_compensation(home_pose(), geom, params);
    F += (Vec6() << 0.3, -0.2, 0.4, 0.1, -0.3, 0.2).finished();

    Vec12 coarse = xi, fine = xi;
    for (int k = 0; k < 10; ++k) {
        coarse = integrate_plant(coarse, F, 0.01, 10, geom, params);
        fine = integrate_plant(fine, F, 0.01, 20, geom, params);
    }
    CHECK((coarse - fine).cwiseAbs().maxCoeff() < 1e-8);

    CHECK_THROWS_AS(integrate_plant(xi, F, 0.01, 0, geom, params),
                    std::invalid_argument);
}

TEST_CASE("measurements are reproducible and correctly scaled") {
    const PlatformGeometry geom = default_geometry();
    Vec12 xi = Vec12::Zero();
    xi.head<3>() = home_pose().t;

    SensorNoise noise;

    std::mt19937_64 a(5), b(5);
    const Vec12 za = simulate_measurement(xi, noise, a, geom);
    const Vec12 zb = simulate_measurement(xi, noise, b, geom);
    CHECK((za - zb).cwiseAbs().maxCoeff() == 0.0);

    SensorNoise silent;
    silent.leg_sigma = 0.0;
    silent.angle_sigma = 0.0;
    silent.rate_sigma = 0.0;
    std::mt19937_64 c(5);
    const Vec12 clean = simulate_measurement(xi, silent, c, geom);
    CHECK((clean - measurement_model(xi, geom)).cwiseAbs().maxCoeff() == 0.0);

    // Sample moments of the additive noise per channel group.
    const int N = 20000;
    std::mt19937_64 rng(12345);
    const Vec12 model = measurement_model(xi, geom);
    Vec12 sum = Vec12::Zero(), sumsq = Vec12::Zero();
    for (int k = 0; k < N; ++k) {
        const Vec12 err = simulate_measurement(xi, noise, rng, geom) - model;
        sum += err;
        sumsq += err.cwiseProduct(err);
    }
    for (int i = 0; i < 12; ++i) {
        const double sigma = i < 6 ? noise.leg_sigma
                           : i < 9 ? noise.angle_sigma
                                   : noise.rate_sigma;
        const double mean = sum(i) / N;
        const double stddev = std::sqrt(sumsq(i) / N - mean * mean);
        CHECK(std::abs(mean) < 4.0 * sigma / std::sqrt(double(N)));
        CHECK(stddev == doctest::Approx(sigma).epsilon(0.05));
    }
}

TEST_CASE("closed-loop run produces the full record grid") {
    const SimConfig config = short_step_config(1.0);
    const auto records = run_closed_loop(config);

    REQUIRE(records.size() == 101);
    CHECK(records.front().t == 0.0);
    CHECK(records.back().t == doctest::Approx(1.0).epsilon(1e-12));
    for (size_t k = 0; k < records.size(); ++k) {
        CHECK(std::abs(records[k].t - 0.01 * double(k)) < 1e-12);
    }

    // Initial truth is the resting platform at home height.
    CHECK(records.front().xi_true(2) == 0.32);
    CHECK(records.front().xi_true.tail<6>().cwiseAbs().maxCoeff() == 0.0);

    // Stored error norms match their stored operands.
    for (const SimRecord& r : records) {
        CHECK(std::abs(r.e_l - (r.xhat - r.xi_true).norm()) < 1e-12);
        CHECK(std::abs(r.e_t - (r.xi_true - r.xi_des).norm()) < 1e-12);
        CHECK(std::abs(r.e_cs - (r.xi_des - r.xhat).norm()) < 1e-12);
    }
}

TEST_CASE("identical configurations reproduce identical runs") {
    const SimConfig config = short_step_config(1.0);
    const auto first = run_closed_loop(config);
    const auto second = run_closed_loop(config);

    REQUIRE(first.size() == second.size());
    for (size_t k = 0; k < first.size(); ++k) {
        CHECK(first[k].t == second[k].t);
        CHECK((first[k].xi_true - second[k].xi_true).cwiseAbs().maxCoeff() == 0.0);
        CHECK((first[k].xhat - second[k].xhat).cwiseAbs().maxCoeff() == 0.0);
        CHECK((first[k].z - second[k].z).cwiseAbs().maxCoeff() == 0.0);
        CHECK((first[k].F - second[k].F).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("noiseless runs start from an exact estimate and stay locked") {
    SimConfig config = short_step_config(2.0);
    config.noise.leg_sigma = 0.0;
    config.noise.angle_sigma = 0.0;
    config.noise.rate_sigma = 0.0;

    const auto records = run_closed_loop(config);
    CHECK(records.front().e_l < 1e-9);
    for (const SimRecord& r : records) CHECK(r.e_l < 1e-3);
}

TEST_CASE("perfect-state runs bypass the estimator in the control path") {
    SimConfig config = short_step_config(2.0);
    config.run.perfect_state = true;

    // Large angle noise would wreck estimate-based control; with true-state
    // feedback it only pollutes the logged estimate.
    config.noise.angle_sigma = 0.2;

    const auto records = run_closed_loop(config);
    CHECK(records.back().e_t < 0.2);
}

TEST_CASE("failures inside a run carry the failing step index") {
    try {
        run_closed_loop(degenerate_config());
        FAIL("expected SimError");
    } catch (const SimError& e) {
        CHECK(e.step() == 0);
    }
}
