#include "stewart/sim.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "stewart/control.hpp"
#include "stewart/errors.hpp"
#include "stewart/estimation.hpp"

namespace stewart {

namespace {

Pose pose_of(const Vec12& xi) {
    Pose q;
    q.t = xi.head<3>();
    q.r = xi.segment<3>(3);
    return q;
}

Vec12 initial_state() {
    Vec12 xi = Vec12::Zero();
    xi.head<3>() = home_pose().t;
    return xi;
}

}  // namespace

ScenarioSpec make_scenario(const SimConfig& config) {
    ScenarioSpec spec;
    if (config.run.scenario == "step") {
        spec.kind = ScenarioKind::step;
    } else if (config.run.scenario == "sinusoid") {
        spec.kind = ScenarioKind::sinusoid;
    } else {
        throw ConfigError("run.scenario", "expected 'step' or 'sinusoid'");
    }

    spec.dt = config.run.dt;
    spec.duration = config.run.duration;
    if (spec.duration == 0.0) {
        spec.duration = spec.kind == ScenarioKind::step ? 60.0 : 20.0;
    }
    spec.literal_rate_typo = config.run.literal_reference;

    if (!(spec.dt > 0.0)) throw ConfigError("run.dt", "must be positive");
    if (!(spec.duration > 0.0)) throw ConfigError("run.duration", "must be positive");
    const double steps = spec.duration / spec.dt;
    if (std::abs(steps - std::round(steps)) > 1e-9) {
        throw ConfigError("run.duration", "dt must divide the duration");
    }
    return spec;
}

Vec12 reference(const ScenarioSpec& spec, double t) {
    Vec12 xi_des = Vec12::Zero();
    if (spec.kind == ScenarioKind::step) {
        xi_des(2) = spec.z_level;
        const double w = spec.step_window;
        if (t >= w && t < 2.0 * w) xi_des(0) = spec.step_amplitude_xy;
        if (t >= 2.0 * w && t < 3.0 * w) xi_des(1) = spec.step_amplitude_xy;
        if (t >= 3.0 * w && t < 4.0 * w) xi_des(3) = spec.step_amplitude_angle;
        if (t >= 4.0 * w && t < 5.0 * w) xi_des(4) = spec.step_amplitude_angle;
        if (t >= 5.0 * w) xi_des(5) = spec.step_amplitude_angle;
    } else {
        xi_des(2) = spec.z_level;
        xi_des(3) = spec.sine_amplitude * std::sin(spec.sine_omega * t);
        xi_des(4) = spec.sine_amplitude * std::cos(spec.sine_omega * t);
        xi_des(9) = spec.sine_amplitude * spec.sine_omega * std::cos(spec.sine_omega * t);
        xi_des(10) = -spec.sine_amplitude * spec.sine_omega * std::sin(spec.sine_omega * t);
        if (spec.literal_rate_typo) xi_des(8) = spec.z_level;
    }
    return xi_des;
}

SensorNoise make_noise(const SimConfig& config) {
    SensorNoise noise;
    noise.leg_sigma = config.noise.leg_sigma;
    noise.angle_sigma = config.noise.angle_sigma;
    noise.rate_sigma = config.noise.rate_sigma;
    noise.seed = config.noise.seed;
    return noise;
}

Vec12 integrate_plant(const Vec12& xi, const Vec6& F, double dt, int substeps,
                      const PlatformGeometry& geom, const RigidBodyParams& params) {
    if (substeps < 1) throw std::invalid_argument("substeps must be at least 1");

    auto deriv = [&](const Vec12& state) {
        const Vec6 qdot = state.tail<6>();
        Vec12 d;
        d.head<6>() = qdot;
        d.tail<6>() = forward_dynamics(pose_of(state), qdot, F, geom, params);
        return d;
    };

    const double h = dt / substeps;
    Vec12 state = xi;
    for (int k = 0; k < substeps; ++k) {
        const Vec12 k1 = deriv(state);
        const Vec12 k2 = deriv(state + 0.5 * h * k1);
        const Vec12 k3 = deriv(state + 0.5 * h * k2);
        const Vec12 k4 = deriv(state + h * k3);
        state += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return state;
}

Vec12 simulate_measurement(const Vec12& xi_true, const SensorNoise& noise,
                           std::mt19937_64& rng, const PlatformGeometry& geom) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec12 z = measurement_model(xi_true, geom);
    for (Eigen::Index i = 0; i < 12; ++i) {
        const double sigma = i < 6 ? noise.leg_sigma
                           : i < 9 ? noise.angle_sigma
                                   : noise.rate_sigma;
        z(i) += sigma * gauss(rng);
    }
    return z;
}

std::vector<SimRecord> run_closed_loop(const SimConfig& config) {
    const PlatformGeometry geom = make_geometry(config);
    const RigidBodyParams params = make_params(config);
    const ScenarioSpec scenario = make_scenario(config);
    const SensorNoise noise = make_noise(config);
    const EkfTuning tuning = make_tuning(config);
    const LqrWeights weights = make_weights(config);
    const auto K = lqr_gain(solve_care(weights), weights);
    const DiscreteModel model = discretize(scenario.dt);

    const int n_steps = static_cast<int>(std::round(scenario.duration / scenario.dt));
    std::mt19937_64 rng(noise.seed);

    std::vector<SimRecord> records;
    records.reserve(static_cast<size_t>(n_steps) + 1);

    Vec12 xi_true = initial_state();
    Vec12 z;
    EkfState ekf;
    try {
        z = simulate_measurement(xi_true, noise, rng, geom);
        std::array<double, 6> encoder{};
        for (size_t i = 0; i < 6; ++i) encoder[i] = z(static_cast<Eigen::Index>(i));
        ekf = ekf_initialize(encoder, geom, tuning);
    } catch (const std::exception& e) {
        throw SimError(0, e.what());
    }

    for (int k = 0; k <= n_steps; ++k) {
        try {
            SimRecord rec;
            rec.t = k * scenario.dt;
            rec.xi_true = xi_true;
            rec.xi_des = reference(scenario, rec.t);
            rec.xhat = ekf.xhat;
            rec.z = z;

            const Vec12& xi_ctrl = config.run.perfect_state ? xi_true : ekf.xhat;
            rec.u = virtual_control(xi_ctrl, rec.xi_des, K);
            rec.F = feedback_linearize(pose_of(xi_ctrl), xi_ctrl.tail<6>(), rec.u,
                                       geom, params);

            rec.e_l = (rec.xhat - xi_true).norm();
            rec.e_t = (xi_true - rec.xi_des).norm();
            rec.e_cs = (rec.xi_des - rec.xhat).norm();
            records.push_back(rec);

            if (k < n_steps) {
                xi_true = integrate_plant(xi_true, rec.F, scenario.dt,
                                          config.run.substeps, geom, params);
                z = simulate_measurement(xi_true, noise, rng, geom);
                ekf = ekf_predict(ekf, rec.u, model, tuning);
                ekf = ekf_update(ekf, z, tuning, geom);
            }
        } catch (const SimError&) {
            throw;
        } catch (const std::exception& e) {
            throw SimError(k, e.what());
        }
    }
    return records;
}

}  // namespace stewart
