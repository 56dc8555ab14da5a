#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "stewart/config.hpp"
#include "stewart/types.hpp"

namespace stewart {

enum class ScenarioKind { step, sinusoid };

// Reference trajectory parameters. The step scenario lifts the platform to
// z_level and then commands one axis at a time in consecutive windows of
// step_window seconds (x, y, roll, pitch, yaw; the yaw command holds to the
// end). The sinusoid scenario circles roll and pitch at angular frequency
// omega. All references command zero velocity except the sinusoid's angular
// rates; literal_rate_typo keeps the legacy reference tuple whose z-rate
// slot carries the z position value.
struct ScenarioSpec {
    ScenarioKind kind{ScenarioKind::step};
    double duration{60.0};
    double dt{0.01};
    double z_level{0.4};
    double step_amplitude_xy{0.075};
    double step_amplitude_angle{0.15};
    double step_window{10.0};
    double sine_amplitude{0.1};
    double sine_omega{1.0};
    bool literal_rate_typo{false};
};

// Scenario from the run block; duration 0 resolves to the scenario default
// (60 s step, 20 s sinusoid). Throws ConfigError unless dt divides the
// duration within 1e-9.
ScenarioSpec make_scenario(const SimConfig& config);

// Desired [q; qdot] at time t.
Vec12 reference(const ScenarioSpec& spec, double t);

struct SensorNoise {
    double leg_sigma{2e-4};
    double angle_sigma{5e-4};
    double rate_sigma{5e-4};
    std::uint64_t seed{42};
};
SensorNoise make_noise(const SimConfig& config);

// One time step of the true plant under a zero-order-held force: RK4 on
// [qdot; forward_dynamics], `substeps` internal steps of dt / substeps.
Vec12 integrate_plant(const Vec12& xi, const Vec6& F, double dt, int substeps,
                      const PlatformGeometry& geom, const RigidBodyParams& params);

// Noisy sensor reading of the true state: per-channel Gaussian noise on the
// leg lengths, Euler angles, and body rates. Twelve draws in measurement
// row order, so a fixed seed fixes the whole sequence.
Vec12 simulate_measurement(const Vec12& xi_true, const SensorNoise& noise,
                           std::mt19937_64& rng, const PlatformGeometry& geom);

struct SimRecord {
    double t{0.0};
    Vec12 xi_true{Vec12::Zero()};
    Vec12 xi_des{Vec12::Zero()};
    Vec12 xhat{Vec12::Zero()};
    Vec12 z{Vec12::Zero()};
    Vec6 u{Vec6::Zero()};
    Vec6 F{Vec6::Zero()};
    double e_l{0.0};    // ||xhat - xi_true||
    double e_t{0.0};    // ||xi_true - xi_des||
    double e_cs{0.0};   // ||xi_des - xhat||
};

// Runs the full loop: reference -> LQR on the EKF estimate -> feedback
// linearization -> plant -> sensors -> EKF. Returns one record per control
// step including t = 0 and t = duration (duration / dt + 1 rows). Module
// errors are rethrown as SimError with the failing step attached.
std::vector<SimRecord> run_closed_loop(const SimConfig& config);

}  // namespace stewart
