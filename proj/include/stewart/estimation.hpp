#pragma once

#include <array>

#include "stewart/geometry.hpp"
#include "stewart/types.hpp"

namespace stewart {

// Extended Kalman filter over the platform state xi = [q; qdot]. The motion
// model is the feedback-linearized double integrator discretized at dt; the
// measurement stacks the six leg lengths, the three Euler angles, and the
// angular velocity in {P}.
//
// Covariance roles follow the filter equations this plant's tuning was
// paired with: predict_cov is added in the prediction step, innov_cov in
// the innovation. Diagonals only.
struct EkfTuning {
    Vec12 predict_cov{Vec12::Zero()};
    Vec12 innov_cov{Vec12::Zero()};
    Vec12 initial_cov{Vec12::Zero()};
};

// Defaults: predict diag(1 x6, 5 x6), innovation diag(10 x6, 1 x3, 3 x3),
// initial 1e-2 diag(100 x6, 1 x6).
EkfTuning default_tuning();

struct EkfState {
    Vec12 xhat{Vec12::Zero()};
    Mat12 P{Mat12::Zero()};
};

// Exact discretization of the double integrator at step dt:
// A_d = [[I, dt I], [0, I]], B_d = [[0]; [dt I]]. dt must be positive.
struct DiscreteModel {
    Mat12 A_d{Mat12::Zero()};
    Eigen::Matrix<double, 12, 6> B_d{Eigen::Matrix<double, 12, 6>::Zero()};
    double dt{0.0};
};
DiscreteModel discretize(double dt);

// xhat <- A_d xhat + B_d u, P <- A_d P A_d^T + predict_cov.
EkfState ekf_predict(const EkfState& state, const Vec6& u, const DiscreteModel& model,
                     const EkfTuning& tuning);

// Expected measurement gamma(xi) = [s_1..s_6, phi, theta, psi, omega_p].
Vec12 measurement_model(const Vec12& xi, const PlatformGeometry& geom);

// Analytic Jacobian d gamma / d xi. Leg rows differentiate the lengths
// through the pose (the rotational part is pulled back through R T into
// Euler coordinates); angle rows select; rate rows hold d(T rdot)/dr and T.
Mat12 measurement_jacobian(const Vec12& xi, const PlatformGeometry& geom);

// Linear correction shared by the filter: posterior from a precomputed
// innovation and measurement Jacobian. The posterior covariance is
// re-symmetrized to stop round-off drift.
EkfState kalman_correct(const EkfState& state, const Vec12& innovation,
                        const Mat12& Gamma, const Vec12& innov_cov);

// Innovation update with the angle residuals wrapped to (-pi, pi].
EkfState ekf_update(const EkfState& state, const Vec12& z, const EkfTuning& tuning,
                    const PlatformGeometry& geom);

// Initial state from the first encoder reading: pose from forward
// kinematics seeded at the home pose, zero velocity, P = diag(initial_cov).
EkfState ekf_initialize(const std::array<double, 6>& encoder_lengths,
                        const PlatformGeometry& geom, const EkfTuning& tuning);

}  // namespace stewart
