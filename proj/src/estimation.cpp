#include "stewart/estimation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stewart {

namespace {

double wrap_angle(double a) {
    // Maps to (-pi, pi]; residuals of nearly opposite angles stay bounded.
    const double two_pi = 2.0 * std::numbers::pi;
    double w = std::remainder(a, two_pi);
    if (w <= -std::numbers::pi) w += two_pi;
    return w;
}

Pose pose_of(const Vec12& xi) {
    Pose q;
    q.t = xi.head<3>();
    q.r = xi.segment<3>(3);
    return q;
}

}  // namespace

EkfTuning default_tuning() {
    EkfTuning t;
    t.predict_cov << 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 5.0, 5.0, 5.0, 5.0, 5.0, 5.0;
    t.innov_cov << 10.0, 10.0, 10.0, 10.0, 10.0, 10.0, 1.0, 1.0, 1.0, 3.0, 3.0, 3.0;
    t.initial_cov << 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.01, 0.01, 0.01, 0.01, 0.01, 0.01;
    return t;
}

DiscreteModel discretize(double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");

    DiscreteModel model;
    model.dt = dt;
    model.A_d.setIdentity();
    model.A_d.topRightCorner<6, 6>() = dt * Mat6::Identity();
    model.B_d.bottomRows<6>() = dt * Mat6::Identity();
    return model;
}

EkfState ekf_predict(const EkfState& state, const Vec6& u, const DiscreteModel& model,
                     const EkfTuning& tuning) {
    EkfState next;
    next.xhat = model.A_d * state.xhat + model.B_d * u;
    next.P = model.A_d * state.P * model.A_d.transpose();
    next.P += Mat12(tuning.predict_cov.asDiagonal());
    return next;
}

Vec12 measurement_model(const Vec12& xi, const PlatformGeometry& geom) {
    const Pose q = pose_of(xi);
    const LegKinematics legs = inverse_kinematics(q, geom);

    Vec12 z;
    for (size_t i = 0; i < 6; ++i) z(static_cast<Eigen::Index>(i)) = legs.s[i];
    z.segment<3>(6) = q.r;
    z.tail<3>() = euler_rate_to_body_rate(q.r, xi.tail<3>());
    return z;
}

Mat12 measurement_jacobian(const Vec12& xi, const PlatformGeometry& geom) {
    const Pose q = pose_of(xi);
    const Vec3 rdot = xi.tail<3>();
    const Mat3 R = rotation_zyx(q.r);
    const Mat3 T = euler_rate_matrix(q.r);

    Mat12 G = Mat12::Zero();

    // ds = J [v; omega] and omega = R T rdot, so d s / d r = J_rot R T.
    const Mat6 J = kinematic_jacobian(q, geom);
    G.topLeftCorner<6, 3>() = J.leftCols<3>();
    G.block<6, 3>(0, 3) = J.rightCols<3>() * R * T;

    G.block<3, 3>(6, 3) = Mat3::Identity();

    G.block<3, 3>(9, 3) = body_rate_pose_jacobian(q.r, rdot);
    G.block<3, 3>(9, 9) = T;
    return G;
}

EkfState kalman_correct(const EkfState& state, const Vec12& innovation,
                        const Mat12& Gamma, const Vec12& innov_cov) {
    const Mat12 S = Gamma * state.P * Gamma.transpose() + Mat12(innov_cov.asDiagonal());
    const Mat12 K = state.P * Gamma.transpose() * S.ldlt().solve(Mat12::Identity());

    EkfState next;
    next.xhat = state.xhat + K * innovation;
    next.P = (Mat12::Identity() - K * Gamma) * state.P;
    next.P = 0.5 * (next.P + next.P.transpose());
    return next;
}

EkfState ekf_update(const EkfState& state, const Vec12& z, const EkfTuning& tuning,
                    const PlatformGeometry& geom) {
    const Mat12 Gamma = measurement_jacobian(state.xhat, geom);

    Vec12 innovation = z - measurement_model(state.xhat, geom);
    for (Eigen::Index i = 6; i < 9; ++i) innovation(i) = wrap_angle(innovation(i));

    return kalman_correct(state, innovation, Gamma, tuning.innov_cov);
}

EkfState ekf_initialize(const std::array<double, 6>& encoder_lengths,
                        const PlatformGeometry& geom, const EkfTuning& tuning) {
    const Pose q = forward_kinematics(encoder_lengths, home_pose(), geom);

    EkfState state;
    state.xhat.head<3>() = q.t;
    state.xhat.segment<3>(3) = q.r;
    state.P = tuning.initial_cov.asDiagonal();
    return state;
}

}  // namespace stewart
