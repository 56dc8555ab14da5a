#include "stewart/control.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "stewart/errors.hpp"

namespace stewart {

namespace {

void validate(const LqrWeights& w) {
    for (int i = 0; i < 6; ++i) {
        if (!(w.o_diag(i) > 0.0)) {
            throw std::invalid_argument("input weight " + std::to_string(i)
                                        + " must be positive");
        }
        const double n1 = w.n_diag(i);
        const double n2 = w.n_diag(i + 6);
        if (n1 < 0.0 || n2 < 0.0) {
            throw std::invalid_argument("state weights must be non-negative");
        }
        if (n1 <= 0.0 && n2 <= 0.0) {
            throw std::invalid_argument("axis " + std::to_string(i)
                                        + " is undetectable: both state weights are zero");
        }
    }
}

}  // namespace

LqrWeights default_weights() {
    LqrWeights w;
    w.n_diag << 30.0, 30.0, 5.0, 30.0, 30.0, 200.0, 3.0, 3.0, 1.0, 3.0, 3.0, 20.0;
    w.o_diag = Vec6::Constant(10.0);
    return w;
}

Mat12 solve_care(const LqrWeights& weights) {
    validate(weights);

    Mat12 D = Mat12::Zero();
    for (int i = 0; i < 6; ++i) {
        const double n1 = weights.n_diag(i);
        const double n2 = weights.n_diag(i + 6);
        const double o = weights.o_diag(i);

        const double d2 = std::sqrt(n1 * o);
        const double d3 = std::sqrt(o * n2 + 2.0 * o * d2);
        const double d1 = d2 * d3 / o;

        D(i, i) = d1;
        D(i, i + 6) = d2;
        D(i + 6, i) = d2;
        D(i + 6, i + 6) = d3;
    }
    return D;
}

Eigen::Matrix<double, 6, 12> lqr_gain(const Mat12& D, const LqrWeights& weights) {
    validate(weights);

    // K = O^{-1} B^T D with B = [0; I]: row i picks D's velocity-block rows.
    Eigen::Matrix<double, 6, 12> K = Eigen::Matrix<double, 6, 12>::Zero();
    for (int i = 0; i < 6; ++i) {
        K.row(i) = D.row(i + 6) / weights.o_diag(i);
    }
    return K;
}

Vec6 virtual_control(const Vec12& xhat, const Vec12& xi_des,
                     const Eigen::Matrix<double, 6, 12>& K) {
    return -K * (xhat - xi_des);
}

Vec6 feedback_linearize(const Pose& q, const Vec6& qdot, const Vec6& u,
                        const PlatformGeometry& geom, const RigidBodyParams& params) {
    const DynamicsMatrices dm = assemble_eom(q, qdot, geom, params);

    const Mat3 R = rotation_zyx(q.r);
    const Vec3 rdot = qdot.tail<3>();
    const Vec3 alpha_des = R * (euler_rate_matrix_rate(q.r, rdot) * rdot
                                + euler_rate_matrix(q.r) * u.tail<3>());
    const Vec6 eta_dot_des = pack(u.head<3>(), alpha_des);

    const Eigen::PartialPivLU<Mat6> lu(dm.H);
    const double rc = lu.rcond();
    if (!(rc > 1e-8)) {
        throw SingularityError("cannot invert force map near singular configuration",
                               rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity());
    }
    return lu.solve(dm.M * eta_dot_des + dm.Cqdot + dm.G);
}

}  // namespace stewart
