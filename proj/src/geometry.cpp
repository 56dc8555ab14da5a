#include "stewart/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "stewart/errors.hpp"

namespace stewart {

namespace {

constexpr double kPitchMargin = 1e-3;     // gimbal-lock guard on |theta|
constexpr double kMinLegLength = 1e-9;    // below this a leg counts as collapsed
constexpr double kFkTolerance = 1e-10;    // residual bound, tighter than the 1e-9 contract
constexpr int kFkMaxIterations = 100;
constexpr double kFkMaxCondition = 1e12;

void check_pitch(const Vec3& r) {
    if (std::abs(r.y()) >= std::numbers::pi / 2.0 - kPitchMargin) {
        throw SingularityError("pitch within 1e-3 rad of +-pi/2, Euler rate map is singular",
                               std::numeric_limits<double>::infinity());
    }
}

}  // namespace

PlatformGeometry build_geometry(double r_b, double r_p,
                                const std::array<double, 3>& base_pair_centers,
                                const std::array<double, 3>& platform_pair_centers,
                                double pair_half_offset, const Vec3& c_p) {
    if (r_b <= 0.0) throw std::invalid_argument("base radius must be positive");
    if (r_p <= 0.0) throw std::invalid_argument("platform radius must be positive");

    PlatformGeometry geom;
    geom.r_b = r_b;
    geom.r_p = r_p;
    geom.base_pair_centers = base_pair_centers;
    geom.platform_pair_centers = platform_pair_centers;
    geom.pair_half_offset = pair_half_offset;
    geom.c_p = c_p;

    auto ring_joint = [](double radius, double angle) {
        return Vec3(radius * std::cos(angle), radius * std::sin(angle), 0.0);
    };

    // Legs 2k and 2k+1 share base pair k. The minus joint pairs with the
    // minus joint of platform pair k; the plus joint pairs with the plus
    // joint of platform pair (k+2) mod 3, i.e. the pair centered 60 deg
    // behind. Alternating signs keep J full rank (see PlatformGeometry).
    for (int k = 0; k < 3; ++k) {
        const double bc = base_pair_centers[static_cast<size_t>(k)];
        geom.b[static_cast<size_t>(2 * k)] = ring_joint(r_b, bc - pair_half_offset);
        geom.b[static_cast<size_t>(2 * k + 1)] = ring_joint(r_b, bc + pair_half_offset);

        const double pc_minus = platform_pair_centers[static_cast<size_t>(k)];
        const double pc_plus = platform_pair_centers[static_cast<size_t>((k + 2) % 3)];
        geom.p[static_cast<size_t>(2 * k)] = ring_joint(r_p, pc_minus - pair_half_offset);
        geom.p[static_cast<size_t>(2 * k + 1)] = ring_joint(r_p, pc_plus + pair_half_offset);
    }
    return geom;
}

PlatformGeometry default_geometry() {
    const double d = std::numbers::pi / 180.0;
    return build_geometry(0.20, 0.16, {0.0, 120.0 * d, 240.0 * d},
                          {60.0 * d, 180.0 * d, 300.0 * d}, 20.0 * d, Vec3::Zero());
}

Pose home_pose() {
    Pose q;
    q.t = Vec3(0.0, 0.0, 0.32);
    return q;
}

Mat3 skew(const Vec3& v) {
    Mat3 m;
    m << 0.0, -v.z(), v.y(),
         v.z(), 0.0, -v.x(),
        -v.y(), v.x(), 0.0;
    return m;
}

Mat3 rotation_zyx(const Vec3& r) {
    const double cphi = std::cos(r.x()), sphi = std::sin(r.x());
    const double cth = std::cos(r.y()), sth = std::sin(r.y());
    const double cpsi = std::cos(r.z()), spsi = std::sin(r.z());

    Mat3 R;
    R << cpsi * cth, cpsi * sth * sphi - spsi * cphi, cpsi * sth * cphi + spsi * sphi,
         spsi * cth, spsi * sth * sphi + cpsi * cphi, spsi * sth * cphi - cpsi * sphi,
         -sth, cth * sphi, cth * cphi;
    return R;
}

Mat3 euler_rate_matrix(const Vec3& r) {
    const double cphi = std::cos(r.x()), sphi = std::sin(r.x());
    const double cth = std::cos(r.y()), sth = std::sin(r.y());

    Mat3 T;
    T << 1.0, 0.0, -sth,
         0.0, cphi, cth * sphi,
         0.0, -sphi, cth * cphi;
    return T;
}

Mat3 euler_rate_matrix_rate(const Vec3& r, const Vec3& rdot) {
    const double cphi = std::cos(r.x()), sphi = std::sin(r.x());
    const double cth = std::cos(r.y()), sth = std::sin(r.y());
    const double phidot = rdot.x(), thdot = rdot.y();

    Mat3 Tdot;
    Tdot << 0.0, 0.0, -cth * thdot,
            0.0, -sphi * phidot, -sth * sphi * thdot + cth * cphi * phidot,
            0.0, -cphi * phidot, -sth * cphi * thdot - cth * sphi * phidot;
    return Tdot;
}

Mat3 body_rate_pose_jacobian(const Vec3& r, const Vec3& rdot) {
    const double cphi = std::cos(r.x()), sphi = std::sin(r.x());
    const double cth = std::cos(r.y()), sth = std::sin(r.y());

    Mat3 dT_dphi = Mat3::Zero();
    dT_dphi(1, 1) = -sphi;
    dT_dphi(1, 2) = cth * cphi;
    dT_dphi(2, 1) = -cphi;
    dT_dphi(2, 2) = -cth * sphi;

    Mat3 dT_dtheta = Mat3::Zero();
    dT_dtheta(0, 2) = -cth;
    dT_dtheta(1, 2) = -sth * sphi;
    dT_dtheta(2, 2) = -sth * cphi;

    Mat3 jac = Mat3::Zero();
    jac.col(0) = dT_dphi * rdot;
    jac.col(1) = dT_dtheta * rdot;
    return jac;
}

Vec3 euler_rate_to_body_rate(const Vec3& r, const Vec3& rdot) {
    check_pitch(r);
    return euler_rate_matrix(r) * rdot;
}

Vec6 spatial_velocity(const Pose& q, const Vec6& qdot) {
    const Mat3 R = rotation_zyx(q.r);
    const Vec3 omega = R * euler_rate_to_body_rate(q.r, qdot.tail<3>());
    return pack(qdot.head<3>(), omega);
}

LegKinematics inverse_kinematics(const Pose& q, const PlatformGeometry& geom) {
    const Mat3 R = rotation_zyx(q.r);

    LegKinematics legs;
    for (size_t i = 0; i < 6; ++i) {
        legs.q_p[i] = q.t + R * geom.p[i];
        legs.l[i] = legs.q_p[i] - geom.b[i];
        legs.s[i] = legs.l[i].norm();
        if (legs.s[i] < kMinLegLength) {
            throw SingularityError("leg " + std::to_string(i + 1) + " collapsed",
                                   std::numeric_limits<double>::infinity());
        }
        legs.n[i] = legs.l[i] / legs.s[i];
    }
    return legs;
}

std::array<Vec3, 6> joint_velocity(const Pose& q, const Twist& qdot,
                                   const PlatformGeometry& geom) {
    const Mat3 R = rotation_zyx(q.r);
    const Vec3 omega = R * euler_rate_to_body_rate(q.r, qdot.rdot);

    std::array<Vec3, 6> out;
    for (size_t i = 0; i < 6; ++i) {
        out[i] = qdot.v + omega.cross(R * geom.p[i]);
    }
    return out;
}

std::array<double, 6> leg_rate(const LegKinematics& legs,
                               const std::array<Vec3, 6>& qp_dot) {
    std::array<double, 6> out;
    for (size_t i = 0; i < 6; ++i) out[i] = legs.n[i].dot(qp_dot[i]);
    return out;
}

LegPartVelocities leg_part_velocities(const LegKinematics& legs,
                                      const std::array<Vec3, 6>& qp_dot,
                                      double l_t, double l_b) {
    LegPartVelocities out;
    for (size_t i = 0; i < 6; ++i) {
        const Mat3 nsq = skew(legs.n[i]) * skew(legs.n[i]);
        // n~^T n~ = -n~^2 = I - n n^T projects onto the plane normal to the leg.
        out.top[i] = qp_dot[i] + (l_t / legs.s[i]) * (nsq * qp_dot[i]);
        out.bottom[i] = -(l_b / legs.s[i]) * (nsq * qp_dot[i]);
    }
    return out;
}

std::array<Vec3, 6> leg_angular_velocity(const LegKinematics& legs,
                                         const std::array<Vec3, 6>& qp_dot) {
    std::array<Vec3, 6> out;
    for (size_t i = 0; i < 6; ++i) out[i] = legs.n[i].cross(qp_dot[i]) / legs.s[i];
    return out;
}

Mat6 kinematic_jacobian(const Pose& q, const PlatformGeometry& geom) {
    const Mat3 R = rotation_zyx(q.r);
    const LegKinematics legs = inverse_kinematics(q, geom);

    Mat6 J;
    for (size_t i = 0; i < 6; ++i) {
        J.row(static_cast<Eigen::Index>(i)).head<3>() = legs.n[i].transpose();
        J.row(static_cast<Eigen::Index>(i)).tail<3>() =
            (R * geom.p[i]).cross(legs.n[i]).transpose();
    }
    return J;
}

Pose forward_kinematics(const std::array<double, 6>& lengths, const Pose& guess,
                        const PlatformGeometry& geom) {
    Pose q = guess;
    for (int iter = 0; iter < kFkMaxIterations; ++iter) {
        const LegKinematics legs = inverse_kinematics(q, geom);

        Vec6 residual;
        for (size_t i = 0; i < 6; ++i) {
            residual(static_cast<Eigen::Index>(i)) = legs.s[i] - lengths[i];
        }
        if (residual.lpNorm<Eigen::Infinity>() <= kFkTolerance) return q;

        // Newton step in generalized coordinates: the length residual
        // responds through J in [v; omega] coordinates, so the rotational
        // part of the step must be pulled back through R * T(r).
        const Mat6 J = kinematic_jacobian(q, geom);
        Mat6 J_euler = J;
        J_euler.rightCols<3>() =
            J.rightCols<3>() * rotation_zyx(q.r) * euler_rate_matrix(q.r);

        const Eigen::JacobiSVD<Mat6> svd(J_euler, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const double cond = svd.singularValues()(0) / svd.singularValues()(5);
        if (!(cond < kFkMaxCondition)) {
            throw SingularityError("forward kinematics Jacobian is singular", cond);
        }

        const Vec6 step = svd.solve(residual);
        q.t -= step.head<3>();
        q.r -= step.tail<3>();
        check_pitch(q.r);
    }
    throw ConvergenceError("forward kinematics did not converge", kFkMaxIterations);
}

}  // namespace stewart
