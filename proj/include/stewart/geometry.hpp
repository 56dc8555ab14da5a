#pragma once

#include <array>

#include "stewart/types.hpp"

namespace stewart {

// Joint layout of a 6-6 Stewart platform. Joints come in three pairs per
// ring; pair centers and the half offset are stored in radians. b and p are
// the derived joint positions, b in {B}, p in {P}, ordered by leg index.
// The legs alternate: the minus joint of base pair k drives the minus joint
// of the platform pair centered 60 deg ahead, the plus joint of base pair k
// drives the plus joint of the platform pair centered 60 deg behind. The
// straight pair-to-pair assignment is architecturally singular (a combined
// heave+yaw twist moves no leg), so it is not offered.
struct PlatformGeometry {
    double r_b{0.0};
    double r_p{0.0};
    std::array<double, 3> base_pair_centers{};
    std::array<double, 3> platform_pair_centers{};
    double pair_half_offset{0.0};
    Vec3 c_p{Vec3::Zero()};

    std::array<Vec3, 6> b{};
    std::array<Vec3, 6> p{};
};

// Builds the joint rings from radii and pair angles (radians). Throws
// std::invalid_argument on a non-positive radius.
PlatformGeometry build_geometry(double r_b, double r_p,
                                const std::array<double, 3>& base_pair_centers,
                                const std::array<double, 3>& platform_pair_centers,
                                double pair_half_offset, const Vec3& c_p);

// Stock geometry: r_b = 0.20 m, r_p = 0.16 m, base pairs at
// {0, 120, 240} deg, platform pairs at {60, 180, 300} deg, half offset
// 20 deg, control point at the platform centroid.
PlatformGeometry default_geometry();

// Home pose used for initial conditions and as the fixed FK seed.
Pose home_pose();

Mat3 skew(const Vec3& v);

// R = Rz(psi) * Ry(theta) * Rx(phi).
Mat3 rotation_zyx(const Vec3& r);

// T(phi, theta) maps Euler rates to the angular velocity in {P}:
// omega_p = T * rdot. Singular at |theta| = pi/2.
Mat3 euler_rate_matrix(const Vec3& r);

// d/dt of euler_rate_matrix along (r, rdot).
Mat3 euler_rate_matrix_rate(const Vec3& r, const Vec3& rdot);

// Jacobian of T(r) * rdot with respect to r at fixed rdot. Third column is
// zero: T does not depend on yaw.
Mat3 body_rate_pose_jacobian(const Vec3& r, const Vec3& rdot);

// omega_p = T(r) * rdot. Throws SingularityError at |theta| >= pi/2 - 1e-3.
Vec3 euler_rate_to_body_rate(const Vec3& r, const Vec3& rdot);

// omega = R * omega_p: same angular velocity expressed in {B}.
inline Vec3 body_rate_to_base_rate(const Mat3& R, const Vec3& omega_p) {
    return R * omega_p;
}

// [v; omega] in {B} from a generalized velocity [v; rdot].
Vec6 spatial_velocity(const Pose& q, const Vec6& qdot);

// Per-leg kinematics at a pose: leg vectors l_i = t + R p_i - b_i, lengths
// s_i, unit directions n_i = l_i / s_i, and platform joint positions
// q_p,i = t + R p_i, all in {B}.
struct LegKinematics {
    std::array<Vec3, 6> l{};
    std::array<double, 6> s{};
    std::array<Vec3, 6> n{};
    std::array<Vec3, 6> q_p{};
};

// Throws SingularityError if any leg length falls below 1e-9 m.
LegKinematics inverse_kinematics(const Pose& q, const PlatformGeometry& geom);

// Velocities of the six platform joints: qdot_p,i = v + omega x (R p_i).
std::array<Vec3, 6> joint_velocity(const Pose& q, const Twist& qdot,
                                   const PlatformGeometry& geom);

// Leg extension rates sdot_i = n_i . qdot_p,i.
std::array<double, 6> leg_rate(const LegKinematics& legs,
                               const std::array<Vec3, 6>& qp_dot);

// Velocity of the top part's center of mass, v_t = (I + l_t n~^2 / s) qdot_p,
// and of the bottom part's, v_b = (l_b n~^T n~ / s) qdot_p.
struct LegPartVelocities {
    std::array<Vec3, 6> top{};
    std::array<Vec3, 6> bottom{};
};
LegPartVelocities leg_part_velocities(const LegKinematics& legs,
                                      const std::array<Vec3, 6>& qp_dot,
                                      double l_t, double l_b);

// Leg angular velocity omega_l,i = n~_i qdot_p,i / s_i (no spin about the
// leg axis, so omega_l,i is always perpendicular to n_i).
std::array<Vec3, 6> leg_angular_velocity(const LegKinematics& legs,
                                         const std::array<Vec3, 6>& qp_dot);

// Rows map the spatial twist [v; omega] to leg rates:
// row_i = [n_i^T, (R p_i x n_i)^T], so sdot = J [v; omega].
Mat6 kinematic_jacobian(const Pose& q, const PlatformGeometry& geom);

// Newton iteration for the pose matching a set of leg lengths, seeded at
// `guess`. Converges on ||s(q) - lengths||_inf <= 1e-10 (contract: 1e-9).
// Throws ConvergenceError after 100 iterations and SingularityError when
// the iteration Jacobian's condition number exceeds 1e12.
Pose forward_kinematics(const std::array<double, 6>& lengths, const Pose& guess,
                        const PlatformGeometry& geom);

}  // namespace stewart
