#pragma once

#include <array>
#include <utility>

#include "stewart/geometry.hpp"
#include "stewart/types.hpp"

namespace stewart {

// Inertial parameters. Each leg is a prismatic pair: a bottom rod of mass
// m_b and length l_b pinned at the base joint, and a top rod of mass m_t
// and length l_t ending at the platform joint. I_t and I_b are the rod
// inertias about the leg's lateral axes, diag(m l^2 / 3, m l^2 / 3, 0);
// the zero entry reflects that a leg cannot spin about its own axis.
struct RigidBodyParams {
    double m_p{0.0};
    Mat3 I_p{Mat3::Zero()};
    double m_t{0.0};
    double m_b{0.0};
    double l_t{0.0};
    double l_b{0.0};
    Mat3 I_t{Mat3::Zero()};
    Mat3 I_b{Mat3::Zero()};
    Vec3 g{Vec3::Zero()};

    // Single scalar the leg inertias contribute through: any axis normal to
    // the leg sees (m_t l_t^2 + m_b l_b^2) / 3.
    double leg_inertia() const { return I_t(0, 0) + I_b(0, 0); }
};

// Derives I_t / I_b from the rod parameters. Throws std::invalid_argument
// on a non-positive mass or length.
RigidBodyParams build_params(double m_p, const Mat3& I_p, double m_t, double m_b,
                             double l_t, double l_b, const Vec3& g);

// Stock rig: m_p = 0.528, m_t = 0.027, m_b = 0.1187, l_t = 0.1,
// l_b = 0.13861, g = [0, 0, -9.81].
RigidBodyParams default_params();

// Task-space equation of motion M qddot_s + C qdot_s + G = H F, expressed
// in the spatial velocity [v; omega]. H maps the six scalar actuator forces
// to a generalized force and equals kinematic_jacobian(q)^T.
struct DynamicsMatrices {
    Mat6 M{Mat6::Zero()};
    Vec6 Cqdot{Vec6::Zero()};   // Coriolis/centripetal force at the given velocity
    Vec6 G{Vec6::Zero()};
    Mat6 H{Mat6::Zero()};
};

// Leg inertia as seen by the platform joint: M1 from the top rod's
// translation, M2 from both rods' rotation about the base joint. M2 n = 0.
// Throws SingularityError below 1e-6 m leg length.
std::pair<Mat3, Mat3> leg_mass_matrices(const Vec3& n, double s,
                                        const RigidBodyParams& params);

// Coriolis matrix of one leg, acting on the joint velocity qdot_p. Derived
// from the leg kinetic energy; C_a qdot_p = d/dt(dT/d qdot_p) - dT/d q_p.
Mat3 leg_coriolis(const Vec3& n, double s, const Vec3& qp_dot,
                  const RigidBodyParams& params);

// Generalized forces on one leg at its platform joint: actuator force along
// the axis, gravity on the top rod, gravity on the bottom rod.
struct LegForces {
    Vec3 Q_f{Vec3::Zero()};
    Vec3 Q_mtg{Vec3::Zero()};
    Vec3 Q_mbg{Vec3::Zero()};
};
LegForces leg_applied_forces(const Vec3& n, double s, double f,
                             const RigidBodyParams& params);

// Reaction force the platform exerts on leg `leg_index` (0-based) when the
// platform moves with the given generalized velocity and acceleration and
// the actuator applies f. qdot and qddot are [v; rdot] and [a; rddot].
Vec3 leg_constraint_force(const Pose& q, const Vec6& qdot, const Vec6& qddot,
                          int leg_index, const PlatformGeometry& geom,
                          const RigidBodyParams& params, double f);

// Platform-only terms: spatial inertia about the frame origin, the gyroscopic
// matrix, and the 6x18 map from the six stacked joint forces to a
// generalized force (block column i is [I; skew(R p_i)]).
struct PlatformMatrices {
    Mat6 M_p{Mat6::Zero()};
    Mat6 C_p{Mat6::Zero()};
    Eigen::Matrix<double, 6, 18> H_p{Eigen::Matrix<double, 6, 18>::Zero()};
};
PlatformMatrices platform_matrices(const Pose& q, const Vec6& qdot,
                                   const PlatformGeometry& geom,
                                   const RigidBodyParams& params);

// Full equation of motion: platform terms plus every leg's contribution
// mapped through B_i = [I | skew(R p_i)^T]. M is symmetric positive
// definite away from singular poses. Throws SingularityError when a leg
// collapses or when cond(H) exceeds 1e8.
DynamicsMatrices assemble_eom(const Pose& q, const Vec6& qdot,
                              const PlatformGeometry& geom,
                              const RigidBodyParams& params);

// Solves M qddot_s = H F - C qdot_s - G and converts the spatial
// acceleration back to [a; rddot]. Throws SingularityError when the
// inertia solve sees a condition number above 1e10.
Vec6 forward_dynamics(const Pose& q, const Vec6& qdot, const Vec6& F,
                      const PlatformGeometry& geom, const RigidBodyParams& params);

// Static actuator forces F = H^{-1} G holding the pose against gravity.
Vec6 gravity_compensation(const Pose& q, const PlatformGeometry& geom,
                          const RigidBodyParams& params);

}  // namespace stewart
