#include "stewart/dynamics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "stewart/errors.hpp"

namespace stewart {

namespace {

constexpr double kMinDynamicsLegLength = 1e-6;
constexpr double kMaxForceMapCondition = 1e8;
constexpr double kMaxInertiaCondition = 1e10;

using Mat36 = Eigen::Matrix<double, 3, 6>;
using Mat63 = Eigen::Matrix<double, 6, 3>;

// B_i maps the spatial twist [v; omega] to the joint velocity qdot_p,i;
// its transpose maps a force at the joint to a generalized force.
Mat36 joint_map(const Vec3& Rp) {
    Mat36 B;
    B.leftCols<3>() = Mat3::Identity();
    B.rightCols<3>() = skew(Rp).transpose();
    return B;
}

void check_leg_length(double s) {
    if (s < kMinDynamicsLegLength) {
        throw SingularityError("leg collapsed below 1e-6 m",
                               std::numeric_limits<double>::infinity());
    }
}

struct SpatialContext {
    Mat3 R;
    Vec3 omega;
    Vec6 eta;   // [v; omega]
    LegKinematics legs;
};

SpatialContext spatial_context(const Pose& q, const Vec6& qdot,
                               const PlatformGeometry& geom) {
    SpatialContext ctx;
    ctx.R = rotation_zyx(q.r);
    ctx.omega = ctx.R * euler_rate_to_body_rate(q.r, qdot.tail<3>());
    ctx.eta = pack(qdot.head<3>(), ctx.omega);
    ctx.legs = inverse_kinematics(q, geom);
    for (const double s : ctx.legs.s) check_leg_length(s);
    return ctx;
}

}  // namespace

RigidBodyParams build_params(double m_p, const Mat3& I_p, double m_t, double m_b,
                             double l_t, double l_b, const Vec3& g) {
    if (m_p <= 0.0 || m_t <= 0.0 || m_b <= 0.0) {
        throw std::invalid_argument("masses must be positive");
    }
    if (l_t <= 0.0 || l_b <= 0.0) {
        throw std::invalid_argument("leg part lengths must be positive");
    }

    RigidBodyParams params;
    params.m_p = m_p;
    params.I_p = I_p;
    params.m_t = m_t;
    params.m_b = m_b;
    params.l_t = l_t;
    params.l_b = l_b;
    params.I_t = Vec3(m_t * l_t * l_t / 3.0, m_t * l_t * l_t / 3.0, 0.0).asDiagonal();
    params.I_b = Vec3(m_b * l_b * l_b / 3.0, m_b * l_b * l_b / 3.0, 0.0).asDiagonal();
    params.g = g;
    return params;
}

RigidBodyParams default_params() {
    Mat3 I_p;
    I_p << 0.03, 0.01, 0.01,
           0.01, 0.03, 0.01,
           0.01, 0.01, 0.02;
    return build_params(0.528, I_p, 0.027, 0.1187, 0.1, 0.13861, Vec3(0.0, 0.0, -9.81));
}

std::pair<Mat3, Mat3> leg_mass_matrices(const Vec3& n, double s,
                                        const RigidBodyParams& params) {
    check_leg_length(s);
    const Mat3 nsq = n * n.transpose() - Mat3::Identity();   // n~^2
    const Mat3 A = Mat3::Identity() + (params.l_t / s) * nsq;
    const Mat3 M1 = params.m_t * A.transpose() * A;
    const Mat3 M2 = -(params.leg_inertia() / (s * s)) * nsq;  // n~^T n~ = -n~^2
    return {M1, M2};
}

Mat3 leg_coriolis(const Vec3& n, double s, const Vec3& qp_dot,
                  const RigidBodyParams& params) {
    check_leg_length(s);
    const Mat3 P = Mat3::Identity() - n * n.transpose();      // n~^T n~
    const Vec3 Pw = P * qp_dot;
    const double n_dot_w = n.dot(qp_dot);
    const double mt_lt = params.m_t * params.l_t;
    const double s2 = s * s;
    const double s3 = s2 * s;

    return (mt_lt / s2) * (n * Pw.transpose() + n_dot_w * P + Pw * n.transpose())
         - (mt_lt * params.l_t / s3) * (n_dot_w * P + Pw * n.transpose())
         - (2.0 * params.leg_inertia() / s3) * (Pw * n.transpose());
}

LegForces leg_applied_forces(const Vec3& n, double s, double f,
                             const RigidBodyParams& params) {
    check_leg_length(s);
    const Mat3 nsq = n * n.transpose() - Mat3::Identity();

    LegForces Q;
    Q.Q_f = f * n;
    Q.Q_mtg = (Mat3::Identity() + (params.l_t / s) * nsq) * (params.m_t * params.g);
    Q.Q_mbg = -(params.l_b / s) * (nsq * (params.m_b * params.g));
    return Q;
}

Vec3 leg_constraint_force(const Pose& q, const Vec6& qdot, const Vec6& qddot,
                          int leg_index, const PlatformGeometry& geom,
                          const RigidBodyParams& params, double f) {
    const auto ctx = spatial_context(q, qdot, geom);
    const auto i = static_cast<size_t>(leg_index);

    // alpha = R (Tdot rdot + T rddot): the omega-dot of the ZYX chain, using
    // d/dt(R omega_p) = R omega_p~ omega_p + R omega_p_dot and omega_p x
    // omega_p = 0.
    const Vec3 alpha = ctx.R * (euler_rate_matrix_rate(q.r, qdot.tail<3>()) * qdot.tail<3>()
                                + euler_rate_matrix(q.r) * qddot.tail<3>());
    const Vec6 eta_dot = pack(qddot.head<3>(), alpha);

    const Vec3 Rp = ctx.R * geom.p[i];
    const Mat36 B = joint_map(Rp);
    const Vec3 qp_dot = B * ctx.eta;
    const Vec3 qp_ddot = B * eta_dot + skew(ctx.omega) * skew(ctx.omega) * Rp;

    const auto [M1, M2] = leg_mass_matrices(ctx.legs.n[i], ctx.legs.s[i], params);
    const Mat3 C_a = leg_coriolis(ctx.legs.n[i], ctx.legs.s[i], qp_dot, params);
    const LegForces Q = leg_applied_forces(ctx.legs.n[i], ctx.legs.s[i], f, params);

    return (M1 + M2) * qp_ddot + C_a * qp_dot - (Q.Q_f + Q.Q_mtg + Q.Q_mbg);
}

PlatformMatrices platform_matrices(const Pose& q, const Vec6& qdot,
                                   const PlatformGeometry& geom,
                                   const RigidBodyParams& params) {
    const auto ctx = spatial_context(q, qdot, geom);
    const Vec3 rho = ctx.R * geom.c_p;
    const Mat3 rho_skew = skew(rho);
    const Mat3 I_c = ctx.R * params.I_p * ctx.R.transpose();

    PlatformMatrices out;
    out.M_p.topLeftCorner<3, 3>() = params.m_p * Mat3::Identity();
    out.M_p.topRightCorner<3, 3>() = params.m_p * rho_skew.transpose();
    out.M_p.bottomLeftCorner<3, 3>() = params.m_p * rho_skew;
    out.M_p.bottomRightCorner<3, 3>() =
        params.m_p * rho_skew * rho_skew.transpose() + I_c;

    out.C_p.bottomRightCorner<3, 3>() = skew(ctx.omega) * I_c;

    for (size_t i = 0; i < 6; ++i) {
        out.H_p.block<6, 3>(0, static_cast<Eigen::Index>(3 * i)) =
            joint_map(ctx.R * geom.p[i]).transpose();
    }
    return out;
}

DynamicsMatrices assemble_eom(const Pose& q, const Vec6& qdot,
                              const PlatformGeometry& geom,
                              const RigidBodyParams& params) {
    const auto ctx = spatial_context(q, qdot, geom);
    const Mat3 omega_sq = skew(ctx.omega) * skew(ctx.omega);
    const Vec3 rho = ctx.R * geom.c_p;
    const Mat63 com_map = joint_map(rho).transpose();
    const PlatformMatrices plat = platform_matrices(q, qdot, geom, params);

    DynamicsMatrices dm;
    dm.M = plat.M_p;
    dm.Cqdot = plat.C_p * ctx.eta + com_map * (params.m_p * (omega_sq * rho));
    dm.G = -com_map * (params.m_p * params.g);

    for (size_t i = 0; i < 6; ++i) {
        const Vec3 Rp = ctx.R * geom.p[i];
        const Mat36 B = joint_map(Rp);
        const Vec3 qp_dot = B * ctx.eta;

        const auto [M1, M2] = leg_mass_matrices(ctx.legs.n[i], ctx.legs.s[i], params);
        const Mat3 M_leg = M1 + M2;
        const Mat3 C_a = leg_coriolis(ctx.legs.n[i], ctx.legs.s[i], qp_dot, params);
        const LegForces Q = leg_applied_forces(ctx.legs.n[i], ctx.legs.s[i], 0.0, params);

        dm.M += B.transpose() * M_leg * B;
        dm.Cqdot += B.transpose() * (C_a * qp_dot + M_leg * (omega_sq * Rp));
        dm.G -= B.transpose() * (Q.Q_mtg + Q.Q_mbg);

        dm.H.col(static_cast<Eigen::Index>(i)) =
            pack(ctx.legs.n[i], Rp.cross(ctx.legs.n[i]));
    }

    const Eigen::PartialPivLU<Mat6> lu(dm.H);
    const double rc = lu.rcond();
    if (!(rc > 1.0 / kMaxForceMapCondition)) {
        throw SingularityError("force map H is near singular", rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity());
    }
    return dm;
}

Vec6 forward_dynamics(const Pose& q, const Vec6& qdot, const Vec6& F,
                      const PlatformGeometry& geom, const RigidBodyParams& params) {
    const DynamicsMatrices dm = assemble_eom(q, qdot, geom, params);

    const Eigen::LDLT<Mat6> ldlt(dm.M);
    const double rc = ldlt.rcond();
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()
        || !(rc > 1.0 / kMaxInertiaCondition)) {
        throw SingularityError("inertia matrix ill-conditioned",
                               rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity());
    }

    const Vec6 eta_dot = ldlt.solve(dm.H * F - dm.Cqdot - dm.G);

    // rddot = T^{-1} (R^T alpha - Tdot rdot); T stays well-conditioned inside
    // the pitch guard enforced by the kinematics above.
    const Mat3 R = rotation_zyx(q.r);
    const Vec3 rdot = qdot.tail<3>();
    const Vec3 omega_p_dot = R.transpose() * eta_dot.tail<3>()
                             - euler_rate_matrix_rate(q.r, rdot) * rdot;
    const Vec3 rddot = euler_rate_matrix(q.r).partialPivLu().solve(omega_p_dot);
    return pack(eta_dot.head<3>(), rddot);
}

Vec6 gravity_compensation(const Pose& q, const PlatformGeometry& geom,
                          const RigidBodyParams& params) {
    const DynamicsMatrices dm = assemble_eom(q, Vec6::Zero(), geom, params);
    return Eigen::PartialPivLU<Mat6>(dm.H).solve(dm.G);
}

}  // namespace stewart
