#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "stewart/errors.hpp"
#include "stewart/geometry.hpp"

using namespace stewart;
using namespace stewart::test;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

// Degenerate layout where base and platform rays coincide: both rings share
// one pair center, so at t = [0, 0, h], r = 0 every leg is vertical with
// s = h. Useful as a closed-form fixture and as a guaranteed singularity.
PlatformGeometry coincident_ray_geometry(double radius = 0.2) {
    return build_geometry(radius, radius, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0},
                          20.0 * kDeg, Vec3::Zero());
}

}  // namespace

TEST_CASE("default geometry places joints on the specified rays") {
    const PlatformGeometry geom = default_geometry();

    const Vec3 b0_expected = 0.20 * Vec3(std::cos(-20.0 * kDeg),
                                         std::sin(-20.0 * kDeg), 0.0);
    CHECK((geom.b[0] - b0_expected).norm() < 1e-15);

    const double base_deg[6] = {-20, 20, 100, 140, 220, 260};
    const double plat_deg[6] = {40, 320, 160, 80, 280, 200};
    for (int i = 0; i < 6; ++i) {
        const Vec3 b_exp = 0.20 * Vec3(std::cos(base_deg[i] * kDeg),
                                       std::sin(base_deg[i] * kDeg), 0.0);
        const Vec3 p_exp = 0.16 * Vec3(std::cos(plat_deg[i] * kDeg),
                                       std::sin(plat_deg[i] * kDeg), 0.0);
        CAPTURE(i);
        CHECK((geom.b[static_cast<size_t>(i)] - b_exp).norm() < 1e-15);
        CHECK((geom.p[static_cast<size_t>(i)] - p_exp).norm() < 1e-15);
    }

    for (const auto& b : geom.b) CHECK(b.norm() == doctest::Approx(0.20).epsilon(1e-14));
    for (const auto& p : geom.p) CHECK(p.norm() == doctest::Approx(0.16).epsilon(1e-14));

    CHECK_THROWS_AS(build_geometry(0.0, 0.16, {0, 0, 0}, {0, 0, 0}, 0.1, Vec3::Zero()),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_geometry(0.2, -1.0, {0, 0, 0}, {0, 0, 0}, 0.1, Vec3::Zero()),
                    std::invalid_argument);
}

TEST_CASE("rotation matrix matches an independently composed Z-Y-X product") {
    CHECK((rotation_zyx(Vec3::Zero()) - Mat3::Identity()).norm() < 1e-15);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.2, 1.2);
    for (int trial = 0; trial < 200; ++trial) {
        const Vec3 r(u(rng), u(rng), u(rng));
        const Mat3 R = rotation_zyx(r);

        const Mat3 R_ref = (Eigen::AngleAxisd(r.z(), Vec3::UnitZ())
                            * Eigen::AngleAxisd(r.y(), Vec3::UnitY())
                            * Eigen::AngleAxisd(r.x(), Vec3::UnitX()))
                               .toRotationMatrix();
        CHECK((R - R_ref).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(R.determinant() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("Euler rate matrix reproduces the body angular velocity") {
    // skew(T rdot) must equal R^T Rdot with Rdot taken by central difference
    // along r(tau) = r + rdot tau.
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double h = 1e-6;

    for (int trial = 0; trial < 100; ++trial) {
        Vec3 r(u(rng), 0.8 * u(rng), u(rng));
        Vec3 rdot(u(rng), u(rng), u(rng));

        const Mat3 R = rotation_zyx(r);
        const Mat3 Rdot = (rotation_zyx(r + h * rdot) - rotation_zyx(r - h * rdot))
                          / (2.0 * h);
        const Mat3 omega_hat = R.transpose() * Rdot;

        const Vec3 omega_p = euler_rate_matrix(r) * rdot;
        CHECK((omega_hat - skew(omega_p)).cwiseAbs().maxCoeff() < 1e-7);
    }
}

TEST_CASE("Euler rate matrix time derivative matches finite differences") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double h = 1e-6;

    for (int trial = 0; trial < 100; ++trial) {
        Vec3 r(u(rng), 0.8 * u(rng), u(rng));
        Vec3 rdot(u(rng), u(rng), u(rng));

        const Mat3 Tdot_fd = (euler_rate_matrix(r + h * rdot)
                              - euler_rate_matrix(r - h * rdot)) / (2.0 * h);
        CHECK((euler_rate_matrix_rate(r, rdot) - Tdot_fd).cwiseAbs().maxCoeff() < 1e-7);
    }
}

TEST_CASE("pose Jacobian of T rdot matches finite differences, yaw column zero") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double h = 1e-6;

    for (int trial = 0; trial < 100; ++trial) {
        Vec3 r(u(rng), 0.8 * u(rng), u(rng));
        Vec3 rdot(u(rng), u(rng), u(rng));

        const Mat3 Jr = body_rate_pose_jacobian(r, rdot);
        CHECK(Jr.col(2).norm() == 0.0);

        for (int c = 0; c < 3; ++c) {
            Vec3 rp = r, rm = r;
            rp(c) += h;
            rm(c) -= h;
            const Vec3 col_fd = (euler_rate_matrix(rp) * rdot
                                 - euler_rate_matrix(rm) * rdot) / (2.0 * h);
            CHECK((Jr.col(c) - col_fd).cwiseAbs().maxCoeff() < 1e-7);
        }
    }
}

TEST_CASE("rate conversion refuses poses at the pitch singularity") {
    const Vec3 rdot(0.1, 0.2, 0.3);
    CHECK_THROWS_AS(euler_rate_to_body_rate(Vec3(0.0, kPi / 2.0 - 1e-4, 0.0), rdot),
                    SingularityError);
    CHECK_THROWS_AS(euler_rate_to_body_rate(Vec3(0.0, -kPi / 2.0 + 1e-4, 0.0), rdot),
                    SingularityError);
    CHECK_NOTHROW(euler_rate_to_body_rate(Vec3(0.0, kPi / 2.0 - 2e-3, 0.0), rdot));
}

TEST_CASE("inverse kinematics at home gives six equal legs of length sqrt(0.136)") {
    const PlatformGeometry geom = default_geometry();
    const LegKinematics legs = inverse_kinematics(home_pose(), geom);

    for (int i = 0; i < 6; ++i) {
        CAPTURE(i);
        CHECK(legs.s[static_cast<size_t>(i)]
              == doctest::Approx(std::sqrt(0.136)).epsilon(1e-14));
        CHECK((legs.n[static_cast<size_t>(i)].norm())
              == doctest::Approx(1.0).epsilon(1e-14));
        CHECK((legs.l[static_cast<size_t>(i)]
               - legs.s[static_cast<size_t>(i)] * legs.n[static_cast<size_t>(i)])
                  .norm() < 1e-15);
    }
}

TEST_CASE("coincident base and platform rays make every leg length the height") {
    const PlatformGeometry geom = coincident_ray_geometry();

    Pose q;
    q.t = Vec3(0.0, 0.0, 0.27);
    const LegKinematics legs = inverse_kinematics(q, geom);
    for (const double s : legs.s) CHECK(s == doctest::Approx(0.27).epsilon(1e-14));

    // At h = 0 the legs collapse to zero length.
    q.t.setZero();
    CHECK_THROWS_AS(inverse_kinematics(q, geom), SingularityError);
}

TEST_CASE("platform joint velocities match differentiated joint positions") {
    const PlatformGeometry geom = default_geometry();
    std::mt19937_64 rng(19);

    for (int trial = 0; trial < 50; ++trial) {
        const Pose q = random_workspace_pose(rng);
        const Vec6 qdot = random_vec6(rng, 0.5);
        const Vec6 qddot = Vec6::Zero();

        Twist tw;
        tw.v = qdot.head<3>();
        tw.rdot = qdot.tail<3>();
        const auto qp_dot = joint_velocity(q, tw, geom);

        const double h = 1e-6;
        for (size_t i = 0; i < 6; ++i) {
            const Vec3 fd = (joint_position_at(q, qdot, qddot, h, geom, i)
                             - joint_position_at(q, qdot, qddot, -h, geom, i))
                            / (2.0 * h);
            CHECK((qp_dot[i] - fd).cwiseAbs().maxCoeff() < 1e-7);
        }
    }
}

TEST_CASE("leg rates equal differentiated leg lengths and the Jacobian product") {
    const PlatformGeometry geom = default_geometry();
    std::mt19937_64 rng(23);
    const double h = 1e-6;

    for (int trial = 0; trial < 50; ++trial) {
        const Pose q = random_workspace_pose(rng);
        const Vec6 qdot = random_vec6(rng, 0.5);
        const Vec6 qddot = Vec6::Zero();

        const LegKinematics legs = inverse_kinematics(q, geom);
        Twist tw;
        tw.v = qdot.head<3>();
        tw.rdot = qdot.tail<3>();
        const auto qp_dot = joint_velocity(q, tw, geom);
        const auto sdot = leg_rate(legs, qp_dot);

        const Vec6 sdot_jac = kinematic_jacobian(q, geom) * spatial_velocity(q, qdot);

        for (size_t i = 0; i < 6; ++i) {
            const double s_plus =
                (joint_position_at(q, qdot, qddot, h, geom, i) - geom.b[i]).norm();
            const double s_minus =
                (joint_position_at(q, qdot, qddot, -h, geom, i) - geom.b[i]).norm();
            const double fd = (s_plus - s_minus) / (2.0 * h);
            CHECK(std::abs(sdot[i] - fd) < 1e-7);
            CHECK(std::abs(sdot[i] - sdot_jac(static_cast<Eigen::Index>(i))) < 1e-13);
        }
    }
}

TEST_CASE("leg part velocities differentiate the part center positions") {
    const PlatformGeometry geom = default_geometry();
    const double l_t = 0.1, l_b = 0.13861;
    std::mt19937_64 rng(29);
    const double h = 1e-6;

    for (int trial = 0; trial < 50; ++trial) {
        const Pose q = random_workspace_pose(rng);
        const Vec6 qdot = random_vec6(rng, 0.5);
        const Vec6 qddot = Vec6::Zero();

        const LegKinematics legs = inverse_kinematics(q, geom);
        Twist tw;
        tw.v = qdot.head<3>();
        tw.rdot = qdot.tail<3>();
        const auto qp_dot = joint_velocity(q, tw, geom);
        const auto parts = leg_part_velocities(legs, qp_dot, l_t, l_b);
        const auto omega_l = leg_angular_velocity(legs, qp_dot);

        for (size_t i = 0; i < 6; ++i) {
            // Top center rides l_t below the platform joint along the leg,
            // bottom center l_b above the base joint.
            auto top_center = [&](double tau) {
                const Vec3 qp = joint_position_at(q, qdot, qddot, tau, geom, i);
                const Vec3 l = qp - geom.b[i];
                return Vec3(qp - l_t * l.normalized());
            };
            auto bottom_center = [&](double tau) {
                const Vec3 qp = joint_position_at(q, qdot, qddot, tau, geom, i);
                const Vec3 l = qp - geom.b[i];
                return Vec3(geom.b[i] + l_b * l.normalized());
            };
            const Vec3 vt_fd = (top_center(h) - top_center(-h)) / (2.0 * h);
            const Vec3 vb_fd = (bottom_center(h) - bottom_center(-h)) / (2.0 * h);
            CHECK((parts.top[i] - vt_fd).cwiseAbs().maxCoeff() < 1e-7);
            CHECK((parts.bottom[i] - vb_fd).cwiseAbs().maxCoeff() < 1e-7);

            // ndot = omega_l x n, and no spin about the leg axis.
            const Vec3 ndot_fd =
                ((joint_position_at(q, qdot, qddot, h, geom, i) - geom.b[i]).normalized()
                 - (joint_position_at(q, qdot, qddot, -h, geom, i) - geom.b[i])
                       .normalized())
                / (2.0 * h);
            CHECK((omega_l[i].cross(legs.n[i]) - ndot_fd).cwiseAbs().maxCoeff() < 1e-7);
            CHECK(std::abs(omega_l[i].dot(legs.n[i])) < 1e-14);
        }
    }
}

TEST_CASE("a fully extended top part moves with the axial joint velocity") {
    // With l_t = s the top center sits at the base joint, so only the axial
    // component of the joint velocity survives: v_t = n (n . qdot_p).
    const PlatformGeometry geom = default_geometry();
    const Pose q = home_pose();
    const LegKinematics legs = inverse_kinematics(q, geom);

    Twist tw;
    tw.v = Vec3(0.2, -0.1, 0.3);
    tw.rdot = Vec3(0.1, 0.2, -0.3);
    const auto qp_dot = joint_velocity(q, tw, geom);

    const auto parts = leg_part_velocities(legs, qp_dot, legs.s[0], 0.05);
    const Vec3 expected = legs.n[0] * legs.n[0].dot(qp_dot[0]);
    CHECK((parts.top[0] - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("forward kinematics inverts inverse kinematics across the workspace") {
    const PlatformGeometry geom = default_geometry();
    std::mt19937_64 rng(31);

    for (int trial = 0; trial < 100; ++trial) {
        const Pose q = random_workspace_pose(rng);
        const LegKinematics legs = inverse_kinematics(q, geom);
        const Pose sol = forward_kinematics(legs.s, home_pose(), geom);

        CHECK((sol.t - q.t).cwiseAbs().maxCoeff() < 1e-9);
        CHECK((sol.r - q.r).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("forward kinematics reports unreachable lengths") {
    const PlatformGeometry geom = default_geometry();
    std::array<double, 6> lengths{};
    lengths.fill(std::sqrt(0.136));
    lengths[0] = 2.0;  // no pose satisfies one 2 m leg among five home legs

    CHECK_THROWS_AS(forward_kinematics(lengths, home_pose(), geom), std::runtime_error);
}

TEST_CASE("kinematic Jacobian rows are the documented leg screws") {
    const PlatformGeometry geom = default_geometry();
    std::mt19937_64 rng(37);

    for (int trial = 0; trial < 50; ++trial) {
        const Pose q = random_workspace_pose(rng);
        const LegKinematics legs = inverse_kinematics(q, geom);
        const Mat3 R = rotation_zyx(q.r);
        const Mat6 J = kinematic_jacobian(q, geom);

        for (int i = 0; i < 6; ++i) {
            const auto idx = static_cast<size_t>(i);
            const Vec3 Rp = R * geom.p[idx];
            CHECK((J.row(i).head<3>().transpose() - legs.n[idx]).norm() < 1e-14);
            CHECK((J.row(i).tail<3>().transpose() - Rp.cross(legs.n[idx])).norm()
                  < 1e-14);
        }
    }
}
