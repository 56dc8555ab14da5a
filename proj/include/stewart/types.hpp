#pragma once

#include <Eigen/Dense>

namespace stewart {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec12 = Eigen::Matrix<double, 12, 1>;
using Mat12 = Eigen::Matrix<double, 12, 12>;

// Pose of the platform frame {P} in the base frame {B}.
// r = [phi, theta, psi]: roll-pitch-yaw of the ZYX convention,
// R = Rz(psi) * Ry(theta) * Rx(phi). Valid while |theta| < pi/2 - 1e-3.
struct Pose {
    Vec3 t{Vec3::Zero()};
    Vec3 r{Vec3::Zero()};
};

// Platform twist in generalized coordinates: linear velocity of {P}'s
// origin in {B} and the Euler angle rates (not the angular velocity).
struct Twist {
    Vec3 v{Vec3::Zero()};
    Vec3 rdot{Vec3::Zero()};
};

inline Vec6 pack(const Vec3& a, const Vec3& b) {
    Vec6 out;
    out << a, b;
    return out;
}

}  // namespace stewart
