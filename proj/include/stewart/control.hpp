#pragma once

#include "stewart/dynamics.hpp"
#include "stewart/types.hpp"

namespace stewart {

// Quadratic weights for the linearized double-integrator system
// xi = [q; qdot], xidot = A xi + B u with A = [[0, I], [0, 0]], B = [0; I].
// n_diag holds the 12 state weights (positions then velocities), o_diag the
// 6 input weights. All state weights must be non-negative, input weights
// positive, and each axis needs a positive position or velocity weight.
struct LqrWeights {
    Vec12 n_diag{Vec12::Zero()};
    Vec6 o_diag{Vec6::Zero()};
};

// Stock weights: N = diag(30, 30, 5, 30, 30, 200, 3, 3, 1, 3, 3, 20),
// O = 10 I.
LqrWeights default_weights();

// Solution D of A^T D + D A - D B O^{-1} B^T D + N = 0. The system is six
// decoupled double integrators, so D is assembled from per-axis 2x2 blocks
// with the closed form d2 = sqrt(n1 o), d3 = sqrt(o n2 + 2 o d2),
// d1 = d2 d3 / o. Throws std::invalid_argument on weights that leave an
// axis undetectable (n1 <= 0 and n2 <= 0) or o <= 0 or any n < 0.
Mat12 solve_care(const LqrWeights& weights);

// K = O^{-1} B^T D, 6x12. Row i is zero except for the position gain at
// column i and the velocity gain at column i + 6.
Eigen::Matrix<double, 6, 12> lqr_gain(const Mat12& D, const LqrWeights& weights);

// u = -K (xhat - xi_des): commanded accelerations for the linearized system.
Vec6 virtual_control(const Vec12& xhat, const Vec12& xi_des,
                     const Eigen::Matrix<double, 6, 12>& K);

// Actuator forces that make the closed loop obey qddot = u exactly:
// F = H^{-1} (M etadot_des + C qdot_s + G) with the desired [a; rddot] = u
// mapped to a spatial acceleration first. Throws SingularityError with the
// condition number when H is too ill-conditioned to invert.
Vec6 feedback_linearize(const Pose& q, const Vec6& qdot, const Vec6& u,
                        const PlatformGeometry& geom, const RigidBodyParams& params);

}  // namespace stewart
