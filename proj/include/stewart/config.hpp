#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "stewart/control.hpp"
#include "stewart/dynamics.hpp"
#include "stewart/estimation.hpp"
#include "stewart/geometry.hpp"
#include "stewart/types.hpp"

namespace stewart {

// Full description of a simulation run. Angles cross the config boundary in
// degrees and are converted to radians when the geometry is built; nothing
// else ever sees degrees. Defaults reproduce the reference platform.
struct SimConfig {
    struct Geometry {
        double r_b{0.20};
        double r_p{0.16};
        std::array<double, 3> base_pair_centers_deg{0.0, 120.0, 240.0};
        std::array<double, 3> platform_pair_centers_deg{60.0, 180.0, 300.0};
        double pair_half_offset_deg{20.0};
        std::array<double, 3> c_p{0.0, 0.0, 0.0};
    } geometry;

    struct Mass {
        double m_p{0.528};
        std::array<std::array<double, 3>, 3> I_p{{{0.03, 0.01, 0.01},
                                                  {0.01, 0.03, 0.01},
                                                  {0.01, 0.01, 0.02}}};
        double m_t{0.027};
        double m_b{0.1187};
        double l_t{0.1};
        double l_b{0.13861};
    } mass;

    struct Controller {
        std::array<double, 12> n_diag{30.0, 30.0, 5.0, 30.0, 30.0, 200.0,
                                      3.0, 3.0, 1.0, 3.0, 3.0, 20.0};
        std::array<double, 6> o_diag{10.0, 10.0, 10.0, 10.0, 10.0, 10.0};
    } controller;

    struct Ekf {
        std::array<double, 12> predict_cov_diag{1.0, 1.0, 1.0, 1.0, 1.0, 1.0,
                                                5.0, 5.0, 5.0, 5.0, 5.0, 5.0};
        std::array<double, 12> innov_cov_diag{10.0, 10.0, 10.0, 10.0, 10.0, 10.0,
                                              1.0, 1.0, 1.0, 3.0, 3.0, 3.0};
        std::array<double, 12> initial_cov_diag{1.0, 1.0, 1.0, 1.0, 1.0, 1.0,
                                                0.01, 0.01, 0.01, 0.01, 0.01, 0.01};
    } ekf;

    struct Noise {
        double leg_sigma{2e-4};
        double angle_sigma{5e-4};
        double rate_sigma{5e-4};
        std::uint64_t seed{42};
    } noise;

    struct Run {
        std::string scenario{"step"};
        double duration{0.0};   // 0 = scenario default (60 s step, 20 s sinusoid)
        double dt{0.01};
        int substeps{10};
        bool perfect_state{false};
        bool literal_reference{false};
    } run;
};

// Typed views of the config blocks.
PlatformGeometry make_geometry(const SimConfig& config);
RigidBodyParams make_params(const SimConfig& config);
LqrWeights make_weights(const SimConfig& config);
EkfTuning make_tuning(const SimConfig& config);

// Parses JSON text. Missing keys keep their defaults; unknown keys and
// out-of-range values raise ConfigError naming the offending key
// ("run.dt"). load_config reads the file at `path` first.
SimConfig parse_config(const std::string& json_text);
SimConfig load_config(const std::string& path);

// Canonical serialization: every key present, keys sorted, two-space
// indent. dump_config(parse_config(x)) is a fixed point for any valid x.
std::string dump_config(const SimConfig& config);

}  // namespace stewart
