#include "stewart/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "stewart/errors.hpp"

namespace stewart {

namespace {

using nlohmann::json;

double rad(double deg) { return deg * std::numbers::pi / 180.0; }

// Pulls block.key out of j if present, after type/shape checks. The json
// library's get<> handles scalar types; array shapes are checked by hand so
// the error can name the key.
class BlockReader {
  public:
    BlockReader(const json& j, const std::string& block) : block_(block) {
        if (!j.contains(block)) return;
        if (!j.at(block).is_object()) {
            throw ConfigError(block, "expected an object");
        }
        obj_ = &j.at(block);
        for (const auto& [key, value] : obj_->items()) {
            (void)value;
            pending_.insert(key);
        }
    }

    void read(const std::string& key, double& out) {
        if (const json* v = take(key)) {
            if (!v->is_number()) throw ConfigError(path(key), "expected a number");
            out = v->get<double>();
        }
    }

    void read(const std::string& key, int& out) {
        if (const json* v = take(key)) {
            if (!v->is_number_integer()) throw ConfigError(path(key), "expected an integer");
            out = v->get<int>();
        }
    }

    void read(const std::string& key, std::uint64_t& out) {
        if (const json* v = take(key)) {
            if (!v->is_number_unsigned()) {
                throw ConfigError(path(key), "expected a non-negative integer");
            }
            out = v->get<std::uint64_t>();
        }
    }

    void read(const std::string& key, bool& out) {
        if (const json* v = take(key)) {
            if (!v->is_boolean()) throw ConfigError(path(key), "expected a boolean");
            out = v->get<bool>();
        }
    }

    void read(const std::string& key, std::string& out) {
        if (const json* v = take(key)) {
            if (!v->is_string()) throw ConfigError(path(key), "expected a string");
            out = v->get<std::string>();
        }
    }

    template <size_t N>
    void read(const std::string& key, std::array<double, N>& out) {
        if (const json* v = take(key)) {
            if (!v->is_array() || v->size() != N) {
                throw ConfigError(path(key), "expected an array of " + std::to_string(N)
                                             + " numbers");
            }
            for (size_t i = 0; i < N; ++i) {
                if (!(*v)[i].is_number()) throw ConfigError(path(key), "expected numbers");
                out[i] = (*v)[i].get<double>();
            }
        }
    }

    void read(const std::string& key, std::array<std::array<double, 3>, 3>& out) {
        if (const json* v = take(key)) {
            if (!v->is_array() || v->size() != 3) {
                throw ConfigError(path(key), "expected a 3x3 matrix");
            }
            for (size_t i = 0; i < 3; ++i) {
                const json& row = (*v)[i];
                if (!row.is_array() || row.size() != 3) {
                    throw ConfigError(path(key), "expected a 3x3 matrix");
                }
                for (size_t c = 0; c < 3; ++c) {
                    if (!row[c].is_number()) throw ConfigError(path(key), "expected numbers");
                    out[i][c] = row[c].get<double>();
                }
            }
        }
    }

    // Every recognized key must have been read before this is called.
    void finish() const {
        if (!pending_.empty()) {
            throw ConfigError(path(*pending_.begin()), "unknown key");
        }
    }

  private:
    const json* take(const std::string& key) {
        if (!obj_ || !obj_->contains(key)) return nullptr;
        pending_.erase(key);
        return &obj_->at(key);
    }

    std::string path(const std::string& key) const { return block_ + "." + key; }

    std::string block_;
    const json* obj_{nullptr};
    std::set<std::string> pending_;
};

void require(bool ok, const std::string& key, const std::string& what) {
    if (!ok) throw ConfigError(key, what);
}

void validate(const SimConfig& c) {
    require(c.geometry.r_b > 0.0, "geometry.r_b", "must be positive");
    require(c.geometry.r_p > 0.0, "geometry.r_p", "must be positive");
    require(c.geometry.pair_half_offset_deg > 0.0, "geometry.pair_half_offset_deg",
            "must be positive");

    require(c.mass.m_p > 0.0, "mass.m_p", "must be positive");
    require(c.mass.m_t > 0.0, "mass.m_t", "must be positive");
    require(c.mass.m_b > 0.0, "mass.m_b", "must be positive");
    require(c.mass.l_t > 0.0, "mass.l_t", "must be positive");
    require(c.mass.l_b > 0.0, "mass.l_b", "must be positive");
    for (size_t i = 0; i < 3; ++i) {
        for (size_t j = i + 1; j < 3; ++j) {
            require(std::abs(c.mass.I_p[i][j] - c.mass.I_p[j][i]) <= 1e-12, "mass.I_p",
                    "must be symmetric");
        }
    }

    for (double n : c.controller.n_diag) {
        require(n >= 0.0, "controller.n_diag", "entries must be non-negative");
    }
    for (double o : c.controller.o_diag) {
        require(o > 0.0, "controller.o_diag", "entries must be positive");
    }
    for (int i = 0; i < 6; ++i) {
        require(c.controller.n_diag[static_cast<size_t>(i)] > 0.0
                    || c.controller.n_diag[static_cast<size_t>(i) + 6] > 0.0,
                "controller.n_diag", "axis " + std::to_string(i) + " has no state weight");
    }

    for (double v : c.ekf.predict_cov_diag) {
        require(v >= 0.0, "ekf.predict_cov_diag", "entries must be non-negative");
    }
    for (double v : c.ekf.innov_cov_diag) {
        require(v > 0.0, "ekf.innov_cov_diag", "entries must be positive");
    }
    for (double v : c.ekf.initial_cov_diag) {
        require(v >= 0.0, "ekf.initial_cov_diag", "entries must be non-negative");
    }

    require(c.noise.leg_sigma >= 0.0, "noise.leg_sigma", "must be non-negative");
    require(c.noise.angle_sigma >= 0.0, "noise.angle_sigma", "must be non-negative");
    require(c.noise.rate_sigma >= 0.0, "noise.rate_sigma", "must be non-negative");

    require(c.run.scenario == "step" || c.run.scenario == "sinusoid", "run.scenario",
            "expected 'step' or 'sinusoid'");
    require(c.run.dt > 0.0, "run.dt", "must be positive");
    require(c.run.duration >= 0.0, "run.duration", "must be non-negative (0 = default)");
    require(c.run.substeps >= 1, "run.substeps", "must be at least 1");
}

}  // namespace

PlatformGeometry make_geometry(const SimConfig& config) {
    const auto& g = config.geometry;
    return build_geometry(g.r_b, g.r_p,
                          {rad(g.base_pair_centers_deg[0]), rad(g.base_pair_centers_deg[1]),
                           rad(g.base_pair_centers_deg[2])},
                          {rad(g.platform_pair_centers_deg[0]),
                           rad(g.platform_pair_centers_deg[1]),
                           rad(g.platform_pair_centers_deg[2])},
                          rad(g.pair_half_offset_deg),
                          Vec3(g.c_p[0], g.c_p[1], g.c_p[2]));
}

RigidBodyParams make_params(const SimConfig& config) {
    const auto& m = config.mass;
    Mat3 I_p;
    for (Eigen::Index i = 0; i < 3; ++i) {
        for (Eigen::Index j = 0; j < 3; ++j) {
            I_p(i, j) = m.I_p[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
    }
    return build_params(m.m_p, I_p, m.m_t, m.m_b, m.l_t, m.l_b, Vec3(0.0, 0.0, -9.81));
}

LqrWeights make_weights(const SimConfig& config) {
    LqrWeights w;
    for (Eigen::Index i = 0; i < 12; ++i) {
        w.n_diag(i) = config.controller.n_diag[static_cast<size_t>(i)];
    }
    for (Eigen::Index i = 0; i < 6; ++i) {
        w.o_diag(i) = config.controller.o_diag[static_cast<size_t>(i)];
    }
    return w;
}

EkfTuning make_tuning(const SimConfig& config) {
    EkfTuning t;
    for (Eigen::Index i = 0; i < 12; ++i) {
        t.predict_cov(i) = config.ekf.predict_cov_diag[static_cast<size_t>(i)];
        t.innov_cov(i) = config.ekf.innov_cov_diag[static_cast<size_t>(i)];
        t.initial_cov(i) = config.ekf.initial_cov_diag[static_cast<size_t>(i)];
    }
    return t;
}

SimConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<root>", e.what());
    }
    if (!j.is_object()) throw ConfigError("<root>", "expected a JSON object");

    static const std::set<std::string> known_blocks{"geometry", "mass", "controller",
                                                    "ekf", "noise", "run"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!known_blocks.count(key)) throw ConfigError(key, "unknown key");
    }

    SimConfig c;

    BlockReader geometry(j, "geometry");
    geometry.read("r_b", c.geometry.r_b);
    geometry.read("r_p", c.geometry.r_p);
    geometry.read("base_pair_centers_deg", c.geometry.base_pair_centers_deg);
    geometry.read("platform_pair_centers_deg", c.geometry.platform_pair_centers_deg);
    geometry.read("pair_half_offset_deg", c.geometry.pair_half_offset_deg);
    geometry.read("c_p", c.geometry.c_p);
    geometry.finish();

    BlockReader mass(j, "mass");
    mass.read("m_p", c.mass.m_p);
    mass.read("I_p", c.mass.I_p);
    mass.read("m_t", c.mass.m_t);
    mass.read("m_b", c.mass.m_b);
    mass.read("l_t", c.mass.l_t);
    mass.read("l_b", c.mass.l_b);
    mass.finish();

    BlockReader controller(j, "controller");
    controller.read("n_diag", c.controller.n_diag);
    controller.read("o_diag", c.controller.o_diag);
    controller.finish();

    BlockReader ekf(j, "ekf");
    ekf.read("predict_cov_diag", c.ekf.predict_cov_diag);
    ekf.read("innov_cov_diag", c.ekf.innov_cov_diag);
    ekf.read("initial_cov_diag", c.ekf.initial_cov_diag);
    ekf.finish();

    BlockReader noise(j, "noise");
    noise.read("leg_sigma", c.noise.leg_sigma);
    noise.read("angle_sigma", c.noise.angle_sigma);
    noise.read("rate_sigma", c.noise.rate_sigma);
    noise.read("seed", c.noise.seed);
    noise.finish();

    BlockReader run(j, "run");
    run.read("scenario", c.run.scenario);
    run.read("duration", c.run.duration);
    run.read("dt", c.run.dt);
    run.read("substeps", c.run.substeps);
    run.read("perfect_state", c.run.perfect_state);
    run.read("literal_reference", c.run.literal_reference);
    run.finish();

    validate(c);
    return c;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open config file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string dump_config(const SimConfig& c) {
    json j;
    j["geometry"]["r_b"] = c.geometry.r_b;
    j["geometry"]["r_p"] = c.geometry.r_p;
    j["geometry"]["base_pair_centers_deg"] = c.geometry.base_pair_centers_deg;
    j["geometry"]["platform_pair_centers_deg"] = c.geometry.platform_pair_centers_deg;
    j["geometry"]["pair_half_offset_deg"] = c.geometry.pair_half_offset_deg;
    j["geometry"]["c_p"] = c.geometry.c_p;

    j["mass"]["m_p"] = c.mass.m_p;
    j["mass"]["I_p"] = c.mass.I_p;
    j["mass"]["m_t"] = c.mass.m_t;
    j["mass"]["m_b"] = c.mass.m_b;
    j["mass"]["l_t"] = c.mass.l_t;
    j["mass"]["l_b"] = c.mass.l_b;

    j["controller"]["n_diag"] = c.controller.n_diag;
    j["controller"]["o_diag"] = c.controller.o_diag;

    j["ekf"]["predict_cov_diag"] = c.ekf.predict_cov_diag;
    j["ekf"]["innov_cov_diag"] = c.ekf.innov_cov_diag;
    j["ekf"]["initial_cov_diag"] = c.ekf.initial_cov_diag;

    j["noise"]["leg_sigma"] = c.noise.leg_sigma;
    j["noise"]["angle_sigma"] = c.noise.angle_sigma;
    j["noise"]["rate_sigma"] = c.noise.rate_sigma;
    j["noise"]["seed"] = c.noise.seed;

    j["run"]["scenario"] = c.run.scenario;
    j["run"]["duration"] = c.run.duration;
    j["run"]["dt"] = c.run.dt;
    j["run"]["substeps"] = c.run.substeps;
    j["run"]["perfect_state"] = c.run.perfect_state;
    j["run"]["literal_reference"] = c.run.literal_reference;

    return j.dump(2) + "\n";
}

}  // namespace stewart
