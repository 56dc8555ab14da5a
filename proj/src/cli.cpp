#include "stewart/cli.hpp"

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "stewart/config.hpp"
#include "stewart/csv.hpp"
#include "stewart/errors.hpp"
#include "stewart/plot.hpp"
#include "stewart/sim.hpp"

namespace stewart {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;

int classify(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
    if (dynamic_cast<const std::invalid_argument*>(&e)) return kExitConfig;
    return kExitNumeric;
}

struct RunFlags {
    std::string config_path;
    std::string scenario;
    std::string out_path;
    std::string plots_dir;
    std::string seeds_range;
    std::uint64_t seed{0};
    bool seed_given{false};
    double duration{0.0};
    bool duration_given{false};
    bool perfect_state{false};
    bool literal_reference{false};
};

SimConfig resolve_config(const RunFlags& flags) {
    SimConfig config;
    if (!flags.config_path.empty()) config = load_config(flags.config_path);
    if (!flags.scenario.empty()) config.run.scenario = flags.scenario;
    if (flags.seed_given) config.noise.seed = flags.seed;
    if (flags.duration_given) config.run.duration = flags.duration;
    if (flags.perfect_state) config.run.perfect_state = true;
    if (flags.literal_reference) config.run.literal_reference = true;
    return config;
}

void ensure_parent(const std::string& path) {
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
}

std::string with_seed_suffix(const std::string& path, std::uint64_t seed) {
    const std::filesystem::path p(path);
    std::filesystem::path renamed = p.parent_path();
    renamed /= p.stem().string() + "_seed" + std::to_string(seed) + p.extension().string();
    return renamed.string();
}

void execute_one(const SimConfig& config, const std::string& out_path,
                 const std::string& plots_dir, std::ostream& log) {
    const std::vector<SimRecord> records = run_closed_loop(config);
    if (!out_path.empty()) {
        ensure_parent(out_path);
        write_csv(records, out_path);
    }
    if (!plots_dir.empty()) render_plots(records, plots_dir);

    const SimRecord& last = records.back();
    log << "seed " << config.noise.seed << ": " << records.size() << " rows, final e_l="
        << last.e_l << " e_t=" << last.e_t << " e_cs=" << last.e_cs;
    if (!out_path.empty()) log << " -> " << out_path;
    log << "\n";
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
    const size_t sep = text.find("..");
    if (sep == std::string::npos) {
        throw ConfigError("--seeds", "expected a range of the form A..B");
    }
    try {
        const std::uint64_t a = std::stoull(text.substr(0, sep));
        const std::uint64_t b = std::stoull(text.substr(sep + 2));
        if (b < a) throw ConfigError("--seeds", "range end before start");
        if (b - a > 256) throw ConfigError("--seeds", "range wider than 257 seeds");
        return {a, b};
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("--seeds", "expected a range of the form A..B");
    }
}

// Every seed in [a, b] simulated on its own thread; per-seed outputs get a
// _seed<k> suffix (CSV) or subdirectory (plots).
int run_seed_sweep(const SimConfig& base, const RunFlags& flags, std::uint64_t a,
                   std::uint64_t b) {
    struct Outcome {
        std::string message;
        int code{kExitOk};
    };
    std::vector<Outcome> outcomes(static_cast<size_t>(b - a + 1));
    std::mutex io_mutex;

    std::vector<std::thread> workers;
    workers.reserve(outcomes.size());
    for (std::uint64_t seed = a; seed <= b; ++seed) {
        workers.emplace_back([&, seed] {
            Outcome& result = outcomes[static_cast<size_t>(seed - a)];
            try {
                SimConfig config = base;
                config.noise.seed = seed;
                const std::string out = flags.out_path.empty()
                                            ? std::string{}
                                            : with_seed_suffix(flags.out_path, seed);
                const std::string plots =
                    flags.plots_dir.empty()
                        ? std::string{}
                        : (std::filesystem::path(flags.plots_dir)
                           / ("seed" + std::to_string(seed))).string();

                std::ostringstream log;
                execute_one(config, out, plots, log);
                std::lock_guard<std::mutex> lock(io_mutex);
                std::cout << log.str();
            } catch (const std::exception& e) {
                result.code = classify(e);
                result.message = "seed " + std::to_string(seed) + ": " + e.what();
            }
        });
    }
    for (std::thread& w : workers) w.join();

    int exit_code = kExitOk;
    for (const Outcome& o : outcomes) {
        if (o.code != kExitOk) {
            std::cerr << "error: " << o.message << "\n";
            exit_code = std::max(exit_code, o.code);
        }
    }
    return exit_code;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Stewart platform trajectory-tracking simulator"};
    app.require_subcommand(1);

    RunFlags flags;
    CLI::App* run = app.add_subcommand("run", "simulate a closed-loop scenario");
    run->add_option("--scenario", flags.scenario, "step or sinusoid")
        ->check(CLI::IsMember({"step", "sinusoid"}));
    run->add_option("--config", flags.config_path, "JSON config file");
    run->add_option("--out", flags.out_path, "CSV output path");
    run->add_option("--plots", flags.plots_dir, "directory for SVG plots");
    auto* seed_opt = run->add_option("--seed", flags.seed, "noise seed");
    auto* duration_opt =
        run->add_option("--duration", flags.duration, "run length in seconds");
    run->add_flag("--perfect-state", flags.perfect_state,
                  "feed the controller the true state instead of the estimate");
    run->add_flag("--literal-reference", flags.literal_reference,
                  "legacy sinusoid reference whose z-rate slot carries the z level");
    run->add_option("--seeds", flags.seeds_range,
                    "run a range of seeds A..B concurrently");

    std::string config_path_only;
    CLI::App* show = app.add_subcommand("config", "print the resolved config as JSON");
    show->add_option("--config", config_path_only, "JSON config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    flags.seed_given = seed_opt->count() > 0;
    flags.duration_given = duration_opt->count() > 0;

    try {
        if (show->parsed()) {
            SimConfig config;
            if (!config_path_only.empty()) config = load_config(config_path_only);
            std::cout << dump_config(config);
            return kExitOk;
        }

        const SimConfig config = resolve_config(flags);
        if (!flags.seeds_range.empty()) {
            const auto [a, b] = parse_seed_range(flags.seeds_range);
            return run_seed_sweep(config, flags, a, b);
        }
        execute_one(config, flags.out_path, flags.plots_dir, std::cout);
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return classify(e);
    }
}

}  // namespace stewart
