// pimc -- path-integral Monte Carlo for a single quantum particle.
//
// Subcommands:
//   run      one experiment from a config file
//   compare  the same experiment under several actions, matched seeds
//   scan     one run per tau at fixed total imaginary time beta
//
// Flags override config-file keys, which override built-in defaults. The
// PIMC_OUTPUT_DIR environment variable overrides the configured output
// directory (flags still win). Progress goes to stderr; stdout carries only
// the result documents.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pimc/config.hpp"
#include "pimc/errors.hpp"
#include "pimc/experiment.hpp"
#include "pimc/io_util.hpp"

namespace {

struct Overrides {
    std::vector<std::uint64_t> seeds;
    std::string action;
    std::string potential;
    std::string output_dir;
    double tau = 0.0;
    bool tau_set = false;
    std::vector<std::string> sets;  // generic key=value overrides
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw pimc::IoError("cannot read config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

pimc::ExperimentConfig load_config(const std::string& config_path, const Overrides& ov) {
    pimc::ConfigKv kv = pimc::parse_config_kv(read_file(config_path));

    if (const char* env = std::getenv("PIMC_OUTPUT_DIR"); env && *env)
        kv["output_dir"] = std::string(env);

    for (const std::string& s : ov.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw pimc::ConfigError("--set expects key=value, got '" + s + "'");
        kv[s.substr(0, eq)] = s.substr(eq + 1);
    }
    if (!ov.action.empty()) kv["action"] = ov.action;
    if (!ov.potential.empty()) kv["potential"] = ov.potential;
    if (!ov.output_dir.empty()) kv["output_dir"] = ov.output_dir;
    if (ov.tau_set) kv["tau"] = pimc::format_double(ov.tau);
    if (!ov.seeds.empty()) {
        std::string arr = "[";
        for (std::size_t i = 0; i < ov.seeds.size(); ++i)
            arr += (i ? ", " : "") + std::to_string(ov.seeds[i]);
        arr += "]";
        kv["seeds"] = arr;
    }
    return pimc::config_from_kv(kv);
}

pimc::ActionKind action_from_name(const std::string& name) {
    if (name == "primitive") return pimc::ActionKind::Primitive;
    if (name == "constant_force") return pimc::ActionKind::ConstantForce;
    if (name == "simplified") return pimc::ActionKind::Simplified;
    throw pimc::ConfigError("unknown action '" + name + "'");
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"path-integral Monte Carlo for a single quantum particle"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides ov;
    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "config file (flat key = value format)")
            ->required();
        cmd->add_option("--seed", ov.seeds, "override seeds (repeatable)");
        cmd->add_option("--action", ov.action, "override the action kind");
        cmd->add_option("--potential", ov.potential, "override the potential kind");
        cmd->add_option("--output-dir", ov.output_dir, "override the output directory");
        cmd->add_option("--tau", ov.tau, "override the timestep")
            ->each([&](const std::string&) { ov.tau_set = true; });
        cmd->add_option("--set", ov.sets, "override any config key, key=value (repeatable)");
    };

    CLI::App* run_cmd = app.add_subcommand("run", "run one experiment");
    add_common(run_cmd);

    CLI::App* compare_cmd =
        app.add_subcommand("compare", "run the same experiment under several actions");
    add_common(compare_cmd);
    std::string actions_arg = "primitive,simplified";
    compare_cmd->add_option("--actions", actions_arg, "comma-separated action kinds");

    CLI::App* scan_cmd = app.add_subcommand("scan", "tau scan at fixed beta");
    add_common(scan_cmd);
    double beta = 0.0;
    std::string taus_arg;
    scan_cmd->add_option("--beta", beta, "total imaginary time")->required();
    scan_cmd->add_option("--taus", taus_arg, "comma-separated timesteps")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run_cmd->parsed()) {
            const pimc::ExperimentConfig cfg = load_config(config_path, ov);
            pimc::run_experiment(cfg);
            std::ifstream in(std::filesystem::path(cfg.output_dir) / "report.json");
            std::cout << in.rdbuf();
        } else if (compare_cmd->parsed()) {
            const pimc::ExperimentConfig cfg = load_config(config_path, ov);
            std::vector<pimc::ActionKind> kinds;
            for (const std::string& name : split_commas(actions_arg))
                kinds.push_back(action_from_name(name));
            pimc::compare_actions(cfg, kinds);
            std::ifstream in(std::filesystem::path(cfg.output_dir) / "compare.json");
            std::cout << in.rdbuf();
        } else if (scan_cmd->parsed()) {
            const pimc::ExperimentConfig cfg = load_config(config_path, ov);
            std::vector<double> taus;
            for (const std::string& t : split_commas(taus_arg)) taus.push_back(std::stod(t));
            pimc::tau_scan(cfg, beta, taus);
            std::ifstream in(std::filesystem::path(cfg.output_dir) / "scan.csv");
            std::cout << in.rdbuf();
        }
    } catch (const pimc::ConfigError& e) {
        std::cerr << "pimc: configuration error: " << e.what() << "\n";
        return 2;
    } catch (const pimc::IoError& e) {
        std::cerr << "pimc: I/O error: " << e.what() << "\n";
        return 4;
    } catch (const pimc::CorruptedState& e) {
        std::cerr << "pimc: corrupted chain state: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "pimc: error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
