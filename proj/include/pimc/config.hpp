#ifndef PIMC_CONFIG_HPP
#define PIMC_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pimc/action.hpp"
#include "pimc/path.hpp"
#include "pimc/potential.hpp"
#include "pimc/sampler.hpp"

namespace pimc {

/// Fully resolved experiment description. Every knob has a recorded value
/// after parsing; defaults are filled in and echoed back out, so a report's
/// config echo reparses to an equal config.
struct ExperimentConfig {
    ActionKind action = ActionKind::Simplified;
    Potential::Kind potential = Potential::Kind::Coulomb;
    double omega = 0.0;        // harmonic only
    double repulsion_a = 0.5;  // A of the effective repulsion

    std::size_t n_beads = 0;
    double tau = 0.0;
    double mass = 1.0;

    double delta = 0.3;
    double hard_wall = 0.0;
    bool tune_acceptance = false;

    std::uint64_t burn_in = 2000;
    std::uint64_t measure = 20000;
    std::uint64_t thin = 10;

    std::vector<std::uint64_t> seeds;

    std::string output_dir = "pimc_out";
    std::size_t bins = 100;
    double r_max = 6.0;
    double collapse_epsilon = 0.1;

    InitSpec init = InitSpec::shell(0.5, 2.0);
    bool dump_paths = false;

    Discretization disc() const { return {tau, mass, n_beads}; }

    /// The physical/effective potential this config's action runs over.
    Potential make_potential() const;
    Action make_action() const;

    /// Canonical flat key-value serialization; parse_config round-trips it.
    std::string echo() const;
};

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

/// Raw key-value view of a config document: `key = value` lines, `#`
/// comments, bare or quoted strings, numbers, and [a, b, c] arrays.
using ConfigKv = std::map<std::string, std::string>;

/// Splits a document into raw key/value pairs. Duplicate keys keep the last
/// occurrence. Throws ConfigError on malformed lines.
ConfigKv parse_config_kv(const std::string& text);

/// Builds a validated config from raw pairs. Unknown keys and invariant
/// violations throw ConfigError naming the offending key or field.
ExperimentConfig config_from_kv(const ConfigKv& kv);

/// parse_config_kv + config_from_kv.
ExperimentConfig parse_config(const std::string& text);

}  // namespace pimc

#endif
