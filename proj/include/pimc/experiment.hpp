#ifndef PIMC_EXPERIMENT_HPP
#define PIMC_EXPERIMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "pimc/config.hpp"
#include "pimc/estimators.hpp"
#include "pimc/sampler.hpp"

namespace pimc {

/// Per-chain results carried into the report.
struct ChainSummary {
    std::uint64_t seed = 0;
    double acceptance_rate = 0.0;
    double final_delta = 0.0;
    EnergyEstimate energy;            // thermodynamic, or the S2 diagnostic
    double collapse_metric_final = 0.0;
    double median_radius_final = 0.0;
};

/// Summary of collapse_metric(epsilon) across the observation sequence.
struct CollapseTrajectory {
    double epsilon = 0.0;
    double initial = 0.0;
    double final = 0.0;
    double min = 0.0;
    double max = 0.0;
};

/// Everything a run produces besides its CSV files. Every numeric field is
/// reproducible from (config, seeds); wall-clock time is therefore reported
/// on stderr, never here.
struct RunReport {
    std::string config_echo;
    std::string rng_algorithm;
    std::string rng_version;
    std::vector<ChainSummary> chains;
    std::optional<EnergyEstimate> energy;                  // Primitive/Simplified
    std::optional<EnergyEstimate> energy_no_tau_term;      // Simplified only
    std::optional<EnergyEstimate> energy_diagnostic;       // ConstantForce only
    CollapseTrajectory collapse;
    double median_radius_final = 0.0;    // over the last chain's final path
    double min_radius_median = 0.0;      // median over observations of the per-snapshot minimum
    std::uint64_t histogram_overflow = 0;
    std::string energies_file;
    std::string histogram_file;
    std::string report_file;
};

/// Runs one chain per seed (in parallel, merged in seed order), writes
/// energies.csv, histogram.csv and report.json into config.output_dir, and
/// returns the report. Identical (config, seeds) produce byte-identical
/// files. Throws IoError on filesystem failure, CorruptedState if a chain
/// aborts.
RunReport run_experiment(const ExperimentConfig& config);

/// Result of comparing several actions at matched settings and seeds.
struct CompareReport {
    std::vector<std::string> action_names;
    std::vector<RunReport> runs;  // one per action, outputs in per-action subdirs
};

CompareReport compare_actions(const ExperimentConfig& base,
                              const std::vector<ActionKind>& actions);

/// One row of a tau scan.
struct ScanRow {
    double tau = 0.0;
    std::size_t n_beads = 0;
    double energy_mean = 0.0;
    double energy_err = 0.0;
    double min_radius_median = 0.0;
    double acceptance = 0.0;
};

/// One run per tau at fixed beta, N = beta/tau (which must be integral to
/// within 1e-9, else ConfigError). Writes scan.csv into config.output_dir.
std::vector<ScanRow> tau_scan(const ExperimentConfig& base, double beta,
                              const std::vector<double>& taus);

}  // namespace pimc

#endif
