#include "pimc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "pimc/errors.hpp"
#include "pimc/io_util.hpp"

namespace pimc {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct ChainOutcome {
    ChainResult result;
    std::exception_ptr error;
};

// One chain per seed, run concurrently, collected in seed order so parallel
// and serial execution produce identical output.
std::vector<ChainResult> run_all_chains(const ExperimentConfig& cfg) {
    const Action action = cfg.make_action();
    const Discretization disc = cfg.disc();
    const ProposalSpec proposal{cfg.delta, cfg.hard_wall};
    const RunSchedule schedule{cfg.burn_in, cfg.measure, cfg.thin, cfg.tune_acceptance};

    std::vector<ChainOutcome> outcomes(cfg.seeds.size());
    {
        std::vector<std::jthread> workers;
        workers.reserve(cfg.seeds.size());
        for (std::size_t c = 0; c < cfg.seeds.size(); ++c) {
            workers.emplace_back([&, c] {
                try {
                    outcomes[c].result =
                        run_chain(disc, action, proposal, schedule, cfg.seeds[c], cfg.init);
                } catch (...) {
                    outcomes[c].error = std::current_exception();
                }
            });
        }
    }
    std::vector<ChainResult> results;
    results.reserve(outcomes.size());
    for (auto& o : outcomes) {
        if (o.error) std::rethrow_exception(o.error);
        results.push_back(std::move(o.result));
    }
    return results;
}

EnergyEstimate combine_chain_estimates(const std::vector<EnergyEstimate>& per_chain) {
    EnergyEstimate combined;
    if (per_chain.empty()) return combined;
    double mean = 0.0;
    double var = 0.0;
    bool flagged = false;
    for (const auto& e : per_chain) {
        mean += e.mean;
        var += e.std_error * e.std_error;
        flagged = flagged || e.error_flagged;
    }
    const double c = static_cast<double>(per_chain.size());
    combined.mean = mean / c;
    combined.std_error = std::sqrt(var) / c;
    combined.n_blocks = per_chain.front().n_blocks;
    combined.block_size = per_chain.front().block_size;
    combined.error_flagged = flagged;
    return combined;
}

std::string energies_csv(const ExperimentConfig& cfg, const Action& action,
                         const std::vector<ChainResult>& chains) {
    std::string out = "sweep,action_total,spring_sum,potential_sum,e_thermo,min_radius,acceptance_rate\n";
    const bool has_thermo = cfg.action != ActionKind::ConstantForce;
    for (const ChainResult& chain : chains) {
        for (const Observation& obs : chain.stream) {
            const double e = has_thermo
                                 ? thermodynamic_energy_sample(obs, cfg.disc(), action)
                                 : std::numeric_limits<double>::quiet_NaN();
            out += std::to_string(obs.sweep);
            out += ',';
            out += format_double(obs.action_total);
            out += ',';
            out += format_double(obs.spring_sum);
            out += ',';
            out += format_double(obs.potential_sum);
            out += ',';
            out += format_double(e);
            out += ',';
            out += format_double(obs.min_radius);
            out += ',';
            out += format_double(obs.acceptance_rate);
            out += '\n';
        }
    }
    return out;
}

std::string histogram_csv(const RadialHistogram& hist) {
    std::string out = "r_lo,r_hi,density\n";
    const auto density = hist.density();
    for (std::size_t i = 0; i < density.size(); ++i) {
        out += format_double(hist.bin_edges[i]);
        out += ',';
        out += format_double(hist.bin_edges[i + 1]);
        out += ',';
        out += format_double(density[i]);
        out += '\n';
    }
    return out;
}

json estimate_to_json(const EnergyEstimate& e) {
    return json{{"mean", e.mean},
                {"std_error", e.std_error},
                {"n_blocks", e.n_blocks},
                {"block_size", e.block_size},
                {"error_flagged", e.error_flagged}};
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    const Action action = config.make_action();  // validates the whole parameter set

    const fs::path out_dir(config.output_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());

    std::cerr << "pimc: running " << config.seeds.size() << " chain(s), "
              << to_string(config.action) << " action, N=" << config.n_beads
              << ", tau=" << config.tau << "\n";

    const std::vector<ChainResult> chains = run_all_chains(config);

    RunReport report;
    report.config_echo = config.echo();
    report.rng_algorithm = std::string(kRngAlgorithm) + " (seeded via " + std::string(kRngSeeding) + ")";
    report.rng_version = std::string(kRngVersion);
    report.energies_file = "energies.csv";
    report.histogram_file = "histogram.csv";
    report.report_file = "report.json";

    // per-chain summaries and estimates
    const bool has_thermo = config.action != ActionKind::ConstantForce;
    std::vector<EnergyEstimate> chain_energies;
    std::vector<EnergyEstimate> chain_energies_no_tau;
    for (std::size_t c = 0; c < chains.size(); ++c) {
        const ChainResult& chain = chains[c];
        ChainSummary s;
        s.seed = config.seeds[c];
        s.acceptance_rate = chain.attempted > 0 ? static_cast<double>(chain.accepted) /
                                                      static_cast<double>(chain.attempted)
                                                : 0.0;
        s.final_delta = chain.final_delta;
        std::vector<double> final_radii;
        final_radii.reserve(chain.final_path.size());
        for (std::size_t i = 0; i < chain.final_path.size(); ++i)
            final_radii.push_back(norm(chain.final_path.at(i)));
        s.collapse_metric_final = collapse_metric(final_radii, config.collapse_epsilon);
        s.median_radius_final = median_radius(final_radii);
        if (!chain.stream.empty()) {
            if (has_thermo) {
                s.energy = thermodynamic_energy(chain.stream, config.disc(), action);
                chain_energies.push_back(s.energy);
                chain_energies_no_tau.push_back(
                    thermodynamic_energy(chain.stream, config.disc(), action, false));
            } else {
                s.energy = constant_force_energy_diagnostic(chain.stream, config.disc());
                chain_energies.push_back(s.energy);
            }
        }
        report.chains.push_back(s);
    }

    if (!chain_energies.empty()) {
        if (has_thermo) {
            report.energy = combine_chain_estimates(chain_energies);
            if (config.action == ActionKind::Simplified)
                report.energy_no_tau_term = combine_chain_estimates(chain_energies_no_tau);
        } else {
            report.energy_diagnostic = combine_chain_estimates(chain_energies);
        }
    }

    // histogram over every bead of every retained observation, merged across chains
    RadialHistogram hist;
    hist.bin_edges = uniform_bin_edges(config.bins, config.r_max);
    hist.counts.assign(config.bins, 0);
    for (const ChainResult& chain : chains)
        hist.merge(radial_histogram(chain.stream, hist.bin_edges));
    report.histogram_overflow = hist.overflow;

    // collapse trajectory over the concatenated observation sequence
    report.collapse.epsilon = config.collapse_epsilon;
    bool first_obs = true;
    std::vector<double> min_radii;
    for (const ChainResult& chain : chains) {
        for (const Observation& obs : chain.stream) {
            min_radii.push_back(obs.min_radius);
            const double m = collapse_metric(obs.radii, config.collapse_epsilon);
            if (first_obs) {
                report.collapse.initial = report.collapse.min = report.collapse.max = m;
                first_obs = false;
            }
            report.collapse.final = m;
            report.collapse.min = std::min(report.collapse.min, m);
            report.collapse.max = std::max(report.collapse.max, m);
        }
    }
    report.min_radius_median = median_radius(min_radii);
    if (!report.chains.empty()) report.median_radius_final = report.chains.back().median_radius_final;

    write_file_atomic(out_dir / "energies.csv", energies_csv(config, action, chains));
    write_file_atomic(out_dir / "histogram.csv", histogram_csv(hist));

    if (config.dump_paths) {
        for (std::size_t c = 0; c < chains.size(); ++c) {
            std::ostringstream ss;
            write_path_csv(chains[c].final_path, ss);
            write_file_atomic(out_dir / ("path_seed" + std::to_string(config.seeds[c]) + ".csv"),
                              ss.str());
        }
    }

    json j;
    j["config_echo"] = report.config_echo;
    j["rng"] = json{{"algorithm", std::string(kRngAlgorithm)},
                    {"version", std::string(kRngVersion)},
                    {"seeding", std::string(kRngSeeding)},
                    {"draws_per_attempt", 4}};
    json jchains = json::array();
    for (const ChainSummary& s : report.chains) {
        json jc;
        jc["seed"] = s.seed;
        jc["acceptance_rate"] = s.acceptance_rate;
        jc["final_delta"] = s.final_delta;
        jc["energy"] = estimate_to_json(s.energy);
        jc["collapse_metric_final"] = s.collapse_metric_final;
        jc["median_radius_final"] = s.median_radius_final;
        jchains.push_back(jc);
    }
    j["chains"] = jchains;
    if (report.energy) j["energy"] = estimate_to_json(*report.energy);
    if (report.energy_no_tau_term)
        j["energy_no_tau_term"] = estimate_to_json(*report.energy_no_tau_term);
    if (report.energy_diagnostic)
        j["energy_diagnostic"] = estimate_to_json(*report.energy_diagnostic);
    j["collapse"] = json{{"epsilon", report.collapse.epsilon},
                         {"initial", report.collapse.initial},
                         {"final", report.collapse.final},
                         {"min", report.collapse.min},
                         {"max", report.collapse.max}};
    j["median_radius_final"] = report.median_radius_final;
    j["min_radius_median"] = report.min_radius_median;
    j["histogram_overflow"] = report.histogram_overflow;
    j["files"] = json{{"energies", report.energies_file},
                      {"histogram", report.histogram_file}};
    write_file_atomic(out_dir / "report.json", j.dump(2) + "\n");

    const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "pimc: done in " << dt << " s, outputs in " << out_dir.string() << "\n";
    return report;
}

CompareReport compare_actions(const ExperimentConfig& base,
                              const std::vector<ActionKind>& actions) {
    if (actions.empty()) throw ConfigError("compare needs at least one action");
    CompareReport cmp;
    for (ActionKind kind : actions) {
        ExperimentConfig cfg = base;
        cfg.action = kind;
        cfg.output_dir = (fs::path(base.output_dir) / to_string(kind)).string();
        cmp.action_names.push_back(to_string(kind));
        cmp.runs.push_back(run_experiment(cfg));
    }

    json j;
    json runs = json::array();
    for (std::size_t i = 0; i < cmp.runs.size(); ++i) {
        const RunReport& r = cmp.runs[i];
        json jr;
        jr["action"] = cmp.action_names[i];
        jr["collapse"] = json{{"epsilon", r.collapse.epsilon},
                              {"initial", r.collapse.initial},
                              {"final", r.collapse.final},
                              {"min", r.collapse.min},
                              {"max", r.collapse.max}};
        jr["median_radius_final"] = r.median_radius_final;
        if (r.energy) jr["energy"] = estimate_to_json(*r.energy);
        if (r.energy_diagnostic) jr["energy_diagnostic"] = estimate_to_json(*r.energy_diagnostic);
        jr["output_dir"] = cmp.action_names[i];
        runs.push_back(jr);
    }
    j["runs"] = runs;

    const fs::path out_dir(base.output_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());
    write_file_atomic(out_dir / "compare.json", j.dump(2) + "\n");
    return cmp;
}

std::vector<ScanRow> tau_scan(const ExperimentConfig& base, double beta,
                              const std::vector<double>& taus) {
    if (!(beta > 0.0)) throw ConfigError("scan beta must be positive");
    if (taus.empty()) throw ConfigError("scan needs at least one tau");

    std::vector<ScanRow> rows;
    for (double tau : taus) {
        if (!(tau > 0.0)) throw ConfigError("scan tau must be positive");
        const double ratio = beta / tau;
        const double rounded = std::round(ratio);
        if (std::fabs(ratio - rounded) > 1e-9)
            throw ConfigError("tau = " + format_double(tau) + " does not divide beta = " +
                              format_double(beta) + " into an integer bead count (beta/tau = " +
                              format_double(ratio) + ")");
        const auto n = static_cast<std::size_t>(rounded);
        if (n < 2) throw ConfigError("beta/tau must be at least 2 beads");

        ExperimentConfig cfg = base;
        cfg.tau = tau;
        cfg.n_beads = n;
        cfg.output_dir = (fs::path(base.output_dir) / ("tau_" + format_double(tau))).string();
        const RunReport report = run_experiment(cfg);

        ScanRow row;
        row.tau = tau;
        row.n_beads = n;
        const EnergyEstimate* e = report.energy       ? &*report.energy
                                  : report.energy_diagnostic ? &*report.energy_diagnostic
                                                             : nullptr;
        row.energy_mean = e ? e->mean : std::numeric_limits<double>::quiet_NaN();
        row.energy_err = e ? e->std_error : std::numeric_limits<double>::quiet_NaN();
        row.min_radius_median = report.min_radius_median;

        double acc_sum = 0.0;
        for (const ChainSummary& s : report.chains) acc_sum += s.acceptance_rate;
        row.acceptance = report.chains.empty() ? 0.0 : acc_sum / static_cast<double>(report.chains.size());
        rows.push_back(row);
    }

    std::string csv = "tau,n_beads,energy_mean,energy_err,min_radius_median,acceptance\n";
    for (const ScanRow& row : rows) {
        csv += format_double(row.tau);
        csv += ',';
        csv += std::to_string(row.n_beads);
        csv += ',';
        csv += format_double(row.energy_mean);
        csv += ',';
        csv += format_double(row.energy_err);
        csv += ',';
        csv += format_double(row.min_radius_median);
        csv += ',';
        csv += format_double(row.acceptance);
        csv += '\n';
    }
    const fs::path out_dir(base.output_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());
    write_file_atomic(out_dir / "scan.csv", csv);
    return rows;
}

}  // namespace pimc
