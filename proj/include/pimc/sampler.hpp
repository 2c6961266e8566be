#ifndef PIMC_SAMPLER_HPP
#define PIMC_SAMPLER_HPP

#include <cstdint>
#include <vector>

#include "pimc/action.hpp"
#include "pimc/path.hpp"
#include "pimc/rng.hpp"

namespace pimc {

/// Single-bead move: displacement uniform in the cube [-delta, delta]^3.
/// If hard_wall > 0, proposals with any |coordinate| > hard_wall are
/// rejected outright, which restricts the sampled density to e^{-S} on that
/// cube (used by the brute-force cross-check, where the unbounded integral
/// would not converge). hard_wall = 0 means no wall.
struct ProposalSpec {
    double delta = 0.3;
    double hard_wall = 0.0;
};

/// A Metropolis chain: the path, its generator, and move counters.
/// Mutated only by its owning chain; never shared mutably.
struct ChainState {
    Path path;
    std::uint64_t rng_seed = 0;
    Rng rng{0};
    std::uint64_t sweep_count = 0;
    std::uint64_t accepted = 0;
    std::uint64_t attempted = 0;
};

/// min(1, e^{-delta_S}); +infinity maps to 0. NaN (which cannot arise from
/// the documented action conventions) is treated as certain rejection.
double accept_probability(double delta_s);

/// One sweep: exactly N single-bead attempts in sequential bead order.
/// Each attempt consumes exactly four variates from the chain's stream, in
/// this order: dx, dy, dz uniform in [-delta, delta], then the acceptance
/// uniform in [0,1). The acceptance variate is drawn even for certain
/// rejections so the stream position depends only on the attempt count.
/// A singular proposal under Primitive/ConstantForce counts as a rejection;
/// a singular *current* bead under those kinds throws CorruptedState.
void metropolis_sweep(ChainState& state, const Action& action, const ProposalSpec& proposal);

/// Sweep counts for one chain. Measurements are taken after every thin-th
/// measurement sweep.
struct RunSchedule {
    std::uint64_t burn_in_sweeps = 2000;
    std::uint64_t measure_sweeps = 20000;
    std::uint64_t thin = 10;
    bool tune_during_burn_in = false;  // optional delta tuner, off by default
};

/// One measurement record.
struct Observation {
    std::uint64_t sweep = 0;          // chain sweep count when recorded (burn-in included)
    double action_total = 0.0;
    double spring_sum = 0.0;          // (M/2tau) sum |dr - a tau^2|^2
    double potential_sum = 0.0;       // tau * sum W(r_i)
    double min_radius = 0.0;
    double acceptance_rate = 0.0;     // accepted/attempted so far
    std::vector<double> radii;        // per-bead |r_i| snapshot
};

using MeasurementStream = std::vector<Observation>;

struct ChainResult {
    MeasurementStream stream;
    Path final_path;
    std::uint64_t accepted = 0;
    std::uint64_t attempted = 0;
    double final_delta = 0.0;  // differs from proposal.delta only when tuned
};

/// Runs one chain: initializes the path from init (consuming the first
/// draws of the seed's stream), burns in, then measures. Deterministic:
/// identical (disc, action, proposal, schedule, seed, init) give identical
/// results byte for byte. Throws ConfigError for thin == 0.
ChainResult run_chain(const Discretization& disc, const Action& action,
                      const ProposalSpec& proposal, const RunSchedule& schedule,
                      std::uint64_t seed, const InitSpec& init = InitSpec::shell(0.5, 2.0));

}  // namespace pimc

#endif
