#include "pimc/sampler.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pimc/errors.hpp"

namespace pimc {

namespace {

bool outside_wall(const Vec3& p, double wall) {
    return std::fabs(p.x) > wall || std::fabs(p.y) > wall || std::fabs(p.z) > wall;
}

// True when the potential diverges at any position the local update reads.
bool current_state_singular(const Path& path, std::size_t i, const Action& action) {
    const std::size_t probes[3] = {path.prev(i), i, path.next(i)};
    for (std::size_t p : probes) {
        try {
            action.potential().value(path.at(p));
        } catch (const SingularPoint&) {
            return true;
        }
    }
    return false;
}

double observe_min_radius(const std::vector<double>& radii) {
    double m = std::numeric_limits<double>::infinity();
    for (double r : radii)
        if (r < m) m = r;
    return m;
}

}  // namespace

double accept_probability(double delta_s) {
    if (std::isnan(delta_s)) return 0.0;
    if (delta_s <= 0.0) return 1.0;  // includes -infinity
    return std::exp(-delta_s);       // +infinity maps to 0
}

void metropolis_sweep(ChainState& state, const Action& action, const ProposalSpec& proposal) {
    const std::size_t n = state.path.size();
    for (std::size_t i = 0; i < n; ++i) {
        // Fixed draw order: dx, dy, dz, acceptance. The acceptance variate is
        // consumed unconditionally so the stream position is a function of
        // the attempt count alone.
        const double dx = state.rng.symmetric(proposal.delta);
        const double dy = state.rng.symmetric(proposal.delta);
        const double dz = state.rng.symmetric(proposal.delta);
        const double u = state.rng.uniform01();
        ++state.attempted;

        const Vec3 candidate = state.path.at(i) + Vec3{dx, dy, dz};
        if (proposal.hard_wall > 0.0 && outside_wall(candidate, proposal.hard_wall)) continue;

        double delta_s;
        try {
            delta_s = action.local_delta(state.path, i, candidate);
        } catch (const SingularPoint&) {
            if (current_state_singular(state.path, i, action))
                throw CorruptedState("bead " + std::to_string(i) +
                                     " (or a neighbor) sits on a potential singularity; "
                                     "the chain state is corrupt");
            continue;  // the proposal was singular: plain rejection
        }

        if (u < accept_probability(delta_s)) {
            state.path.set(i, candidate);
            ++state.accepted;
        }
    }
    ++state.sweep_count;
}

ChainResult run_chain(const Discretization& disc, const Action& action,
                      const ProposalSpec& proposal, const RunSchedule& schedule,
                      std::uint64_t seed, const InitSpec& init) {
    validate(disc);
    if (schedule.thin == 0) throw ConfigError("thin must be at least 1");
    if (!(proposal.delta > 0.0)) throw ConfigError("proposal delta must be positive");

    ChainState state{Path{}, seed, Rng(seed), 0, 0, 0};
    state.path = make_ring_path(disc.n_beads, init, state.rng);

    ProposalSpec live = proposal;

    // Burn-in; optional delta tuner targeting 40-60% acceptance, evaluated on
    // 100-sweep windows. The tuner consumes no random draws.
    std::uint64_t window_accepted = 0;
    std::uint64_t window_attempted = 0;
    for (std::uint64_t b = 0; b < schedule.burn_in_sweeps; ++b) {
        metropolis_sweep(state, action, live);
        if (schedule.tune_during_burn_in && (b + 1) % 100 == 0) {
            const auto acc = state.accepted - window_accepted;
            const auto att = state.attempted - window_attempted;
            const double rate = att > 0 ? static_cast<double>(acc) / static_cast<double>(att) : 0.0;
            if (rate < 0.40)
                live.delta = std::max(1e-4, live.delta * 0.8);
            else if (rate > 0.60)
                live.delta = std::min(1e3, live.delta * 1.25);
            window_accepted = state.accepted;
            window_attempted = state.attempted;
        }
    }

    MeasurementStream stream;
    stream.reserve(schedule.measure_sweeps / schedule.thin);
    for (std::uint64_t m = 1; m <= schedule.measure_sweeps; ++m) {
        metropolis_sweep(state, action, live);
        if (m % schedule.thin != 0) continue;

        Observation obs;
        obs.sweep = state.sweep_count;
        const ActionBreakdown breakdown = action.total(state.path);
        obs.action_total = breakdown.total();
        obs.spring_sum = breakdown.spring;
        obs.potential_sum = breakdown.potential;
        obs.radii.reserve(state.path.size());
        for (std::size_t i = 0; i < state.path.size(); ++i)
            obs.radii.push_back(norm(state.path.at(i)));
        obs.min_radius = observe_min_radius(obs.radii);
        obs.acceptance_rate = state.attempted > 0 ? static_cast<double>(state.accepted) /
                                                        static_cast<double>(state.attempted)
                                                  : 0.0;
        stream.push_back(std::move(obs));
    }

    return ChainResult{std::move(stream), std::move(state.path), state.accepted, state.attempted,
                       live.delta};
}

}  // namespace pimc
