#ifndef PIMC_ESTIMATORS_HPP
#define PIMC_ESTIMATORS_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pimc/action.hpp"
#include "pimc/sampler.hpp"

namespace pimc {

/// Scalar observable with a blocking error bar. n_blocks < 2 means the run
/// was too short for a trustworthy error; std_error is then 0 and flagged.
struct EnergyEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_blocks = 0;
    std::size_t block_size = 0;
    bool error_flagged = false;  // true when no error bar could be reported
};

/// Partitions the series into n_blocks contiguous blocks (truncating the
/// head when the length is not divisible), and returns the mean of block
/// means together with their standard error s/sqrt(n_blocks), s being the
/// sample standard deviation of the block means. Throws ConfigError when
/// the series is shorter than n_blocks or n_blocks < 2.
std::pair<double, double> blocking_error(std::span<const double> series, std::size_t n_blocks);

/// Blocked estimate with the default policy: 50 blocks, but runs with fewer
/// than 100 observations get a flagged, bar-less estimate.
EnergyEstimate blocked_estimate(std::span<const double> series, std::size_t n_blocks = 50);

/// Per-observation sample of the beta-derivative (thermodynamic) energy
/// estimator:
///   e = 3/(2 tau) - (M / (2 tau^2 N)) sum |dr_i|^2 + (1/N) sum W_i
/// where W_i = V_i under Primitive and, under Simplified,
/// W_i = -1/r_i + 3 A tau^2 / (M r_i^4) -- the tau-derivative of tau*V~_i,
/// including the explicit tau^2 dependence of the repulsive term. With
/// include_tau_term = false the repulsive derivative uses the bare
/// effective potential instead (emitted alongside so the size of the term
/// stays visible). Throws ConfigError for ConstantForce.
double thermodynamic_energy_sample(const Observation& obs, const Discretization& disc,
                                   const Action& action, bool include_tau_term = true);

/// Blocked thermodynamic energy over a stream. Throws ConfigError for an
/// empty stream or a ConstantForce action.
EnergyEstimate thermodynamic_energy(const MeasurementStream& stream, const Discretization& disc,
                                    const Action& action, bool include_tau_term = true,
                                    std::size_t n_blocks = 50);

/// Blocked mean of the bead-averaged link energy (1/N) sum E_i for a stream
/// produced under ConstantForce. A diagnostic observable for that action,
/// not a derived thermodynamic estimator. Throws ConfigError on an empty
/// stream.
EnergyEstimate constant_force_energy_diagnostic(const MeasurementStream& stream,
                                                const Discretization& disc,
                                                std::size_t n_blocks = 50);

/// Radial histogram with explicit out-of-range tallies. Counts merge by
/// addition, so independent chains can be reduced exactly.
struct RadialHistogram {
    std::vector<double> bin_edges;   // strictly increasing
    std::vector<std::uint64_t> counts;
    std::uint64_t overflow = 0;      // radii above the last edge
    std::uint64_t underflow = 0;     // radii below the first edge

    std::uint64_t total() const;

    /// Per-bin density normalized so that sum density*width = in-range
    /// fraction (exactly 1 when nothing over- or underflowed).
    std::vector<double> density() const;

    void add(double radius);
    void merge(const RadialHistogram& other);
};

/// Uniform bin edges, n_bins bins over [0, r_max].
std::vector<double> uniform_bin_edges(std::size_t n_bins, double r_max);

/// Accumulates |r_i| of every bead of every observation. Edges must be
/// strictly increasing with at least two entries; throws ConfigError
/// otherwise.
RadialHistogram radial_histogram(const MeasurementStream& stream,
                                 std::vector<double> bin_edges);

/// Fraction of beads with radius < epsilon. Throws ConfigError for
/// epsilon <= 0.
double collapse_metric(std::span<const double> path_radii, double epsilon);

/// Median of a radii snapshot (even length: average of the middle pair).
double median_radius(std::span<const double> radii);

}  // namespace pimc

#endif
