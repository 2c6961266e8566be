#include "pimc/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pimc/errors.hpp"

namespace pimc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// W_i entering the thermodynamic estimator: d(tau*W~_i)/dtau for the
// simplified action, the bare potential otherwise.
double estimator_weight(double radius, const Action& action, bool include_tau_term) {
    if (action.kind() == ActionKind::Simplified) {
        if (radius == 0.0) return kInf;
        const Potential& pot = action.potential();
        const double factor = include_tau_term ? 3.0 : 1.0;
        const double r2 = radius * radius;
        return -1.0 / radius + factor * pot.repulsion_a() * pot.tau() * pot.tau() /
                                   (pot.mass() * r2 * r2);
    }
    return action.potential().value_radial(radius);
}

}  // namespace

std::pair<double, double> blocking_error(std::span<const double> series, std::size_t n_blocks) {
    if (n_blocks < 2) throw ConfigError("blocking needs at least 2 blocks");
    if (series.size() < n_blocks)
        throw ConfigError("series of length " + std::to_string(series.size()) +
                          " is shorter than n_blocks = " + std::to_string(n_blocks));

    const std::size_t block_size = series.size() / n_blocks;
    const std::size_t start = series.size() - block_size * n_blocks;  // truncate the head

    double mean_of_means = 0.0;
    std::vector<double> block_means(n_blocks);
    for (std::size_t b = 0; b < n_blocks; ++b) {
        const auto* first = series.data() + start + b * block_size;
        block_means[b] = std::accumulate(first, first + block_size, 0.0) /
                         static_cast<double>(block_size);
        mean_of_means += block_means[b];
    }
    mean_of_means /= static_cast<double>(n_blocks);

    double ssq = 0.0;
    for (double m : block_means) ssq += (m - mean_of_means) * (m - mean_of_means);
    const double sample_sd = std::sqrt(ssq / static_cast<double>(n_blocks - 1));
    return {mean_of_means, sample_sd / std::sqrt(static_cast<double>(n_blocks))};
}

EnergyEstimate blocked_estimate(std::span<const double> series, std::size_t n_blocks) {
    if (series.empty()) throw ConfigError("cannot estimate from an empty series");
    EnergyEstimate est;
    if (series.size() < 100 || series.size() < 2 * n_blocks) {
        est.mean = std::accumulate(series.begin(), series.end(), 0.0) /
                   static_cast<double>(series.size());
        est.std_error = 0.0;
        est.n_blocks = 1;
        est.block_size = series.size();
        est.error_flagged = true;
        return est;
    }
    const auto [mean, err] = blocking_error(series, n_blocks);
    est.mean = mean;
    est.std_error = err;
    est.n_blocks = n_blocks;
    est.block_size = series.size() / n_blocks;
    est.error_flagged = false;
    return est;
}

double thermodynamic_energy_sample(const Observation& obs, const Discretization& disc,
                                   const Action& action, bool include_tau_term) {
    if (action.kind() == ActionKind::ConstantForce)
        throw ConfigError(
            "the thermodynamic estimator is undefined for the constant_force action; "
            "use constant_force_energy_diagnostic");

    const double tau = disc.tau;
    const double n = static_cast<double>(disc.n_beads);
    // spring_sum is (M/2tau) sum |dr|^2 for the supported actions
    const double sum_dr2 = obs.spring_sum * 2.0 * tau / disc.mass;

    double w_sum = 0.0;
    for (double r : obs.radii) w_sum += estimator_weight(r, action, include_tau_term);

    return 3.0 / (2.0 * tau) - disc.mass / (2.0 * tau * tau * n) * sum_dr2 + w_sum / n;
}

EnergyEstimate thermodynamic_energy(const MeasurementStream& stream, const Discretization& disc,
                                    const Action& action, bool include_tau_term,
                                    std::size_t n_blocks) {
    if (stream.empty()) throw ConfigError("cannot estimate energy from an empty stream");
    std::vector<double> series;
    series.reserve(stream.size());
    for (const Observation& obs : stream)
        series.push_back(thermodynamic_energy_sample(obs, disc, action, include_tau_term));
    return blocked_estimate(series, n_blocks);
}

EnergyEstimate constant_force_energy_diagnostic(const MeasurementStream& stream,
                                                const Discretization& disc,
                                                std::size_t n_blocks) {
    if (stream.empty()) throw ConfigError("cannot estimate energy from an empty stream");
    std::vector<double> series;
    series.reserve(stream.size());
    const double scale = 1.0 / (disc.tau * static_cast<double>(disc.n_beads));
    for (const Observation& obs : stream) series.push_back(obs.action_total * scale);
    return blocked_estimate(series, n_blocks);
}

std::uint64_t RadialHistogram::total() const {
    std::uint64_t t = overflow + underflow;
    for (auto c : counts) t += c;
    return t;
}

std::vector<double> RadialHistogram::density() const {
    std::vector<double> d(counts.size(), 0.0);
    const std::uint64_t t = total();
    if (t == 0) return d;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double width = bin_edges[i + 1] - bin_edges[i];
        d[i] = static_cast<double>(counts[i]) / (static_cast<double>(t) * width);
    }
    return d;
}

void RadialHistogram::add(double radius) {
    if (radius < bin_edges.front()) {
        ++underflow;
        return;
    }
    if (radius >= bin_edges.back()) {
        ++overflow;
        return;
    }
    const auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), radius);
    ++counts[static_cast<std::size_t>(it - bin_edges.begin()) - 1];
}

void RadialHistogram::merge(const RadialHistogram& other) {
    if (other.bin_edges != bin_edges) throw ConfigError("cannot merge histograms with different bins");
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    overflow += other.overflow;
    underflow += other.underflow;
}

std::vector<double> uniform_bin_edges(std::size_t n_bins, double r_max) {
    if (n_bins == 0) throw ConfigError("histogram needs at least one bin");
    if (!(r_max > 0.0)) throw ConfigError("r_max must be positive");
    std::vector<double> edges(n_bins + 1);
    for (std::size_t i = 0; i <= n_bins; ++i)
        edges[i] = r_max * static_cast<double>(i) / static_cast<double>(n_bins);
    return edges;
}

RadialHistogram radial_histogram(const MeasurementStream& stream,
                                 std::vector<double> bin_edges) {
    if (bin_edges.size() < 2) throw ConfigError("histogram needs at least two bin edges");
    for (std::size_t i = 1; i < bin_edges.size(); ++i)
        if (!(bin_edges[i] > bin_edges[i - 1]))
            throw ConfigError("histogram bin edges must be strictly increasing");

    RadialHistogram h;
    h.bin_edges = std::move(bin_edges);
    h.counts.assign(h.bin_edges.size() - 1, 0);
    for (const Observation& obs : stream)
        for (double r : obs.radii) h.add(r);
    return h;
}

double collapse_metric(std::span<const double> path_radii, double epsilon) {
    if (!(epsilon > 0.0)) throw ConfigError("collapse epsilon must be positive");
    if (path_radii.empty()) return 0.0;
    const auto below = std::count_if(path_radii.begin(), path_radii.end(),
                                     [epsilon](double r) { return r < epsilon; });
    return static_cast<double>(below) / static_cast<double>(path_radii.size());
}

double median_radius(std::span<const double> radii) {
    if (radii.empty()) return 0.0;
    std::vector<double> sorted(radii.begin(), radii.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    if (sorted.size() % 2 == 1) return sorted[mid];
    return 0.5 * (sorted[mid - 1] + sorted[mid]);
}

}  // namespace pimc
