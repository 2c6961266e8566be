#ifndef PIMC_PATH_HPP
#define PIMC_PATH_HPP

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "pimc/rng.hpp"
#include "pimc/vec3.hpp"

namespace pimc {

/// One point of the discretized imaginary-time trajectory.
struct Bead {
    Vec3 position;
};

/// Closed ring of N beads. Only N positions are stored; the bead following
/// index N-1 is bead 0, so the closure r_N = r_0 holds by construction and
/// cannot drift out of sync.
class Path {
  public:
    Path() = default;
    explicit Path(std::vector<Vec3> beads);

    std::size_t size() const { return beads_.size(); }

    const Vec3& at(std::size_t i) const { return beads_[i]; }
    void set(std::size_t i, const Vec3& p) { beads_[i] = p; }

    /// Cyclic successor index.
    std::size_t next(std::size_t i) const { return i + 1 == beads_.size() ? 0 : i + 1; }
    /// Cyclic predecessor index.
    std::size_t prev(std::size_t i) const { return i == 0 ? beads_.size() - 1 : i - 1; }

    const std::vector<Vec3>& beads() const { return beads_; }

  private:
    std::vector<Vec3> beads_;
};

/// Imaginary-time mesh. Atomic units: tau in inverse hartree, mass in
/// electron masses. beta = N * tau.
struct Discretization {
    double tau = 0.0;
    double mass = 1.0;
    std::size_t n_beads = 0;

    double beta() const { return static_cast<double>(n_beads) * tau; }
};

/// Validates tau > 0, mass > 0, n_beads >= 2; throws ConfigError otherwise.
void validate(const Discretization& disc);

/// How to place the initial beads.
struct InitSpec {
    enum class Kind { Constant, Shell };

    Kind kind = Kind::Shell;
    Vec3 point{};            // Constant: every bead starts here
    double r_lo = 0.5;       // Shell: uniform over the volume of [r_lo, r_hi]
    double r_hi = 2.0;

    static InitSpec constant(const Vec3& p) { return {Kind::Constant, p, 0.0, 0.0}; }
    static InitSpec shell(double lo, double hi) { return {Kind::Shell, Vec3{}, lo, hi}; }
};

/// Builds a closed path of n_beads beads. Shell placement draws, per bead,
/// z = 2u-1, phi = 2*pi*u', then a radius uniform over the shell volume
/// (three uniforms per bead, in that order). Deterministic given (init, rng).
/// Throws ConfigError for n_beads < 2 or a bad shell range.
Path make_ring_path(std::size_t n_beads, const InitSpec& init, Rng& rng);

/// Displacement r_{(i+1) mod N} - r_i of link i. Throws std::out_of_range.
Vec3 link(const Path& path, std::size_t i);

/// Snapshot dump, columns index,x,y,z, one row per bead.
void write_path_csv(const Path& path, std::ostream& out);

}  // namespace pimc

#endif
