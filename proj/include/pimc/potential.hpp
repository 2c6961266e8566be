#ifndef PIMC_POTENTIAL_HPP
#define PIMC_POTENTIAL_HPP

#include <string>

#include "pimc/vec3.hpp"

namespace pimc {

/// Central potentials entering the actions. Immutable after construction;
/// evaluation is pure. Energies in hartree, lengths in bohr.
///
///   coulomb     V(r) = -1/r
///   harmonic    V(r) = (1/2) M w^2 r^2   (validation oracle)
///   effective   V(r) = -1/r + A tau^2 / (M r^4), the Coulomb potential plus
///               the short-range repulsion that keeps sampled paths off the
///               singularity
///   free        V(r) = 0
class Potential {
  public:
    enum class Kind { Coulomb, Harmonic, Effective, Free };

    static Potential coulomb();
    static Potential harmonic(double omega, double mass);
    static Potential effective(double repulsion_a, double tau, double mass);
    static Potential free();

    /// Value at r. Coulomb exactly at the origin throws SingularPoint; the
    /// effective variant returns +infinity there (the repulsive term wins),
    /// which the sampler maps to certain rejection.
    double value(const Vec3& r) const { return value_radial(norm(r)); }

    /// Same, for a precomputed radius |r|.
    double value_radial(double radius) const;

    Kind kind() const { return kind_; }
    double omega() const { return omega_; }
    double repulsion_a() const { return repulsion_a_; }
    double tau() const { return tau_; }
    double mass() const { return mass_; }

    std::string name() const;

  private:
    Potential() = default;

    Kind kind_ = Kind::Free;
    double omega_ = 0.0;
    double repulsion_a_ = 0.0;
    double tau_ = 0.0;
    double mass_ = 1.0;
};

/// Radius of the effective potential's minimum, r* = (4 A tau^2 / M)^(1/3).
/// Below r* the potential falls steeply (repulsion), above it climbs back
/// toward 0-. Throws ConfigError on non-positive inputs.
double effective_min_radius(double repulsion_a, double tau, double mass);

}  // namespace pimc

#endif
