#include "pimc/potential.hpp"

#include <cmath>
#include <limits>

#include "pimc/errors.hpp"

namespace pimc {

Potential Potential::coulomb() {
    Potential p;
    p.kind_ = Kind::Coulomb;
    return p;
}

Potential Potential::harmonic(double omega, double mass) {
    if (!(omega > 0.0)) throw ConfigError("harmonic potential needs omega > 0");
    if (!(mass > 0.0)) throw ConfigError("harmonic potential needs mass > 0");
    Potential p;
    p.kind_ = Kind::Harmonic;
    p.omega_ = omega;
    p.mass_ = mass;
    return p;
}

Potential Potential::effective(double repulsion_a, double tau, double mass) {
    if (!(repulsion_a > 0.0)) throw ConfigError("effective potential needs A > 0");
    if (!(tau > 0.0)) throw ConfigError("effective potential needs tau > 0");
    if (!(mass > 0.0)) throw ConfigError("effective potential needs mass > 0");
    Potential p;
    p.kind_ = Kind::Effective;
    p.repulsion_a_ = repulsion_a;
    p.tau_ = tau;
    p.mass_ = mass;
    return p;
}

Potential Potential::free() { return Potential{}; }

double Potential::value_radial(double radius) const {
    switch (kind_) {
        case Kind::Coulomb:
            if (radius == 0.0) throw SingularPoint("Coulomb potential evaluated at the origin");
            return -1.0 / radius;
        case Kind::Harmonic:
            return 0.5 * mass_ * omega_ * omega_ * radius * radius;
        case Kind::Effective: {
            if (radius == 0.0) return std::numeric_limits<double>::infinity();
            const double r2 = radius * radius;
            return -1.0 / radius + repulsion_a_ * tau_ * tau_ / (mass_ * r2 * r2);
        }
        case Kind::Free:
            return 0.0;
    }
    return 0.0;  // unreachable
}

std::string Potential::name() const {
    switch (kind_) {
        case Kind::Coulomb: return "coulomb";
        case Kind::Harmonic: return "harmonic";
        case Kind::Effective: return "effective";
        case Kind::Free: return "free";
    }
    return "?";
}

double effective_min_radius(double repulsion_a, double tau, double mass) {
    if (!(repulsion_a > 0.0)) throw ConfigError("effective_min_radius needs A > 0");
    if (!(tau > 0.0)) throw ConfigError("effective_min_radius needs tau > 0");
    if (!(mass > 0.0)) throw ConfigError("effective_min_radius needs mass > 0");
    // stationary point of -1/r + A tau^2 / (M r^4)
    return std::cbrt(4.0 * repulsion_a * tau * tau / mass);
}

}  // namespace pimc
