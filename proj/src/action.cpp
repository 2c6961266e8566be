#include "pimc/action.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "pimc/errors.hpp"

namespace pimc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Kahan running sum; keeps reported actions stable to ~1e-12 for any N.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double term) {
        const double y = term - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

std::string to_string(ActionKind kind) {
    switch (kind) {
        case ActionKind::Primitive: return "primitive";
        case ActionKind::ConstantForce: return "constant_force";
        case ActionKind::Simplified: return "simplified";
    }
    return "?";
}

Vec3 link_acceleration(const Vec3& r_i, const Vec3& r_next, const Potential& potential,
                       double mass) {
    const Vec3 disp = r_next - r_i;
    const double len2 = norm2(disp);
    if (len2 == 0.0) return {};  // degenerate link: 0/0 resolved to zero
    const double dv = potential.value(r_next) - potential.value(r_i);
    if (!std::isfinite(dv)) return {};  // singular endpoint; the potential term carries the infinity
    const double len = std::sqrt(len2);
    return disp * (-dv / (mass * len * len));
}

Vec3 link_velocity(const Vec3& r_i, const Vec3& r_next, double tau, const Vec3& accel) {
    return (r_next - r_i) * (1.0 / tau) - accel * tau;
}

double link_energy(const Vec3& r_i, const Vec3& r_next, double tau, const Potential& potential,
                   double mass) {
    const Vec3 accel = link_acceleration(r_i, r_next, potential, mass);
    const Vec3 v = link_velocity(r_i, r_next, tau, accel);
    return 0.5 * mass * norm2(v) + potential.value(r_i);
}

LinkKinematics link_kinematics(const Vec3& r_i, const Vec3& r_next, double tau,
                               const Potential& potential, double mass) {
    LinkKinematics k;
    const Vec3 disp = r_next - r_i;
    const double len = norm(disp);
    k.unit_dir = len > 0.0 ? disp * (1.0 / len) : Vec3{};
    k.accel = link_acceleration(r_i, r_next, potential, mass);
    k.velocity = link_velocity(r_i, r_next, tau, k.accel);
    k.energy = 0.5 * mass * norm2(k.velocity) + potential.value(r_i);
    return k;
}

Vec3 classical_trajectory(const Vec3& r_i, const Vec3& r_next, double tau, const Vec3& accel,
                          double s) {
    if (!(s >= 0.0 && s <= 1.0))
        throw std::domain_error("trajectory fraction s = " + std::to_string(s) +
                                " outside [0, 1]");
    return r_i + (r_next - r_i) * s + accel * (tau * tau * s * (s - 1.0));
}

Action::Action(ActionKind kind, Potential potential, Discretization disc)
    : kind_(kind), potential_(std::move(potential)), disc_(disc) {
    validate(disc_);
    if (kind_ == ActionKind::Simplified) {
        if (potential_.kind() != Potential::Kind::Effective)
            throw ConfigError("simplified action requires the effective potential");
        if (potential_.tau() != disc_.tau || potential_.mass() != disc_.mass)
            throw ConfigError("effective potential parameters disagree with the discretization");
    }
}

double Action::link_term(const Vec3& r_i, const Vec3& r_next, double& spring_out,
                         double& potential_out) const {
    const double tau = disc_.tau;
    const double half_m_over_tau = 0.5 * disc_.mass / tau;

    Vec3 disp = r_next - r_i;
    if (kind_ == ActionKind::ConstantForce) {
        // tau*E_i recast as (M/2tau)|dr - a tau^2|^2 + tau*V(r_i); identical
        // to the primitive term, operation for operation, when a vanishes.
        const Vec3 accel = link_acceleration(r_i, r_next, potential_, disc_.mass);
        disp = disp - accel * (tau * tau);
    }
    spring_out = half_m_over_tau * norm2(disp);
    potential_out = tau * potential_.value(r_i);
    return spring_out + potential_out;
}

ActionBreakdown Action::total(const Path& path) const {
    CompensatedSum spring;
    CompensatedSum potential;
    bool infinite_potential = false;

    for (std::size_t i = 0; i < path.size(); ++i) {
        double s = 0.0;
        double p = 0.0;
        link_term(path.at(i), path.at(path.next(i)), s, p);
        spring.add(s);
        if (p == kInf)
            infinite_potential = true;  // keep accumulating the finite parts
        else
            potential.add(p);
    }

    ActionBreakdown out;
    out.spring = spring.sum;
    out.potential = infinite_potential ? kInf : potential.sum;
    return out;
}

double Action::local_delta(const Path& path, std::size_t bead_index,
                           const Vec3& new_position) const {
    if (bead_index >= path.size())
        throw std::out_of_range("bead index " + std::to_string(bead_index) +
                                " out of range for " + std::to_string(path.size()) + " beads");

    const std::size_t prev_i = path.prev(bead_index);
    const std::size_t next_i = path.next(bead_index);
    const Vec3& r_prev = path.at(prev_i);
    const Vec3& r_old = path.at(bead_index);
    const Vec3& r_next = path.at(next_i);

    if (kind_ == ActionKind::ConstantForce) {
        double s = 0.0, p = 0.0;
        const double old_terms =
            link_term(r_prev, r_old, s, p) + link_term(r_old, r_next, s, p);
        const double new_terms =
            link_term(r_prev, new_position, s, p) + link_term(new_position, r_next, s, p);
        return new_terms - old_terms;
    }

    // Primitive / Simplified: two spring links plus this bead's potential term.
    const double w_new = potential_.value(new_position);
    if (w_new == kInf) return kInf;  // proposal onto the repulsive divergence
    const double w_old = potential_.value(r_old);
    if (w_old == kInf) return -kInf;  // current bead singular: any finite move wins

    const double half_m_over_tau = 0.5 * disc_.mass / disc_.tau;
    const double spring_delta =
        half_m_over_tau * (norm2(new_position - r_prev) + norm2(r_next - new_position) -
                           norm2(r_old - r_prev) - norm2(r_next - r_old));
    return spring_delta + disc_.tau * (w_new - w_old);
}

}  // namespace pimc
