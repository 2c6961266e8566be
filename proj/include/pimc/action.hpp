#ifndef PIMC_ACTION_HPP
#define PIMC_ACTION_HPP

#include <cstddef>
#include <string>

#include "pimc/path.hpp"
#include "pimc/potential.hpp"
#include "pimc/vec3.hpp"

namespace pimc {

/// Which discretized action scores a path.
///
///   Primitive       S1 = tau * sum V_i + (M/2tau) * sum |r_{i+1}-r_i|^2
///   ConstantForce   S2 = tau * sum E_i, with E_i the conserved energy of
///                   per-link motion in a constant force field
///   Simplified      same shape as S1 but over the effective potential,
///                   S~ = (M/2tau) * sum |dr|^2 + tau * sum V~_i
enum class ActionKind { Primitive, ConstantForce, Simplified };

std::string to_string(ActionKind kind);

/// Per-link quantities of the constant-force construction. Times are
/// measured from the link's start.
struct LinkKinematics {
    Vec3 accel;      // a_i, parallel to unit_dir
    Vec3 velocity;   // v_i at the link start
    double energy;   // E_i = M |v_i|^2 / 2 + V(r_i)
    Vec3 unit_dir;   // unit vector from r_i toward r_{i+1}; zero for a degenerate link
};

/// Acceleration of the assumed constant-force motion across one link:
/// a = -u * (V(r_next) - V(r_i)) / (M |r_next - r_i|). Zero by convention
/// when r_next == r_i (the 0/0 case; a zero-measure event under continuous
/// proposals). Propagates SingularPoint from the potential.
Vec3 link_acceleration(const Vec3& r_i, const Vec3& r_next, const Potential& potential,
                       double mass);

/// Start-of-link velocity v = (r_next - r_i)/tau - a*tau.
Vec3 link_velocity(const Vec3& r_i, const Vec3& r_next, double tau, const Vec3& accel);

/// Conserved energy of the link motion, evaluated at the link start:
/// E = M |v|^2 / 2 + V(r_i).
double link_energy(const Vec3& r_i, const Vec3& r_next, double tau, const Potential& potential,
                   double mass);

/// All of the above in one evaluation.
LinkKinematics link_kinematics(const Vec3& r_i, const Vec3& r_next, double tau,
                               const Potential& potential, double mass);

/// Interpolating position at time fraction s in [0,1]:
/// r(s) = r_i + (r_next - r_i) s + a tau^2 s (s - 1).
/// Throws std::domain_error for s outside [0,1].
Vec3 classical_trajectory(const Vec3& r_i, const Vec3& r_next, double tau, const Vec3& accel,
                          double s);

/// Spring (kinetic) and potential parts of an action value.
struct ActionBreakdown {
    double spring = 0.0;     // (M/2tau) sum |dr - a tau^2|^2  (a = 0 except ConstantForce)
    double potential = 0.0;  // tau * sum W(r_i)
    double total() const { return spring + potential; }
};

/// Scores paths under one action kind. For Simplified the potential must be
/// the effective variant; Primitive and ConstantForce accept any potential.
class Action {
  public:
    Action(ActionKind kind, Potential potential, Discretization disc);

    ActionKind kind() const { return kind_; }
    const Potential& potential() const { return potential_; }
    const Discretization& disc() const { return disc_; }

    /// Full-path action. Per-link terms are accumulated in index order with
    /// compensated summation, so reported values are stable to ~1e-12
    /// regardless of N. ConstantForce links use the algebraically equal form
    /// tau*E_i = (M/2tau)|dr - a tau^2|^2 + tau*V(r_i), which reduces to the
    /// primitive term bit-for-bit when a vanishes. Returns +infinity if a
    /// bead sits at the origin under Simplified; throws SingularPoint there
    /// under the other two kinds.
    ActionBreakdown total(const Path& path) const;

    /// Action change from moving one bead, touching only the two adjacent
    /// links plus that bead's potential term. +infinity means certain
    /// rejection; -infinity means the current position is singular under the
    /// effective potential and any finite move is a certain accept.
    double local_delta(const Path& path, std::size_t bead_index, const Vec3& new_position) const;

  private:
    // spring + tau*W contribution of the link starting at r_i.
    double link_term(const Vec3& r_i, const Vec3& r_next, double& spring_out,
                     double& potential_out) const;

    ActionKind kind_;
    Potential potential_;
    Discretization disc_;
};

}  // namespace pimc

#endif
