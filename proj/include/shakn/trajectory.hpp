#ifndef SHAKN_TRAJECTORY_HPP
#define SHAKN_TRAJECTORY_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "shakn/model.hpp"

namespace shakn {

/// Classical center q, packet width a, and accumulated action phase S0
/// at time t. The width stays positive for any accepted state.
struct TrajectoryState {
    double t = 0.0;
    double q = 0.0;
    double qdot = 0.0;
    double a = 1.0;
    double adot = 0.0;
    double S0 = 0.0;
};

/// Time derivatives of (q, qdot, a, adot, S0).
struct TrajectoryDerivs {
    double qdot, qddot, adot, addot, S0dot;
};

/// Right-hand side of the coupled center/width/action system:
///   qddot = -nu qdot - V'(q)/m
///   addot = hbar^2/(4 m^2 a^3) - a (V''(q)/m - nu^2 c^2)
///   S0dot = (1/hbar) [ m qdot^2/2 - V(q) - hbar^2/(4 m a^2) ]
/// Throws numerical_error on a <= 0.
TrajectoryDerivs rhs(const TrajectoryState& s, const ModelParams& p,
                     const Potential& pot);

struct IntegratorSpec {
    double dt = 1e-3;      // fixed RK4 step
    double t_end = 1.0;
    int record_every = 1;  // output decimation
};

/// Builds the initial state; S0 defaults to m v0 x0 / hbar unless overridden.
TrajectoryState initial_state(double x0, double v0, double a0, double b0,
                              const ModelParams& p);
TrajectoryState initial_state(double x0, double v0, double a0, double b0,
                              const ModelParams& p, double S0);

/// Fixed-step classical RK4. Records the initial state, every
/// record_every-th step, and the final state. The action phase is carried as
/// a fifth component inside the same integrator. Throws numerical_error with
/// the offending time on width collapse or non-finite state.
std::vector<TrajectoryState> integrate(const TrajectoryState& initial,
                                       const IntegratorSpec& spec,
                                       const ModelParams& p,
                                       const Potential& pot);

/// One RK4 step of size dt.
TrajectoryState rk4_step(const TrajectoryState& s, double dt,
                         const ModelParams& p, const Potential& pot);

/// Width-regime advisory for free/harmonic potentials: sign of the effective
/// restoring coefficient omega^2 - nu^2 c^2 and, when positive, the
/// equilibrium width a* = [hbar^2 / (4 m^2 (omega^2 - nu^2 c^2))]^(1/4).
struct StabilityAdvisory {
    enum class Regime { bounded, marginal, unbounded };
    double omega_sq_eff = 0.0;  // omega^2 - nu^2 c^2
    Regime regime = Regime::marginal;
    double a_star = 0.0;        // valid only when bounded
    std::string message;
};

StabilityAdvisory stability_guard(const ModelParams& p, const Potential& pot);

/// Cubic-Hermite dense output over a recorded trajectory series.
/// q(t) interpolated from (q, qdot) node data, a(t) from (a, adot);
/// qdot(t) and adot(t) from the Hermite derivative.
class TrajectoryInterpolant {
public:
    explicit TrajectoryInterpolant(std::vector<TrajectoryState> series);
    struct Value { double q, qdot, a, adot; };
    Value eval(double t) const;  // throws numerical_error outside the range
    double t_min() const { return series_.front().t; }
    double t_max() const { return series_.back().t; }
private:
    std::vector<TrajectoryState> series_;
};

/// CSV with header `t,q,qdot,a,adot,S0`, full double precision.
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryState>& series);

} // namespace shakn

#endif
