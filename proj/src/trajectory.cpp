#include "shakn/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "shakn/errors.hpp"
#include "shakn/io.hpp"

namespace shakn {

TrajectoryDerivs rhs(const TrajectoryState& s, const ModelParams& p,
                     const Potential& pot) {
    if (!(s.a > 0.0))
        throw numerical_error("width collapse: a = " + std::to_string(s.a) +
                              " at t = " + std::to_string(s.t));
    const double nc = p.nu * p.c;
    TrajectoryDerivs d;
    d.qdot = s.qdot;
    d.qddot = -p.nu * s.qdot - pot.d1(s.q, s.t) / p.m;
    d.adot = s.adot;
    d.addot = p.hbar * p.hbar / (4.0 * p.m * p.m * s.a * s.a * s.a)
              - s.a * (pot.d2(s.q, s.t) / p.m - nc * nc);
    d.S0dot = (0.5 * p.m * s.qdot * s.qdot - pot.value(s.q, s.t)
               - p.hbar * p.hbar / (4.0 * p.m * s.a * s.a)) / p.hbar;
    return d;
}

TrajectoryState initial_state(double x0, double v0, double a0, double b0,
                              const ModelParams& p) {
    return initial_state(x0, v0, a0, b0, p, p.m * v0 * x0 / p.hbar);
}

TrajectoryState initial_state(double x0, double v0, double a0, double b0,
                              const ModelParams& p, double S0) {
    if (!std::isfinite(x0) || !std::isfinite(v0) || !std::isfinite(b0) || !std::isfinite(S0))
        throw validation_error("initial_state: non-finite initial condition");
    if (!std::isfinite(a0) || a0 <= 0.0)
        throw validation_error("initial_state: a0 must be finite and > 0");
    return TrajectoryState{0.0, x0, v0, a0, b0, S0};
}

namespace {

TrajectoryState advance(const TrajectoryState& s, double dt,
                        const TrajectoryDerivs& d) {
    return TrajectoryState{s.t + dt,
                           s.q + dt * d.qdot,
                           s.qdot + dt * d.qddot,
                           s.a + dt * d.adot,
                           s.adot + dt * d.addot,
                           s.S0 + dt * d.S0dot};
}

void check_state(const TrajectoryState& s) {
    if (!(s.a > 0.0))
        throw numerical_error("width collapse at t = " + std::to_string(s.t) +
                              " (a = " + std::to_string(s.a) + "); reduce dt");
    if (!std::isfinite(s.q) || !std::isfinite(s.qdot) || !std::isfinite(s.a) ||
        !std::isfinite(s.adot) || !std::isfinite(s.S0))
        throw numerical_error("trajectory diverged at t = " + std::to_string(s.t));
}

} // namespace

TrajectoryState rk4_step(const TrajectoryState& s, double dt,
                         const ModelParams& p, const Potential& pot) {
    const TrajectoryDerivs k1 = rhs(s, p, pot);
    const TrajectoryDerivs k2 = rhs(advance(s, 0.5 * dt, k1), p, pot);
    const TrajectoryDerivs k3 = rhs(advance(s, 0.5 * dt, k2), p, pot);
    const TrajectoryDerivs k4 = rhs(advance(s, dt, k3), p, pot);
    TrajectoryState out;
    out.t = s.t + dt;
    out.q = s.q + dt / 6.0 * (k1.qdot + 2.0 * k2.qdot + 2.0 * k3.qdot + k4.qdot);
    out.qdot = s.qdot + dt / 6.0 * (k1.qddot + 2.0 * k2.qddot + 2.0 * k3.qddot + k4.qddot);
    out.a = s.a + dt / 6.0 * (k1.adot + 2.0 * k2.adot + 2.0 * k3.adot + k4.adot);
    out.adot = s.adot + dt / 6.0 * (k1.addot + 2.0 * k2.addot + 2.0 * k3.addot + k4.addot);
    out.S0 = s.S0 + dt / 6.0 * (k1.S0dot + 2.0 * k2.S0dot + 2.0 * k3.S0dot + k4.S0dot);
    return out;
}

std::vector<TrajectoryState> integrate(const TrajectoryState& initial,
                                       const IntegratorSpec& spec,
                                       const ModelParams& p,
                                       const Potential& pot) {
    if (!(spec.dt > 0.0))
        throw validation_error("IntegratorSpec.dt must be > 0");
    if (spec.t_end < initial.t)
        throw validation_error("IntegratorSpec.t_end must be >= initial time");
    if (spec.record_every < 1)
        throw validation_error("IntegratorSpec.record_every must be >= 1");
    check_state(initial);

    const double span = spec.t_end - initial.t;
    const long n_full = static_cast<long>(std::floor(span / spec.dt + 1e-9));
    const double rem = span - static_cast<double>(n_full) * spec.dt;

    std::vector<TrajectoryState> out;
    out.reserve(static_cast<size_t>(n_full / spec.record_every) + 3);
    TrajectoryState s = initial;
    out.push_back(s);
    for (long i = 1; i <= n_full; ++i) {
        s = rk4_step(s, spec.dt, p, pot);
        check_state(s);
        if (i % spec.record_every == 0)
            out.push_back(s);
    }
    if (rem > 1e-12 * std::max(1.0, std::abs(spec.t_end))) {
        s = rk4_step(s, rem, p, pot);
        check_state(s);
    }
    s.t = spec.t_end; // pin the endpoint against accumulated round-off
    if (std::abs(out.back().t - s.t) < 1e-12 * std::max(1.0, std::abs(spec.t_end)))
        out.back() = s;
    else
        out.push_back(s);
    return out;
}

StabilityAdvisory stability_guard(const ModelParams& p, const Potential& pot) {
    if (!pot.quadratic() || pot.name() == "linear")
        throw validation_error("stability_guard expects a free or harmonic potential");
    const double omega_sq = pot.d2(0.0, 0.0) / p.m;
    const double nc = p.nu * p.c;
    StabilityAdvisory adv;
    adv.omega_sq_eff = omega_sq - nc * nc;
    if (adv.omega_sq_eff > 0.0) {
        adv.regime = StabilityAdvisory::Regime::bounded;
        adv.a_star = std::pow(p.hbar * p.hbar / (4.0 * p.m * p.m * adv.omega_sq_eff), 0.25);
        adv.message = "bounded width; equilibrium a* = " + format_g17(adv.a_star);
    } else if (adv.omega_sq_eff == 0.0) {
        adv.regime = StabilityAdvisory::Regime::marginal;
        adv.message = "zero restoring coefficient: width growth unbounded";
    } else {
        adv.regime = StabilityAdvisory::Regime::unbounded;
        adv.message = "negative restoring coefficient: super-ballistic width growth";
    }
    return adv;
}

TrajectoryInterpolant::TrajectoryInterpolant(std::vector<TrajectoryState> series)
    : series_(std::move(series)) {
    if (series_.size() < 2)
        throw validation_error("TrajectoryInterpolant needs at least 2 nodes");
    for (size_t i = 1; i < series_.size(); ++i)
        if (!(series_[i].t > series_[i - 1].t))
            throw validation_error("TrajectoryInterpolant: series not strictly increasing in t");
}

TrajectoryInterpolant::Value TrajectoryInterpolant::eval(double t) const {
    const double eps = 1e-12 * std::max(1.0, std::abs(t_max()));
    if (t < t_min() - eps || t > t_max() + eps)
        throw numerical_error("time " + std::to_string(t) +
                              " outside trajectory range [" + std::to_string(t_min()) +
                              ", " + std::to_string(t_max()) + "]");
    t = std::clamp(t, t_min(), t_max());
    auto it = std::upper_bound(series_.begin(), series_.end(), t,
                               [](double v, const TrajectoryState& s) { return v < s.t; });
    size_t hi = std::min<size_t>(static_cast<size_t>(it - series_.begin()), series_.size() - 1);
    size_t lo = hi - 1;
    const TrajectoryState& A = series_[lo];
    const TrajectoryState& B = series_[hi];
    const double h = B.t - A.t;
    const double u = (t - A.t) / h;

    auto hermite = [&](double f0, double d0, double f1, double d1, double& f, double& df) {
        const double u2 = u * u, u3 = u2 * u;
        f = (2 * u3 - 3 * u2 + 1) * f0 + (u3 - 2 * u2 + u) * h * d0 +
            (-2 * u3 + 3 * u2) * f1 + (u3 - u2) * h * d1;
        df = ((6 * u2 - 6 * u) * f0 + (3 * u2 - 4 * u + 1) * h * d0 +
              (-6 * u2 + 6 * u) * f1 + (3 * u2 - 2 * u) * h * d1) / h;
    };

    Value v{};
    hermite(A.q, A.qdot, B.q, B.qdot, v.q, v.qdot);
    hermite(A.a, A.adot, B.a, B.adot, v.a, v.adot);
    return v;
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryState>& series) {
    os << "t,q,qdot,a,adot,S0\n";
    for (const auto& s : series) {
        os << format_g17(s.t) << ',' << format_g17(s.q) << ',' << format_g17(s.qdot)
           << ',' << format_g17(s.a) << ',' << format_g17(s.adot) << ','
           << format_g17(s.S0) << '\n';
    }
}

} // namespace shakn
