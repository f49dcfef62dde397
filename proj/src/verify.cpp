#include "shakn/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <json.hpp>

#include "shakn/errors.hpp"

namespace shakn {

namespace {

using cd = std::complex<double>;

void require_common_grid(const SnapshotTriple& s) {
    if (!(s.prev.grid == s.mid.grid) || !(s.mid.grid == s.next.grid))
        throw validation_error("snapshots must share one grid");
    const double d1 = s.mid.t - s.prev.t;
    const double d2 = s.next.t - s.mid.t;
    if (!(d1 > 0.0) || !(d2 > 0.0) || std::abs(d1 - d2) > 1e-9 * std::max(1.0, std::abs(s.mid.t)))
        throw validation_error("snapshots must be time-centered at t with equal spacing");
}

std::vector<bool> density_mask(const PacketSnapshot& snap, double rel_floor) {
    const auto& rho = snap.rho;
    const double peak = *std::max_element(rho.begin(), rho.end());
    std::vector<bool> mask(rho.size(), false);
    for (size_t i = 1; i + 1 < rho.size(); ++i)
        mask[i] = rho[i] > rel_floor * peak;
    return mask;
}

void reduce(const std::vector<double>& abs_res, const std::vector<bool>& mask,
            ResidualReport& rep) {
    double linf = 0.0, sumsq = 0.0;
    size_t count = 0;
    for (size_t i = 0; i < abs_res.size(); ++i) {
        if (!mask[i]) continue;
        linf = std::max(linf, abs_res[i]);
        sumsq += abs_res[i] * abs_res[i];
        ++count;
    }
    rep.linf = linf;
    rep.l2 = count ? std::sqrt(sumsq / static_cast<double>(count)) : 0.0;
    if (rep.ref_scale > 0.0) {
        rep.linf_rel = rep.linf / rep.ref_scale;
        rep.l2_rel = rep.l2 / rep.ref_scale;
    }
}

} // namespace

SnapshotTriple snapshot_triple(const TrajectoryState& initial, double t,
                               double dt_fd, double dt_ode, const Grid& g,
                               const ModelParams& p, const Potential& pot) {
    if (!(dt_fd > 0.0) || !(dt_ode > 0.0))
        throw validation_error("snapshot_triple: steps must be > 0");
    if (t - dt_fd < initial.t)
        throw validation_error("snapshot_triple: t - dt_fd precedes the initial time");
    IntegratorSpec spec{dt_ode, t - dt_fd, std::numeric_limits<int>::max()};
    TrajectoryState prev = integrate(initial, spec, p, pot).back();
    TrajectoryState mid = rk4_step(prev, dt_fd, p, pot);
    TrajectoryState next = rk4_step(mid, dt_fd, p, pot);
    SnapshotTriple out{assemble(prev, g, p), assemble(mid, g, p), assemble(next, g, p)};
    return out;
}

ResidualReport pde_residual(const SnapshotTriple& snaps, const ModelParams& p,
                            const Potential& pot) {
    require_common_grid(snaps);
    const PacketSnapshot& mid = snaps.mid;
    const Grid& g = mid.grid;
    const double dx = g.dx();
    const double dt = snaps.next.t - snaps.mid.t;
    const double q = mid.state.q;
    const double pav = p.m * mid.state.qdot;
    const size_t n = static_cast<size_t>(g.n);

    std::vector<double> abs_res(n, 0.0);
    std::vector<double> abs_dt(n, 0.0);
    for (size_t i = 1; i + 1 < n; ++i) {
        const double x = g.point(static_cast<int>(i));
        const cd dpsidt = (snaps.next.psi[i] - snaps.prev.psi[i]) / (2.0 * dt);
        const cd lap = (mid.psi[i + 1] - 2.0 * mid.psi[i] + mid.psi[i - 1]) / (dx * dx);
        const cd pop = cd(0.0, -p.hbar) * (mid.psi[i + 1] - mid.psi[i - 1]) / (2.0 * dx);
        const cd H = -p.hbar * p.hbar / (2.0 * p.m) * lap + pot.value(x, mid.t) * mid.psi[i]
                     + p.nu * ((x - q) * (p.c * pop + (1.0 - p.c) * pav * mid.psi[i])
                               - cd(0.0, 0.5 * p.hbar * p.c) * mid.psi[i]);
        const cd r = cd(0.0, p.hbar) * dpsidt - H;
        abs_res[i] = std::abs(r);
        abs_dt[i] = std::abs(cd(0.0, p.hbar) * dpsidt);
    }

    ResidualReport rep;
    rep.name = "pde";
    rep.grid_dx = dx;
    rep.dt_fd = dt;
    rep.mask = "rho > 1e-8 max(rho), interior";
    const auto mask = density_mask(mid, 1e-8);
    for (size_t i = 0; i < n; ++i)
        if (mask[i]) rep.ref_scale = std::max(rep.ref_scale, abs_dt[i]);
    reduce(abs_res, mask, rep);
    return rep;
}

ContinuityReports continuity_residuals(const SnapshotTriple& snaps,
                                       const ModelParams& p) {
    require_common_grid(snaps);
    const PacketSnapshot& mid = snaps.mid;
    const Grid& g = mid.grid;
    const double dx = g.dx();
    const double dt = snaps.next.t - snaps.mid.t;
    const double q = mid.state.q;
    const double nc = p.nu * p.c;
    const size_t n = static_cast<size_t>(g.n);

    // pointwise products, then one central-difference operator for each flux
    std::vector<double> flux_theta(n), flux_v(n), flux_drift(n);
    for (size_t i = 0; i < n; ++i) {
        const double x = g.point(static_cast<int>(i));
        flux_theta[i] = mid.rho[i] * mid.theta_qnc[i];
        flux_v[i] = mid.rho[i] * mid.v_qu[i];
        flux_drift[i] = nc * mid.rho[i] * (x - q);
    }

    std::vector<double> r_cons(n, 0.0), r_src(n, 0.0), gap(n, 0.0), abs_dt(n, 0.0);
    for (size_t i = 1; i + 1 < n; ++i) {
        const double x = g.point(static_cast<int>(i));
        const double drho_dt = (snaps.next.rho[i] - snaps.prev.rho[i]) / (2.0 * dt);
        const double drho_dx = (mid.rho[i + 1] - mid.rho[i - 1]) / (2.0 * dx);
        const double div_theta = (flux_theta[i + 1] - flux_theta[i - 1]) / (2.0 * dx);
        const double div_v = (flux_v[i + 1] - flux_v[i - 1]) / (2.0 * dx);
        const double div_drift = (flux_drift[i + 1] - flux_drift[i - 1]) / (2.0 * dx);
        r_cons[i] = drho_dt + div_theta;
        r_src[i] = drho_dt + div_v + nc * mid.rho[i] + nc * (x - q) * drho_dx;
        // the two forms differ by the product-rule identity for the drift flux
        gap[i] = (r_src[i] - r_cons[i]) - (nc * mid.rho[i] + nc * (x - q) * drho_dx - div_drift);
        abs_dt[i] = std::abs(drho_dt);
    }

    ContinuityReports out;
    const auto mask = density_mask(mid, 1e-8);
    double ref = 0.0;
    for (size_t i = 0; i < n; ++i)
        if (mask[i]) ref = std::max(ref, abs_dt[i]);

    auto fill = [&](ResidualReport& rep, const std::string& name, std::vector<double>& r) {
        for (double& v : r) v = std::abs(v);
        rep.name = name;
        rep.grid_dx = dx;
        rep.dt_fd = dt;
        rep.mask = "rho > 1e-8 max(rho), interior";
        rep.ref_scale = ref;
        reduce(r, mask, rep);
    };
    fill(out.conservative, "continuity_conservative", r_cons);
    fill(out.source, "continuity_source", r_src);
    for (size_t i = 0; i < n; ++i)
        if (mask[i]) out.identity_gap_linf = std::max(out.identity_gap_linf, std::abs(gap[i]));
    return out;
}

MomentReport moments(const PacketSnapshot& snap, const ModelParams& p) {
    MomentReport rep;
    rep.coverage_warning = !grid_covers(snap.grid, snap.state, 8.0);
    const double dx = snap.grid.dx();
    const size_t n = snap.rho.size();
    std::vector<double> f(n);

    rep.norm = trapezoid(snap.rho, dx);
    for (size_t i = 0; i < n; ++i)
        f[i] = snap.rho[i] * snap.grid.point(static_cast<int>(i));
    rep.mean_x = trapezoid(f, dx) / rep.norm;
    for (size_t i = 0; i < n; ++i) {
        const double d = snap.grid.point(static_cast<int>(i)) - rep.mean_x;
        f[i] = snap.rho[i] * d * d;
    }
    rep.var_x = trapezoid(f, dx) / rep.norm;
    for (size_t i = 0; i < n; ++i)
        f[i] = snap.rho[i] * snap.v_qu[i];
    rep.mean_v_qu = trapezoid(f, dx) / rep.norm;
    for (size_t i = 0; i < n; ++i)
        f[i] = snap.rho[i] * snap.theta_qnc[i];
    rep.mean_theta_qnc = trapezoid(f, dx) / rep.norm;
    rep.mean_p = p.m * rep.mean_v_qu;
    return rep;
}

std::vector<BohmSample> bohmian_trajectory(double x_start, double t_end, double dt,
                                           const std::vector<TrajectoryState>& series,
                                           const ModelParams&) {
    if (!std::isfinite(x_start))
        throw validation_error("bohmian_trajectory: x_start must be finite");
    if (!(dt > 0.0))
        throw validation_error("bohmian_trajectory: dt must be > 0");
    TrajectoryInterpolant interp(series);
    if (t_end > interp.t_max() + 1e-12 * std::max(1.0, std::abs(t_end)))
        throw numerical_error("bohmian_trajectory: t_end outside trajectory range");

    auto theta = [&](double x, double t) {
        const auto v = interp.eval(t);
        return (v.adot / v.a) * (x - v.q) + v.qdot;
    };

    const double t0 = interp.t_min();
    const long n = static_cast<long>(std::ceil((t_end - t0) / dt - 1e-9));
    std::vector<BohmSample> out;
    out.reserve(static_cast<size_t>(n) + 1);
    double x = x_start, t = t0;
    out.push_back({t, x});
    for (long i = 0; i < n; ++i) {
        const double h = std::min(dt, t_end - t);
        const double k1 = theta(x, t);
        const double k2 = theta(x + 0.5 * h * k1, t + 0.5 * h);
        const double k3 = theta(x + 0.5 * h * k2, t + 0.5 * h);
        const double k4 = theta(x + h * k3, t + h);
        x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
        out.push_back({t, x});
    }
    return out;
}

ResidualReport newton_law_residual(const std::vector<BohmSample>& bohm,
                                   const std::vector<TrajectoryState>& series,
                                   const ModelParams& p, const Potential& pot) {
    if (bohm.size() < 3)
        throw validation_error("newton_law_residual: need at least 3 samples");
    TrajectoryInterpolant interp(series);
    const double dt = bohm[1].t - bohm[0].t;
    const double nc = p.nu * p.c;

    std::vector<double> abs_res(bohm.size(), 0.0);
    std::vector<bool> mask(bohm.size(), false);
    double ref = 0.0;
    for (size_t i = 1; i + 1 < bohm.size(); ++i) {
        const double t = bohm[i].t;
        const double x = bohm[i].x;
        const auto v = interp.eval(t);
        const double xdd = (bohm[i + 1].x - 2.0 * bohm[i].x + bohm[i - 1].x) / (dt * dt);
        // v_qu - theta_qnc = -nu c (x - q); <theta_qnc> = qdot
        const double friction = p.nu * p.m * (p.c * (-nc * (x - v.q)) + v.qdot);
        const double dVqu = -p.hbar * p.hbar / (4.0 * p.m * std::pow(v.a, 4)) * (x - v.q);
        const double r = p.m * xdd + friction + pot.d1(x, t) + dVqu;
        abs_res[i] = std::abs(r);
        mask[i] = true;
        ref = std::max({ref, std::abs(p.m * xdd), std::abs(pot.d1(x, t) + dVqu)});
    }

    ResidualReport rep;
    rep.name = "newton_law";
    rep.grid_dx = 0.0;
    rep.dt_fd = dt;
    rep.mask = "interior time samples";
    rep.ref_scale = ref;
    reduce(abs_res, mask, rep);
    return rep;
}

std::string reports_to_json(const std::vector<ResidualReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        arr.push_back({{"name", r.name},
                       {"linf", r.linf},
                       {"l2", r.l2},
                       {"grid_dx", r.grid_dx},
                       {"dt_fd", r.dt_fd},
                       {"mask", r.mask},
                       {"ref_scale", r.ref_scale},
                       {"linf_rel", r.linf_rel},
                       {"l2_rel", r.l2_rel}});
    }
    return arr.dump(2);
}

} // namespace shakn
