#include "shakn/reference.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "shakn/errors.hpp"
#include "shakn/io.hpp"

namespace shakn {

namespace {
using cd = std::complex<double>;

// Thomas algorithm; the matrices here are diagonally dominant.
void solve_tridiagonal(const std::vector<cd>& lower, std::vector<cd>& diag,
                       const std::vector<cd>& upper, std::vector<cd>& rhs,
                       std::vector<cd>& out) {
    const size_t n = diag.size();
    out.resize(n);
    for (size_t i = 1; i < n; ++i) {
        const cd w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    out[n - 1] = rhs[n - 1] / diag[n - 1];
    for (size_t i = n - 1; i-- > 0;)
        out[i] = (rhs[i] - upper[i] * out[i + 1]) / diag[i];
}
} // namespace

ReferenceSolver::ReferenceSolver(const SolverSpec& spec, const ModelParams& p,
                                 const Potential& pot)
    : spec_(spec), p_(p), pot_(pot), x_(spec.grid.points()) {
    if (!(spec.dt > 0.0))
        throw validation_error("SolverSpec.dt must be > 0");
    V_.resize(x_.size());
    for (size_t i = 0; i < x_.size(); ++i)
        V_[i] = pot_.value(x_[i], 0.0);
    const size_t n = x_.size();
    diag_.resize(n);
    lower_.resize(n);
    upper_.resize(n);
    rhs_.resize(n);
    work_.resize(n);
}

void ReferenceSolver::set_state(std::vector<cd> psi0, double t) {
    if (psi0.size() != x_.size())
        throw validation_error("psi size does not match the grid");
    psi_ = std::move(psi0);
    t_ = t;
    const MeanSample m = means();
    if (std::abs(m.norm - 1.0) > 1e-6)
        throw validation_error("initial state not normalized: norm = " + format_g17(m.norm));
    check_boundary();
}

MeanSample ReferenceSolver::means() const {
    const double dx = spec_.grid.dx();
    const size_t n = psi_.size();
    double nrm = 0.0, mx = 0.0, mp = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        const double rho = std::norm(psi_[i]);
        nrm += w * rho;
        mx += w * rho * x_[i];
        if (i > 0 && i + 1 < n) {
            const cd dpsi = (psi_[i + 1] - psi_[i - 1]) / (2.0 * dx);
            mp += w * std::real(std::conj(psi_[i]) * cd(0.0, -p_.hbar) * dpsi);
        }
    }
    nrm *= dx;
    mx *= dx / nrm;
    mp *= dx / nrm;
    double vx = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        const double d = x_[i] - mx;
        vx += w * std::norm(psi_[i]) * d * d;
    }
    vx *= dx / nrm;
    return MeanSample{t_, nrm, mx, mp, vx};
}

void ReferenceSolver::check_boundary() const {
    double peak = 0.0;
    for (const cd& v : psi_)
        peak = std::max(peak, std::abs(v));
    const double edge = std::max(std::abs(psi_.front()), std::abs(psi_.back()));
    if (edge > spec_.boundary_tol * peak)
        throw numerical_error("boundary leakage at t = " + format_g17(t_) +
                              ": |psi| at the edge is " + format_g17(edge / peak) +
                              " of the peak; enlarge the grid");
}

void ReferenceSolver::cayley_kinetic(double tau) {
    const size_t n = psi_.size();
    const double dx = spec_.grid.dx();
    const double kin = p_.hbar * p_.hbar / (2.0 * p_.m * dx * dx);
    const cd r = cd(0.0, tau / (2.0 * p_.hbar));

    for (size_t i = 0; i < n; ++i) {
        const double h0 = kin * 2.0 + V_[i];
        diag_[i] = 1.0 + r * h0;
        lower_[i] = -r * -kin;  // = r*kin; kept explicit below
        upper_[i] = r * -kin;
        rhs_[i] = (1.0 - r * h0) * psi_[i];
        if (i > 0) rhs_[i] += r * kin * psi_[i - 1];
        if (i + 1 < n) rhs_[i] += r * kin * psi_[i + 1];
    }
    for (size_t i = 0; i < n; ++i) {
        lower_[i] = -r * kin * -1.0;
        upper_[i] = -r * kin * -1.0;
    }
    // off-diagonal of (1 + r H0) is r * (-kin)
    for (size_t i = 0; i < n; ++i) {
        lower_[i] = r * -kin;
        upper_[i] = r * -kin;
    }
    solve_tridiagonal(lower_, diag_, upper_, rhs_, work_);
    psi_.swap(work_);
    psi_.front() = 0.0;
    psi_.back() = 0.0;
}

void ReferenceSolver::cayley_friction(double tau, double q, double pav) {
    // W = nu c ((x-q) p + p (x-q))/2 + nu (1-c)(x-q)<p>, central-difference p.
    // Hermitian tridiagonal: row i has off-diagonal  -i hbar nu c (x_i + x_{i+1} - 2q)/(8 dx)
    // kept up to the Cayley factor, and a real diagonal.
    const size_t n = psi_.size();
    const double dx = spec_.grid.dx();
    const double nc = p_.nu * p_.c;
    const cd r = cd(0.0, tau / (2.0 * p_.hbar));
    const cd co = cd(0.0, -p_.hbar) * nc / (4.0 * dx);

    for (size_t i = 0; i < n; ++i) {
        const double dg = p_.nu * (1.0 - p_.c) * (x_[i] - q) * pav;
        diag_[i] = 1.0 + r * dg;
        rhs_[i] = (1.0 - r * dg) * psi_[i];
        if (i + 1 < n) {
            const cd up = co * (x_[i] + x_[i + 1] - 2.0 * q);
            upper_[i] = r * up;
            rhs_[i] -= r * up * psi_[i + 1];
        } else {
            upper_[i] = 0.0;
        }
        if (i > 0) {
            const cd dn = -co * (x_[i] + x_[i - 1] - 2.0 * q);
            lower_[i] = r * dn;
            rhs_[i] -= r * dn * psi_[i - 1];
        } else {
            lower_[i] = 0.0;
        }
    }
    solve_tridiagonal(lower_, diag_, upper_, rhs_, work_);
    psi_.swap(work_);
    psi_.front() = 0.0;
    psi_.back() = 0.0;
}

void ReferenceSolver::step() {
    const double dt = spec_.dt;
    const MeanSample m0 = means();

    auto strang = [&](double tau, double q, double pav) {
        if (p_.nu > 0.0) cayley_friction(tau / 2.0, q, pav);
        cayley_kinetic(tau);
        if (p_.nu > 0.0) cayley_friction(tau / 2.0, q, pav);
    };

    // predictor: half step with moments frozen at t, then refresh them
    const std::vector<cd> saved = psi_;
    strang(dt / 2.0, m0.mean_x, m0.mean_p);
    t_ += dt / 2.0;
    const MeanSample mh = means();
    psi_ = saved;
    t_ -= dt / 2.0;

    strang(dt, mh.mean_x, mh.mean_p);
    t_ += dt;
    check_boundary();
}

EvolveResult ReferenceSolver::evolve(std::vector<cd> psi0,
                                     const std::vector<double>& snapshot_times) {
    set_state(std::move(psi0), 0.0);
    EvolveResult out;
    const long n_steps = static_cast<long>(std::llround(spec_.t_end / spec_.dt));
    std::vector<bool> captured(snapshot_times.size(), false);

    auto capture = [&]() {
        for (size_t k = 0; k < snapshot_times.size(); ++k) {
            if (!captured[k] && t_ >= snapshot_times[k] - 0.5 * spec_.dt) {
                out.snapshots.emplace_back(t_, psi_);
                captured[k] = true;
            }
        }
    };

    out.means.push_back(means());
    capture();
    for (long i = 1; i <= n_steps; ++i) {
        step();
        if (i % spec_.record_every == 0 || i == n_steps)
            out.means.push_back(means());
        capture();
    }
    out.psi = psi_;
    return out;
}

std::vector<cd> reference_step(const std::vector<cd>& psi, double t,
                               const SolverSpec& spec, const ModelParams& p,
                               const Potential& pot) {
    ReferenceSolver solver(spec, p, pot);
    solver.set_state(psi, t);
    solver.step();
    return solver.psi();
}

void write_mean_series_csv(std::ostream& os, const std::vector<MeanSample>& means) {
    os << "t,norm,mean_x,mean_p,var_x\n";
    for (const auto& m : means) {
        os << format_g17(m.t) << ',' << format_g17(m.norm) << ',' << format_g17(m.mean_x)
           << ',' << format_g17(m.mean_p) << ',' << format_g17(m.var_x) << '\n';
    }
}

} // namespace shakn
