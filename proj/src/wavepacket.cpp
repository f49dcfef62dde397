#include "shakn/wavepacket.hpp"

#include <cmath>
#include <ostream>

#include <json.hpp>

#include "shakn/errors.hpp"
#include "shakn/io.hpp"

namespace shakn {

std::vector<double> Grid::points() const {
    std::vector<double> x(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        x[static_cast<size_t>(i)] = point(i);
    return x;
}

Grid make_grid(double x_min, double x_max, int n) {
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || x_min >= x_max)
        throw validation_error("Grid: x_min must be < x_max and finite");
    if (n < 16)
        throw validation_error("Grid: n must be >= 16");
    return Grid{x_min, x_max, n};
}

Grid auto_grid(const TrajectoryState& s, int n, double widths) {
    return make_grid(s.q - widths * s.a, s.q + widths * s.a, n);
}

bool grid_covers(const Grid& g, const TrajectoryState& s, double widths) {
    return g.x_min <= s.q - widths * s.a && g.x_max >= s.q + widths * s.a;
}

std::vector<double> density(const TrajectoryState& s, const Grid& g,
                            std::vector<std::string>* warnings) {
    if (!(s.a > 0.0))
        throw numerical_error("density: width must be > 0");
    if (warnings && !grid_covers(g, s, 4.0))
        warnings->push_back("grid narrower than 4 widths around q: normalization unreliable");
    const double norm = 1.0 / std::sqrt(2.0 * M_PI * s.a * s.a);
    const double inv2a2 = 1.0 / (2.0 * s.a * s.a);
    std::vector<double> rho(static_cast<size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        const double d = g.point(i) - s.q;
        rho[static_cast<size_t>(i)] = norm * std::exp(-d * d * inv2a2);
    }
    return rho;
}

std::vector<double> phase(const TrajectoryState& s, const Grid& g,
                          const ModelParams& p) {
    const double lin = p.m * s.qdot / p.hbar;
    const double quad = 0.5 * p.m / p.hbar * (s.adot / s.a - p.nu * p.c);
    std::vector<double> S(static_cast<size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        const double d = g.point(i) - s.q;
        S[static_cast<size_t>(i)] = s.S0 + lin * d + quad * d * d;
    }
    return S;
}

std::vector<double> quantum_potential(const TrajectoryState& s, const Grid& g,
                                      const ModelParams& p) {
    if (!(s.a > 0.0))
        throw numerical_error("quantum_potential: width must be > 0");
    const double a2 = s.a * s.a;
    const double center = p.hbar * p.hbar / (4.0 * p.m * a2);
    const double curv = p.hbar * p.hbar / (8.0 * p.m * a2 * a2);
    std::vector<double> V(static_cast<size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        const double d = g.point(i) - s.q;
        V[static_cast<size_t>(i)] = center - curv * d * d;
    }
    return V;
}

PacketSnapshot assemble(const TrajectoryState& s, const Grid& g,
                        const ModelParams& p) {
    PacketSnapshot snap;
    snap.grid = g;
    snap.t = s.t;
    snap.state = s;
    snap.params = p;
    if (!grid_covers(g, s, 8.0))
        snap.warnings.push_back("grid does not cover [q - 8a, q + 8a]");
    snap.rho = density(s, g, &snap.warnings);
    snap.S = phase(s, g, p);
    snap.V_qu = quantum_potential(s, g, p);

    const size_t n = static_cast<size_t>(g.n);
    snap.psi.resize(n);
    snap.v_qu.resize(n);
    snap.theta_qnc.resize(n);
    const double gam = s.adot / s.a - p.nu * p.c;
    for (size_t i = 0; i < n; ++i) {
        const double d = g.point(static_cast<int>(i)) - s.q;
        snap.v_qu[i] = gam * d + s.qdot;
        snap.theta_qnc[i] = (s.adot / s.a) * d + s.qdot;
        snap.psi[i] = std::sqrt(snap.rho[i]) *
                      std::complex<double>(std::cos(snap.S[i]), std::sin(snap.S[i]));
    }
    return snap;
}

double trapezoid(const std::vector<double>& f, double dx) {
    if (f.size() < 2) return 0.0;
    double s = 0.5 * (f.front() + f.back());
    for (size_t i = 1; i + 1 < f.size(); ++i)
        s += f[i];
    return s * dx;
}

void write_snapshot_csv(std::ostream& os, const PacketSnapshot& snap) {
    os << "x,re_psi,im_psi,rho,S,v_qu,theta_qnc,V_qu\n";
    for (int i = 0; i < snap.grid.n; ++i) {
        const size_t j = static_cast<size_t>(i);
        os << format_g17(snap.grid.point(i)) << ',' << format_g17(snap.psi[j].real())
           << ',' << format_g17(snap.psi[j].imag()) << ',' << format_g17(snap.rho[j])
           << ',' << format_g17(snap.S[j]) << ',' << format_g17(snap.v_qu[j]) << ','
           << format_g17(snap.theta_qnc[j]) << ',' << format_g17(snap.V_qu[j]) << '\n';
    }
}

std::string snapshot_to_json(const PacketSnapshot& snap) {
    nlohmann::json j;
    j["params"] = {{"m", snap.params.m},
                   {"hbar", snap.params.hbar},
                   {"nu", snap.params.nu},
                   {"c", snap.params.c}};
    j["state"] = {{"t", snap.state.t},   {"q", snap.state.q},
                  {"qdot", snap.state.qdot}, {"a", snap.state.a},
                  {"adot", snap.state.adot}, {"s0", snap.state.S0}};
    j["grid"] = {{"x_min", snap.grid.x_min}, {"x_max", snap.grid.x_max}, {"n", snap.grid.n}};
    nlohmann::json arrays;
    std::vector<double> re(snap.psi.size()), im(snap.psi.size());
    for (size_t i = 0; i < snap.psi.size(); ++i) {
        re[i] = snap.psi[i].real();
        im[i] = snap.psi[i].imag();
    }
    arrays["re_psi"] = re;
    arrays["im_psi"] = im;
    arrays["rho"] = snap.rho;
    arrays["s"] = snap.S;
    arrays["v_qu"] = snap.v_qu;
    arrays["theta_qnc"] = snap.theta_qnc;
    arrays["quantum_potential"] = snap.V_qu;
    j["arrays"] = arrays;
    if (!snap.warnings.empty())
        j["warnings"] = snap.warnings;
    return j.dump(2);
}

} // namespace shakn
