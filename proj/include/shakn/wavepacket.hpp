#ifndef SHAKN_WAVEPACKET_HPP
#define SHAKN_WAVEPACKET_HPP

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "shakn/model.hpp"
#include "shakn/trajectory.hpp"

namespace shakn {

/// Uniform spatial grid with at least 16 points.
struct Grid {
    double x_min = -8.0;
    double x_max = 8.0;
    int n = 1024;

    double dx() const { return (x_max - x_min) / (n - 1); }
    double point(int i) const { return x_min + i * dx(); }
    std::vector<double> points() const;
    bool operator==(const Grid& o) const {
        return x_min == o.x_min && x_max == o.x_max && n == o.n;
    }
};

Grid make_grid(double x_min, double x_max, int n);

/// Default grid rule: [q - k a, q + k a] around the packet (k = 8 keeps the
/// trapezoidal normalization error below 1e-10 at n = 1024).
Grid auto_grid(const TrajectoryState& s, int n = 1024, double widths = 8.0);

/// Grid snapshot of the closed-form packet: complex psi together with every
/// derived Bohmian field. Immutable after assembly.
struct PacketSnapshot {
    Grid grid;
    double t = 0.0;
    TrajectoryState state;  // the trajectory data the packet was built from
    ModelParams params;
    std::vector<std::complex<double>> psi;
    std::vector<double> rho;        // probability density
    std::vector<double> S;          // phase (dimensionless)
    std::vector<double> v_qu;       // quantum velocity
    std::vector<double> theta_qnc;  // non-conservative quantum velocity
    std::vector<double> V_qu;       // Bohm quantum potential
    std::vector<std::string> warnings;
};

/// True when the grid spans at least `widths` packet widths on both sides of q.
bool grid_covers(const Grid& g, const TrajectoryState& s, double widths);

/// Gaussian density [2 pi a^2]^(-1/2) exp(-(x-q)^2 / 2a^2) on the grid.
/// Appends a coverage warning when the grid is narrower than 4 widths.
std::vector<double> density(const TrajectoryState& s, const Grid& g,
                            std::vector<std::string>* warnings = nullptr);

/// Quadratic phase S0 + (m qdot/hbar)(x-q) + (m/2hbar)(adot/a - nu c)(x-q)^2.
std::vector<double> phase(const TrajectoryState& s, const Grid& g,
                          const ModelParams& p);

/// Bohm quantum potential hbar^2/(4 m a^2) - (hbar^2 / 8 m a^4)(x-q)^2.
std::vector<double> quantum_potential(const TrajectoryState& s, const Grid& g,
                                      const ModelParams& p);

/// Assembles psi = sqrt(rho) exp(i S) and fills all derived fields.
/// Warns when the grid does not cover [q - 8a, q + 8a].
PacketSnapshot assemble(const TrajectoryState& s, const Grid& g,
                        const ModelParams& p);

/// Trapezoidal integral of f over the grid.
double trapezoid(const std::vector<double>& f, double dx);

/// CSV with header `x,re_psi,im_psi,rho,S,v_qu,theta_qnc,V_qu`.
void write_snapshot_csv(std::ostream& os, const PacketSnapshot& snap);

/// JSON object {params, state, grid, arrays}.
std::string snapshot_to_json(const PacketSnapshot& snap);

} // namespace shakn

#endif
