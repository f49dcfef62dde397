#ifndef SHAKN_VERIFY_HPP
#define SHAKN_VERIFY_HPP

#include <string>
#include <utility>
#include <vector>

#include "shakn/model.hpp"
#include "shakn/trajectory.hpp"
#include "shakn/wavepacket.hpp"

namespace shakn {

/// Max/RMS residual of one check over the masked interior region, raw and
/// relative to the reference scale of the equation being tested.
struct ResidualReport {
    std::string name;
    double linf = 0.0;
    double l2 = 0.0;        // root-mean-square over the mask
    double grid_dx = 0.0;
    double dt_fd = 0.0;     // finite-difference time step
    std::string mask;       // interior-region specification
    double ref_scale = 0.0; // max |i hbar dpsi/dt| over the mask
    double linf_rel = 0.0;
    double l2_rel = 0.0;
};

/// Three packet snapshots at t - dt, t, t + dt on one grid, for central
/// time differences.
struct SnapshotTriple {
    PacketSnapshot prev, mid, next;
};

/// Integrates to time t and assembles snapshots at t - dt_fd, t, t + dt_fd.
SnapshotTriple snapshot_triple(const TrajectoryState& initial, double t,
                               double dt_fd, double dt_ode, const Grid& g,
                               const ModelParams& p, const Potential& pot);

/// Residual of the dissipative equation itself on the assembled packet:
/// i hbar dpsi/dt + (hbar^2/2m) d2psi/dx2 - [V + nu((x-q)(c p + (1-c)<p>) - i hbar c/2)] psi
/// with central differences in t and x, <p> = m qdot, and the residual
/// evaluated where rho > 1e-8 max(rho).
ResidualReport pde_residual(const SnapshotTriple& snaps, const ModelParams& p,
                            const Potential& pot);

struct ContinuityReports {
    ResidualReport conservative;   // d rho/dt + d(rho theta_qnc)/dx
    ResidualReport source;         // d rho/dt + d(rho v_qu)/dx + nu c rho + nu c (x-q) d rho/dx
    /// Max deviation of (source - conservative) from the discrete product-rule
    /// identity relating the two forms; zero up to round-off by construction.
    double identity_gap_linf = 0.0;
};

ContinuityReports continuity_residuals(const SnapshotTriple& snaps,
                                       const ModelParams& p);

/// Trapezoidal moments of a snapshot. mean_p is m <v_qu> (odd-integrand form).
struct MomentReport {
    double norm = 0.0;
    double mean_x = 0.0;
    double var_x = 0.0;
    double mean_p = 0.0;
    double mean_v_qu = 0.0;
    double mean_theta_qnc = 0.0;
    bool coverage_warning = false;
};

MomentReport moments(const PacketSnapshot& snap, const ModelParams& p);

/// One Bohmian trajectory sample.
struct BohmSample {
    double t;
    double x;
};

/// RK4 integration of dx/dt = theta_qnc(x, t) = (adot/a)(x - q) + qdot, with
/// trajectory data from cubic-Hermite dense output over the recorded series.
/// Throws when [0, t_end] leaves the series range.
std::vector<BohmSample> bohmian_trajectory(double x_start, double t_end, double dt,
                                           const std::vector<TrajectoryState>& series,
                                           const ModelParams& p);

/// Residual of the quantum Newton law along a Bohmian trajectory:
/// m xddot + nu m [c (v_qu - theta_qnc) + <theta_qnc>] + d(V + V_qu)/dx,
/// with central time differences for xddot and closed-form fields.
ResidualReport newton_law_residual(const std::vector<BohmSample>& bohm,
                                   const std::vector<TrajectoryState>& series,
                                   const ModelParams& p, const Potential& pot);

/// JSON array of {name, linf, l2, grid_dx, dt_fd, ...}.
std::string reports_to_json(const std::vector<ResidualReport>& reports);

} // namespace shakn

#endif
