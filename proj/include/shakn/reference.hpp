#ifndef SHAKN_REFERENCE_HPP
#define SHAKN_REFERENCE_HPP

#include <complex>
#include <iosfwd>
#include <vector>

#include "shakn/model.hpp"
#include "shakn/wavepacket.hpp"

namespace shakn {

/// Direct solver setup. Fixed-zero boundaries; a runtime monitor aborts when
/// |psi| at either boundary exceeds boundary_tol times the peak.
struct SolverSpec {
    Grid grid;
    double dt = 1e-4;
    double t_end = 1.0;
    int record_every = 1;
    double boundary_tol = 1e-10;
};

struct MeanSample {
    double t = 0.0;
    double norm = 0.0;
    double mean_x = 0.0;
    double mean_p = 0.0;
    double var_x = 0.0;
};

struct EvolveResult {
    std::vector<MeanSample> means;
    std::vector<std::complex<double>> psi;  // final state
    /// states captured at the requested snapshot times (nearest step)
    std::vector<std::pair<double, std::vector<std::complex<double>>>> snapshots;
};

/// Crank-Nicolson stepper for the nonlinear dissipative equation. The kinetic
/// + V part advances by a Cayley (implicit tridiagonal) step; the friction
/// term, symmetrized to nu c ((x-q)p + p(x-q))/2 + nu(1-c)(x-q)<p>, advances
/// by Cayley half-steps on each side (Strang). q = <x> and <p> are frozen at
/// half-step predictor values inside a step and recomputed from psi after it.
class ReferenceSolver {
public:
    ReferenceSolver(const SolverSpec& spec, const ModelParams& p, const Potential& pot);

    /// One step from t to t + dt. Throws numerical_error on boundary leakage.
    void step();

    /// Full evolution from psi0 (normalized within 1e-6).
    EvolveResult evolve(std::vector<std::complex<double>> psi0,
                        const std::vector<double>& snapshot_times = {});

    void set_state(std::vector<std::complex<double>> psi0, double t = 0.0);
    const std::vector<std::complex<double>>& psi() const { return psi_; }
    double t() const { return t_; }
    MeanSample means() const;

private:
    void cayley_kinetic(double tau);
    void cayley_friction(double tau, double q, double pav);
    void check_boundary() const;

    SolverSpec spec_;
    ModelParams p_;
    const Potential& pot_;
    std::vector<double> x_;
    std::vector<double> V_;
    std::vector<std::complex<double>> psi_;
    double t_ = 0.0;
    // tridiagonal workspace
    std::vector<std::complex<double>> diag_, lower_, upper_, rhs_, work_;
};

/// Single-step convenience wrapper.
std::vector<std::complex<double>> reference_step(
    const std::vector<std::complex<double>>& psi, double t, const SolverSpec& spec,
    const ModelParams& p, const Potential& pot);

/// CSV with header `t,norm,mean_x,mean_p,var_x`.
void write_mean_series_csv(std::ostream& os, const std::vector<MeanSample>& means);

} // namespace shakn

#endif
