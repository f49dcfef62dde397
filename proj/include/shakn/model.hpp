#ifndef SHAKN_MODEL_HPP
#define SHAKN_MODEL_HPP

#include <memory>
#include <string>
#include <vector>

namespace shakn {

/// Named model variants of the dissipative SHAKN equation, distinguished by
/// the dimensionless constant c.
enum class Preset { sussmann, hasse, albrecht, kostin };

double preset_c(Preset p);
Preset parse_preset(const std::string& name);
std::string preset_name(Preset p);

/// Physical parameters. Natural units (hbar = m = 1) by default; nu is the
/// friction coefficient, c in [0,1] selects the model variant.
struct ModelParams {
    double m = 1.0;
    double hbar = 1.0;
    double nu = 0.0;
    double c = 1.0;
};

/// Validates and returns ModelParams; throws validation_error naming the
/// offending field.
ModelParams make_params(double m, double hbar, double nu, double c);
ModelParams make_params(double m, double hbar, double nu, Preset preset);
ModelParams make_params(double m, double hbar, double nu, const std::string& preset);

/// Analytic potential contract: value plus exact first and second spatial
/// derivatives. Time-dependence is allowed by the signatures; the shipped
/// potentials are time-independent.
class Potential {
public:
    virtual ~Potential() = default;
    virtual double value(double x, double t) const = 0;
    virtual double d1(double x, double t) const = 0;
    virtual double d2(double x, double t) const = 0;
    /// True when d2 is constant in x (free, linear, harmonic). Quadratic
    /// potentials decouple the width dynamics from the center.
    virtual bool quadratic() const { return false; }
    virtual std::string name() const = 0;
};

class FreePotential final : public Potential {
public:
    double value(double, double) const override { return 0.0; }
    double d1(double, double) const override { return 0.0; }
    double d2(double, double) const override { return 0.0; }
    bool quadratic() const override { return true; }
    std::string name() const override { return "free"; }
};

/// V = -F x, constant force F.
class LinearPotential final : public Potential {
public:
    explicit LinearPotential(double force) : force_(force) {}
    double value(double x, double) const override { return -force_ * x; }
    double d1(double, double) const override { return -force_; }
    double d2(double, double) const override { return 0.0; }
    bool quadratic() const override { return true; }
    std::string name() const override { return "linear"; }
    double force() const { return force_; }
private:
    double force_;
};

/// V = (1/2) m omega^2 x^2, constant omega > 0.
class HarmonicPotential final : public Potential {
public:
    HarmonicPotential(double omega, double mass);
    double value(double x, double) const override { return 0.5 * k_ * x * x; }
    double d1(double x, double) const override { return k_ * x; }
    double d2(double, double) const override { return k_; }
    bool quadratic() const override { return true; }
    std::string name() const override { return "harmonic"; }
    double omega() const { return omega_; }
private:
    double omega_;
    double k_; // m omega^2
};

/// Report of the worst relative deviation between the analytic derivatives
/// and central finite differences of value(), over a set of sample points.
struct PotentialCheckReport {
    double h;            // finite-difference step used
    double max_dev_d1;   // max |fd1 - d1| / scale
    double max_dev_d2;   // max |fd2 - d2| / scale
};

PotentialCheckReport potential_checks(const Potential& pot,
                                      const std::vector<double>& sample_points,
                                      double t = 0.0, double h = 1e-4);

} // namespace shakn

#endif
