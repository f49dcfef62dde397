#include "shakn/model.hpp"

#include <algorithm>
#include <cmath>

#include "shakn/errors.hpp"

namespace shakn {

double preset_c(Preset p) {
    switch (p) {
    case Preset::sussmann: return 1.0;
    case Preset::hasse: return 0.5;
    case Preset::albrecht: return 0.0;
    case Preset::kostin: return 0.0;
    }
    throw validation_error("unknown preset");
}

Preset parse_preset(const std::string& name) {
    if (name == "sussmann") return Preset::sussmann;
    if (name == "hasse") return Preset::hasse;
    if (name == "albrecht") return Preset::albrecht;
    if (name == "kostin") return Preset::kostin;
    throw validation_error("unknown preset '" + name +
                           "' (valid: sussmann, hasse, albrecht, kostin)");
}

std::string preset_name(Preset p) {
    switch (p) {
    case Preset::sussmann: return "sussmann";
    case Preset::hasse: return "hasse";
    case Preset::albrecht: return "albrecht";
    case Preset::kostin: return "kostin";
    }
    return "?";
}

ModelParams make_params(double m, double hbar, double nu, double c) {
    if (!std::isfinite(m) || m <= 0.0)
        throw validation_error("ModelParams.m must be finite and > 0");
    if (!std::isfinite(hbar) || hbar <= 0.0)
        throw validation_error("ModelParams.hbar must be finite and > 0");
    if (!std::isfinite(nu) || nu < 0.0)
        throw validation_error("ModelParams.nu must be finite and >= 0");
    if (!std::isfinite(c) || c < 0.0 || c > 1.0)
        throw validation_error("ModelParams.c must be in [0, 1]");
    return ModelParams{m, hbar, nu, c};
}

ModelParams make_params(double m, double hbar, double nu, Preset preset) {
    return make_params(m, hbar, nu, preset_c(preset));
}

ModelParams make_params(double m, double hbar, double nu, const std::string& preset) {
    return make_params(m, hbar, nu, preset_c(parse_preset(preset)));
}

HarmonicPotential::HarmonicPotential(double omega, double mass)
    : omega_(omega), k_(mass * omega * omega) {
    if (!std::isfinite(omega) || omega <= 0.0)
        throw validation_error("HarmonicPotential.omega must be finite and > 0");
    if (!std::isfinite(mass) || mass <= 0.0)
        throw validation_error("HarmonicPotential.mass must be finite and > 0");
}

PotentialCheckReport potential_checks(const Potential& pot,
                                      const std::vector<double>& sample_points,
                                      double t, double h) {
    PotentialCheckReport rep{h, 0.0, 0.0};
    for (double x : sample_points) {
        if (!std::isfinite(x))
            throw validation_error("potential_checks: sample point not finite");
        const double vm = pot.value(x - h, t);
        const double v0 = pot.value(x, t);
        const double vp = pot.value(x + h, t);
        const double fd1 = (vp - vm) / (2.0 * h);
        const double fd2 = (vp - 2.0 * v0 + vm) / (h * h);
        const double a1 = pot.d1(x, t);
        const double a2 = pot.d2(x, t);
        // scale-free deviation; unit floor keeps V == 0 exact
        const double s1 = std::max({std::abs(a1), std::abs(v0) / std::max(h, 1e-30), 1.0});
        const double s2 = std::max({std::abs(a2), 1.0});
        rep.max_dev_d1 = std::max(rep.max_dev_d1, std::abs(fd1 - a1) / s1);
        rep.max_dev_d2 = std::max(rep.max_dev_d2, std::abs(fd2 - a2) / s2);
    }
    return rep;
}

} // namespace shakn
