// oscillator.cpp
#include "dpt/oscillator.hpp"

#include <cmath>

#include "dpt/errors.hpp"

namespace dpt::oscillator {

namespace {

response::FluctuationForm single_mode(double energy, double kappa) {
    if (!(kappa >= 0.0) || !std::isfinite(energy)) throw ValidationError("oscillator: invalid mode parameters");
    response::FluctuationForm ff;
    ff.form.h = ComplexMatrix::Identity(2, 2) * energy;
    ff.losses = {kappa};
    return ff;
}

}  // namespace

void validate(const OscParams& p) {
    if (!(p.omega0 >= 0.0) || !(p.kappa >= 0.0) || !(p.sigma >= 0.0) || !std::isfinite(p.omega0) ||
        !std::isfinite(p.kappa) || !std::isfinite(p.sigma))
        throw ValidationError("oscillator: omega0, kappa and sigma must be finite and >= 0");
}

std::pair<cplx, cplx> overdamped_eigenvalues(const OscParams& p) {
    validate(p);
    const cplx root = std::sqrt(cplx(p.kappa * p.kappa - 4.0 * p.omega0 * p.omega0, 0.0));
    return {0.5 * (-p.kappa + root), 0.5 * (-p.kappa - root)};
}

bool is_overdamped(const OscParams& p) {
    validate(p);
    return p.kappa * p.kappa > 4.0 * p.omega0 * p.omega0;
}

RealMatrix companion_matrix(const OscParams& p) {
    validate(p);
    RealMatrix m(2, 2);
    m << 0.0, 1.0, -p.omega0 * p.omega0, -p.kappa;
    return m;
}

RealMatrix noise_matrix(const OscParams& p) {
    validate(p);
    RealMatrix d = RealMatrix::Zero(2, 2);
    d(1, 1) = p.sigma * p.sigma;
    return d;
}

std::pair<double, double> overdamped_variance(const OscParams& p) {
    validate(p);
    if (p.kappa == 0.0 || p.omega0 == 0.0)
        throw StabilityError("oscillator: no stationary distribution for kappa = 0 or omega0 = 0");
    const double s2 = p.sigma * p.sigma;
    return {s2 / (2.0 * p.kappa * p.omega0 * p.omega0), s2 / (2.0 * p.kappa)};
}

double rotating_spectral_function(double detuning, double kappa, double omega) {
    if (!(kappa > 0.0)) throw ValidationError("rotating_spectral_function: kappa must be > 0");
    const double x = omega + detuning;
    return 2.0 * kappa / (x * x + kappa * kappa);
}

response::FluctuationForm rotating_form(double detuning, double kappa) { return single_mode(-detuning, kappa); }

response::FluctuationForm lab_form(double omega0, double kappa) { return single_mode(omega0, kappa); }

}  // namespace dpt::oscillator
