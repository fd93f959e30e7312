// oscillator.hpp: Damped harmonic oscillator reference model.
#pragma once

#include <utility>

#include "dpt/numerics.hpp"
#include "dpt/response.hpp"

namespace dpt::oscillator {

struct OscParams {
    double omega0 = 1.0;
    double kappa = 0.0;
    double sigma = 1.0;  // white-noise strength on the momentum
};

void validate(const OscParams& p);

// (eps_+, eps_-) = (-kappa +/- sqrt(kappa^2 - 4 omega0^2)) / 2
std::pair<cplx, cplx> overdamped_eigenvalues(const OscParams& p);
bool is_overdamped(const OscParams& p);

// d(x, p)/dt = [[0, 1], [-omega0^2, -kappa]] (x, p) + noise
RealMatrix companion_matrix(const OscParams& p);
RealMatrix noise_matrix(const OscParams& p);

// (Var x, Var p). Throws StabilityError for kappa = 0 or omega0 = 0.
std::pair<double, double> overdamped_variance(const OscParams& p);

// 2 kappa / ((omega + detuning)^2 + kappa^2)
double rotating_spectral_function(double detuning, double kappa, double omega);

// Single lossy mode at -detuning in the rotating frame.
response::FluctuationForm rotating_form(double detuning, double kappa);
// Single lossy mode at omega0 in the lab frame.
response::FluctuationForm lab_form(double omega0, double kappa);

}  // namespace dpt::oscillator
