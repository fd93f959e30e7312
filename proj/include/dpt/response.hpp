// response.hpp: Retarded/Keldysh Green's functions and the spectra built from them.
#pragma once

#include <optional>
#include <vector>

#include "dpt/bogoliubov.hpp"
#include "dpt/numerics.hpp"

namespace dpt::response {

// Gaussian fluctuation action: quadratic form plus one loss rate per mode.
struct FluctuationForm {
    bogoliubov::QuadraticForm form;
    std::vector<double> losses;
};

struct Resonance {
    cplx pole;
    cplx residue;  // of G^R_11
};

struct GreensSet {
    std::vector<double> grid;
    std::vector<ComplexMatrix> gr, ga, gk;  // gk empty until keldysh_green
    std::vector<bool> pole_flags;           // singular inversion at that grid point
    std::vector<Resonance> resonances;
    bool stable = false;                    // all poles strictly in the lower half plane
};

struct SpectraTable {
    std::vector<double> grid, a, c, s;
};

// I_- (omega + i K) - H
ComplexMatrix inverse_retarded(const FluctuationForm& ff, double omega);

// 2i diag(losses) repeated over particle and hole sectors.
ComplexMatrix keldysh_noise(const std::vector<double>& losses);

// Poles of G^R with the residues of its cavity component.
std::vector<Resonance> resonances(const FluctuationForm& ff);

GreensSet retarded_green(const FluctuationForm& ff, const std::vector<double>& grid, unsigned threads = 1);
void keldysh_green(GreensSet& set, const ComplexMatrix& dk);
GreensSet green_functions(const FluctuationForm& ff, const std::vector<double>& grid, unsigned threads = 1);

// Real quadrature dynamics dq/dt = M q with fields a_j = T_j q (T is N x 2N).
// Throws StabilityError unless M is Hurwitz.
GreensSet response_from_jacobian(const RealMatrix& m, const ComplexMatrix& field_map,
                                 const std::vector<double>& losses, const std::vector<double>& grid,
                                 unsigned threads = 1);
std::vector<Resonance> resonances_from_jacobian(const RealMatrix& m, const ComplexMatrix& field_map);

std::vector<double> spectral_function(const GreensSet& set);
std::vector<double> power_spectrum(const GreensSet& set);
std::vector<double> fluorescence(const GreensSet& set);
SpectraTable spectra(const GreensSet& set);

// Trapezoid rule plus a 1/omega^2 tail correction at both ends.
double integrate(const std::vector<double>& grid, const std::vector<double>& f);

// <a^dag a> from the power spectrum. Throws StabilityError on unstable sets.
double mode_occupation(const GreensSet& set);

// Uniform core over [-4W, 4W], Lorentzian clusters at each pole, log tails to 1e4 W.
// W is the largest pole scale (at least `min_scale`).
std::vector<double> make_grid(const std::vector<Resonance>& poles, double min_scale = 1.0);
std::vector<double> linspace(double lo, double hi, int count);

// A resonance at Re pole > 0 with negative spectral weight that is also
// visible on the grid as A < -tol.
bool has_peak_inversion(const GreensSet& set, double tol = 1e-6);

}  // namespace dpt::response
