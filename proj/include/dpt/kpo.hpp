// kpo.hpp: Kerr parametric oscillator: landscape, steady states, fluctuations.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dpt/bogoliubov.hpp"
#include "dpt/numerics.hpp"
#include "dpt/response.hpp"
#include "dpt/stability.hpp"

namespace dpt::kpo {

struct KpoParams {
    double delta = 0.0;  // detuning
    double kerr = 1.0;   // U, nonzero
    cplx pump = 0.0;     // G
    double kappa = 0.0;  // single-photon loss
};

enum class KpoLabel { NP, PPS };
std::string to_string(KpoLabel l);

struct KpoState {
    cplx alpha = 0.0;
    KpoLabel label = KpoLabel::NP;
    int branch = 0;  // 0 for NP; 1,2 and 3,4 are the Z2 pairs
};

struct GroundState {
    KpoState state;
    double energy = 0.0;
};

void validate(const KpoParams& p);

// Parameters of the equivalent positive-Kerr problem: (delta, U, G) -> (-delta, -U, -G*).
// Steady states map by complex conjugation.
KpoParams mirrored(const KpoParams& p);

double mf_energy(const KpoParams& p, cplx alpha);

std::vector<GroundState> closed_ground_state(const KpoParams& p);

bogoliubov::QuadraticForm closed_excitation_form(const KpoParams& p, const KpoState& s);

// d alpha/dt = i(delta alpha - U |alpha|^2 alpha - G alpha*) - kappa alpha
cplx eom_rhs(const KpoParams& p, cplx alpha);

// Coefficients (ascending) of the cubic in n = |alpha|^2 whose roots are the steady-state amplitudes.
std::vector<double> amplitude_polynomial(const KpoParams& p);

// Closed-form steady states: NP first, then branches 1..4 where present.
std::vector<KpoState> open_steady_states(const KpoParams& p);

// Steady states from damped Newton on the equation of motion.
numerics::MultistartResult open_steady_states_numeric(const KpoParams& p, double tol = 1e-12);
std::vector<KpoState> label_states(const std::vector<RealVector>& roots);

// Jacobian of the equation of motion in (Re alpha, Im alpha).
RealMatrix jacobian(const KpoParams& p, cplx alpha);
// Same, after checking that s is a steady state.
RealMatrix fluctuation_matrix(const KpoParams& p, const KpoState& s);

// (-kappa + root, -kappa - root)
std::pair<cplx, cplx> fluctuation_eigenvalues(const KpoParams& p, const KpoState& s);

// Eigenvalues, verdict, overdamped flag; covariance (D = 2 kappa I) when stable.
StabilityReport stability(const KpoParams& p, const KpoState& s);

RealMatrix covariance(const KpoParams& p, const KpoState& s);

// (Var Re, Var Im) of the NP. Throws StabilityError when delta^2 - |G|^2 + kappa^2 <= 0.
std::pair<double, double> np_variance_closed_form(const KpoParams& p);

response::FluctuationForm keldysh_fluctuation_form(const KpoParams& p, const KpoState& s);

// delta a = delta Re alpha + i delta Im alpha
ComplexMatrix field_map();

}  // namespace dpt::kpo
