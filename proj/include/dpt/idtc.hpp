// idtc.hpp: Interpolating Dicke / Tavis-Cummings model: normal and superradiant phases.
#pragma once

#include <string>
#include <vector>

#include "dpt/bogoliubov.hpp"
#include "dpt/numerics.hpp"
#include "dpt/response.hpp"
#include "dpt/stability.hpp"

namespace dpt::idtc {

struct IdtcParams {
    double omega_c = 1.0;
    double omega_z = 1.0;
    double lambda_x = 0.0;
    double lambda_y = 0.0;
    double kappa = 0.0;
};

enum class IdtcLabel { NP, SP };
std::string to_string(IdtcLabel l);

// Cavity field and spin per particle. NP: alpha = 0, (X, Y, Z) = (0, 0, -1/2).
struct IdtcState {
    cplx alpha = 0.0;
    double x = 0.0, y = 0.0, z = -0.5;
    IdtcLabel label = IdtcLabel::NP;
    int branch = 0;
};

struct IdtcRhs {
    cplx dalpha;
    double dx, dy, dz;
};

void validate(const IdtcParams& p);

double critical_coupling(const IdtcParams& p);

IdtcState normal_phase();

// NP quadratic form in the ordering (a, b, a^dag, b^dag).
bogoliubov::QuadraticForm np_form(const IdtcParams& p);

struct NpExcitations {
    cplx soft;  // closed form, smaller omega^2 root
    cplx hard;
    bogoliubov::ExcitationSpectrum spectrum;  // from the 4x4 dynamical matrix
};

NpExcitations closed_np_excitations(const IdtcParams& p);

IdtcRhs mean_field_rhs(const IdtcParams& p, const IdtcState& s);

// State vector (Re alpha, Im alpha, X, Y, Z) and its inverse.
RealVector to_vector(const IdtcState& s);
IdtcState from_vector(const RealVector& v);

// Analytic Jacobian of the flow in (Re alpha, Im alpha, X, Y, Z).
RealMatrix jacobian(const IdtcParams& p, const IdtcState& s);
// Same, after checking that s is a steady state.
RealMatrix fluctuation_matrix(const IdtcParams& p, const IdtcState& s);

// NP first, then superradiant states in Z2 pairs.
std::vector<IdtcState> open_steady_states(const IdtcParams& p);

// Flow restricted to the tangent space of the spin sphere.
struct TangentDynamics {
    RealMatrix basis;        // 5 x 4, orthonormal; columns (Re a, Im a, t1, t2)
    RealMatrix m;            // 4 x 4 reduced Jacobian
    ComplexMatrix field_map; // 2 x 4: a = u + i v, b = t1 - i t2
};

TangentDynamics tangent_dynamics(const IdtcParams& p, const IdtcState& s);

// Full spectrum with the radial zero mode tagged; verdict from the other four.
// Covariance (D = 2 kappa on the cavity quadratures) when stable.
StabilityReport stability(const IdtcParams& p, const IdtcState& s);

// Closed-form cavity G^R at the NP. Throws PoleError on a pole.
cplx np_retarded_green_closed_form(const IdtcParams& p, double omega);

response::FluctuationForm keldysh_fluctuation_form_np(const IdtcParams& p);

}  // namespace dpt::idtc
