// bogoliubov.hpp: Quadratic bosonic forms, dynamical matrices and symplectic norms.
#pragma once

#include <optional>
#include <vector>

#include "dpt/numerics.hpp"

namespace dpt::bogoliubov {

// H in the ordering (a_1..a_N, a_1^dag..a_N^dag).
struct QuadraticForm {
    ComplexMatrix h;
    double constant_offset = 0.0;

    Eigen::Index modes() const { return h.rows() / 2; }
};

struct ExcitationMode {
    cplx frequency;
    ComplexVector eigenvector;  // unit 2-norm, first nonzero entry real positive
    double symplectic_norm = 0.0;
    bool physical = false;
};

// Columns ordered positive norm first. V^dag I_- V = I_- when present.
struct BogoliubovTransform {
    ComplexMatrix v;
};

struct SpectrumOptions {
    double tol_im = 1e-9;
    double tol_norm = 1e-9;
};

struct ExcitationSpectrum {
    std::vector<ExcitationMode> modes;
    std::optional<BogoliubovTransform> transform;
    bool critical = false;  // some mode has |norm| below tol_norm

    bool all_physical() const;
};

// Throws ValidationError on odd size or non-Hermitian H.
void validate(const QuadraticForm& form);

// diag(+1_N, -1_N)
ComplexMatrix minus_identity(Eigen::Index n_modes);

ComplexMatrix dynamical_matrix(const QuadraticForm& form);

double symplectic_norm(const ComplexVector& v);

ExcitationSpectrum diagonalize_excitations(const QuadraticForm& form, const SpectrumOptions& opt = {});

}  // namespace dpt::bogoliubov
