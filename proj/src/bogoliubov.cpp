// bogoliubov.cpp: Excitation spectra of quadratic bosonic forms.
#include "dpt/bogoliubov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dpt/errors.hpp"

namespace dpt::bogoliubov {

namespace {

void fix_phase(ComplexVector& v) {
    v.normalize();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-12) {
            v *= std::conj(v(i)) / std::abs(v(i));
            v(i) = std::abs(v(i));
            return;
        }
    }
}

}  // namespace

bool ExcitationSpectrum::all_physical() const {
    return std::all_of(modes.begin(), modes.end(), [](const ExcitationMode& m) { return m.physical; });
}

void validate(const QuadraticForm& form) {
    const auto& h = form.h;
    if (h.rows() != h.cols() || h.rows() % 2 != 0)
        throw DimensionError("quadratic form must be 2N x 2N");
    if (!h.allFinite()) throw ValidationError("quadratic form has non-finite entries");
    const double scale = std::max(1.0, h.norm());
    if ((h - h.adjoint()).norm() > 1e-12 * scale) {
        std::ostringstream os;
        os << "quadratic form is not Hermitian (|H - H^dag| = " << (h - h.adjoint()).norm() << ")";
        throw ValidationError(os.str());
    }
}

ComplexMatrix minus_identity(Eigen::Index n_modes) {
    ComplexVector d(2 * n_modes);
    d.head(n_modes).setOnes();
    d.tail(n_modes).setConstant(-1.0);
    return d.asDiagonal();
}

ComplexMatrix dynamical_matrix(const QuadraticForm& form) {
    validate(form);
    return minus_identity(form.modes()) * form.h;
}

double symplectic_norm(const ComplexVector& v) {
    if (v.size() % 2 != 0) throw DimensionError("symplectic_norm: odd vector length");
    if (v.squaredNorm() == 0.0) throw DegenerateInputError("symplectic_norm: zero vector");
    const auto n = v.size() / 2;
    return v.head(n).squaredNorm() - v.tail(n).squaredNorm();
}

ExcitationSpectrum diagonalize_excitations(const QuadraticForm& form, const SpectrumOptions& opt) {
    const ComplexMatrix d = dynamical_matrix(form);
    const ComplexMatrix im = minus_identity(form.modes());
    const auto es = numerics::eig(d);
    const auto dim = es.values.size();
    const double tie = 1e-8 * std::max(1.0, d.norm());

    ComplexMatrix vecs = es.vectors;
    // Degenerate clusters: rotate to an I_- orthogonal basis.
    for (Eigen::Index start = 0; start < dim;) {
        Eigen::Index end = start + 1;
        while (end < dim && std::abs(es.values(end) - es.values(start)) <= tie) ++end;
        const auto len = end - start;
        if (len > 1) {
            const ComplexMatrix block = vecs.middleCols(start, len);
            const ComplexMatrix gram = block.adjoint() * im * block;
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> sa(gram);
            vecs.middleCols(start, len) = block * sa.eigenvectors();
        }
        start = end;
    }

    ExcitationSpectrum out;
    for (Eigen::Index k = 0; k < dim; ++k) {
        ExcitationMode m;
        m.frequency = es.values(k);
        m.eigenvector = vecs.col(k);
        fix_phase(m.eigenvector);
        m.symplectic_norm = symplectic_norm(m.eigenvector);
        m.physical = std::abs(m.frequency.imag()) <= opt.tol_im;
        out.modes.push_back(std::move(m));
    }

    auto before = [tie](const ExcitationMode& a, const ExcitationMode& b) {
        if (std::abs(a.frequency.real() - b.frequency.real()) > tie)
            return a.frequency.real() > b.frequency.real();
        if (std::abs(a.frequency.imag() - b.frequency.imag()) > tie)
            return a.frequency.imag() > b.frequency.imag();
        return a.symplectic_norm > 0.0 && b.symplectic_norm <= 0.0;
    };
    for (size_t i = 1; i < out.modes.size(); ++i)
        for (size_t j = i; j > 0 && before(out.modes[j], out.modes[j - 1]); --j)
            std::swap(out.modes[j], out.modes[j - 1]);

    out.critical = std::any_of(out.modes.begin(), out.modes.end(), [&](const ExcitationMode& m) {
        return m.physical && std::abs(m.symplectic_norm) < opt.tol_norm;
    });
    const auto positives = std::count_if(out.modes.begin(), out.modes.end(),
                                         [](const ExcitationMode& m) { return m.symplectic_norm > 0.0; });
    if (out.all_physical() && !out.critical && positives == form.modes()) {
        ComplexMatrix v(dim, dim);
        Eigen::Index col = 0;
        for (bool positive : {true, false})
            for (const auto& m : out.modes)
                if ((m.symplectic_norm > 0.0) == positive)
                    v.col(col++) = m.eigenvector / std::sqrt(std::abs(m.symplectic_norm));
        out.transform = BogoliubovTransform{std::move(v)};
    }
    return out;
}

}  // namespace dpt::bogoliubov
