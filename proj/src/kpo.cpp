// kpo.cpp: Kerr parametric oscillator.
#include "dpt/kpo.hpp"

#include <cmath>
#include <sstream>

#include "dpt/errors.hpp"

namespace dpt::kpo {

namespace {

const cplx I(0.0, 1.0);

double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

void check_steady(const KpoParams& p, cplx alpha) {
    const double scale = std::max({1.0, std::abs(p.delta), std::abs(p.pump), p.kappa}) *
                         std::max(1.0, std::abs(alpha)) * std::max(1.0, std::norm(alpha) * std::abs(p.kerr));
    const double r = std::abs(eom_rhs(p, alpha));
    if (!(r <= 1e-8 * scale)) {
        std::ostringstream os;
        os << "kpo: state alpha = " << alpha << " is not a steady state (residual " << r << ")";
        throw ValidationError(os.str());
    }
}

std::vector<KpoState> positive_kerr_states(const KpoParams& p) {
    std::vector<KpoState> out{{0.0, KpoLabel::NP, 0}};
    const double g = std::abs(p.pump);
    if (g < p.kappa) return out;
    const double s = std::sqrt(g * g - p.kappa * p.kappa);
    // G e^{-2i theta} = (delta - U n) + i kappa, with delta - U n = +s or -s.
    auto add_pair = [&](double n, double detuning_shift, int first_branch) {
        if (!(n > 0.0)) return;
        const double theta = g > 0.0 ? -0.5 * std::arg(cplx(detuning_shift, p.kappa) / p.pump) : 0.0;
        const cplx a = std::polar(std::sqrt(n), theta);
        out.push_back({a, KpoLabel::PPS, first_branch});
        out.push_back({-a, KpoLabel::PPS, first_branch + 1});
    };
    add_pair((p.delta - s) / p.kerr, s, 1);
    if (s > 0.0) add_pair((p.delta + s) / p.kerr, -s, 3);
    return out;
}

}  // namespace

std::string to_string(KpoLabel l) { return l == KpoLabel::NP ? "NP" : "PPS"; }

void validate(const KpoParams& p) {
    if (!std::isfinite(p.delta) || !std::isfinite(p.kerr) || !std::isfinite(p.pump.real()) ||
        !std::isfinite(p.pump.imag()) || !std::isfinite(p.kappa))
        throw ValidationError("kpo: parameters must be finite");
    if (p.kerr == 0.0) throw ValidationError("kpo: kerr must be nonzero");
    if (p.kappa < 0.0) throw ValidationError("kpo: kappa must be >= 0");
}

KpoParams mirrored(const KpoParams& p) { return {-p.delta, -p.kerr, -std::conj(p.pump), p.kappa}; }

double mf_energy(const KpoParams& p, cplx alpha) {
    const double x = alpha.real(), y = alpha.imag(), n = std::norm(alpha);
    return -p.delta * n + 0.5 * p.kerr * n * n + p.pump.real() * (x * x - y * y) + 2.0 * p.pump.imag() * x * y;
}

std::vector<GroundState> closed_ground_state(const KpoParams& p) {
    validate(p);
    const double su = sgn(p.kerr);
    const double g = std::abs(p.pump);
    const double n = (p.delta + su * g) / p.kerr;
    if (su * p.delta < -g || !(n > 0.0)) return {{{0.0, KpoLabel::NP, 0}, 0.0}};
    const double theta = std::atan2(-p.pump.real() - su * g, p.pump.imag());
    const cplx a = std::polar(std::sqrt(n), theta);
    return {{{a, KpoLabel::PPS, 1}, mf_energy(p, a)}, {{-a, KpoLabel::PPS, 2}, mf_energy(p, -a)}};
}

bogoliubov::QuadraticForm closed_excitation_form(const KpoParams& p, const KpoState& s) {
    validate(p);
    const double diag = -p.delta + 2.0 * p.kerr * std::norm(s.alpha);
    const cplx off = p.pump + p.kerr * s.alpha * s.alpha;
    bogoliubov::QuadraticForm f;
    f.h.resize(2, 2);
    f.h << diag, off, std::conj(off), diag;
    f.constant_offset = mf_energy(p, s.alpha);
    return f;
}

cplx eom_rhs(const KpoParams& p, cplx alpha) {
    return I * (p.delta * alpha - p.kerr * std::norm(alpha) * alpha - p.pump * std::conj(alpha)) - p.kappa * alpha;
}

std::vector<double> amplitude_polynomial(const KpoParams& p) {
    validate(p);
    const double g2 = std::norm(p.pump);
    return {0.0, p.delta * p.delta + p.kappa * p.kappa - g2, -2.0 * p.delta * p.kerr, p.kerr * p.kerr};
}

std::vector<KpoState> open_steady_states(const KpoParams& p) {
    validate(p);
    if (p.kerr > 0.0) return positive_kerr_states(p);
    auto states = positive_kerr_states(mirrored(p));
    for (auto& s : states) s.alpha = std::conj(s.alpha);
    return states;
}

numerics::MultistartResult open_steady_states_numeric(const KpoParams& p, double tol) {
    validate(p);
    auto residual = [&p](const RealVector& v) {
        const cplx f = eom_rhs(p, cplx(v(0), v(1)));
        RealVector r(2);
        r << f.real(), f.imag();
        return r;
    };
    auto jac = [&p](const RealVector& v) { return jacobian(p, cplx(v(0), v(1))); };
    const double outer = std::sqrt((std::abs(p.delta) + std::abs(p.pump)) / std::abs(p.kerr));
    const auto seeds = numerics::ring_seeds({0.1, 0.5, 1.0, outer, 1.5 * outer}, 16);
    return numerics::newton_multistart(residual, jac, seeds, tol);
}

std::vector<KpoState> label_states(const std::vector<RealVector>& roots) {
    std::vector<KpoState> out;
    int next = 1;
    for (const auto& r : roots) {
        const cplx a(r(0), r(1));
        if (std::abs(a) <= 1e-8)
            out.push_back({a, KpoLabel::NP, 0});
        else
            out.push_back({a, KpoLabel::PPS, next++});
    }
    return out;
}

RealMatrix jacobian(const KpoParams& p, cplx alpha) {
    const double x = alpha.real(), y = alpha.imag(), u = p.kerr;
    const double gr = p.pump.real(), gi = p.pump.imag();
    RealMatrix m(2, 2);
    m << 2.0 * u * x * y + gi - p.kappa, -p.delta + u * (x * x + 3.0 * y * y) - gr,
        p.delta - u * (3.0 * x * x + y * y) - gr, -2.0 * u * x * y - gi - p.kappa;
    return m;
}

RealMatrix fluctuation_matrix(const KpoParams& p, const KpoState& s) {
    validate(p);
    check_steady(p, s.alpha);
    return jacobian(p, s.alpha);
}

std::pair<cplx, cplx> fluctuation_eigenvalues(const KpoParams& p, const KpoState& s) {
    validate(p);
    check_steady(p, s.alpha);
    const double x = s.alpha.real(), y = s.alpha.imag(), n = std::norm(s.alpha), u = p.kerr;
    const double gr = p.pump.real(), gi = p.pump.imag();
    const double bracket = p.delta * p.delta - std::norm(p.pump) - 4.0 * u * p.delta * n -
                           4.0 * x * y * gi * u - 2.0 * (x * x - y * y) * gr * u + 3.0 * n * n * u * u;
    const cplx root = std::sqrt(cplx(-bracket, 0.0));
    return {-p.kappa + root, -p.kappa - root};
}

StabilityReport stability(const KpoParams& p, const KpoState& s) {
    const RealMatrix m = fluctuation_matrix(p, s);
    auto report = assess(numerics::eig(m).values, std::nullopt, p.kappa);
    if (report.stable()) report.covariance = numerics::solve_lyapunov(m, RealMatrix(2.0 * p.kappa * RealMatrix::Identity(2, 2)));
    return report;
}

RealMatrix covariance(const KpoParams& p, const KpoState& s) {
    const RealMatrix m = fluctuation_matrix(p, s);
    return numerics::solve_lyapunov(m, RealMatrix(2.0 * p.kappa * RealMatrix::Identity(2, 2)));
}

std::pair<double, double> np_variance_closed_form(const KpoParams& p) {
    validate(p);
    const double d = p.delta, k = p.kappa, gr = p.pump.real(), gi = p.pump.imag();
    const double den = d * d - std::norm(p.pump) + k * k;
    if (!(den > 0.0)) {
        std::ostringstream os;
        os << "kpo: NP has no stationary variance (delta^2 - |G|^2 + kappa^2 = " << den << ")";
        throw StabilityError(os.str());
    }
    return {(d * d + k * (gi + k) + d * gr) / den, (d * d + k * (k - gi) - d * gr) / den};
}

response::FluctuationForm keldysh_fluctuation_form(const KpoParams& p, const KpoState& s) {
    return {closed_excitation_form(p, s), {p.kappa}};
}

ComplexMatrix field_map() {
    ComplexMatrix t(1, 2);
    t << 1.0, I;
    return t;
}

}  // namespace dpt::kpo
