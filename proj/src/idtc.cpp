// idtc.cpp: Interpolating Dicke / Tavis-Cummings model.
#include "dpt/idtc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dpt/errors.hpp"

namespace dpt::idtc {

namespace {

const cplx I(0.0, 1.0);

double param_scale(const IdtcParams& p) {
    return std::max({1.0, p.omega_c, p.omega_z, p.lambda_x, p.lambda_y, p.kappa});
}

void check_steady(const IdtcParams& p, const IdtcState& s) {
    const auto r = mean_field_rhs(p, s);
    const double norm = std::sqrt(std::norm(r.dalpha) + r.dx * r.dx + r.dy * r.dy + r.dz * r.dz);
    const double scale = param_scale(p) * std::max(1.0, std::abs(s.alpha));
    const double length = s.x * s.x + s.y * s.y + s.z * s.z;
    if (!(norm <= 1e-8 * scale) || !(std::abs(length - 0.25) <= 1e-8)) {
        std::ostringstream os;
        os << "idtc: not a steady state on the spin sphere (residual " << norm << ", spin length^2 "
           << length << ")";
        throw ValidationError(os.str());
    }
}

RealVector residual6(const IdtcParams& p, const RealVector& v) {
    const auto r = mean_field_rhs(p, from_vector(v));
    RealVector out(6);
    out << r.dalpha.real(), r.dalpha.imag(), r.dx, r.dy, r.dz, v.tail(3).squaredNorm() - 0.25;
    return out;
}

RealMatrix jacobian6(const IdtcParams& p, const RealVector& v) {
    RealMatrix j(6, 5);
    j.topRows(5) = jacobian(p, from_vector(v));
    j.row(5) << 0.0, 0.0, 2.0 * v(2), 2.0 * v(3), 2.0 * v(4);
    return j;
}

// Spin directions spread over the sphere, cavity from its own steady-state equation.
std::vector<RealVector> sphere_seeds(const IdtcParams& p, int count) {
    std::vector<RealVector> seeds;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
        const double z = 1.0 - 2.0 * (k + 0.5) / count;
        const double r = std::sqrt(1.0 - z * z);
        const double x = 0.5 * r * std::cos(golden * k), y = 0.5 * r * std::sin(golden * k);
        const cplx a = -(2.0 * I * p.lambda_x * x + 2.0 * p.lambda_y * y) / (I * p.omega_c + p.kappa);
        RealVector s(5);
        s << a.real(), a.imag(), x, y, 0.5 * z;
        seeds.push_back(s);
    }
    return seeds;
}

}  // namespace

std::string to_string(IdtcLabel l) { return l == IdtcLabel::NP ? "NP" : "SP"; }

void validate(const IdtcParams& p) {
    for (double v : {p.omega_c, p.omega_z, p.lambda_x, p.lambda_y, p.kappa})
        if (!std::isfinite(v)) throw ValidationError("idtc: parameters must be finite");
    if (!(p.omega_c > 0.0) || !(p.omega_z > 0.0)) throw ValidationError("idtc: omega_c and omega_z must be > 0");
    if (p.lambda_x < 0.0 || p.lambda_y < 0.0 || p.kappa < 0.0)
        throw ValidationError("idtc: couplings and kappa must be >= 0");
}

double critical_coupling(const IdtcParams& p) {
    validate(p);
    return 0.5 * std::sqrt(p.omega_c * p.omega_z);
}

IdtcState normal_phase() { return {}; }

bogoliubov::QuadraticForm np_form(const IdtcParams& p) {
    validate(p);
    const double sp = p.lambda_x + p.lambda_y, sm = p.lambda_x - p.lambda_y;
    bogoliubov::QuadraticForm f;
    f.h.resize(4, 4);
    f.h << p.omega_c, sp, 0.0, sm,
           sp, p.omega_z, sm, 0.0,
           0.0, sm, p.omega_c, sp,
           sm, 0.0, sp, p.omega_z;
    return f;
}

NpExcitations closed_np_excitations(const IdtcParams& p) {
    validate(p);
    const double wc = p.omega_c, wz = p.omega_z, lx = p.lambda_x, ly = p.lambda_y;
    // omega^4 - b omega^2 + c = 0
    const double b = wc * wc + wz * wz + 8.0 * lx * ly;
    const double c = (4.0 * lx * lx - wc * wz) * (4.0 * ly * ly - wc * wz);
    const cplx root = std::sqrt(cplx(b * b - 4.0 * c, 0.0));
    NpExcitations out;
    out.soft = std::sqrt(0.5 * (b - root));
    out.hard = std::sqrt(0.5 * (b + root));
    out.spectrum = bogoliubov::diagonalize_excitations(np_form(p));
    return out;
}

IdtcRhs mean_field_rhs(const IdtcParams& p, const IdtcState& s) {
    const double u = s.alpha.real(), v = s.alpha.imag();
    IdtcRhs r;
    r.dalpha = -(I * p.omega_c + p.kappa) * s.alpha - 2.0 * I * p.lambda_x * s.x - 2.0 * p.lambda_y * s.y;
    r.dx = -p.omega_z * s.y - 4.0 * p.lambda_y * v * s.z;
    r.dy = p.omega_z * s.x - 4.0 * p.lambda_x * u * s.z;
    r.dz = 4.0 * p.lambda_x * u * s.y + 4.0 * p.lambda_y * v * s.x;
    return r;
}

RealVector to_vector(const IdtcState& s) {
    RealVector v(5);
    v << s.alpha.real(), s.alpha.imag(), s.x, s.y, s.z;
    return v;
}

IdtcState from_vector(const RealVector& v) {
    IdtcState s;
    s.alpha = cplx(v(0), v(1));
    s.x = v(2);
    s.y = v(3);
    s.z = v(4);
    return s;
}

RealMatrix jacobian(const IdtcParams& p, const IdtcState& s) {
    const double u = s.alpha.real(), v = s.alpha.imag();
    const double lx = p.lambda_x, ly = p.lambda_y;
    RealMatrix j(5, 5);
    j << -p.kappa, p.omega_c, 0.0, -2.0 * ly, 0.0,
         -p.omega_c, -p.kappa, -2.0 * lx, 0.0, 0.0,
         0.0, -4.0 * ly * s.z, 0.0, -p.omega_z, -4.0 * ly * v,
         -4.0 * lx * s.z, 0.0, p.omega_z, 0.0, -4.0 * lx * u,
         4.0 * lx * s.y, 4.0 * ly * s.x, 4.0 * ly * v, 4.0 * lx * u, 0.0;
    return j;
}

RealMatrix fluctuation_matrix(const IdtcParams& p, const IdtcState& s) {
    validate(p);
    check_steady(p, s);
    return jacobian(p, s);
}

std::vector<IdtcState> open_steady_states(const IdtcParams& p) {
    validate(p);
    std::vector<IdtcState> out{normal_phase()};
    if (p.lambda_x == 0.0 && p.lambda_y == 0.0) return out;
    auto res = [&p](const RealVector& v) { return residual6(p, v); };
    auto jac = [&p](const RealVector& v) { return jacobian6(p, v); };
    const auto found = numerics::newton_multistart(res, jac, sphere_seeds(p, 48), 1e-12);

    std::vector<IdtcState> sp;
    for (const auto& v : found.states) {
        IdtcState s = from_vector(v);
        if (std::abs(s.alpha) < 1e-7) continue;  // the poles of the spin sphere
        s.label = IdtcLabel::SP;
        sp.push_back(s);
    }
    std::sort(sp.begin(), sp.end(), [](const IdtcState& a, const IdtcState& b) {
        if (std::abs(a.z - b.z) > 1e-9) return a.z < b.z;
        if (std::abs(a.alpha.real() - b.alpha.real()) > 1e-12) return a.alpha.real() > b.alpha.real();
        return a.alpha.imag() > b.alpha.imag();
    });
    for (size_t k = 0; k < sp.size(); ++k) {
        sp[k].branch = static_cast<int>(k) + 1;
        out.push_back(sp[k]);
    }
    return out;
}

TangentDynamics tangent_dynamics(const IdtcParams& p, const IdtcState& s) {
    const RealMatrix j = fluctuation_matrix(p, s);
    Eigen::Vector3d r(s.x, s.y, s.z);
    r.normalize();
    Eigen::Vector3d t1 = Eigen::Vector3d::UnitX() - r.x() * r;
    if (t1.squaredNorm() < 0.5) t1 = Eigen::Vector3d::UnitY() - r.y() * r;
    t1.normalize();
    const Eigen::Vector3d t2 = t1.cross(r);

    TangentDynamics td;
    td.basis = RealMatrix::Zero(5, 4);
    td.basis(0, 0) = 1.0;
    td.basis(1, 1) = 1.0;
    td.basis.block(2, 2, 3, 1) = t1;
    td.basis.block(2, 3, 3, 1) = t2;
    td.m = td.basis.transpose() * j * td.basis;
    td.field_map = ComplexMatrix::Zero(2, 4);
    td.field_map(0, 0) = 1.0;
    td.field_map(0, 1) = I;
    td.field_map(1, 2) = 1.0;
    td.field_map(1, 3) = -I;
    return td;
}

StabilityReport stability(const IdtcParams& p, const IdtcState& s) {
    const auto td = tangent_dynamics(p, s);
    const auto reduced = numerics::eig(td.m).values;
    // The radial direction contributes an exact zero; insert it in eig ordering.
    ComplexVector full(5);
    Eigen::Index at = 0;
    while (at < 4 && (reduced(at).real() > 1e-12 ||
                      (std::abs(reduced(at).real()) <= 1e-12 && reduced(at).imag() > 0.0)))
        ++at;
    full << reduced.head(at), cplx(0.0), reduced.tail(4 - at);
    auto report = assess(full, at, p.kappa);
    if (report.stable()) {
        RealMatrix d = RealMatrix::Zero(4, 4);
        d(0, 0) = d(1, 1) = 2.0 * p.kappa;
        report.covariance = numerics::solve_lyapunov(td.m, d);
    }
    return report;
}

cplx np_retarded_green_closed_form(const IdtcParams& p, double omega) {
    validate(p);
    const double w0 = p.omega_c, wz = p.omega_z, lx = p.lambda_x, ly = p.lambda_y, k = p.kappa;
    // Uncoupled: the spin factor cancels.
    if (lx == 0.0 && ly == 0.0) {
        if (k == 0.0 && omega == w0) throw PoleError("idtc: retarded Green's function has a pole at omega_c");
        return 1.0 / (omega - w0 + I * k);
    }
    const double l2 = lx * lx + ly * ly;
    const cplx wk = omega + I * k;
    const double spin = omega * omega - wz * wz;
    const cplx num = 2.0 * wz * l2 - 4.0 * lx * ly * omega + spin * (wk + w0);
    const cplx terms[] = {16.0 * lx * lx * ly * ly, -8.0 * lx * ly * omega * wk, -4.0 * w0 * wz * l2,
                          spin * (wk * wk - w0 * w0)};
    cplx den = 0.0;
    double scale = 0.0;
    for (const cplx& t : terms) {
        den += t;
        scale += std::abs(t);
    }
    if (std::abs(den) <= 1e-14 * std::max(scale, 1e-300)) {
        std::ostringstream os;
        os << "idtc: retarded Green's function has a pole at omega = " << omega;
        throw PoleError(os.str());
    }
    return num / den;
}

response::FluctuationForm keldysh_fluctuation_form_np(const IdtcParams& p) {
    return {np_form(p), {p.kappa, 0.0}};
}

}  // namespace dpt::idtc
