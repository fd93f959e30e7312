// response.cpp: Gaussian Keldysh response functions.
#include "dpt/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dpt/errors.hpp"
#include "dpt/parallel.hpp"

namespace dpt::response {

namespace {

constexpr double pole_tol = 1e-9;
const cplx I(0.0, 1.0);

ComplexMatrix loss_matrix(const std::vector<double>& losses) {
    const auto n = static_cast<Eigen::Index>(losses.size());
    ComplexVector k(2 * n);
    for (Eigen::Index j = 0; j < n; ++j) k(j) = k(j + n) = losses[static_cast<size_t>(j)];
    return k.asDiagonal();
}

void check_form(const FluctuationForm& ff) {
    bogoliubov::validate(ff.form);
    if (static_cast<Eigen::Index>(ff.losses.size()) != ff.form.modes())
        throw DimensionError("fluctuation form: one loss rate per mode expected");
    for (double k : ff.losses)
        if (!(k >= 0.0)) throw ValidationError("fluctuation form: loss rates must be >= 0");
}

bool all_damped(const std::vector<Resonance>& rs) {
    return std::all_of(rs.begin(), rs.end(), [](const Resonance& r) { return r.pole.imag() < -pole_tol; });
}

ComplexMatrix nan_matrix(Eigen::Index n) {
    return ComplexMatrix::Constant(n, n, cplx(std::numeric_limits<double>::quiet_NaN(), 0.0));
}

void fill_inverse(GreensSet& set, size_t i, const ComplexMatrix& inv) {
    Eigen::PartialPivLU<ComplexMatrix> lu(inv);
    const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
    if (!(lu.rcond() > 1e-13) || !(pivots.minCoeff() > 1e-13 * pivots.maxCoeff())) {
        set.pole_flags[i] = true;
        set.gr[i] = set.ga[i] = nan_matrix(inv.rows());
        return;
    }
    set.gr[i] = lu.inverse();
    if (!set.gr[i].allFinite()) {
        set.pole_flags[i] = true;
        set.gr[i] = nan_matrix(inv.rows());
    }
    set.ga[i] = set.gr[i].adjoint();
}

GreensSet empty_set(const std::vector<double>& grid) {
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw ValidationError("frequency grid must be strictly increasing");
    GreensSet set;
    set.grid = grid;
    set.gr.resize(grid.size());
    set.ga.resize(grid.size());
    set.pole_flags.assign(grid.size(), false);
    return set;
}

ComplexMatrix full_field_map(const ComplexMatrix& t) {
    ComplexMatrix tf(2 * t.rows(), t.cols());
    tf << t, t.conjugate();
    return tf;
}

}  // namespace

ComplexMatrix inverse_retarded(const FluctuationForm& ff, double omega) {
    const auto n = ff.form.modes();
    const ComplexMatrix im = bogoliubov::minus_identity(n);
    return im * (omega * ComplexMatrix::Identity(2 * n, 2 * n) + I * loss_matrix(ff.losses)) - ff.form.h;
}

ComplexMatrix keldysh_noise(const std::vector<double>& losses) { return 2.0 * I * loss_matrix(losses); }

std::vector<Resonance> resonances(const FluctuationForm& ff) {
    check_form(ff);
    const auto n = ff.form.modes();
    const ComplexMatrix im = bogoliubov::minus_identity(n);
    // G^R = (omega - D_eff)^{-1} I_-  with  D_eff = I_- H - i K
    const ComplexMatrix d_eff = im * ff.form.h - I * loss_matrix(ff.losses);
    const auto es = numerics::eig(d_eff);
    const ComplexMatrix w = es.vectors.inverse() * im;
    std::vector<Resonance> out;
    for (Eigen::Index k = 0; k < es.values.size(); ++k)
        out.push_back({es.values(k), es.vectors(0, k) * w(k, 0)});
    return out;
}

GreensSet retarded_green(const FluctuationForm& ff, const std::vector<double>& grid, unsigned threads) {
    check_form(ff);
    GreensSet set = empty_set(grid);
    parallel_for(grid.size(), threads, [&](size_t i) { fill_inverse(set, i, inverse_retarded(ff, grid[i])); });
    set.resonances = resonances(ff);
    set.stable = all_damped(set.resonances);
    return set;
}

void keldysh_green(GreensSet& set, const ComplexMatrix& dk) {
    set.gk.resize(set.grid.size());
    for (size_t i = 0; i < set.grid.size(); ++i) {
        if (set.gr[i].rows() != dk.rows() || dk.rows() != dk.cols())
            throw DimensionError("keldysh_green: D^K does not match G^R");
        set.gk[i] = -set.gr[i] * dk * set.ga[i];
    }
}

GreensSet green_functions(const FluctuationForm& ff, const std::vector<double>& grid, unsigned threads) {
    GreensSet set = retarded_green(ff, grid, threads);
    keldysh_green(set, keldysh_noise(ff.losses));
    return set;
}

std::vector<Resonance> resonances_from_jacobian(const RealMatrix& m, const ComplexMatrix& field_map) {
    const ComplexMatrix tf = full_field_map(field_map);
    if (tf.rows() != m.rows() || m.rows() != m.cols())
        throw DimensionError("resonances_from_jacobian: field map must be N x 2N for a 2N x 2N Jacobian");
    const auto es = numerics::eig(m);
    // Time dependence e^{eps t} appears as a pole at omega = i eps.
    const ComplexMatrix left = tf * es.vectors;
    const ComplexMatrix right =
        es.vectors.inverse() * tf.inverse() * bogoliubov::minus_identity(field_map.rows());
    std::vector<Resonance> out;
    for (Eigen::Index k = 0; k < es.values.size(); ++k)
        out.push_back({I * es.values(k), left(0, k) * right(k, 0)});
    std::sort(out.begin(), out.end(), [](const Resonance& a, const Resonance& b) {
        return a.pole.real() != b.pole.real() ? a.pole.real() > b.pole.real() : a.pole.imag() > b.pole.imag();
    });
    return out;
}

GreensSet response_from_jacobian(const RealMatrix& m, const ComplexMatrix& field_map,
                                 const std::vector<double>& losses, const std::vector<double>& grid,
                                 unsigned threads) {
    const ComplexMatrix tf = full_field_map(field_map);
    if (tf.rows() != m.rows() || m.rows() != m.cols())
        throw DimensionError("response_from_jacobian: field map must be N x 2N for a 2N x 2N Jacobian");
    if (static_cast<Eigen::Index>(losses.size()) != field_map.rows())
        throw DimensionError("response_from_jacobian: one loss rate per field expected");
    const double abscissa = numerics::spectral_abscissa(m);
    if (!(abscissa < -pole_tol)) {
        std::ostringstream os;
        os << "response_from_jacobian: Jacobian is not Hurwitz (max Re eigenvalue " << abscissa << ")";
        throw StabilityError(os.str());
    }
    Eigen::FullPivLU<ComplexMatrix> tlu(tf);
    if (!tlu.isInvertible()) throw DegenerateInputError("response_from_jacobian: singular field map");
    const ComplexMatrix right = tlu.inverse() * bogoliubov::minus_identity(field_map.rows());
    const ComplexMatrix mc = m.cast<cplx>();
    const auto n = m.rows();

    GreensSet set = empty_set(grid);
    parallel_for(grid.size(), threads, [&](size_t i) {
        const ComplexMatrix res = (-I * grid[i] * ComplexMatrix::Identity(n, n) - mc).inverse();
        set.gr[i] = -I * tf * res * right;
        set.ga[i] = set.gr[i].adjoint();
    });
    set.resonances = resonances_from_jacobian(m, field_map);
    set.stable = all_damped(set.resonances);
    keldysh_green(set, keldysh_noise(losses));
    return set;
}

std::vector<double> spectral_function(const GreensSet& set) {
    std::vector<double> a(set.grid.size());
    for (size_t i = 0; i < a.size(); ++i) a[i] = -2.0 * set.gr[i](0, 0).imag();
    return a;
}

std::vector<double> power_spectrum(const GreensSet& set) {
    if (set.gk.size() != set.grid.size()) throw ValidationError("power_spectrum: Keldysh component missing");
    std::vector<double> c(set.grid.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = (I * set.gk[i](0, 0)).real();
    return c;
}

std::vector<double> fluorescence(const GreensSet& set) {
    if (set.gk.size() != set.grid.size()) throw ValidationError("fluorescence: Keldysh component missing");
    std::vector<double> s(set.grid.size());
    for (size_t i = 0; i < s.size(); ++i)
        s[i] = (0.5 * I * (set.gk[i](0, 0) - set.gr[i](0, 0) + set.ga[i](0, 0))).real();
    return s;
}

SpectraTable spectra(const GreensSet& set) {
    return {set.grid, spectral_function(set), power_spectrum(set), fluorescence(set)};
}

double integrate(const std::vector<double>& grid, const std::vector<double>& f) {
    if (grid.size() != f.size() || grid.size() < 2) throw DimensionError("integrate: size mismatch");
    double sum = 0.0;
    for (size_t i = 1; i < grid.size(); ++i) sum += 0.5 * (f[i] + f[i - 1]) * (grid[i] - grid[i - 1]);
    sum += f.front() * std::abs(grid.front()) + f.back() * std::abs(grid.back());
    return sum;
}

double mode_occupation(const GreensSet& set) {
    if (!set.stable) throw StabilityError("mode_occupation: unstable state has no stationary occupation");
    if (std::any_of(set.pole_flags.begin(), set.pole_flags.end(), [](bool b) { return b; }))
        throw PoleError("mode_occupation: grid hits a pole");
    const double total = integrate(set.grid, power_spectrum(set)) / (2.0 * std::numbers::pi);
    return 0.5 * (total - 1.0);
}

std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 2 || !(hi > lo)) throw ValidationError("linspace: need count >= 2 and hi > lo");
    std::vector<double> v(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) v[static_cast<size_t>(i)] = lo + (hi - lo) * i / (count - 1);
    return v;
}

std::vector<double> make_grid(const std::vector<Resonance>& poles, double min_scale) {
    double w = min_scale;
    for (const auto& r : poles) w = std::max({w, std::abs(r.pole.real()), std::abs(r.pole.imag())});
    const double edge = 1e4 * w;
    std::vector<double> g = linspace(-4.0 * w, 4.0 * w, 4001);
    constexpr int cluster = 201;
    for (const auto& r : poles) {
        const double gamma = std::max(std::abs(r.pole.imag()), 1e-6 * w);
        for (int k = 0; k < cluster; ++k) {
            const double theta = std::numbers::pi * ((k + 0.5) / cluster - 0.5);
            const double x = r.pole.real() + gamma * std::tan(theta);
            if (std::abs(x) < edge) g.push_back(x);
        }
    }
    constexpr int tail = 2000;
    for (int k = 1; k <= tail; ++k) {
        const double x = 4.0 * w * std::pow(edge / (4.0 * w), static_cast<double>(k) / tail);
        g.push_back(x);
        g.push_back(-x);
    }
    std::sort(g.begin(), g.end());
    const double gap = 1e-12 * w;
    g.erase(std::unique(g.begin(), g.end(), [gap](double a, double b) { return b - a <= gap; }), g.end());
    return g;
}

bool has_peak_inversion(const GreensSet& set, double tol) {
    const auto a = spectral_function(set);
    for (const auto& r : set.resonances) {
        if (!(r.pole.real() > pole_tol) || !(r.residue.real() < -tol)) continue;
        const auto it = std::lower_bound(set.grid.begin(), set.grid.end(), r.pole.real());
        size_t idx = static_cast<size_t>(it - set.grid.begin());
        if (idx == set.grid.size()) --idx;
        if (idx > 0 && std::abs(set.grid[idx - 1] - r.pole.real()) < std::abs(set.grid[idx] - r.pole.real())) --idx;
        if (a[idx] < -tol) return true;
    }
    return false;
}

}  // namespace dpt::response
