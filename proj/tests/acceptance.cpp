// acceptance.cpp: one PASS/FAIL line per acceptance criterion.
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "dpt/bogoliubov.hpp"
#include "dpt/idtc.hpp"
#include "dpt/kpo.hpp"
#include "dpt/oscillator.hpp"
#include "dpt/phasediag.hpp"
#include "dpt/response.hpp"

using namespace dpt;
namespace fs = std::filesystem;

namespace {

const cplx I(0, 1);
int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
    std::printf("%s  criterion %2d  %s  [%s]\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

template <typename... A>
std::string fmt(const char* f, A... a) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

double nearest(const std::vector<cplx>& v, cplx z) {
    double d = INFINITY;
    for (cplx x : v) d = std::min(d, std::abs(x - z));
    return d;
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------- 1
void criterion1() {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> u(0, 1);
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0;
    int count_bad = 0, existence_bad = 0, unmatched = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const double delta = -2 + 4 * u(rng), g = u(rng), kappa = 0.5 * u(rng), uk = u(rng) < 0.5 ? 1.0 : -1.0;
        const kpo::KpoParams p{delta, uk, std::polar(g, 2 * std::numbers::pi * u(rng)), kappa};
        const auto closed = kpo::open_steady_states(p);
        const auto numeric = kpo::open_steady_states_numeric(p, 1e-12).states;

        // existence: n = (delta -+ S)/U with S^2 = |G|^2 - kappa^2, n > 0
        int expected = 1;
        const double s2 = g * g - kappa * kappa;
        if (s2 >= 0) {
            const double s = std::sqrt(s2);
            if ((delta - s) / uk > 0) expected += 2;
            if (s > 0 && (delta + s) / uk > 0) expected += 2;
        }
        const int n = static_cast<int>(closed.size());
        if (n != 1 && n != 3 && n != 5) ++count_bad;
        if (n != expected) ++existence_bad;
        if (numeric.size() != closed.size()) ++unmatched;

        std::vector<cplx> num;
        for (const auto& r : numeric) num.emplace_back(r(0), r(1));
        std::vector<cplx> cl;
        for (const auto& s : closed) cl.push_back(s.alpha);
        for (cplx a : cl) worst = std::max(worst, nearest(num, a));
        for (cplx a : num) worst = std::max(worst, nearest(cl, a));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(1, "KPO closed-form vs Newton steady states",
           worst < 1e-8 && count_bad == 0 && existence_bad == 0 && unmatched == 0 && secs < 10,
           fmt("500 points, max |alpha diff| %.2e (tol 1e-8), count not in {1,3,5}: %d, existence mismatch: %d, "
               "count mismatch: %d, %.2f s (limit 10 s)",
               worst, count_bad, existence_bad, unmatched, secs));
}

// ---------------------------------------------------------------- 2
void criterion2() {
    std::mt19937 rng(202);
    std::uniform_real_distribution<double> u(0, 1);
    double worst = 0;
    int used = 0;
    while (used < 500) {
        const kpo::KpoParams p{-2 + 4 * u(rng), 1.0, std::polar(u(rng), 2 * std::numbers::pi * u(rng)),
                               0.05 + 0.5 * u(rng)};
        const RealMatrix j = kpo::jacobian(p, 0.0);
        if (!(numerics::spectral_abscissa(j) < -1e-6)) continue;
        const RealMatrix k = numerics::solve_lyapunov(j, RealMatrix(2 * p.kappa * RealMatrix::Identity(2, 2)));
        const auto [vr, vi] = kpo::np_variance_closed_form(p);
        worst = std::max({worst, std::abs(vr - k(0, 0)), std::abs(vi - k(1, 1))});
        ++used;
    }
    const kpo::KpoParams vac{0.0, 1.0, 0.0, 0.3};
    const auto [vr, vi] = kpo::np_variance_closed_form(vac);
    const RealMatrix j0 = kpo::jacobian(vac, 0.0);
    const RealMatrix k0 = numerics::solve_lyapunov(j0, RealMatrix(0.6 * RealMatrix::Identity(2, 2)));
    const bool vacuum = vr == 1.0 && vi == 1.0 && std::abs(k0(0, 0) - 1) < 1e-14 && std::abs(k0(1, 1) - 1) < 1e-14;
    report(2, "KPO NP variance closed form vs Lyapunov", worst < 1e-10 && vacuum,
           fmt("500 stable points, max diff %.2e (tol 1e-10); vacuum closed (%.17g, %.17g), Lyapunov (%.17g, %.17g)",
               worst, vr, vi, k0(0, 0), k0(1, 1)));
}

// ---------------------------------------------------------------- 3
double max_variance_jump(int points, double* min_var) {
    double jump = 0, lo = INFINITY;
    double prev_r = 0, prev_i = 0;
    for (int i = 0; i < points; ++i) {
        const double d = -1.0 + 2.0 * i / (points - 1);
        const auto [vr, vi] = kpo::np_variance_closed_form({d, 1.0, 0.3, 0.4});
        if (i > 0) jump = std::max({jump, std::abs(vr - prev_r), std::abs(vi - prev_i)});
        prev_r = vr;
        prev_i = vi;
        lo = std::min({lo, vr, vi});
    }
    if (min_var) *min_var = lo;
    return jump;
}

void criterion3() {
    const int n = 2001;
    // contiguous run of grid points with real, split, negative eigenvalues
    int run = 0, best_run = 0, runs = 0;
    double run_lo = 0, run_hi = 0, cur_lo = 0;
    bool prev = false;
    for (int i = 0; i < n; ++i) {
        const double d = -1.0 + 2.0 * i / (n - 1);
        const auto [e1, e2] = kpo::fluctuation_eigenvalues({d, 1.0, 0.3, 0.4}, {});
        const bool in = e1.imag() == 0 && e2.imag() == 0 && std::abs(e1 - e2) > 1e-12 && e1.real() < 0 &&
                        e2.real() < 0;
        if (in) {
            if (!prev) {
                ++runs;
                cur_lo = d;
                run = 0;
            }
            ++run;
            if (run > best_run) {
                best_run = run;
                run_lo = cur_lo;
                run_hi = d;
            }
        }
        prev = in;
    }
    double min_var = 0;
    const double jump = max_variance_jump(n, &min_var);
    const double fine = max_variance_jump(10 * (n - 1) + 1, nullptr);
    const bool ok = runs == 1 && best_run > 1 && jump < 1e-3 && min_var < 1;
    report(3, "KPO exceptional-point interval and variance continuity", ok,
           fmt("real split interval [%.4f, %.4f] (%d run), max adjacent variance jump %.3e (tol 1e-3) on %d points, "
               "%.3e on %d points, min Var %.5f",
               run_lo, run_hi, runs, jump, n, fine, 10 * (n - 1) + 1, min_var));
}

// ---------------------------------------------------------------- 4
void criterion4() {
    const auto grid = response::linspace(-4, 4, 8001);
    auto spectra_at = [&](double delta) {
        const auto ff = kpo::keldysh_fluctuation_form({delta, 1.0, 0.5, 0.3}, {});
        return response::spectra(response::green_functions(ff, grid));
    };
    const auto lower = spectra_at(-1.0), upper = spectra_at(1.0);
    // largest-|A| interior local extremum on w > 0
    auto extremum = [&](const response::SpectraTable& t) {
        double best = 0, at = 0;
        for (size_t i = 1; i + 1 < grid.size(); ++i) {
            if (!(grid[i - 1] > 0)) continue;
            const double l = t.a[i] - t.a[i - 1], r = t.a[i + 1] - t.a[i];
            if (l * r < 0 && std::abs(t.a[i]) > std::abs(best)) {
                best = t.a[i];
                at = grid[i];
            }
        }
        return std::pair{best, at};
    };
    const auto [a_lo, w_lo] = extremum(lower);
    const auto [a_hi, w_hi] = extremum(upper);
    double s_min = INFINITY, s_asym = 0;
    for (size_t i = 0; i < grid.size(); ++i) {
        s_min = std::min({s_min, lower.s[i], upper.s[i]});
        s_asym = std::max(s_asym, std::abs(lower.s[i] - upper.s[i]));
    }
    const bool ok = a_lo > 0 && a_hi < 0 && s_min >= -1e-10 && s_asym < 1e-8;
    report(4, "KPO peak inversion and fluorescence symmetry", ok,
           fmt("delta=-1: extremum A=%.5f at w=%.4f; delta=+1: extremum A=%.5f at w=%.4f; min S %.2e (tol -1e-10); "
               "max |S(-1)-S(+1)| %.2e (tol 1e-8)",
               a_lo, w_lo, a_hi, w_hi, s_min, s_asym));
}

// ---------------------------------------------------------------- 5
void criterion5() {
    std::mt19937 rng(505);
    std::uniform_real_distribution<double> u(0, 1);
    const auto grid = response::linspace(-3, 3, 121);
    double pole_err = 0, route_err = 0;
    int kpo_np = 0, kpo_pps = 0;
    while (kpo_np + kpo_pps < 100) {
        const kpo::KpoParams p{-2 + 4 * u(rng), u(rng) < 0.5 ? 1.0 : -1.0,
                               std::polar(u(rng), 2 * std::numbers::pi * u(rng)), 0.05 + 0.5 * u(rng)};
        for (const auto& s : kpo::open_steady_states(p)) {
            const auto st = kpo::stability(p, s);
            if (!st.stable()) continue;
            const auto ff = kpo::keldysh_fluctuation_form(p, s);
            std::vector<cplx> poles, ie;
            for (const auto& r : response::resonances(ff)) poles.push_back(r.pole);
            for (Eigen::Index k = 0; k < st.eigenvalues.size(); ++k) ie.push_back(I * st.eigenvalues(k));
            for (cplx z : poles) pole_err = std::max(pole_err, nearest(ie, z));
            for (cplx z : ie) pole_err = std::max(pole_err, nearest(poles, z));

            const auto a = response::green_functions(ff, grid);
            const auto b = response::response_from_jacobian(kpo::fluctuation_matrix(p, s), kpo::field_map(),
                                                             {p.kappa}, grid);
            for (size_t i = 0; i < grid.size(); ++i)
                route_err = std::max({route_err, max_abs(a.gr[i] - b.gr[i]), max_abs(a.gk[i] - b.gk[i])});
            (s.label == kpo::KpoLabel::NP ? kpo_np : kpo_pps)++;
        }
    }
    int idtc_np = 0;
    while (idtc_np < 100) {
        const idtc::IdtcParams p{0.5 + u(rng), 0.5 + u(rng), 0.6 * u(rng), 0.6 * u(rng), 0.05 + 0.3 * u(rng)};
        const auto st = idtc::stability(p, idtc::normal_phase());
        if (!st.stable()) continue;
        const auto ff = idtc::keldysh_fluctuation_form_np(p);
        std::vector<cplx> poles, ie;
        for (const auto& r : response::resonances(ff)) poles.push_back(r.pole);
        for (Eigen::Index k = 0; k < st.eigenvalues.size(); ++k)
            if (static_cast<std::optional<Eigen::Index>>(k) != st.constraint_index) ie.push_back(I * st.eigenvalues(k));
        for (cplx z : poles) pole_err = std::max(pole_err, nearest(ie, z));
        for (cplx z : ie) pole_err = std::max(pole_err, nearest(poles, z));

        const auto td = idtc::tangent_dynamics(p, idtc::normal_phase());
        const auto a = response::green_functions(ff, grid);
        const auto b = response::response_from_jacobian(td.m, td.field_map, {p.kappa, 0.0}, grid);
        for (size_t i = 0; i < grid.size(); ++i)
            route_err = std::max({route_err, max_abs(a.gr[i] - b.gr[i]), max_abs(a.gk[i] - b.gk[i])});
        ++idtc_np;
    }
    report(5, "Green's function pole duality and dual-route agreement", pole_err < 1e-8 && route_err < 1e-8,
           fmt("%d KPO NP + %d KPO PPS + %d IDTC NP stable points; max pole-eigenvalue mismatch %.2e, "
               "max quadratic-form vs Jacobian route diff %.2e (tol 1e-8)",
               kpo_np, kpo_pps, idtc_np, pole_err, route_err));
}

// ---------------------------------------------------------------- 6
void criterion6() {
    struct Case {
        const char* name;
        response::FluctuationForm ff;
    };
    const std::vector<Case> cases{
        {"HO", oscillator::lab_form(1.0, 0.1)},
        {"KPO NP", kpo::keldysh_fluctuation_form({1.0, 1.0, 0.5, 0.3}, {})},
        {"IDTC NP", idtc::keldysh_fluctuation_form_np({1.0, 1.0, 0.3, 0.1, 0.1})},
    };
    double worst = 0;
    std::string detail;
    for (const auto& c : cases) {
        const auto set = response::retarded_green(c.ff, response::make_grid(response::resonances(c.ff)));
        const double w = response::integrate(set.grid, response::spectral_function(set)) / (2 * std::numbers::pi);
        worst = std::max(worst, std::abs(w - 1));
        detail += fmt("%s %.7f; ", c.name, w);
    }
    report(6, "spectral sum rule", worst < 1e-3, detail + fmt("max deviation %.2e (tol 1e-3)", worst));
}

// ---------------------------------------------------------------- 7
void criterion7() {
    std::mt19937 rng(707);
    std::uniform_real_distribution<double> u(0, 1);
    double worst = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const double wc = 0.2 + 2 * u(rng), wz = 0.2 + 2 * u(rng);
        auto unstable = [&](double lam) {
            return idtc::stability({wc, wz, lam, 0.0, 0.0}, idtc::normal_phase()).verdict == Verdict::Unstable;
        };
        double lo = 0, hi = 2 * std::sqrt(wc * wz);
        while (hi - lo > 1e-10) {
            const double mid = 0.5 * (lo + hi);
            (unstable(mid) ? hi : lo) = mid;
        }
        worst = std::max(worst, std::abs(0.5 * (lo + hi) - std::sqrt(wc * wz) / 2));
    }
    double tc = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const double w = 0.2 + 2 * u(rng), lam = 0.5 * w * u(rng);
        const auto e = idtc::closed_np_excitations({w, w, lam, lam, 0.0});
        tc = std::max(tc, std::abs(e.soft - (w - 2 * lam)));
        std::vector<cplx> freqs;
        for (const auto& m : e.spectrum.modes) freqs.push_back(m.frequency);
        tc = std::max(tc, nearest(freqs, w - 2 * lam));
    }
    report(7, "IDTC closed critical coupling and Tavis-Cummings soft mode", worst < 1e-6 && tc < 1e-10,
           fmt("20 (wc, wz): max |lambda_bisect - sqrt(wc wz)/2| %.2e (tol 1e-6); soft mode vs w-2 lambda %.2e "
               "(tol 1e-10)",
               worst, tc));
}

// ---------------------------------------------------------------- 8
void criterion8() {
    const auto grid = response::linspace(-3, 3, 801);
    double worst = 0;
    for (auto [lx, ly] : {std::pair{0.3, 0.0}, {0.2, 0.2}, {0.3, 0.1}}) {
        const idtc::IdtcParams p{1, 1, lx, ly, 0.1};
        const auto set = response::retarded_green(idtc::keldysh_fluctuation_form_np(p), grid);
        for (size_t i = 0; i < grid.size(); ++i)
            worst = std::max(worst, std::abs(set.gr[i](0, 0) - idtc::np_retarded_green_closed_form(p, grid[i])));
    }
    double free = 0;
    for (double w : grid)
        free = std::max(free, std::abs(idtc::np_retarded_green_closed_form({1, 1, 0, 0, 0.1}, w) -
                                       1.0 / (w - 1.0 + I * 0.1)));
    report(8, "IDTC NP closed-form Green's function", worst < 1e-8 && free < 1e-14,
           fmt("3 coupling pairs x 801 points: max diff %.2e (tol 1e-8); lambda=0 vs 1/(w-wc+i kappa) %.2e", worst,
               free));
}

// ---------------------------------------------------------------- 9
void criterion9() {
    auto np_inverted = [](const idtc::IdtcParams& p) {
        const auto ff = idtc::keldysh_fluctuation_form_np(p);
        return response::has_peak_inversion(response::retarded_green(ff, response::make_grid(response::resonances(ff))));
    };
    const idtc::IdtcParams enp{1, 1, 0.8, 0.7, 0.1}, below{1, 1, 0.3, 0.1, 0.1};
    const bool enp_stable = idtc::stability(enp, idtc::normal_phase()).stable();
    const bool above = enp.lambda_x > idtc::critical_coupling(enp) && enp.lambda_y > idtc::critical_coupling(enp);
    const bool inv_enp = np_inverted(enp), inv_below = np_inverted(below);

    int sp_checked = 0, sp_inverted = 0;
    for (const auto& p : {enp, idtc::IdtcParams{1, 1, 0.7, 0.0, 0.1}}) {
        for (const auto& s : idtc::open_steady_states(p)) {
            if (s.label != idtc::IdtcLabel::SP || !idtc::stability(p, s).stable()) continue;
            const auto td = idtc::tangent_dynamics(p, s);
            const auto rs = response::resonances_from_jacobian(td.m, td.field_map);
            const auto set = response::response_from_jacobian(td.m, td.field_map, {p.kappa, 0.0}, response::make_grid(rs));
            ++sp_checked;
            sp_inverted += response::has_peak_inversion(set);
        }
    }
    const bool ok = enp_stable && above && inv_enp && !inv_below && sp_checked > 0 && sp_inverted == 0;
    report(9, "IDTC soft-mode peak inversion", ok,
           fmt("e-NP (0.8, 0.7) stable=%d inverted=%d; NP (0.3, 0.1) inverted=%d; stable SP spectra checked %d, "
               "inverted %d",
               enp_stable, inv_enp, inv_below, sp_checked, sp_inverted));
}

// ---------------------------------------------------------------- 10
bool adjacent(const phasediag::PhaseDiagramGrid& g, phasediag::Region a, phasediag::Region b, bool along_x) {
    for (int iy = 0; iy < g.y.count; ++iy)
        for (int ix = 0; ix < g.x.count; ++ix) {
            const int jx = along_x ? ix + 1 : ix, jy = along_x ? iy : iy + 1;
            if (jx >= g.x.count || jy >= g.y.count) continue;
            const auto r = g.at(ix, iy), s = g.at(jx, jy);
            if ((r == a && s == b) || (r == b && s == a)) return true;
        }
    return false;
}

void criterion10() {
    using phasediag::Region;
    const unsigned threads = 1;
    const phasediag::ParamMap kpo_base{{"kerr", 1.0}, {"kappa", 0.4}};
    const phasediag::Axis dx{"delta", -2, 2, 101}, gy{"g", 0, 2, 101};
    const auto open = phasediag::sweep(phasediag::Model::Kpo, kpo_base, dx, gy, phasediag::Mode::Open, threads);
    const std::set<Region> open_labels(open.labels.begin(), open.labels.end());
    const bool five = open_labels == std::set<Region>{Region::I, Region::II, Region::III, Region::IIp, Region::IIIp};
    const bool iip_i = adjacent(open, Region::IIp, Region::I, true);
    const bool iip_iiip = adjacent(open, Region::IIp, Region::IIIp, true);
    const bool iip_iii_g = adjacent(open, Region::IIp, Region::III, false);

    const phasediag::ParamMap closed_base{{"kerr", 1.0}};
    const phasediag::Axis cx{"delta", -2, 2, 101}, cy{"g", 0.02, 2, 100};
    const auto closed = phasediag::sweep(phasediag::Model::Kpo, closed_base, cx, cy, phasediag::Mode::Closed, threads);
    const std::set<Region> closed_labels(closed.labels.begin(), closed.labels.end());
    const bool three = closed_labels == std::set<Region>{Region::I, Region::II, Region::III};
    double boundary_err = 0;
    const auto pts = phasediag::boundary_points(phasediag::Model::Kpo, closed_base, phasediag::Mode::Closed, cx, cy, threads);
    for (const auto& b : pts) {
        const double expected = b.from == Region::I || b.to == Region::I ? -b.y : b.y;
        boundary_err = std::max(boundary_err, std::abs(b.x - expected));
    }

    // IDTC: NP-only diagonal separating superradiant lobes on either side
    const phasediag::ParamMap idtc_base{{"omega_c", 1.0}, {"omega_z", 1.0}, {"kappa", 0.1}};
    const int n = 41;
    const phasediag::Axis lx{"lambda_x", 0, 1.2, n}, ly{"lambda_y", 0, 1.2, n};
    const auto idtc = phasediag::sweep(phasediag::Model::Idtc, idtc_base, lx, ly, phasediag::Mode::Open, threads);
    auto sp = [](Region r) { return r == Region::II || r == Region::III; };
    auto np_only = [](Region r) { return r == Region::I || r == Region::IIp || r == Region::IIIp; };
    bool diagonal_np = true;
    int separated_rows = 0;
    for (int i = 0; i < n; ++i) {
        if (!np_only(idtc.at(i, i))) diagonal_np = false;
        bool left = false, right = false;
        for (int j = 0; j < i; ++j) left = left || sp(idtc.at(j, i));
        for (int j = i + 1; j < n; ++j) right = right || sp(idtc.at(j, i));
        separated_rows += left && right;
    }
    const bool ok = five && iip_i && iip_iiip && iip_iii_g && three && pts.size() == 2 * 100 && boundary_err < 1e-5 &&
                    diagonal_np && separated_rows > 0;
    report(10, "phase-diagram topology", ok,
           fmt("KPO open labels %zu/5 exact=%d, IIp-I %d, IIp-IIIp %d along delta, IIp-III %d along g; closed labels "
               "exact=%d, %zu boundary points, max |delta - (-+)|G|| %.2e (tol 1e-5); IDTC diagonal NP-only=%d, rows "
               "with SP on both sides of the diagonal %d",
               open_labels.size(), five, iip_i, iip_iiip, iip_iii_g, three, pts.size(), boundary_err, diagonal_np,
               separated_rows));
}

// ---------------------------------------------------------------- 11
void criterion11() {
    std::mt19937 rng(1111);
    std::uniform_real_distribution<double> u(0, 1);
    bool coalesce = true;
    for (int trial = 0; trial < 50; ++trial) {
        const double w0 = 0.1 + 2 * u(rng);
        const oscillator::OscParams at{w0, 2 * w0, 1.0};
        const auto [a, b] = oscillator::overdamped_eigenvalues(at);
        coalesce = coalesce && a == b && !oscillator::is_overdamped(at) &&
                   oscillator::is_overdamped({w0, 2 * w0 * (1 + 1e-12), 1.0}) &&
                   !oscillator::is_overdamped({w0, 2 * w0 * (1 - 1e-12), 1.0});
    }
    double worst = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const oscillator::OscParams p{0.1 + 2 * u(rng), 0.05 + 3 * u(rng), 0.1 + 2 * u(rng)};
        RealMatrix a(2, 2), d = RealMatrix::Zero(2, 2);
        a << 0, 1, -p.omega0 * p.omega0, -p.kappa;
        d(1, 1) = p.sigma * p.sigma;
        const RealMatrix k = numerics::solve_lyapunov(a, d);
        const auto [vx, vp] = oscillator::overdamped_variance(p);
        worst = std::max({worst, std::abs(vx - k(0, 0)) / std::max(1.0, k(0, 0)), std::abs(vp - k(1, 1))});
    }
    report(11, "overdamped oscillator", coalesce && worst < 1e-10,
           fmt("coalescence exactly at kappa=2 w0 on 50 points: %d; 200 variance checks, max diff %.2e (tol 1e-10)",
               coalesce, worst));
}

// ---------------------------------------------------------------- 12
int run_cli(const std::string& args, const std::string& env) {
    const std::string cmd = env + " \"" DPT_BINARY "\" " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void criterion12() {
    const fs::path dir = fs::temp_directory_path() / ("dpt_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const auto write = [&](const char* name, const char* text) {
        std::ofstream(dir / name, std::ios::binary) << text;
        return (dir / name).string();
    };
    const auto resp = write("resp.conf", "model = kpo\ndelta = 1\ng = 0.5\nkappa = 0.3\n");
    const auto swp = write("sweep.conf", "model = kpo\nkappa = 0.4\nx_count = 41\ny_count = 41\n");
    const auto isw = write("isweep.conf", "model = idtc\nkappa = 0.1\nx_count = 13\ny_count = 13\n");
    bool codes = true, identical = true;
    auto pair = [&](const std::string& cmd, const std::string& cfg, const std::string& extra, const char* env1,
                    const char* env2) {
        const auto a = dir / "a.out", b = dir / "b.out";
        codes = codes && run_cli(cmd + " --config " + cfg + extra + " --out " + a.string(), env1) == 0;
        codes = codes && run_cli(cmd + " --config " + cfg + extra + " --out " + b.string(), env2) == 0;
        const auto sa = slurp(a);
        identical = identical && !sa.empty() && sa == slurp(b);
    };
    pair("response", resp, "", "DPT_THREADS=2", "DPT_THREADS=2");
    pair("steady-states", resp, " --format json", "", "");
    pair("sweep", swp, "", "DPT_THREADS=1", "DPT_THREADS=4");
    pair("sweep", isw, "", "DPT_THREADS=1", "DPT_THREADS=3");

    const phasediag::ParamMap base{{"kappa", 0.4}};
    const phasediag::Axis x{"delta", -2, 2, 31}, y{"g", 0, 2, 31};
    const bool lib = phasediag::sweep(phasediag::Model::Kpo, base, x, y, phasediag::Mode::Open, 1).labels ==
                     phasediag::sweep(phasediag::Model::Kpo, base, x, y, phasediag::Mode::Open, 4).labels;
    fs::remove_all(dir);
    report(12, "determinism", codes && identical && lib,
           fmt("CLI exit codes ok=%d, repeated outputs byte-identical (response, JSON, sweeps across DPT_THREADS)=%d, "
               "library sweep 1 vs 4 threads identical=%d",
               codes, identical, lib));
}

}  // namespace

int main() {
    const std::vector<std::function<void()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                      criterion5, criterion6, criterion7, criterion8,
                                                      criterion9, criterion10, criterion11, criterion12};
    for (size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i]();
        } catch (const std::exception& e) {
            std::printf("FAIL  criterion %2zu  aborted: %s\n", i + 1, e.what());
            ++failures;
        }
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
