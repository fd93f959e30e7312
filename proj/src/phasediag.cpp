// phasediag.cpp: Region classification for the KPO and IDTC models.
#include "dpt/phasediag.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dpt/errors.hpp"
#include "dpt/parallel.hpp"

namespace dpt::phasediag {

namespace {

double get(const ParamMap& m, const std::string& key, double fallback) {
    const auto it = m.find(key);
    return it == m.end() ? fallback : it->second;
}

void check_keys(Model model, const ParamMap& m) {
    const auto& names = parameter_names(model);
    for (const auto& [key, value] : m) {
        if (std::find(names.begin(), names.end(), key) == names.end())
            throw ValidationError("unknown " + to_string(model) + " parameter '" + key + "'");
        if (!std::isfinite(value)) throw ValidationError("parameter '" + key + "' must be finite");
    }
}

Region label(Model model, const ParamMap& params, Mode mode) { return classify_point(model, params, mode); }

ParamMap at(const ParamMap& base, const Segment& s, double t) {
    ParamMap m = base;
    m[s.x_name] = s.x0 + t * (s.x1 - s.x0);
    m[s.y_name] = s.y0 + t * (s.y1 - s.y0);
    return m;
}

}  // namespace

std::string to_string(Region r) {
    switch (r) {
        case Region::I: return "I";
        case Region::II: return "II";
        case Region::III: return "III";
        case Region::IIp: return "IIp";
        case Region::IIIp: return "IIIp";
        case Region::Unphys: return "UNPHYS";
    }
    return "?";
}

std::string to_string(Mode m) { return m == Mode::Closed ? "closed" : "open"; }
std::string to_string(Model m) { return m == Model::Kpo ? "kpo" : "idtc"; }

const std::vector<std::string>& parameter_names(Model model) {
    static const std::vector<std::string> kpo{"delta", "kerr", "g", "g_phase", "kappa"};
    static const std::vector<std::string> idtc{"omega_c", "omega_z", "lambda_x", "lambda_y", "kappa"};
    return model == Model::Kpo ? kpo : idtc;
}

kpo::KpoParams kpo_params(const ParamMap& m) {
    check_keys(Model::Kpo, m);
    kpo::KpoParams p;
    p.delta = get(m, "delta", 0.0);
    p.kerr = get(m, "kerr", 1.0);
    p.pump = std::polar(get(m, "g", 0.0), get(m, "g_phase", 0.0));
    p.kappa = get(m, "kappa", 0.0);
    kpo::validate(p);
    return p;
}

idtc::IdtcParams idtc_params(const ParamMap& m) {
    check_keys(Model::Idtc, m);
    idtc::IdtcParams p;
    p.omega_c = get(m, "omega_c", 1.0);
    p.omega_z = get(m, "omega_z", 1.0);
    p.lambda_x = get(m, "lambda_x", 0.0);
    p.lambda_y = get(m, "lambda_y", 0.0);
    p.kappa = get(m, "kappa", 0.0);
    idtc::validate(p);
    return p;
}

Region closed_label(const bogoliubov::QuadraticForm& np_form) {
    const auto spectrum = bogoliubov::diagonalize_excitations(np_form);
    if (!spectrum.all_physical()) return Region::II;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> sa(np_form.h, Eigen::EigenvaluesOnly);
    const double tol = 1e-12 * std::max(1.0, np_form.h.norm());
    return sa.eigenvalues().minCoeff() >= -tol ? Region::I : Region::III;
}

Attractors attractors(Model model, const ParamMap& params) {
    Attractors a;
    if (model == Model::Kpo) {
        const auto p = kpo_params(params);
        for (const auto& s : kpo::open_steady_states(p)) {
            const bool stable = kpo::stability(p, s).verdict != Verdict::Unstable;
            if (s.label == kpo::KpoLabel::NP)
                a.np_stable = stable;
            else
                a.broken_stable = a.broken_stable || stable;
        }
    } else {
        const auto p = idtc_params(params);
        for (const auto& s : idtc::open_steady_states(p)) {
            const bool stable = idtc::stability(p, s).verdict != Verdict::Unstable;
            if (s.label == idtc::IdtcLabel::NP)
                a.np_stable = stable;
            else
                a.broken_stable = a.broken_stable || stable;
        }
    }
    return a;
}

Region classify_point(Model model, const ParamMap& params, Mode mode) {
    Region closed;
    if (model == Model::Kpo) {
        auto p = kpo_params(params);
        // Negative Kerr is the mirror image of positive Kerr.
        if (p.kerr < 0.0) p = kpo::mirrored(p);
        closed = closed_label(kpo::closed_excitation_form(p, kpo::KpoState{}));
    } else {
        closed = closed_label(idtc::np_form(idtc_params(params)));
    }
    if (mode == Mode::Closed) return closed;

    const auto a = attractors(model, params);
    if (a.np_stable && a.broken_stable) return Region::III;
    if (a.broken_stable) return Region::II;
    if (!a.np_stable) return Region::Unphys;
    switch (closed) {
        case Region::II: return Region::IIp;
        case Region::III: return Region::IIIp;
        default: return Region::I;
    }
}

double Axis::value(int i) const { return count == 1 ? min : min + (max - min) * i / (count - 1); }

PhaseDiagramGrid sweep(Model model, const ParamMap& base, const Axis& x, const Axis& y, Mode mode,
                       unsigned threads) {
    for (const Axis* a : {&x, &y}) {
        const auto& names = parameter_names(model);
        if (std::find(names.begin(), names.end(), a->name) == names.end())
            throw ValidationError("sweep axis '" + a->name + "' is not a " + to_string(model) + " parameter");
        if (a->count < 1 || !std::isfinite(a->min) || !std::isfinite(a->max))
            throw ValidationError("sweep axis '" + a->name + "' needs count >= 1 and finite bounds");
    }
    if (x.name == y.name) throw ValidationError("sweep axes must differ");
    const size_t total = static_cast<size_t>(x.count) * static_cast<size_t>(y.count);
    if (total > 1000000) throw ValidationError("sweep grid exceeds 10^6 points");

    PhaseDiagramGrid grid{x, y, std::vector<Region>(total, Region::Unphys)};
    parallel_for(total, threads, [&](size_t k) {
        ParamMap m = base;
        m[x.name] = x.value(static_cast<int>(k % static_cast<size_t>(x.count)));
        m[y.name] = y.value(static_cast<int>(k / static_cast<size_t>(x.count)));
        grid.labels[k] = label(model, m, mode);
    });
    return grid;
}

BoundaryPoint trace_boundary(Model model, const ParamMap& base, Mode mode, const Segment& seg, double tol) {
    const Region lo_label = label(model, at(base, seg, 0.0), mode);
    const Region hi_label = label(model, at(base, seg, 1.0), mode);
    if (lo_label == hi_label) {
        std::ostringstream os;
        os << "trace_boundary: both ends of the segment are in region " << to_string(lo_label);
        throw BracketingError(os.str());
    }
    const double length = std::hypot(seg.x1 - seg.x0, seg.y1 - seg.y0);
    double lo = 0.0, hi = 1.0;
    Region hi_now = hi_label;
    while ((hi - lo) * length > tol) {
        const double mid = 0.5 * (lo + hi);
        const Region r = label(model, at(base, seg, mid), mode);
        if (r == lo_label) {
            lo = mid;
        } else {
            hi = mid;
            hi_now = r;
        }
    }
    const double t = 0.5 * (lo + hi);
    return {seg.x0 + t * (seg.x1 - seg.x0), seg.y0 + t * (seg.y1 - seg.y0), lo_label, hi_now};
}

std::vector<BoundaryPoint> boundary_points(Model model, const ParamMap& base, Mode mode, const Axis& x,
                                           const Axis& y, unsigned threads, double tol) {
    const auto grid = sweep(model, base, x, y, mode, threads);
    std::vector<Segment> brackets;
    for (int iy = 0; iy < y.count; ++iy)
        for (int ix = 0; ix + 1 < x.count; ++ix)
            if (grid.at(ix, iy) != grid.at(ix + 1, iy))
                brackets.push_back({x.name, y.name, x.value(ix), y.value(iy), x.value(ix + 1), y.value(iy)});
    std::vector<BoundaryPoint> out(brackets.size());
    parallel_for(brackets.size(), threads,
                 [&](size_t k) { out[k] = trace_boundary(model, base, mode, brackets[k], tol); });
    return out;
}

}  // namespace dpt::phasediag
