// phasediag.hpp: Region labels, 2-D sweeps and boundary bisection.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "dpt/idtc.hpp"
#include "dpt/kpo.hpp"

namespace dpt::phasediag {

enum class Region { I, II, III, IIp, IIIp, Unphys };
enum class Mode { Closed, Open };
enum class Model { Kpo, Idtc };

std::string to_string(Region r);
std::string to_string(Mode m);
std::string to_string(Model m);

using ParamMap = std::map<std::string, double>;

// KPO keys: delta, kerr, g, g_phase, kappa (pump = g e^{i g_phase}).
kpo::KpoParams kpo_params(const ParamMap& m);
// IDTC keys: omega_c, omega_z, lambda_x, lambda_y, kappa.
idtc::IdtcParams idtc_params(const ParamMap& m);
const std::vector<std::string>& parameter_names(Model model);

// I: quadratic form positive semidefinite, II: some complex frequency, III: otherwise.
Region closed_label(const bogoliubov::QuadraticForm& np_form);

// Marginal states (no growing mode) count as attractors.
struct Attractors {
    bool np_stable = false;
    bool broken_stable = false;  // some symmetry-broken steady state is not unstable
};

Attractors attractors(Model model, const ParamMap& params);

Region classify_point(Model model, const ParamMap& params, Mode mode);

struct Axis {
    std::string name;
    double min = 0.0, max = 1.0;
    int count = 2;

    double value(int i) const;
};

struct PhaseDiagramGrid {
    Axis x, y;
    std::vector<Region> labels;  // row-major in y: labels[iy * x.count + ix]

    Region at(int ix, int iy) const { return labels[static_cast<size_t>(iy * x.count + ix)]; }
};

// Result is independent of the thread count.
PhaseDiagramGrid sweep(Model model, const ParamMap& base, const Axis& x, const Axis& y, Mode mode,
                       unsigned threads = 1);

struct Segment {
    std::string x_name, y_name;
    double x0, y0, x1, y1;
};

struct BoundaryPoint {
    double x, y;
    Region from, to;
};

// Bisection along the segment until the bracket is shorter than tol.
// Throws BracketingError when both ends carry the same label.
BoundaryPoint trace_boundary(Model model, const ParamMap& base, Mode mode, const Segment& seg,
                             double tol = 1e-6);

// Every label change between adjacent x samples of every y row, bisected.
std::vector<BoundaryPoint> boundary_points(Model model, const ParamMap& base, Mode mode, const Axis& x,
                                           const Axis& y, unsigned threads = 1, double tol = 1e-6);

}  // namespace dpt::phasediag
