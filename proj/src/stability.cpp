// stability.cpp
#include "dpt/stability.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace dpt {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "stable";
        case Verdict::Marginal: return "marginal";
        case Verdict::Unstable: return "unstable";
    }
    return "unknown";
}

double StabilityReport::max_growth() const {
    double best = -std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < eigenvalues.size(); ++k)
        if (k != constraint_index) best = std::max(best, eigenvalues(k).real());
    return best;
}

Verdict classify_growth(double max_re, double tol) {
    if (max_re < -tol) return Verdict::Stable;
    if (max_re > tol) return Verdict::Unstable;
    return Verdict::Marginal;
}

StabilityReport assess(const ComplexVector& eigenvalues, std::optional<Eigen::Index> constraint,
                       double kappa, double tol) {
    StabilityReport r;
    r.eigenvalues = eigenvalues;
    r.constraint_index = constraint;
    r.verdict = classify_growth(r.max_growth(), tol);
    if (kappa > 0.0) {
        std::vector<double> reals;
        for (Eigen::Index k = 0; k < eigenvalues.size(); ++k)
            if (k != constraint && std::abs(eigenvalues(k).imag()) <= tol)
                reals.push_back(eigenvalues(k).real());
        for (size_t i = 0; i < reals.size() && !r.overdamped; ++i)
            for (size_t j = i + 1; j < reals.size(); ++j)
                if (std::abs(reals[i] - reals[j]) > tol) {
                    r.overdamped = true;
                    break;
                }
    }
    return r;
}

}  // namespace dpt
