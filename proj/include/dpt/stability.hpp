// stability.hpp: Verdicts on linearized fluctuation dynamics.
#pragma once

#include <optional>
#include <string>

#include "dpt/numerics.hpp"

namespace dpt {

enum class Verdict { Stable, Marginal, Unstable };

std::string to_string(Verdict v);

struct StabilityReport {
    ComplexVector eigenvalues;                   // full spectrum, numerics::eig ordering
    std::optional<Eigen::Index> constraint_index;  // structural zero mode, excluded from the verdict
    Verdict verdict = Verdict::Unstable;
    bool overdamped = false;
    std::optional<RealMatrix> covariance;

    bool stable() const { return verdict == Verdict::Stable; }
    double max_growth() const;  // max Re over non-constraint eigenvalues
};

// max Re < -tol is Stable, > tol is Unstable, Marginal in between.
Verdict classify_growth(double max_re, double tol = 1e-9);

// Overdamped: kappa > 0 and at least two real, distinct non-constraint eigenvalues.
StabilityReport assess(const ComplexVector& eigenvalues, std::optional<Eigen::Index> constraint,
                       double kappa, double tol = 1e-9);

}  // namespace dpt
