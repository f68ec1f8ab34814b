#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace rtscp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Primal-dual pair z = (x, lambda). lambda holds the multipliers of the
/// nonlinear equality constraints g(x) + M xi = 0.
struct PrimalDualPoint {
    Vector x;
    Vector lambda;

    [[nodiscard]] int dimension() const { return static_cast<int>(x.size() + lambda.size()); }
};

/// L2 distance on the stacked pair (x, lambda).
inline double distance(const PrimalDualPoint& a, const PrimalDualPoint& b) {
    const double dx = (a.x - b.x).squaredNorm();
    const double dl = (a.lambda - b.lambda).squaredNorm();
    return std::sqrt(dx + dl);
}

struct KKTResidual {
    double stationarity = 0.0;
    double feasibility = 0.0;
    double total = 0.0;  // max(stationarity, feasibility)
};

/// Caller passed inconsistent dimensions or invalid options.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A problem function produced a non-finite value or could not be evaluated.
struct EvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numerical routine (interior point, phase-I, oracle) failed.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A requested capability (e.g. Hessians) is not available on this problem.
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rtscp
