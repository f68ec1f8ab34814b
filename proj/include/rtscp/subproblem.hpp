#pragma once

#include <optional>

#include "rtscp/convex_set.hpp"
#include "rtscp/problem.hpp"
#include "rtscp/types.hpp"

namespace rtscp {

/// Convex approximation of P(xi) at a linearization point:
///   min c'x (+ 0.5 x'Hx)  s.t.  A_eq x = b_eq,  x in Omega,
/// with A_eq = g'(x_lin) and b_eq = g'(x_lin) x_lin - g(x_lin) - M xi.
struct ConvexSubproblem {
    Vector x_lin;
    Matrix A_eq;
    Vector b_eq;
    Vector c;
    std::optional<Matrix> H;
    ConvexSet omega;

    [[nodiscard]] int n() const { return static_cast<int>(c.size()); }
    [[nodiscard]] int m() const { return static_cast<int>(A_eq.rows()); }

    /// The subproblem seen as a ParametricProblem with linear g (p = 0), for
    /// independent residual checks.
    [[nodiscard]] ParametricProblem as_parametric_problem() const;
};

ConvexSubproblem build_subproblem(const ParametricProblem& problem, const Vector& x_lin, const Vector& xi);

}  // namespace rtscp
