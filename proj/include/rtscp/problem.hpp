#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "rtscp/convex_set.hpp"
#include "rtscp/types.hpp"

namespace rtscp {

struct ConvexSubproblem;

/// Twice continuously differentiable map g : R^n -> R^m given by callbacks.
/// component_hessian is optional; curvature queries fall back to central
/// differences of the Jacobian when it is absent.
struct NonlinearMap {
    int dim_in = 0;
    int dim_out = 0;
    std::function<Vector(const Vector&)> value;
    std::function<Matrix(const Vector&)> jacobian;
    std::function<Matrix(const Vector&, int)> component_hessian;  // nabla^2 g_i, may be null

    [[nodiscard]] bool has_hessians() const { return static_cast<bool>(component_hessian); }
};

/// Linear map g(x) = A x - b as a NonlinearMap.
NonlinearMap linear_map(Matrix A, Vector b);

/// Parametric problem  min c'x (+ 0.5 x'Hx)  s.t.  g(x) + M xi = 0,  x in Omega.
struct ParametricProblem {
    Vector c;
    std::optional<Matrix> H;  // convex quadratic cost term, absent for pure linear cost
    NonlinearMap g;
    Matrix M;
    ConvexSet omega;

    [[nodiscard]] int n() const { return static_cast<int>(c.size()); }
    [[nodiscard]] int m() const { return static_cast<int>(M.rows()); }
    [[nodiscard]] int p() const { return static_cast<int>(M.cols()); }

    /// Throws UsageError on any dimensional inconsistency, and if H is
    /// present but not symmetric PSD.
    void validate() const;

    /// Cost gradient c + Hx at x.
    [[nodiscard]] Vector cost_gradient(const Vector& x) const;
    [[nodiscard]] double cost_value(const Vector& x) const;
};

/// Evaluates g and its Jacobian, checking dimensions and finiteness.
/// Throws UsageError on a dimension mismatch and EvaluationError (naming the
/// offending component) on non-finite output.
std::pair<Vector, Matrix> evaluate(const ParametricProblem& problem, const Vector& x);

/// Projected KKT residual of the problem at z for parameter xi:
///   feasibility   = ||g(x) + M xi||_2
///   stationarity  = ||x - P_Omega(x - (c + Hx + g'(x)' lambda))||_2
/// The projection is exact clipping for a pure box and an interior-point
/// solve at `projection_tolerance` otherwise.
KKTResidual kkt_residual(const ParametricProblem& problem, const PrimalDualPoint& z, const Vector& xi,
                         double projection_tolerance = 1e-10);

/// Max relative error between the analytic Jacobian and central finite
/// differences with the given step: max_ij |J - J_fd| / max(1, |J|).
double check_jacobian(const ParametricProblem& problem, const Vector& x, double step = 1e-6);

struct LagrangianCurvature {
    Matrix E_g;    // sum_i lambda_i nabla^2 g_i(x)
    double kappa;  // Frobenius norm of E_g
};

/// Multiplier-weighted constraint curvature E_g(z) and kappa = ||E_g||_F.
/// Uses analytic component Hessians when available, otherwise central
/// differences of the Jacobian (step 1e-5). Throws CapabilityError if
/// Hessians are absent and allow_finite_difference is false.
LagrangianCurvature lagrangian_curvature(const ParametricProblem& problem, const PrimalDualPoint& z,
                                         bool allow_finite_difference = true);

/// Slater qualification check for an assembled subproblem: phase-I
/// minimization of the infinity-norm violation of the linearized equalities
/// over Omega tightened by 1e-6. True iff the optimal violation is <= 1e-8.
bool slater_check(const ConvexSubproblem& sub);

// --- JSON problem files ------------------------------------------------

/// Registers a builder that constructs the nonlinear map of a problem from
/// the "params" object of a JSON problem file.
using MapBuilder = std::function<NonlinearMap(const std::string& params_json)>;
void register_map_builder(const std::string& name, MapBuilder builder);
[[nodiscard]] bool has_map_builder(const std::string& name);

/// Loads a ParametricProblem from a JSON problem file: fields
/// n, m, p, c, H?, M, omega{lower, upper, lin_A?, lin_b?, quad[]} and
/// g{builder, params}. Bounds admit numbers, null or "inf"/"-inf" strings.
ParametricProblem load_problem_json(const std::string& path);
ParametricProblem parse_problem_json(const std::string& text);

}  // namespace rtscp
