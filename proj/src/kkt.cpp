#include "rtscp/ip_solver.hpp"
#include "rtscp/problem.hpp"

namespace rtscp {

KKTResidual kkt_residual(const ParametricProblem& problem, const PrimalDualPoint& z, const Vector& xi,
                         double projection_tolerance) {
    if (z.x.size() != problem.n() || z.lambda.size() != problem.m() || xi.size() != problem.p()) {
        throw UsageError("kkt_residual: dimensions inconsistent with problem");
    }
    const auto [g_val, jac] = evaluate(problem, z.x);

    KKTResidual res;
    res.feasibility = (g_val + problem.M * xi).norm();
    const Vector grad = problem.cost_gradient(z.x) + jac.transpose() * z.lambda;
    const Vector projected = project_onto_omega(problem.omega, z.x - grad, projection_tolerance);
    res.stationarity = (z.x - projected).norm();
    res.total = std::max(res.stationarity, res.feasibility);
    return res;
}

}  // namespace rtscp
