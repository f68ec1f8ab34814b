#include "rtscp/subproblem.hpp"

namespace rtscp {

ConvexSubproblem build_subproblem(const ParametricProblem& problem, const Vector& x_lin, const Vector& xi) {
    if (x_lin.size() != problem.n()) throw UsageError("build_subproblem: x_lin has wrong length");
    if (xi.size() != problem.p()) throw UsageError("build_subproblem: xi has wrong length");
    auto [g_val, jac] = evaluate(problem, x_lin);

    ConvexSubproblem sub;
    sub.x_lin = x_lin;
    sub.b_eq = jac * x_lin - g_val - problem.M * xi;
    sub.A_eq = std::move(jac);
    sub.c = problem.c;
    sub.H = problem.H;
    sub.omega = problem.omega;
    return sub;
}

ParametricProblem ConvexSubproblem::as_parametric_problem() const {
    ParametricProblem problem;
    problem.c = c;
    problem.H = H;
    problem.g = linear_map(A_eq, b_eq);
    problem.M = Matrix::Zero(m(), 0);
    problem.omega = omega;
    return problem;
}

}  // namespace rtscp
