#include "rtscp/scp.hpp"

#include <algorithm>

#include "rtscp/subproblem.hpp"

namespace rtscp {

void ScpConfig::validate() const {
    if (stop_tolerance <= 0) throw UsageError("scp config: stop_tolerance must be positive");
    if (step_tolerance <= 0) throw UsageError("scp config: step_tolerance must be positive");
    if (max_outer_iterations < 1) throw UsageError("scp config: max_outer_iterations must be at least 1");
    subproblem.validate();
}

const char* to_string(ScpStatus status) {
    switch (status) {
        case ScpStatus::Converged: return "Converged";
        case ScpStatus::MaxIterations: return "MaxIterations";
        case ScpStatus::SubproblemFailure: return "SubproblemFailure";
    }
    return "Unknown";
}

ScpReport solve_scp(const ParametricProblem& problem, const Vector& xi, const Vector& x0,
                    const ScpConfig& config) {
    config.validate();
    if (xi.size() != problem.p()) throw UsageError("solve_scp: xi has wrong length");
    if (x0.size() != problem.n()) throw UsageError("solve_scp: x0 has wrong length");

    ScpReport report;
    Vector x = x0;
    if (!problem.omega.contains(x, 1e-9)) {
        x = project_onto_omega(problem.omega, x);
        report.projected_start = true;
    }

    PrimalDualPoint z{x, Vector::Zero(problem.m())};
    for (int j = 0; j < config.max_outer_iterations; ++j) {
        const ConvexSubproblem sub = build_subproblem(problem, z.x, xi);
        const SubproblemSolution sol = solve(sub, config.subproblem, z);
        report.last_subproblem_status = sol.status;
        if (sol.status != SolveStatus::Optimal) {
            report.status = ScpStatus::SubproblemFailure;
            return report;
        }

        const double step_norm = (sol.z.x - z.x).norm();
        z = sol.z;
        const double projection_tol = std::clamp(0.01 * config.stop_tolerance, 1e-11, 1e-10);
        const KKTResidual residual = kkt_residual(problem, z, xi, projection_tol);
        report.iterates.push_back(z);
        report.step_norms.push_back(step_norm);
        report.kkt_residuals.push_back(residual.total);

        if (residual.total <= config.stop_tolerance || step_norm <= config.step_tolerance) {
            report.status = ScpStatus::Converged;
            report.converged_point = z;
            return report;
        }
    }
    report.status = ScpStatus::MaxIterations;
    return report;
}

std::vector<double> convergence_ratios(const ScpReport& report, const PrimalDualPoint& z_star) {
    std::vector<double> ratios;
    for (std::size_t j = 0; j + 1 < report.iterates.size(); ++j) {
        const double before = distance(report.iterates[j], z_star);
        if (before <= 1e-12) continue;
        ratios.push_back(distance(report.iterates[j + 1], z_star) / before);
    }
    return ratios;
}

}  // namespace rtscp
