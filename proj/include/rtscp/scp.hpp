#pragma once

#include <optional>
#include <vector>

#include "rtscp/ip_solver.hpp"
#include "rtscp/problem.hpp"
#include "rtscp/types.hpp"

namespace rtscp {

struct ScpConfig {
    double stop_tolerance = 1e-8;   // on the original-problem KKT residual
    double step_tolerance = 1e-10;  // on ||x_{j+1} - x_j||
    int max_outer_iterations = 50;
    SolverConfig subproblem;

    void validate() const;
};

enum class ScpStatus { Converged, MaxIterations, SubproblemFailure };

[[nodiscard]] const char* to_string(ScpStatus status);

struct ScpReport {
    std::vector<PrimalDualPoint> iterates;
    std::vector<double> kkt_residuals;
    std::vector<double> step_norms;
    ScpStatus status = ScpStatus::MaxIterations;
    std::optional<PrimalDualPoint> converged_point;
    bool projected_start = false;            // x0 was outside Omega and got projected
    SolveStatus last_subproblem_status = SolveStatus::Optimal;
};

/// Full-step SCP: repeatedly solves the convex approximation at a fixed
/// parameter until the original-problem KKT residual or the step norm drops
/// below tolerance.
ScpReport solve_scp(const ParametricProblem& problem, const Vector& xi, const Vector& x0,
                    const ScpConfig& config = {});

/// Ratios rho_j = ||z_{j+1} - z*|| / ||z_j - z*|| for every j whose
/// denominator distance exceeds 1e-12.
std::vector<double> convergence_ratios(const ScpReport& report, const PrimalDualPoint& z_star);

}  // namespace rtscp
