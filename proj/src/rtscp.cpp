#include "rtscp/rtscp.hpp"

#include <chrono>

#include "rtscp/subproblem.hpp"

namespace rtscp {

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

RtscpState rtscp_initialize(const ParametricProblem& problem, const Vector& xi1, const Vector& x0,
                            RtscpWarmup warmup, const RtscpConfig& config) {
    if (xi1.size() != problem.p()) throw UsageError("rtscp_initialize: xi1 has wrong length");
    if (x0.size() != problem.n()) throw UsageError("rtscp_initialize: x0 has wrong length");

    Vector x_start = x0;
    if (!problem.omega.contains(x_start, 1e-9)) {
        x_start = project_onto_omega(problem.omega, x_start);
    }
    PrimalDualPoint warm{x_start, Vector::Zero(problem.m())};

    if (warmup.scp_iterations > 0) {
        ScpConfig scp_config;
        scp_config.max_outer_iterations = warmup.scp_iterations;
        scp_config.stop_tolerance = config.solver.kkt_tolerance;
        scp_config.subproblem = config.solver;
        const ScpReport report = solve_scp(problem, xi1, x_start, scp_config);
        if (report.status == ScpStatus::SubproblemFailure) {
            throw SolverError(std::string("rtscp initialization warmup failed: subproblem status ") +
                              to_string(report.last_subproblem_status));
        }
        if (!report.iterates.empty()) warm = report.iterates.back();
    }

    const ConvexSubproblem sub = build_subproblem(problem, warm.x, xi1);
    const SubproblemSolution sol = solve(sub, config.solver, warm);
    if (sol.status != SolveStatus::Optimal) {
        throw SolverError(std::string("rtscp initialization solve failed: ") + to_string(sol.status));
    }

    RtscpState state;
    state.current_z = sol.z;
    state.current_xi = xi1;
    state.sample_index = 1;
    state.last_solution = sol;
    return state;
}

std::pair<RtscpState, RtscpStepRecord> rtscp_step(const ParametricProblem& problem, const RtscpState& state,
                                                  const Vector& xi_next, const RtscpConfig& config) {
    if (state.sample_index < 1) throw UsageError("rtscp_step: state is not initialized");
    if (xi_next.size() != problem.p()) throw UsageError("rtscp_step: xi_next has wrong length");

    const auto start = std::chrono::steady_clock::now();
    const ConvexSubproblem sub = build_subproblem(problem, state.current_z.x, xi_next);
    const SubproblemSolution sol = solve(sub, config.solver, state.current_z);
    if (sol.status != SolveStatus::Optimal) {
        throw SolverError(std::string("rtscp step solve failed: ") + to_string(sol.status));
    }

    RtscpStepRecord record;
    record.k = state.sample_index + 1;
    record.xi = xi_next;
    record.z = sol.z;
    record.parameter_drift = (problem.M * (xi_next - state.current_xi)).norm();
    record.solve_iterations = sol.iterations;
    record.solve_time = seconds_since(start);
    record.original_kkt_residual =
        config.compute_original_residual ? kkt_residual(problem, sol.z, xi_next).total : -1.0;

    RtscpState next;
    next.current_z = sol.z;
    next.current_xi = xi_next;
    next.sample_index = state.sample_index + 1;
    next.last_solution = sol;
    return {std::move(next), std::move(record)};
}

}  // namespace rtscp
