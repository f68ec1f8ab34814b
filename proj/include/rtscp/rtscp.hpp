#pragma once

#include <optional>
#include <utility>

#include "rtscp/ip_solver.hpp"
#include "rtscp/problem.hpp"
#include "rtscp/scp.hpp"
#include "rtscp/types.hpp"

namespace rtscp {

/// Optional initialization warmup: a few SCP iterations on P(xi_1) before
/// the loop starts (scp_iterations == 0 means none).
struct RtscpWarmup {
    int scp_iterations = 0;

    static RtscpWarmup none() { return {0}; }
    static RtscpWarmup approximate_scp(int iterations) { return {iterations}; }
};

struct RtscpConfig {
    SolverConfig solver;
    bool compute_original_residual = true;  // costs one projection solve per step
};

struct RtscpState {
    PrimalDualPoint current_z;
    Vector current_xi;
    int sample_index = 0;  // k >= 1 after initialization
    SubproblemSolution last_solution;
};

struct RtscpStepRecord {
    int k = 0;
    Vector xi;
    PrimalDualPoint z;
    double parameter_drift = 0.0;  // ||M (xi_{k+1} - xi_k)||
    int solve_iterations = 0;
    double solve_time = 0.0;  // seconds, wall clock
    double original_kkt_residual = 0.0;
};

/// Initialization: optional approximate SCP warmup at xi_1 followed by the
/// first subproblem solve. Throws SolverError carrying the solver status on
/// failure.
RtscpState rtscp_initialize(const ParametricProblem& problem, const Vector& xi1, const Vector& x0,
                            RtscpWarmup warmup = RtscpWarmup::none(), const RtscpConfig& config = {});

/// One real-time iteration: solve P_cvx(x^k; xi_{k+1}) warm-started at the
/// stored solution. The input state is untouched on failure.
std::pair<RtscpState, RtscpStepRecord> rtscp_step(const ParametricProblem& problem, const RtscpState& state,
                                                  const Vector& xi_next, const RtscpConfig& config = {});

}  // namespace rtscp
