#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rtscp/subproblem.hpp"
#include "rtscp/types.hpp"

namespace rtscp {

struct SolverConfig {
    double kkt_tolerance = 1e-8;
    int max_iterations = 100;
    double fraction_to_boundary = 0.995;
    double initial_barrier = 0.1;
    double regularization = 1e-9;  // starting inertia correction, x10 per retry up to 1e-3
    std::string trace_path{};      // per-solve CSV trace when non-empty

    void validate() const;
};

enum class SolveStatus { Optimal, MaxIterations, Infeasible, NumericalFailure };

[[nodiscard]] const char* to_string(SolveStatus status);

struct SubproblemSolution {
    PrimalDualPoint z;               // lambda = equality multipliers
    Vector inequality_multipliers;   // one per slack row, nonnegative
    SolveStatus status = SolveStatus::NumericalFailure;
    int iterations = 0;
    double final_residual = kInf;
    std::vector<double> barrier_history;  // mu per iteration
};

/// Primal-dual interior-point solve (Mehrotra predictor-corrector on the
/// slack formulation; equalities kept in an augmented KKT system factored
/// by dense Bunch-Kaufman with inertia-correcting regularization).
/// A warm start supplies (x, lambda); slacks are re-centered to strict
/// interior.
SubproblemSolution solve(const ConvexSubproblem& sub, const SolverConfig& config = {},
                         const std::optional<PrimalDualPoint>& warm_start = {});

/// Euclidean projection onto Omega: exact clipping for a pure box, otherwise
/// an interior-point solve with H = I, c = -y at the given tolerance.
/// Throws SolverError if the projection solve does not reach Optimal.
Vector project_onto_omega(const ConvexSet& omega, const Vector& y, double tolerance = 1e-10);

struct PhaseOneResult {
    double violation = kInf;  // optimal infinity-norm violation of the equalities
    bool solved = false;
};

/// Phase-I feasibility problem: minimize the infinity-norm violation of
/// A_eq x = b_eq over Omega tightened by 1e-6.
PhaseOneResult phase_one(const ConvexSubproblem& sub, const SolverConfig& config = {});

}  // namespace rtscp
