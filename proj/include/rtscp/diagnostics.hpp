#pragma once

#include <vector>

#include "rtscp/problem.hpp"
#include "rtscp/rtscp.hpp"
#include "rtscp/scp.hpp"
#include "rtscp/types.hpp"

namespace rtscp {

/// One sample of the contraction experiment: tracking distances to the
/// exact-solution references and the parameter drift between samples.
struct ContractionRecord {
    int k = 0;
    double dist_before = 0.0;        // ||z^k - zbar^k||
    double dist_after = 0.0;         // ||z^{k+1} - zbar^{k+1}||
    double drift = 0.0;              // ||M (xi_{k+1} - xi_k)||
    double kappa_at_reference = 0.0; // ||E_g(zbar^k)||_F
};

/// Nonnegative least-squares fit of dist_after ~ omega * dist_before +
/// c * drift over a trajectory, with the count of records exceeding the
/// fitted bound by more than 1e-6.
struct ContractionFit {
    double omega_hat = 0.0;
    double c_hat = 0.0;
    int violations = 0;
    int record_count = 0;
};

struct ContractionTrace {
    std::vector<ContractionRecord> records;
    ContractionFit fit;
    bool aborted = false;
    int abort_index = -1;  // sample index at which RTSCP or the oracle failed
};

struct DiagnosticsConfig {
    RtscpConfig rtscp;
    double oracle_tolerance = 1e-12;
    int oracle_max_iterations = 2000;
    RtscpWarmup warmup = RtscpWarmup::none();
    int jobs = 1;  // parallel oracle solves
};

/// Exact KKT point of P(xi) near the hint: SCP from the hint at tight
/// tolerance. Throws SolverError when the oracle does not converge.
PrimalDualPoint reference_kkt(const ParametricProblem& problem, const Vector& xi, const Vector& hint,
                              double tolerance = 1e-12, int max_iterations = 2000);

/// Runs RTSCP along the parameter sequence, computes the exact reference at
/// every sample (hinted by the RTSCP iterate to stay on the same branch) and
/// fits the contraction model. Failures yield a partial trace with the abort
/// index set instead of an exception.
ContractionTrace contraction_trace(const ParametricProblem& problem, const std::vector<Vector>& xi_sequence,
                                   const Vector& x0, const DiagnosticsConfig& config = {});

/// kappa = ||E_g||_F at each supplied point.
std::vector<double> kappa_profile(const ParametricProblem& problem, const std::vector<PrimalDualPoint>& z_list);

/// Nonnegative least-squares fit of after ~ omega * before + c * drift,
/// exposed for tests.
ContractionFit fit_contraction(const std::vector<ContractionRecord>& records);

}  // namespace rtscp
