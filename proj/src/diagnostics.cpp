#include "rtscp/diagnostics.hpp"

#include "rtscp/subproblem.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <thread>

namespace rtscp {

PrimalDualPoint reference_kkt(const ParametricProblem& problem, const Vector& xi, const Vector& hint,
                              double tolerance, int max_iterations) {
    if (hint.size() != problem.n()) throw UsageError("reference_kkt: hint has wrong length");
    Vector x0 = hint;
    if (!problem.omega.contains(x0, 1e-9)) x0 = project_onto_omega(problem.omega, x0);

    // Full-step SCP, warm started, with the (projection-based) residual
    // measured only once the steps have contracted: near slow-contraction
    // samples the loop may legitimately need hundreds of cheap iterations,
    // and a projection per iteration would dominate the cost.
    SolverConfig sub_config;
    sub_config.kkt_tolerance = std::max(tolerance, 1e-10);
    sub_config.max_iterations = 200;

    PrimalDualPoint z{x0, Vector::Zero(problem.m())};
    for (int it = 0; it < max_iterations; ++it) {
        const ConvexSubproblem sub = build_subproblem(problem, z.x, xi);
        const SubproblemSolution sol = solve(sub, sub_config, z);
        if (sol.status != SolveStatus::Optimal) {
            throw SolverError(std::string("reference_kkt oracle subproblem failed: ") + to_string(sol.status));
        }
        const double step = (sol.z.x - z.x).norm();
        z = sol.z;
        if (step <= 0.1 * tolerance) {
            const KKTResidual res = kkt_residual(problem, z, xi, std::clamp(tolerance, 1e-12, 1e-10));
            if (res.total <= tolerance) return z;
        }
    }
    throw SolverError("reference_kkt oracle did not converge: MaxIterations");
}

ContractionFit fit_contraction(const std::vector<ContractionRecord>& records) {
    ContractionFit fit;
    fit.record_count = static_cast<int>(records.size());
    if (records.empty()) return fit;

    // Least-squares fit of the bound dist_after <= omega * dist_before +
    // c * drift over nonnegative (omega, c): among all pairs that cover
    // every record (within the 1e-6 slack), pick the one closest to the
    // data. A mean fit would leave half the records above the line and say
    // nothing about the theorem.
    const int K = fit.record_count;
    Matrix D(K, 2);
    Vector y(K);
    for (int i = 0; i < K; ++i) {
        D(i, 0) = records[i].dist_before;
        D(i, 1) = records[i].drift;
        y[i] = records[i].dist_after;
    }

    ConvexSubproblem qp;
    qp.x_lin = Vector::Zero(2);
    qp.A_eq = Matrix::Zero(0, 2);
    qp.b_eq = Vector::Zero(0);
    qp.H = 2.0 * (D.transpose() * D) + 1e-12 * Matrix::Identity(2, 2);
    qp.c = -2.0 * D.transpose() * y;
    qp.omega = ConvexSet(Vector::Zero(2), Vector::Constant(2, kInf));
    qp.omega.add_linear_inequalities(-D, -(y.array() - 1e-6).matrix());

    SolverConfig config;
    config.kkt_tolerance = 1e-9;
    config.max_iterations = 200;
    bool solved = false;
    try {
        const SubproblemSolution sol = solve(qp, config);
        if (sol.status == SolveStatus::Optimal) {
            fit.omega_hat = std::max(0.0, sol.z.x[0]);
            fit.c_hat = std::max(0.0, sol.z.x[1]);
            solved = true;
        }
    } catch (const SolverError&) {
    }
    if (!solved) {
        // Fallback: exact envelope along each axis family, least-squares
        // over the feasible corner candidates.
        double w_only = 0, c_only = 0;
        for (const auto& r : records) {
            if (r.dist_before > 0) w_only = std::max(w_only, (r.dist_after - 1e-6) / r.dist_before);
            if (r.drift > 0) c_only = std::max(c_only, (r.dist_after - 1e-6) / r.drift);
        }
        const auto sse = [&](double w, double c) { return (D * (Vector(2) << w, c).finished() - y).squaredNorm(); };
        fit.omega_hat = w_only;
        fit.c_hat = 0.0;
        if (sse(0.0, c_only) < sse(w_only, 0.0)) {
            fit.omega_hat = 0.0;
            fit.c_hat = c_only;
        }
    }

    for (const auto& r : records) {
        if (r.dist_after > fit.omega_hat * r.dist_before + fit.c_hat * r.drift + 1e-6) ++fit.violations;
    }
    return fit;
}

ContractionTrace contraction_trace(const ParametricProblem& problem, const std::vector<Vector>& xi_sequence,
                                   const Vector& x0, const DiagnosticsConfig& config) {
    if (xi_sequence.size() < 2) throw UsageError("contraction_trace: need at least 2 parameters");

    ContractionTrace trace;
    const int K = static_cast<int>(xi_sequence.size());

    // RTSCP pass (sequential by nature).
    RtscpConfig rt_config = config.rtscp;
    rt_config.compute_original_residual = false;
    std::vector<PrimalDualPoint> iterates;
    iterates.reserve(K);
    try {
        RtscpState state = rtscp_initialize(problem, xi_sequence[0], x0, config.warmup, rt_config);
        iterates.push_back(state.current_z);
        for (int k = 1; k < K; ++k) {
            auto [next, record] = rtscp_step(problem, state, xi_sequence[k], rt_config);
            state = std::move(next);
            iterates.push_back(record.z);
        }
    } catch (const SolverError&) {
        trace.aborted = true;
        trace.abort_index = static_cast<int>(iterates.size());
    }

    // Exact references, hinted by the RTSCP iterates; independent solves,
    // parallel when requested.
    const int usable = static_cast<int>(iterates.size());
    std::vector<std::optional<PrimalDualPoint>> references(usable);
    const int jobs = std::max(1, config.jobs);
    std::atomic<int> next_index{0};
    auto worker = [&]() {
        while (true) {
            const int k = next_index.fetch_add(1);
            if (k >= usable) return;
            try {
                references[k] = reference_kkt(problem, xi_sequence[k], iterates[k].x, config.oracle_tolerance,
                                              config.oracle_max_iterations);
            } catch (const SolverError&) {
                // leave empty; truncation below
            }
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    int good = 0;
    while (good < usable && references[good].has_value()) ++good;
    if (good < usable && !trace.aborted) {
        trace.aborted = true;
        trace.abort_index = good;
    }

    for (int k = 0; k + 1 < good; ++k) {
        ContractionRecord rec;
        rec.k = k + 1;
        rec.dist_before = distance(iterates[k], *references[k]);
        rec.dist_after = distance(iterates[k + 1], *references[k + 1]);
        rec.drift = (problem.M * (xi_sequence[k + 1] - xi_sequence[k])).norm();
        rec.kappa_at_reference = lagrangian_curvature(problem, *references[k]).kappa;
        trace.records.push_back(rec);
    }
    trace.fit = fit_contraction(trace.records);
    return trace;
}

std::vector<double> kappa_profile(const ParametricProblem& problem, const std::vector<PrimalDualPoint>& z_list) {
    std::vector<double> out;
    out.reserve(z_list.size());
    for (const auto& z : z_list) out.push_back(lagrangian_curvature(problem, z).kappa);
    return out;
}

}  // namespace rtscp
