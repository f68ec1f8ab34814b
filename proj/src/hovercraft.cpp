#include "rtscp/hovercraft.hpp"

#include <chrono>
#include <cmath>

#include "rtscp/subproblem.hpp"

namespace rtscp {

void HovercraftParams::validate() const {
    if (mass <= 0 || inertia <= 0 || lever <= 0) {
        throw UsageError("hovercraft params: mass, inertia and lever must be positive");
    }
    if (u_lo >= u_hi) throw UsageError("hovercraft params: thrust bounds must satisfy u_lo < u_hi");
    if (y1_lo >= y1_hi || y2_lo >= y2_hi) {
        throw UsageError("hovercraft params: position bounds must satisfy lower < upper");
    }
}

void OcpWeights::validate() const {
    if (q.size() != 6 || s.size() != 6 || r.size() != 2) {
        throw UsageError("ocp weights: Q and S need 6 diagonal entries, R needs 2");
    }
    if (q.minCoeff() < 0 || r.minCoeff() < 0 || s.minCoeff() < 0) {
        throw UsageError("ocp weights: diagonal entries must be nonnegative");
    }
}

HovercraftState default_initial_state() {
    return (HovercraftState() << -0.38, 0.30, 0.052, 0.0092, -0.0053, 0.002).finished();
}

HovercraftState dynamics(const HovercraftState& state, const Control& u, const HovercraftParams& params) {
    const double theta = state[2];
    const double thrust = u[0] + u[1];
    HovercraftState d;
    d[0] = state[3];
    d[1] = state[4];
    d[2] = state[5];
    d[3] = thrust * std::cos(theta) / params.mass;
    d[4] = thrust * std::sin(theta) / params.mass;
    d[5] = params.lever * (u[0] - u[1]) / params.inertia;
    return d;
}

HovercraftState euler_step(const HovercraftState& state, const Control& u, const HovercraftParams& params,
                           double dt) {
    if (dt <= 0) throw UsageError("euler_step: dt must be positive");
    return state + dt * dynamics(state, u, params);
}

HovercraftState rk4_step(const HovercraftState& state, const Control& u, const HovercraftParams& params,
                         double dt) {
    if (dt <= 0) throw UsageError("rk4_step: dt must be positive");
    const HovercraftState k1 = dynamics(state, u, params);
    const HovercraftState k2 = dynamics(state + 0.5 * dt * k1, u, params);
    const HovercraftState k3 = dynamics(state + 0.5 * dt * k2, u, params);
    const HovercraftState k4 = dynamics(state + dt * k3, u, params);
    return state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

NonlinearMap hovercraft_ocp_map(const HovercraftParams& params, int N, double dt, bool with_slack) {
    if (N < 1) throw UsageError("hovercraft_ocp_map: N must be at least 1");
    if (dt <= 0) throw UsageError("hovercraft_ocp_map: dt must be positive");
    params.validate();

    const OcpLayout layout{N, with_slack};
    NonlinearMap map;
    map.dim_in = layout.n();
    map.dim_out = layout.m();

    map.value = [params, layout, dt](const Vector& x) -> Vector {
        Vector g(layout.m());
        g.head<6>() = layout.state(x, 0);
        for (int k = 0; k < layout.N; ++k) {
            const HovercraftState xi = layout.state(x, k);
            const Control u = layout.control(x, k);
            g.segment<6>(6 * (k + 1)) = layout.state(x, k + 1) - euler_step(xi, u, params, dt);
        }
        return g;
    };

    map.jacobian = [params, layout, dt](const Vector& x) -> Matrix {
        Matrix J = Matrix::Zero(layout.m(), layout.n());
        J.block<6, 6>(0, layout.state_offset(0)).setIdentity();
        for (int k = 0; k < layout.N; ++k) {
            const double theta = x[layout.state_offset(k) + 2];
            const double thrust = x[layout.control_offset(k)] + x[layout.control_offset(k) + 1];
            const double ct = std::cos(theta);
            const double st = std::sin(theta);
            const int row = 6 * (k + 1);

            // d f / d xi
            Matrix A = Matrix::Zero(6, 6);
            A(0, 3) = 1;
            A(1, 4) = 1;
            A(2, 5) = 1;
            A(3, 2) = -thrust * st / params.mass;
            A(4, 2) = thrust * ct / params.mass;
            // d f / d u
            Matrix B = Matrix::Zero(6, 2);
            B(3, 0) = ct / params.mass;
            B(3, 1) = ct / params.mass;
            B(4, 0) = st / params.mass;
            B(4, 1) = st / params.mass;
            B(5, 0) = params.lever / params.inertia;
            B(5, 1) = -params.lever / params.inertia;

            J.block<6, 6>(row, layout.state_offset(k + 1)).setIdentity();
            J.block<6, 6>(row, layout.state_offset(k)) = -(Matrix::Identity(6, 6) + dt * A);
            J.block<6, 2>(row, layout.control_offset(k)) = -dt * B;
        }
        return J;
    };

    map.component_hessian = [params, layout, dt](const Vector& x, int i) -> Matrix {
        Matrix H = Matrix::Zero(layout.n(), layout.n());
        if (i < 6) return H;  // initial-state rows are linear
        const int k = i / 6 - 1;
        const int j = i % 6;
        if (j != 3 && j != 4) return H;  // only the accelerations are nonlinear

        const int ti = layout.state_offset(k) + 2;
        const int u1 = layout.control_offset(k);
        const int u2 = u1 + 1;
        const double theta = x[ti];
        const double thrust = x[u1] + x[u2];
        const double ct = std::cos(theta);
        const double st = std::sin(theta);

        // Row is  xi_{k+1,j} - xi_{k,j} - dt * h(theta, u), so the Hessian
        // is -dt * hess(h).
        double h_tt, h_tu;
        if (j == 3) {
            h_tt = -thrust * ct / params.mass;
            h_tu = -st / params.mass;
        } else {
            h_tt = -thrust * st / params.mass;
            h_tu = ct / params.mass;
        }
        H(ti, ti) = -dt * h_tt;
        H(ti, u1) = H(u1, ti) = -dt * h_tu;
        H(ti, u2) = H(u2, ti) = -dt * h_tu;
        return H;
    };

    return map;
}

namespace {

Vector cost_diagonal(const OcpWeights& weights, const OcpLayout& layout) {
    Vector w = Vector::Zero(layout.n());
    for (int k = 0; k < layout.N; ++k) {
        w.segment<6>(layout.state_offset(k)) = weights.q;
        w.segment<2>(layout.control_offset(k)) = weights.r;
    }
    w.segment<6>(layout.state_offset(layout.N)) = weights.s;
    return w;
}

}  // namespace

ParametricProblem build_ocp(const HovercraftParams& params, const OcpWeights& weights, int N, double dt,
                            OcpMode mode) {
    if (N < 1) throw UsageError("build_ocp: N must be at least 1");
    if (dt <= 0) throw UsageError("build_ocp: dt must be positive");
    params.validate();
    weights.validate();

    const bool with_slack = mode == OcpMode::SlackEpigraph;
    const OcpLayout layout{N, with_slack};
    const int n = layout.n();

    ParametricProblem problem;
    problem.g = hovercraft_ocp_map(params, N, dt, with_slack);

    problem.M = Matrix::Zero(layout.m(), 6);
    problem.M.topLeftCorner(6, 6) = -Matrix::Identity(6, 6);

    Vector lower = Vector::Constant(n, -kInf);
    Vector upper = Vector::Constant(n, kInf);
    for (int k = 0; k <= N; ++k) {
        lower[layout.state_offset(k) + 0] = params.y1_lo;
        upper[layout.state_offset(k) + 0] = params.y1_hi;
        lower[layout.state_offset(k) + 1] = params.y2_lo;
        upper[layout.state_offset(k) + 1] = params.y2_hi;
    }
    for (int k = 0; k < N; ++k) {
        lower.segment<2>(layout.control_offset(k)).setConstant(params.u_lo);
        upper.segment<2>(layout.control_offset(k)).setConstant(params.u_hi);
    }
    problem.omega = ConvexSet(std::move(lower), std::move(upper));

    const Vector w = cost_diagonal(weights, layout);
    if (with_slack) {
        problem.c = Vector::Zero(n);
        problem.c[layout.slack_index()] = 1.0;
        // s >= sum of stage costs as 0.5 x'Px + q'x <= 0.
        Matrix P = (2.0 * w).asDiagonal();
        Vector q = Vector::Zero(n);
        q[layout.slack_index()] = -1.0;
        problem.omega.add_quadratic_inequality(std::move(P), std::move(q), 0.0);
    } else {
        problem.c = Vector::Zero(n);
        problem.H = Matrix((2.0 * w).asDiagonal());
    }
    problem.validate();
    return problem;
}

SimTrace simulate_closed_loop(const SimConfig& config) {
    if (config.horizon_s <= 0) throw UsageError("simulate: horizon must be positive");
    if (config.dt <= 0) throw UsageError("simulate: dt must be positive");
    if (config.stop_radius < 0) throw UsageError("simulate: stop radius must be nonnegative");
    if (config.plant_substeps < 1) throw UsageError("simulate: plant substeps must be at least 1");

    const ParametricProblem problem = build_ocp(config.params, config.weights, config.N, config.dt, config.mode);
    const OcpLayout layout = ocp_layout(config.N, config.mode);

    RtscpConfig rt_config;
    rt_config.solver = config.solver;

    SimTrace trace;
    HovercraftState plant_state = config.x_init;
    Control previous_control = Control::Zero();
    std::optional<RtscpState> state;
    int consecutive_failures = 0;

    const int max_samples = static_cast<int>(std::floor(config.horizon_s / config.dt + 1e-9)) + 1;
    for (int k = 0; k < max_samples; ++k) {
        const double t = k * config.dt;
        const HovercraftState measured = plant_state;
        if (measured.head<2>().norm() <= config.stop_radius) {
            trace.stop_time = t;
            break;
        }

        Control u = previous_control;
        bool solved = false;
        RtscpStepRecord record;
        const auto start = std::chrono::steady_clock::now();
        try {
            if (!state) {
                state = rtscp_initialize(problem, measured, Vector::Zero(layout.n()),
                                         RtscpWarmup::approximate_scp(config.warmup_scp_iterations), rt_config);
                record.k = state->sample_index;
                record.xi = measured;
                record.z = state->current_z;
                record.parameter_drift = 0.0;
                record.solve_iterations = state->last_solution.iterations;
                record.original_kkt_residual = kkt_residual(problem, state->current_z, measured).total;
            } else {
                auto [next, rec] = rtscp_step(problem, *state, measured, rt_config);
                state = std::move(next);
                record = std::move(rec);
            }
            record.solve_time =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            u = layout.control(state->current_z.x, 0);
            solved = true;
            consecutive_failures = 0;
        } catch (const SolverError&) {
            ++consecutive_failures;
            trace.failed_samples.push_back(k);
            record.k = state ? state->sample_index : 0;
            record.xi = measured;
            record.solve_time =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            record.original_kkt_residual = -1.0;
        }

        trace.times.push_back(t);
        trace.states.push_back(measured);
        trace.controls.push_back(u);
        trace.step_records.push_back(record);

        if (!solved && consecutive_failures >= 3) {
            trace.aborted = true;
            break;
        }
        previous_control = u;

        if (config.plant == PlantModel::Euler) {
            plant_state = euler_step(plant_state, u, config.params, config.dt);
        } else {
            const double h = config.dt / config.plant_substeps;
            for (int step = 0; step < config.plant_substeps; ++step) {
                plant_state = rk4_step(plant_state, u, config.params, h);
            }
        }
    }
    return trace;
}

}  // namespace rtscp
