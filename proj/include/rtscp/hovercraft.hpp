#pragma once

#include <optional>
#include <vector>

#include "rtscp/problem.hpp"
#include "rtscp/rtscp.hpp"
#include "rtscp/types.hpp"

namespace rtscp {

/// State component order: (y1, y2, theta, dy1, dy2, dtheta).
using HovercraftState = Eigen::Matrix<double, 6, 1>;
using Control = Eigen::Vector2d;

struct HovercraftParams {
    double mass = 0.974;     // kg
    double inertia = 0.0125; // kg m^2
    double lever = 0.0485;   // m, fan distance from the central axis
    double u_lo = -0.121;    // N
    double u_hi = 0.342;     // N
    double y1_lo = -2.0;     // m
    double y1_hi = 2.0;
    double y2_lo = -2.0;
    double y2_hi = 2.0;

    void validate() const;
};

struct OcpWeights {
    Vector q = (Vector(6) << 5, 10, 0.1, 1, 1, 0.01).finished();
    Vector r = (Vector(2) << 0.01, 0.01).finished();
    Vector s = (Vector(6) << 5, 15, 0.05, 1, 1, 0.01).finished();

    void validate() const;
};

HovercraftState default_initial_state();

/// Continuous-time dynamics xdot = f(x, u).
HovercraftState dynamics(const HovercraftState& state, const Control& u, const HovercraftParams& params);

/// One explicit Euler step: state + dt * f(state, u).
HovercraftState euler_step(const HovercraftState& state, const Control& u, const HovercraftParams& params,
                           double dt);

/// One classic RK4 step with the control held constant.
HovercraftState rk4_step(const HovercraftState& state, const Control& u, const HovercraftParams& params,
                         double dt);

enum class OcpMode { SlackEpigraph, DirectQuadratic };

/// Index map of the stacked decision vector
/// x = (s?, xi_0..xi_N, u_0..u_{N-1}).
struct OcpLayout {
    int N = 0;
    bool with_slack = true;

    [[nodiscard]] int slack_index() const { return 0; }
    [[nodiscard]] int state_offset(int k) const { return (with_slack ? 1 : 0) + 6 * k; }
    [[nodiscard]] int control_offset(int k) const { return (with_slack ? 1 : 0) + 6 * (N + 1) + 2 * k; }
    [[nodiscard]] int n() const { return (with_slack ? 1 : 0) + 6 * (N + 1) + 2 * N; }
    [[nodiscard]] int m() const { return 6 * (N + 1); }

    [[nodiscard]] HovercraftState state(const Vector& x, int k) const {
        return x.segment<6>(state_offset(k));
    }
    [[nodiscard]] Control control(const Vector& x, int k) const { return x.segment<2>(control_offset(k)); }
};

inline OcpLayout ocp_layout(int N, OcpMode mode) {
    return {N, mode == OcpMode::SlackEpigraph};
}

/// Stacked equality map of the discretized OCP: initial-state rows xi_0
/// followed by xi_{k+1} - phi(xi_k, u_k) for each stage. Provides analytic
/// Jacobian and component Hessians.
NonlinearMap hovercraft_ocp_map(const HovercraftParams& params, int N, double dt, bool with_slack);

/// Assembles the OCP as a ParametricProblem (parameter = measured state,
/// entering through M = [-I; 0]).
ParametricProblem build_ocp(const HovercraftParams& params, const OcpWeights& weights, int N, double dt,
                            OcpMode mode);

enum class PlantModel { Rk4, Euler };

struct SimConfig {
    HovercraftParams params;
    OcpWeights weights;
    int N = 15;
    double dt = 0.05;                                  // s
    HovercraftState x_init = default_initial_state();  // measured state at t=0
    double horizon_s = 15.0;
    double stop_radius = 0.01;  // stop when ||(y1, y2)|| <= radius
    OcpMode mode = OcpMode::SlackEpigraph;
    PlantModel plant = PlantModel::Rk4;
    int plant_substeps = 10;
    int warmup_scp_iterations = 10;
    SolverConfig solver;
};

struct SimTrace {
    std::vector<double> times;
    std::vector<HovercraftState> states;    // measured at each executed sample
    std::vector<Control> controls;          // applied control
    std::vector<RtscpStepRecord> step_records;
    std::vector<int> failed_samples;        // samples where the previous control was reused
    std::optional<double> stop_time;
    bool aborted = false;  // three consecutive solver failures
};

/// Closed-loop NMPC run: measure, one RTSCP solve per sample, apply the
/// first-stage control to the plant.
SimTrace simulate_closed_loop(const SimConfig& config);

}  // namespace rtscp
