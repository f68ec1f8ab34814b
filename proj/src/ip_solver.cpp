#include "rtscp/ip_solver.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <vector>

namespace rtscp {

void SolverConfig::validate() const {
    if (kkt_tolerance <= 0) throw UsageError("solver config: kkt_tolerance must be positive");
    if (max_iterations < 1) throw UsageError("solver config: max_iterations must be at least 1");
    if (fraction_to_boundary <= 0 || fraction_to_boundary >= 1) {
        throw UsageError("solver config: fraction_to_boundary must lie in (0,1)");
    }
    if (initial_barrier <= 0) throw UsageError("solver config: initial_barrier must be positive");
    if (regularization <= 0) throw UsageError("solver config: regularization must be positive");
}

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::MaxIterations: return "MaxIterations";
        case SolveStatus::Infeasible: return "Infeasible";
        case SolveStatus::NumericalFailure: return "NumericalFailure";
    }
    return "Unknown";
}

namespace {

// Catalogue of inequality rows f_i(x) <= 0 assembled from a ConvexSet:
// finite box bounds, linear rows a'x <= b, quadratic rows.
class IneqModel {
  public:
    explicit IneqModel(const ConvexSet& omega) : omega_(&omega), n_(omega.dimension()) {
        const Vector& lo = omega.lower();
        const Vector& hi = omega.upper();
        for (int i = 0; i < n_; ++i) {
            if (std::isfinite(lo[i])) boxes_.push_back({i, -1.0, lo[i]});
            if (std::isfinite(hi[i])) boxes_.push_back({i, +1.0, hi[i]});
        }
        n_box_ = static_cast<int>(boxes_.size());
        n_lin_ = static_cast<int>(omega.lin_A().rows());
        n_quad_ = static_cast<int>(omega.quadratics().size());
    }

    [[nodiscard]] int count() const { return n_box_ + n_lin_ + n_quad_; }

    void eval(const Vector& x, Vector& f) const {
        f.resize(count());
        for (int r = 0; r < n_box_; ++r) {
            const auto& row = boxes_[r];
            f[r] = row.sign < 0 ? row.bound - x[row.index] : x[row.index] - row.bound;
        }
        if (n_lin_ > 0) f.segment(n_box_, n_lin_) = omega_->lin_A() * x - omega_->lin_b();
        for (int q = 0; q < n_quad_; ++q) {
            f[n_box_ + n_lin_ + q] = omega_->quadratics()[q].value(x);
        }
    }

    void jacobian(const Vector& x, Matrix& J) const {
        J.setZero(count(), n_);
        for (int r = 0; r < n_box_; ++r) J(r, boxes_[r].index) = boxes_[r].sign;
        if (n_lin_ > 0) J.middleRows(n_box_, n_lin_) = omega_->lin_A();
        for (int q = 0; q < n_quad_; ++q) {
            J.row(n_box_ + n_lin_ + q) = omega_->quadratics()[q].gradient(x).transpose();
        }
    }

    // K11 += sum_i z_i P_i over quadratic rows.
    void add_curvature(const Vector& z, Matrix& K11) const {
        for (int q = 0; q < n_quad_; ++q) {
            const double zq = z[n_box_ + n_lin_ + q];
            if (zq != 0.0) K11 += zq * omega_->quadratics()[q].P;
        }
    }

    // Largest primal step for which the second-order term of each quadratic
    // row stays comparable to its current slack and residual; linear rows
    // have no such term. Keeps Newton steps from blowing up the violation of
    // a badly infeasible quadratic constraint.
    [[nodiscard]] double quadratic_overshoot_cap(const Vector& dx, const Vector& s, const Vector& r_i) const {
        double cap = std::numeric_limits<double>::max();
        for (int q = 0; q < n_quad_; ++q) {
            const int row = n_box_ + n_lin_ + q;
            const double h = 0.5 * dx.dot(omega_->quadratics()[q].P * dx);
            if (h <= 0) continue;
            const double budget = 0.5 * (s[row] + std::abs(r_i[row])) + 1e-12;
            cap = std::min(cap, std::sqrt(budget / h));
        }
        return cap;
    }

    [[nodiscard]] double bound_scale(int row) const {
        if (row < n_box_) return std::abs(boxes_[row].bound);
        if (row < n_box_ + n_lin_) return std::abs(omega_->lin_b()[row - n_box_]);
        return std::abs(omega_->quadratics()[row - n_box_ - n_lin_].r);
    }

  private:
    struct BoxRow {
        int index;
        double sign;
        double bound;
    };
    const ConvexSet* omega_;
    int n_;
    std::vector<BoxRow> boxes_;
    int n_box_ = 0;
    int n_lin_ = 0;
    int n_quad_ = 0;
};

// Augmented KKT system [K11 + dI, A'; A, -dI] factored by dense
// Bunch-Kaufman (LAPACK dsytrf). solve() applies one step of iterative
// refinement against the unregularized matrix.
class AugmentedKkt {
  public:
    void assemble(const Matrix& K11, const Matrix& A) {
        n_ = static_cast<int>(K11.rows());
        m_ = static_cast<int>(A.rows());
        const int dim = n_ + m_;
        K_.setZero(dim, dim);
        K_.topLeftCorner(n_, n_) = K11;
        if (m_ > 0) {
            K_.bottomLeftCorner(m_, n_) = A;
            K_.topRightCorner(n_, m_) = A.transpose();
        }
    }

    [[nodiscard]] bool factorize(double delta) {
        const int dim = n_ + m_;
        F_ = K_;
        if (delta > 0) {
            F_.diagonal().head(n_).array() += delta;
            F_.diagonal().tail(m_).array() -= delta;
        }
        ipiv_.assign(dim, 0);
        const lapack_int info =
            LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', dim, F_.data(), dim, ipiv_.data());
        if (info != 0) return false;
        return inertia_ok();
    }

    [[nodiscard]] Vector solve(const Vector& rhs) const {
        Vector sol = rhs;
        const int dim = n_ + m_;
        LAPACKE_dsytrs(LAPACK_COL_MAJOR, 'L', dim, 1, F_.data(), dim, ipiv_.data(), sol.data(), dim);
        // One refinement pass against the unregularized matrix; keep the
        // refined iterate only if it reduces the residual.
        Vector residual = rhs - K_ * sol;
        Vector corr = residual;
        LAPACKE_dsytrs(LAPACK_COL_MAJOR, 'L', dim, 1, F_.data(), dim, ipiv_.data(), corr.data(), dim);
        Vector refined = sol + corr;
        if ((rhs - K_ * refined).norm() < residual.norm()) return refined;
        return sol;
    }

  private:
    [[nodiscard]] bool inertia_ok() const {
        const int dim = n_ + m_;
        int pos = 0;
        int neg = 0;
        int k = 0;
        while (k < dim) {
            if (ipiv_[k] > 0) {
                const double d = F_(k, k);
                if (d > 0) {
                    ++pos;
                } else if (d < 0) {
                    ++neg;
                } else {
                    return false;
                }
                ++k;
            } else {
                const double a = F_(k, k);
                const double c = F_(k + 1, k + 1);
                const double b = F_(k + 1, k);
                const double det = a * c - b * b;
                if (det < 0) {
                    ++pos;
                    ++neg;
                } else if (a + c > 0) {
                    pos += 2;
                } else {
                    neg += 2;
                }
                k += 2;
            }
        }
        return pos == n_ && neg == m_;
    }

    int n_ = 0;
    int m_ = 0;
    Matrix K_;
    Matrix F_;
    std::vector<lapack_int> ipiv_;
};

// Post-convergence refinement: Newton steps on the active-set KKT system
// snap the strictly-interior iterate onto the optimal face, removing the
// O(mu) standoff. Verified before acceptance; any doubt keeps the original.
bool polish_active_set(const ConvexSubproblem& sub, const IneqModel& model, Vector& x, Vector& lam, Vector& z,
                       const Vector& s, double& final_residual) {
    const int n = sub.n();
    const int meq = sub.m();
    const int nin = model.count();

    std::vector<int> active;
    for (int i = 0; i < nin; ++i) {
        if (z[i] > s[i]) active.push_back(i);
    }
    const int na = static_cast<int>(active.size());

    Vector x_new = x;
    Vector lam_new = lam;
    Vector za(na);
    for (int a = 0; a < na; ++a) za[a] = z[active[a]];

    Vector f(nin);
    Matrix J(nin, n);
    AugmentedKkt kkt;
    const auto residuals = [&](const Vector& xc, const Vector& lc, const Vector& zc) {
        model.eval(xc, f);
        model.jacobian(xc, J);
        Vector r_x = sub.c;
        if (sub.H) r_x += *sub.H * xc;
        if (meq > 0) r_x += sub.A_eq.transpose() * lc;
        for (int a = 0; a < na; ++a) r_x += zc[a] * J.row(active[a]).transpose();
        Vector r(n + meq + na);
        r.head(n) = r_x;
        if (meq > 0) r.segment(n, meq) = sub.A_eq * xc - sub.b_eq;
        for (int a = 0; a < na; ++a) r[n + meq + a] = f[active[a]];
        return r;
    };

    Vector r = residuals(x_new, lam_new, za);
    double best = r.cwiseAbs().maxCoeff();
    for (int pass = 0; pass < 3; ++pass) {
        Matrix K11 = sub.H ? *sub.H : Matrix::Zero(n, n);
        Vector z_full = Vector::Zero(nin);
        for (int a = 0; a < na; ++a) z_full[active[a]] = za[a];
        model.add_curvature(z_full, K11);
        Matrix A_stack(meq + na, n);
        if (meq > 0) A_stack.topRows(meq) = sub.A_eq;
        for (int a = 0; a < na; ++a) A_stack.row(meq + a) = J.row(active[a]);
        kkt.assemble(K11, A_stack);
        bool factored = kkt.factorize(0.0);
        if (!factored) factored = kkt.factorize(1e-12);
        if (!factored) return false;

        const Vector step = kkt.solve(-r);
        x_new += step.head(n);
        lam_new += step.segment(n, meq);
        za += step.tail(na);
        r = residuals(x_new, lam_new, za);
        const double now = r.cwiseAbs().maxCoeff();
        if (now >= best) break;
        best = now;
        if (best < 1e-15) break;
    }

    if (best >= final_residual) return false;
    if (na > 0 && za.minCoeff() < -1e-10) return false;
    for (int i = 0; i < nin; ++i) {
        const bool is_active = std::find(active.begin(), active.end(), i) != active.end();
        if (!is_active && f[i] > 1e-9) return false;
    }

    x = x_new;
    lam = lam_new;
    double mu_new = 0;
    for (int a = 0; a < na; ++a) z[active[a]] = std::max(za[a], 0.0);
    for (int i = 0; i < nin; ++i) mu_new += std::max(-f[i], 0.0) * z[i];
    final_residual = std::max(best, mu_new / nin);
    return true;
}

double max_step(const Vector& v, const Vector& dv) {
    double alpha = std::numeric_limits<double>::max();
    for (int i = 0; i < v.size(); ++i) {
        if (dv[i] < 0) alpha = std::min(alpha, -v[i] / dv[i]);
    }
    return alpha;
}

Vector cold_start_point(const ConvexSet& omega) {
    const int n = omega.dimension();
    Vector x(n);
    for (int i = 0; i < n; ++i) {
        const double lo = omega.lower()[i];
        const double hi = omega.upper()[i];
        if (std::isfinite(lo) && std::isfinite(hi)) {
            x[i] = 0.5 * (lo + hi);
        } else if (std::isfinite(lo)) {
            x[i] = lo + 1.0;
        } else if (std::isfinite(hi)) {
            x[i] = hi - 1.0;
        } else {
            x[i] = 0.0;
        }
    }
    return x;
}

// Equality-constrained problem without inequality rows: a single Newton
// solve of the saddle system.
SubproblemSolution solve_equality_only(const ConvexSubproblem& sub, const SolverConfig& config) {
    const int n = sub.n();
    const int meq = sub.m();
    Matrix K11 = sub.H ? *sub.H : Matrix::Zero(n, n);
    AugmentedKkt kkt;
    kkt.assemble(K11, sub.A_eq);

    bool factored = kkt.factorize(0.0);
    for (double delta = config.regularization; !factored && delta <= 1e-3 * (1 + 1e-12); delta *= 10) {
        factored = kkt.factorize(delta);
    }

    SubproblemSolution out;
    out.inequality_multipliers.resize(0);
    out.iterations = 1;
    if (!factored) {
        out.status = SolveStatus::NumericalFailure;
        out.z = {Vector::Zero(n), Vector::Zero(meq)};
        return out;
    }
    Vector rhs(n + meq);
    rhs.head(n) = -sub.c;
    rhs.tail(meq) = sub.b_eq;
    const Vector sol = kkt.solve(rhs);
    out.z.x = sol.head(n);
    out.z.lambda = sol.tail(meq);

    Vector r_d = sub.c + sub.A_eq.transpose() * out.z.lambda;
    if (sub.H) r_d += *sub.H * out.z.x;
    const double dual_inf = r_d.size() ? r_d.cwiseAbs().maxCoeff() : 0.0;
    const double prim_inf = meq ? (sub.A_eq * out.z.x - sub.b_eq).cwiseAbs().maxCoeff() : 0.0;
    out.final_residual = std::max(dual_inf, prim_inf);
    out.status = out.final_residual <= config.kkt_tolerance && out.z.x.allFinite()
                     ? SolveStatus::Optimal
                     : SolveStatus::NumericalFailure;
    return out;
}

}  // namespace

SubproblemSolution solve(const ConvexSubproblem& sub, const SolverConfig& config,
                         const std::optional<PrimalDualPoint>& warm_start) {
    config.validate();
    const int n = sub.n();
    const int meq = sub.m();
    if (n <= 0) throw UsageError("solve: empty subproblem");
    if (meq > 0 && sub.A_eq.cols() != n) throw UsageError("solve: A_eq column count mismatch");
    if (sub.b_eq.size() != meq) throw UsageError("solve: b_eq length mismatch");
    if (sub.omega.dimension() != n) throw UsageError("solve: Omega dimension mismatch");
    if (sub.H && (sub.H->rows() != n || sub.H->cols() != n)) throw UsageError("solve: H dimension mismatch");

    const IneqModel model(sub.omega);
    const int nin = model.count();
    if (nin == 0) return solve_equality_only(sub, config);

    std::ofstream trace;
    if (!config.trace_path.empty()) {
        trace.open(config.trace_path);
        trace << "iter,mu,primal_inf,dual_inf\n";
    }

    // Starting point: warm (x, lambda) with slacks pushed to strict
    // interior, or a box-centred cold start.
    Vector x = warm_start ? warm_start->x : cold_start_point(sub.omega);
    if (x.size() != n) throw UsageError("solve: warm start x has wrong length");
    Vector lam = (warm_start && warm_start->lambda.size() == meq) ? warm_start->lambda : Vector::Zero(meq);

    Vector f(nin);
    model.eval(x, f);
    Vector s(nin);
    Vector z(nin);
    for (int i = 0; i < nin; ++i) {
        const double floor_i =
            warm_start ? 1e-3 * (1.0 + model.bound_scale(i)) : std::max(1.0, 1e-3 * (1.0 + model.bound_scale(i)));
        // max(slack, floor); violated rows additionally start with a slack
        // of the violation's own scale so early steps stay proportionate.
        s[i] = std::max({-f[i], floor_i, f[i]});
        z[i] = std::min(std::max(config.initial_barrier / s[i], 1e-8), 1e8);
    }

    SubproblemSolution out;
    out.status = SolveStatus::MaxIterations;
    Matrix J(nin, n);
    AugmentedKkt kkt;
    std::vector<double> prim_history;
    bool phase_one_done = false;

    for (int iter = 0; iter < config.max_iterations; ++iter) {
        model.eval(x, f);
        model.jacobian(x, J);

        Vector r_d = sub.c + J.transpose() * z;
        if (sub.H) r_d += *sub.H * x;
        if (meq > 0) r_d += sub.A_eq.transpose() * lam;
        const Vector r_p = meq > 0 ? Vector(sub.A_eq * x - sub.b_eq) : Vector(0);
        const Vector r_i = f + s;
        const double mu = s.dot(z) / nin;
        const double dual_inf = r_d.cwiseAbs().maxCoeff();
        const double prim_inf = std::max(meq > 0 ? r_p.cwiseAbs().maxCoeff() : 0.0, r_i.cwiseAbs().maxCoeff());
        out.barrier_history.push_back(mu);
        out.iterations = iter;
        if (trace.is_open()) {
            trace << iter << ',' << mu << ',' << prim_inf << ',' << dual_inf << '\n';
        }

        const double tol = config.kkt_tolerance;
        if (dual_inf <= tol && prim_inf <= tol && mu <= 0.5 * tol) {
            out.status = SolveStatus::Optimal;
            out.final_residual = std::max({dual_inf, prim_inf, mu});
            break;
        }
        out.final_residual = std::max({dual_inf, prim_inf, mu});

        // Primal stall above threshold: confirm infeasibility via phase-I.
        prim_history.push_back(prim_inf);
        if (meq > 0 && !phase_one_done && iter >= 12) {
            const auto window_begin = prim_history.end() - 10;
            const double window_min = *std::min_element(window_begin, prim_history.end());
            if (window_min > 1e-6 && prim_inf > 0.5 * *window_begin) {
                phase_one_done = true;
                const PhaseOneResult feas = phase_one(sub, config);
                if (feas.solved && feas.violation > 1e-8) {
                    out.status = SolveStatus::Infeasible;
                    break;
                }
            }
        }

        Matrix K11 = sub.H ? *sub.H : Matrix::Zero(n, n);
        model.add_curvature(z, K11);
        const Vector w = z.array() / s.array();
        K11.noalias() += J.transpose() * w.asDiagonal() * J;
        kkt.assemble(K11, sub.A_eq);

        bool factored = kkt.factorize(0.0);
        for (double delta = config.regularization; !factored && delta <= 1e-3 * (1 + 1e-12); delta *= 10) {
            factored = kkt.factorize(delta);
        }
        if (!factored) {
            // Last resort: corrections relative to the matrix scale.
            const double scale = 1.0 + K11.diagonal().cwiseAbs().maxCoeff();
            for (double rel = 1e-14; !factored && rel <= 1e-8 * (1 + 1e-12); rel *= 100) {
                factored = kkt.factorize(rel * scale);
            }
        }
        if (!factored) {
            out.status = SolveStatus::NumericalFailure;
            break;
        }

        const auto direction = [&](const Vector& rc) {
            Vector rhs(n + meq);
            rhs.head(n) = -(r_d + J.transpose() * ((z.array() * r_i.array() - rc.array()) / s.array()).matrix());
            if (meq > 0) rhs.tail(meq) = -r_p;
            const Vector sol = kkt.solve(rhs);
            struct Dir {
                Vector dx, dlam, ds, dz;
            } d;
            d.dx = sol.head(n);
            d.dlam = sol.tail(meq);
            const Vector Jdx = J * d.dx;
            d.ds = -r_i - Jdx;
            d.dz = ((z.array() * (Jdx + r_i).array() - rc.array()) / s.array()).matrix();
            return d;
        };

        // Predictor.
        const Vector rc_affine = (s.array() * z.array()).matrix();
        const auto aff = direction(rc_affine);
        const double alpha_aff_p =
            std::min({1.0, max_step(s, aff.ds), model.quadratic_overshoot_cap(aff.dx, s, r_i)});
        const double alpha_aff_d = std::min(1.0, max_step(z, aff.dz));
        const double mu_aff =
            (s + alpha_aff_p * aff.ds).dot(z + alpha_aff_d * aff.dz) / nin;
        double sigma = std::min(1.0, std::max(0.0, std::pow(mu_aff / mu, 3)));
        // Centering floor: letting mu collapse orders of magnitude below the
        // unresolved residuals destroys the Newton system's conditioning
        // before stationarity is polished. Capped below 1 so the barrier
        // keeps a strict decrease direction.
        const double resid = std::max(prim_inf, dual_inf);
        if (resid > 0) sigma = std::max(sigma, std::min(0.8, resid / (100.0 * mu)));

        // Corrector (same factorization). The second-order term uses the
        // affine products at the achievable step lengths, which degrades
        // gracefully to a centered step when the affine step is short.
        const Vector rc_corr = (s.array() * z.array() +
                                (alpha_aff_p * aff.ds.array()) * (alpha_aff_d * aff.dz.array()) - sigma * mu)
                                   .matrix();
        const auto dir = direction(rc_corr);

        double alpha_p = std::min({1.0, config.fraction_to_boundary * max_step(s, dir.ds),
                                   model.quadratic_overshoot_cap(dir.dx, s, r_i)});
        double alpha_d = std::min(1.0, config.fraction_to_boundary * max_step(z, dir.dz));

        // Keep the barrier sequence nonincreasing once past the first steps;
        // shrink the dual step first so primal progress survives.
        if (iter >= 2) {
            const auto mu_at = [&](double ap, double ad) {
                return (s + ap * dir.ds).dot(z + ad * dir.dz) / nin;
            };
            for (int tries = 0; tries < 20 && mu_at(alpha_p, alpha_d) > mu * (1.0 + 1e-12); ++tries) {
                alpha_d *= 0.8;
            }
            for (int tries = 0; tries < 20 && mu_at(alpha_p, alpha_d) > mu * (1.0 + 1e-12); ++tries) {
                alpha_p *= 0.8;
                alpha_d *= 0.8;
            }
        }

        x += alpha_p * dir.dx;
        s += alpha_p * dir.ds;
        lam += alpha_d * dir.dlam;
        z += alpha_d * dir.dz;
        if (!x.allFinite() || !s.allFinite() || !z.allFinite() || !lam.allFinite()) {
            out.status = SolveStatus::NumericalFailure;
            break;
        }
        out.iterations = iter + 1;
    }

    if (out.status == SolveStatus::Optimal) {
        Vector s_now(nin);
        model.eval(x, s_now);
        s_now = -s_now.cwiseMin(0.0);
        polish_active_set(sub, model, x, lam, z, s_now, out.final_residual);
    }

    out.z = {std::move(x), std::move(lam)};
    out.inequality_multipliers = std::move(z);
    return out;
}

Vector project_onto_omega(const ConvexSet& omega, const Vector& y, double tolerance) {
    if (y.size() != omega.dimension()) throw UsageError("project_onto_omega: dimension mismatch");
    if (omega.is_box_only()) return omega.clip_to_box(y);

    ConvexSubproblem proj;
    proj.x_lin = Vector::Zero(y.size());
    proj.A_eq = Matrix::Zero(0, y.size());
    proj.b_eq = Vector::Zero(0);
    proj.c = -y;
    proj.H = Matrix::Identity(y.size(), y.size());
    proj.omega = omega;

    SolverConfig config;
    config.kkt_tolerance = tolerance;
    config.max_iterations = 300;
    const PrimalDualPoint warm{omega.clip_to_box(y), Vector::Zero(0)};
    const SubproblemSolution sol = solve(proj, config, warm);
    if (sol.status != SolveStatus::Optimal) {
        throw SolverError(std::string("projection onto Omega failed: ") + to_string(sol.status));
    }
    return sol.z.x;
}

PhaseOneResult phase_one(const ConvexSubproblem& sub, const SolverConfig& config) {
    const int n = sub.n();
    const int meq = sub.m();
    const ConvexSet shrunk = sub.omega.shrunk(1e-6);

    // Variables (x, t): minimize t subject to +-(A_eq x - b_eq) <= t over
    // the tightened set, t >= 0.
    Vector lower(n + 1);
    Vector upper(n + 1);
    lower.head(n) = shrunk.lower();
    lower[n] = 0.0;
    upper.head(n) = shrunk.upper();
    upper[n] = kInf;
    ConvexSet omega(std::move(lower), std::move(upper));

    const int n_lin = static_cast<int>(shrunk.lin_A().rows());
    Matrix A(n_lin + 2 * meq, n + 1);
    Vector b(n_lin + 2 * meq);
    A.setZero();
    if (n_lin > 0) {
        A.topLeftCorner(n_lin, n) = shrunk.lin_A();
        b.head(n_lin) = shrunk.lin_b();
    }
    if (meq > 0) {
        A.block(n_lin, 0, meq, n) = sub.A_eq;
        A.block(n_lin, n, meq, 1).setConstant(-1.0);
        b.segment(n_lin, meq) = sub.b_eq;
        A.block(n_lin + meq, 0, meq, n) = -sub.A_eq;
        A.block(n_lin + meq, n, meq, 1).setConstant(-1.0);
        b.segment(n_lin + meq, meq) = -sub.b_eq;
    }
    if (A.rows() > 0) omega.add_linear_inequalities(A, b);
    for (const auto& quad : shrunk.quadratics()) {
        Matrix P = Matrix::Zero(n + 1, n + 1);
        P.topLeftCorner(n, n) = quad.P;
        Vector q = Vector::Zero(n + 1);
        q.head(n) = quad.q;
        omega.add_quadratic_inequality(std::move(P), std::move(q), quad.r);
    }

    ConvexSubproblem phase;
    phase.x_lin = Vector::Zero(n + 1);
    phase.A_eq = Matrix::Zero(0, n + 1);
    phase.b_eq = Vector::Zero(0);
    phase.c = Vector::Zero(n + 1);
    phase.c[n] = 1.0;
    phase.omega = std::move(omega);

    SolverConfig phase_config;
    phase_config.kkt_tolerance = std::min(config.kkt_tolerance, 1e-10);
    phase_config.max_iterations = std::max(config.max_iterations, 200);

    Vector x0 = Vector::Zero(n + 1);
    if (sub.x_lin.size() == n) x0.head(n) = sub.x_lin;
    x0 = phase.omega.clip_to_box(x0);
    x0[n] = meq > 0 ? (sub.A_eq * x0.head(n) - sub.b_eq).cwiseAbs().maxCoeff() + 1.0 : 1.0;
    const SubproblemSolution sol = solve(phase, phase_config, PrimalDualPoint{x0, Vector::Zero(0)});

    PhaseOneResult result;
    if (sol.status != SolveStatus::Optimal) {
        throw SolverError(std::string("phase-I feasibility solve failed: ") + to_string(sol.status));
    }
    result.solved = true;
    result.violation =
        meq > 0 ? (sub.A_eq * sol.z.x.head(n) - sub.b_eq).cwiseAbs().maxCoeff() : 0.0;
    return result;
}

bool slater_check(const ConvexSubproblem& sub) {
    return phase_one(sub).violation <= 1e-8;
}

}  // namespace rtscp
