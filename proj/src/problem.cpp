#include "rtscp/problem.hpp"

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "rtscp/hovercraft.hpp"

namespace rtscp {

using nlohmann::json;

NonlinearMap linear_map(Matrix A, Vector b) {
    if (A.rows() != b.size()) {
        throw UsageError("linear_map: A and b row counts differ");
    }
    NonlinearMap map;
    map.dim_in = static_cast<int>(A.cols());
    map.dim_out = static_cast<int>(A.rows());
    const auto mat = std::make_shared<Matrix>(std::move(A));
    const auto rhs = std::make_shared<Vector>(std::move(b));
    map.value = [mat, rhs](const Vector& x) -> Vector { return *mat * x - *rhs; };
    map.jacobian = [mat](const Vector&) -> Matrix { return *mat; };
    map.component_hessian = [n = map.dim_in](const Vector&, int) -> Matrix { return Matrix::Zero(n, n); };
    return map;
}

void ParametricProblem::validate() const {
    const int nn = n();
    if (nn <= 0) throw UsageError("problem: decision dimension must be positive");
    if (g.dim_in != nn) throw UsageError("problem: g input dimension does not match c");
    if (g.dim_out != m()) throw UsageError("problem: g output dimension does not match M rows");
    if (!g.value || !g.jacobian) throw UsageError("problem: g evaluators missing");
    if (omega.dimension() != nn) throw UsageError("problem: Omega dimension does not match c");
    if (H) {
        if (H->rows() != nn || H->cols() != nn) throw UsageError("problem: H must be n-by-n");
        if ((*H - H->transpose()).cwiseAbs().maxCoeff() > 1e-10) {
            throw UsageError("problem: H must be symmetric");
        }
        Eigen::SelfAdjointEigenSolver<Matrix> eig(*H, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() < -1e-10) {
            throw UsageError("problem: H must be positive semidefinite");
        }
    }
}

Vector ParametricProblem::cost_gradient(const Vector& x) const {
    if (H) return c + *H * x;
    return c;
}

double ParametricProblem::cost_value(const Vector& x) const {
    double v = c.dot(x);
    if (H) v += 0.5 * x.dot(*H * x);
    return v;
}

std::pair<Vector, Matrix> evaluate(const ParametricProblem& problem, const Vector& x) {
    if (x.size() != problem.n()) {
        throw UsageError("evaluate: x has length " + std::to_string(x.size()) + ", expected " +
                         std::to_string(problem.n()));
    }
    Vector value = problem.g.value(x);
    Matrix jac = problem.g.jacobian(x);
    if (value.size() != problem.m() || jac.rows() != problem.m() || jac.cols() != problem.n()) {
        throw UsageError("evaluate: g returned wrong dimensions");
    }
    for (int i = 0; i < value.size(); ++i) {
        if (!std::isfinite(value[i])) {
            throw EvaluationError("evaluate: g component " + std::to_string(i) + " is non-finite");
        }
    }
    if (!jac.allFinite()) {
        for (int i = 0; i < jac.rows(); ++i) {
            for (int j = 0; j < jac.cols(); ++j) {
                if (!std::isfinite(jac(i, j))) {
                    throw EvaluationError("evaluate: Jacobian entry (" + std::to_string(i) + "," +
                                          std::to_string(j) + ") is non-finite");
                }
            }
        }
    }
    return {std::move(value), std::move(jac)};
}

double check_jacobian(const ParametricProblem& problem, const Vector& x, double step) {
    if (step <= 0) throw UsageError("check_jacobian: step must be positive");
    const auto [value, jac] = evaluate(problem, x);
    double max_err = 0.0;
    Vector xp = x;
    for (int j = 0; j < problem.n(); ++j) {
        xp[j] = x[j] + step;
        const Vector gp = problem.g.value(xp);
        xp[j] = x[j] - step;
        const Vector gm = problem.g.value(xp);
        xp[j] = x[j];
        for (int i = 0; i < problem.m(); ++i) {
            const double fd = (gp[i] - gm[i]) / (2.0 * step);
            const double err = std::abs(jac(i, j) - fd) / std::max(1.0, std::abs(jac(i, j)));
            max_err = std::max(max_err, err);
        }
    }
    return max_err;
}

LagrangianCurvature lagrangian_curvature(const ParametricProblem& problem, const PrimalDualPoint& z,
                                         bool allow_finite_difference) {
    if (z.x.size() != problem.n() || z.lambda.size() != problem.m()) {
        throw UsageError("lagrangian_curvature: point dimensions inconsistent with problem");
    }
    const int n = problem.n();
    Matrix E = Matrix::Zero(n, n);
    if (problem.g.has_hessians()) {
        for (int i = 0; i < problem.m(); ++i) {
            if (z.lambda[i] == 0.0) continue;
            E += z.lambda[i] * problem.g.component_hessian(z.x, i);
        }
    } else {
        if (!allow_finite_difference) {
            throw CapabilityError("lagrangian_curvature: component Hessians unavailable");
        }
        // E_g columns from central differences of J(x)' lambda, step 1e-5.
        const double h = 1e-5;
        Vector xp = z.x;
        for (int j = 0; j < n; ++j) {
            xp[j] = z.x[j] + h;
            const Vector gp = problem.g.jacobian(xp).transpose() * z.lambda;
            xp[j] = z.x[j] - h;
            const Vector gm = problem.g.jacobian(xp).transpose() * z.lambda;
            xp[j] = z.x[j];
            E.col(j) = (gp - gm) / (2.0 * h);
        }
        E = 0.5 * (E + E.transpose()).eval();
    }
    return {E, E.norm()};
}

// --- JSON loading -------------------------------------------------------

namespace {

std::map<std::string, MapBuilder>& builder_registry() {
    static std::map<std::string, MapBuilder> registry;
    return registry;
}

double parse_bound(const json& v) {
    if (v.is_null()) throw UsageError("problem json: bound entries must be numbers or inf strings");
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf" || s == "+inf") return kInf;
        if (s == "-inf") return -kInf;
        throw UsageError("problem json: unrecognized bound string '" + s + "'");
    }
    return v.get<double>();
}

Vector parse_vector(const json& arr) {
    Vector v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) v[static_cast<int>(i)] = arr[i].get<double>();
    return v;
}

Vector parse_bound_vector(const json& arr, double missing) {
    Vector v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        v[static_cast<int>(i)] = arr[i].is_null() ? missing : parse_bound(arr[i]);
    }
    return v;
}

Matrix parse_matrix(const json& rows) {
    const auto r = rows.size();
    const auto c = r == 0 ? 0 : rows[0].size();
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw UsageError("problem json: ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j].get<double>();
    }
    return m;
}

void ensure_builtin_builders() {
    auto& reg = builder_registry();
    if (!reg.empty()) return;
    reg["linear"] = [](const std::string& params_text) {
        const json params = json::parse(params_text);
        return linear_map(parse_matrix(params.at("A")), parse_vector(params.at("b")));
    };
    // Scalar map g(x) = x^2 whose advertised Jacobian is wrong on purpose;
    // exercises the derivative checker's failure path.
    reg["planted_bug"] = [](const std::string&) {
        NonlinearMap map;
        map.dim_in = 1;
        map.dim_out = 1;
        map.value = [](const Vector& x) { return Vector::Constant(1, x[0] * x[0]); };
        map.jacobian = [](const Vector&) { return Matrix::Constant(1, 1, 3.0); };
        return map;
    };
    reg["hovercraft_ocp"] = [](const std::string& params_text) {
        const json params = json::parse(params_text);
        HovercraftParams hp;
        if (params.contains("mass")) hp.mass = params.at("mass").get<double>();
        if (params.contains("inertia")) hp.inertia = params.at("inertia").get<double>();
        if (params.contains("lever")) hp.lever = params.at("lever").get<double>();
        const int N = params.at("N").get<int>();
        const double dt = params.at("dt").get<double>();
        const bool with_slack = params.value("with_slack", true);
        return hovercraft_ocp_map(hp, N, dt, with_slack);
    };
}

}  // namespace

void register_map_builder(const std::string& name, MapBuilder builder) {
    ensure_builtin_builders();
    builder_registry()[name] = std::move(builder);
}

bool has_map_builder(const std::string& name) {
    ensure_builtin_builders();
    return builder_registry().count(name) > 0;
}

ParametricProblem parse_problem_json(const std::string& text) {
    ensure_builtin_builders();
    const json doc = json::parse(text);
    const int n = doc.at("n").get<int>();
    const int m = doc.at("m").get<int>();
    const int p = doc.at("p").get<int>();

    ParametricProblem problem;
    problem.c = parse_vector(doc.at("c"));
    if (doc.contains("H") && !doc["H"].is_null()) problem.H = parse_matrix(doc["H"]);
    problem.M = parse_matrix(doc.at("M"));

    const json& om = doc.at("omega");
    Vector lower = om.contains("lower") ? parse_bound_vector(om["lower"], -kInf) : Vector::Constant(n, -kInf);
    Vector upper = om.contains("upper") ? parse_bound_vector(om["upper"], kInf) : Vector::Constant(n, kInf);
    problem.omega = ConvexSet(std::move(lower), std::move(upper));
    if (om.contains("lin_A")) {
        problem.omega.add_linear_inequalities(parse_matrix(om["lin_A"]), parse_vector(om.at("lin_b")));
    }
    if (om.contains("quad")) {
        for (const auto& q : om["quad"]) {
            problem.omega.add_quadratic_inequality(parse_matrix(q.at("P")), parse_vector(q.at("q")),
                                                   q.at("r").get<double>());
        }
    }

    const json& gspec = doc.at("g");
    const std::string builder_name = gspec.at("builder").get<std::string>();
    const auto it = builder_registry().find(builder_name);
    if (it == builder_registry().end()) {
        throw UsageError("problem json: unknown map builder '" + builder_name + "'");
    }
    problem.g = it->second(gspec.value("params", json::object()).dump());

    if (problem.n() != n || problem.m() != m || problem.p() != p) {
        throw UsageError("problem json: declared n/m/p disagree with field dimensions");
    }
    problem.validate();
    return problem;
}

ParametricProblem load_problem_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open problem file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem_json(buf.str());
}

}  // namespace rtscp
