#include "rtscp/convex_set.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>

namespace rtscp {

ConvexSet::ConvexSet(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() != upper_.size()) {
        throw UsageError("ConvexSet: lower/upper bound lengths differ");
    }
    for (int i = 0; i < lower_.size(); ++i) {
        if (lower_[i] > upper_[i]) {
            throw UsageError("ConvexSet: lower bound exceeds upper bound at index " + std::to_string(i));
        }
    }
    lin_A_.resize(0, lower_.size());
}

void ConvexSet::add_linear_inequalities(const Matrix& A, const Vector& b) {
    if (A.cols() != dimension() || A.rows() != b.size()) {
        throw UsageError("ConvexSet: linear inequality dimensions inconsistent");
    }
    Matrix stacked(lin_A_.rows() + A.rows(), dimension());
    stacked << lin_A_, A;
    Vector stacked_b(lin_b_.size() + b.size());
    stacked_b << lin_b_, b;
    lin_A_ = std::move(stacked);
    lin_b_ = std::move(stacked_b);
}

void ConvexSet::add_quadratic_inequality(Matrix P, Vector q, double r) {
    if (P.rows() != dimension() || P.cols() != dimension() || q.size() != dimension()) {
        throw UsageError("ConvexSet: quadratic inequality dimensions inconsistent");
    }
    Matrix sym = 0.5 * (P + P.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-10) {
        throw UsageError("ConvexSet: quadratic inequality matrix is not positive semidefinite");
    }
    quads_.push_back({std::move(sym), std::move(q), r});
}

bool ConvexSet::contains(const Vector& x, double tol) const {
    if (x.size() != dimension()) {
        throw UsageError("ConvexSet::contains: point has wrong dimension");
    }
    for (int i = 0; i < x.size(); ++i) {
        if (x[i] < lower_[i] - tol || x[i] > upper_[i] + tol) return false;
    }
    if (lin_A_.rows() > 0 && ((lin_A_ * x - lin_b_).array() > tol).any()) return false;
    for (const auto& quad : quads_) {
        if (quad.value(x) > tol) return false;
    }
    return true;
}

Vector ConvexSet::clip_to_box(const Vector& x) const {
    return x.cwiseMax(lower_).cwiseMin(upper_);
}

ConvexSet ConvexSet::shrunk(double amount) const {
    Vector lo = lower_;
    Vector hi = upper_;
    for (int i = 0; i < lo.size(); ++i) {
        const double width = hi[i] - lo[i];
        const double shift = std::isfinite(width) ? std::min(amount, 0.5 * width) : amount;
        if (std::isfinite(lo[i])) lo[i] += shift;
        if (std::isfinite(hi[i])) hi[i] -= shift;
    }
    ConvexSet out(std::move(lo), std::move(hi));
    if (lin_A_.rows() > 0) {
        out.add_linear_inequalities(lin_A_, lin_b_ - Vector::Constant(lin_b_.size(), amount));
    }
    for (const auto& quad : quads_) {
        out.add_quadratic_inequality(quad.P, quad.q, quad.r + amount);
    }
    return out;
}

}  // namespace rtscp
