#pragma once

#include <limits>
#include <vector>

#include "rtscp/types.hpp"

namespace rtscp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Convex quadratic inequality 0.5 x'Px + q'x + r <= 0 with P symmetric PSD.
struct QuadraticInequality {
    Matrix P;
    Vector q;
    double r = 0.0;

    [[nodiscard]] double value(const Vector& x) const { return 0.5 * x.dot(P * x) + q.dot(x) + r; }
    [[nodiscard]] Vector gradient(const Vector& x) const { return P * x + q; }
};

/// The set Omega: box bounds, linear inequalities A x <= b and convex
/// quadratic inequalities. Membership is exactly the conjunction of the
/// three families.
class ConvexSet {
  public:
    ConvexSet() = default;

    /// Box with the given bounds (entries may be +-inf).
    ConvexSet(Vector lower, Vector upper);

    static ConvexSet unbounded(int n) {
        return {Vector::Constant(n, -kInf), Vector::Constant(n, kInf)};
    }

    /// Appends rows A x <= b. Throws UsageError on dimension mismatch.
    void add_linear_inequalities(const Matrix& A, const Vector& b);

    /// Appends 0.5 x'Px + q'x + r <= 0. P is symmetrized; throws UsageError
    /// if the symmetrized matrix has an eigenvalue below -1e-10.
    void add_quadratic_inequality(Matrix P, Vector q, double r);

    [[nodiscard]] int dimension() const { return static_cast<int>(lower_.size()); }
    [[nodiscard]] const Vector& lower() const { return lower_; }
    [[nodiscard]] const Vector& upper() const { return upper_; }
    [[nodiscard]] const Matrix& lin_A() const { return lin_A_; }
    [[nodiscard]] const Vector& lin_b() const { return lin_b_; }
    [[nodiscard]] const std::vector<QuadraticInequality>& quadratics() const { return quads_; }

    [[nodiscard]] bool is_box_only() const { return lin_A_.rows() == 0 && quads_.empty(); }

    [[nodiscard]] bool contains(const Vector& x, double tol = 1e-12) const;

    /// Componentwise clip to the box part only.
    [[nodiscard]] Vector clip_to_box(const Vector& x) const;

    /// Copy of the set with every constraint tightened. Box bounds move in by
    /// min(amount, half width); linear/quadratic offsets shrink by amount.
    [[nodiscard]] ConvexSet shrunk(double amount) const;

  private:
    Vector lower_;
    Vector upper_;
    Matrix lin_A_{0, 0};
    Vector lin_b_{0};
    std::vector<QuadraticInequality> quads_;
};

}  // namespace rtscp
