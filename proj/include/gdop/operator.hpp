#pragma once

#include <complex>
#include <functional>
#include <memory>

#include "gdop/moments.hpp"
#include "gdop/polynomial.hpp"
#include "gdop/rational.hpp"
#include "gdop/series.hpp"

namespace gdop::op {

using Complex = std::complex<double>;

struct DiskSpec {
    double r = 1.0;       // closed evaluation disk, r >= 1
    double R = 0.0;       // analyticity radius, R > r (0 = take it from f)
    int grid_points = 720;
};

struct TruncationPolicy {
    double tol = 1e-12;
    int max_terms = 200;
};

struct Truncation {
    int terms;         // cutoff P: series summed for p = 0..P
    double tail;       // rigorous bound on the dropped tail at the radius
};

// Smallest P whose tail bound at radius r is below tol, then doubled once
// as safety margin (capped at max_terms). Throws TruncationError when no
// admissible P exists within max_terms.
Truncation choose_truncation(const AnalyticSeries& f, double r, const TruncationPolicy& policy);

// The operator image of the truncated series collapsed to one float-mode
// polynomial sum_{p<=P} c_p image(p). Degree <= min(n, P); the dropped
// tail obeys the same bound as the input tail, so `tail` bounds the image
// truncation error on |z| <= r as well.
struct CollapsedImage {
    CPoly poly;
    double tail = 0.0;
    int terms = 0;
};

CollapsedImage collapse(const AnalyticSeries& f, const moments::MomentTable& table,
                        const Truncation& tr);

// Process-wide cache of closed-form moment tables keyed by (n, alpha);
// tables are immutable once built and shared across threads.
class MomentCache {
public:
    static MomentCache& global();
    std::shared_ptr<const moments::MomentTable> get(int n, const Rational& alpha, int min_p);

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
    MomentCache();
};

struct OperatorValue {
    Complex value;
    double tail_bound;  // a-priori truncation error estimate
    int terms;
};

// Series route: sum_{p<=P} c_p image(p)(z), |z| <= disk.r.
OperatorValue apply_analytic(const AnalyticSeries& f, int n, const Rational& alpha, Complex z,
                             const DiskSpec& disk, const TruncationPolicy& trunc);

// Integral route straight from the defining sum; interior integrals by
// Gauss-Legendre. f_at_0/f_at_1 are taken as explicit inputs so endpoint
// interpolation is exact by construction. declared_degree >= 0 selects an
// exact fixed rule for polynomial f; otherwise a 64-node rule refined once
// against 128 nodes (QuadratureError if they disagree beyond quad_tol).
Complex apply_quadrature(const std::function<Complex(double)>& f, Complex f_at_0, Complex f_at_1,
                         int n, const Rational& alpha, Complex z, double quad_tol,
                         int declared_degree = -1);

// l-th derivative of the operator image by exact differentiation of the
// polynomial images (no numerical differentiation).
OperatorValue operator_derivative(const AnalyticSeries& f, int n, const Rational& alpha, int l,
                                  Complex z, const DiskSpec& disk, const TruncationPolicy& trunc);

// Same derivative through the Cauchy integral over the circle |mu| = r1,
// trapezoidal rule on `nodes` points with a doubling check (ContourError
// when doubling moves the value). |z| < r1 < f.radius required.
Complex contour_derivative(const AnalyticSeries& f, int n, const Rational& alpha, int l, Complex z,
                           double r1, int nodes);

}  // namespace gdop::op
