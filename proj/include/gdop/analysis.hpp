#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gdop/operator.hpp"
#include "gdop/rational.hpp"
#include "gdop/series.hpp"

namespace gdop::analysis {

using Complex = std::complex<double>;

// Circle supremum at M and 2M equispaced samples. The 2M grid contains the
// M grid, so fine >= coarse by construction; the refinement agreement is
// the trust check on the sampling density.
struct CircleSup {
    double coarse = 0.0;
    double fine = 0.0;
    double value() const { return fine; }
    // 0.5% relative agreement between the M and 2M grids; the absolute
    // floor keeps rounding-noise-level suprema (identically-zero
    // differences measured in floats) from tripping the check.
    bool refinement_agrees(double rel = 0.005, double abs_floor = 1e-11) const {
        return fine - coarse <= rel * fine + abs_floor;
    }
};

CircleSup sup_norm_on_circle(const std::function<Complex(Complex)>& g, double r, int M);
CircleSup sup_norm_poly(const CPoly& p, double r, int M);

// C_r(f) = 2 sum_{p>=2} |c_p| p(p-1) r^p, truncated with its tail bound
// folded in (so the returned value still dominates the true constant).
double upper_bound_constant(const AnalyticSeries& f, double r, const op::TruncationPolicy& trunc);

struct ConvergenceRecord {
    int n = 0;
    Rational alpha;
    double r = 1.0;
    std::string f_label;
    double sup_error = 0.0;
    double bound = 0.0;                  // C_r(f)/n
    double voronovskaja_residual = 0.0;  // sup |n(Gf-f) - z(1-z)f''|
    std::map<int, double> derivative_errors;
};

// One record for (f, n, alpha): sup error, bound, residual, and derivative
// sup errors for each l in l_values (r1 only used when l_values nonempty).
// Enforces the hard bound sup_error <= bound and the residual boundedness
// inequality at every sampled point; throws BoundViolation otherwise.
ConvergenceRecord make_record(const AnalyticSeries& f, int n, const Rational& alpha,
                              const op::DiskSpec& disk, const op::TruncationPolicy& trunc,
                              const std::vector<int>& l_values = {}, double r1 = 0.0);

std::vector<ConvergenceRecord> verify_upper_bound(const AnalyticSeries& f,
                                                  const std::vector<int>& n_list,
                                                  const Rational& alpha, const op::DiskSpec& disk);

double voronovskaja_residual(const AnalyticSeries& f, int n, const Rational& alpha,
                             const op::DiskSpec& disk);

struct OrderEstimate {
    double slope = 0.0;
    std::pair<double, double> slope_ci{0.0, 0.0};  // slope -/+ max |fit residual|
    std::pair<int, int> n_range{0, 0};
};

// Least-squares slope of log sup_error against log n. Requires >= 4
// distinct n; throws HypothesisError on degenerate (vanishing) errors.
OrderEstimate estimate_order(const std::vector<ConvergenceRecord>& records);

double derivative_sup_error(const AnalyticSeries& f, int l, int n, const Rational& alpha,
                            const op::DiskSpec& disk, const op::TruncationPolicy& trunc);

// Derivative convergence run: per-n sup errors of the l-th derivative on
// |z| = r, each checked against the explicit contour bound
// C_{r1}(f) l! r1 / (n (r1-r)^{l+1}); slope fit as in estimate_order; the
// series-route derivative is cross-checked against the contour route at
// three deterministic pseudo-random z per n.
OrderEstimate verify_simultaneous(const AnalyticSeries& f, int l, const std::vector<int>& n_list,
                                  const Rational& alpha, double r, double r1);

}  // namespace gdop::analysis
