#include "gdop/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "gdop/errors.hpp"
#include "gdop/kernels.hpp"

namespace gdop::analysis {

namespace {

CircleSup split_sup(const kernels::PointBlock& values) {
    // even indices of the 2M grid are exactly the M grid
    CircleSup sup;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double m = std::abs(values.at(i));
        sup.fine = std::max(sup.fine, m);
        if (i % 2 == 0) sup.coarse = std::max(sup.coarse, m);
    }
    return sup;
}

std::string complex_str(Complex z) {
    std::ostringstream os;
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

constexpr double kFloatSlack = 1e-10;  // relative slack for hard inequalities

}  // namespace

CircleSup sup_norm_on_circle(const std::function<Complex(Complex)>& g, double r, int M) {
    if (M < 8) throw Error("sup_norm_on_circle: M must be >= 8");
    const kernels::PointBlock pts = kernels::circle_points(r, 2 * M);
    CircleSup sup;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double m = std::abs(g(pts.at(i)));
        sup.fine = std::max(sup.fine, m);
        if (i % 2 == 0) sup.coarse = std::max(sup.coarse, m);
    }
    return sup;
}

CircleSup sup_norm_poly(const CPoly& p, double r, int M) {
    if (M < 8) throw Error("sup_norm_poly: M must be >= 8");
    const kernels::PointBlock pts = kernels::circle_points(r, 2 * M);
    return split_sup(kernels::eval_poly(p, pts));
}

double upper_bound_constant(const AnalyticSeries& f, double r, const op::TruncationPolicy& trunc) {
    if (f.is_polynomial()) {
        double acc = 0.0;
        for (int p = 2; p <= f.degree(); ++p)
            acc += 2.0 * std::abs(f.coeff(p)) * p * (p - 1) * std::pow(r, p);
        return acc;
    }
    if (r >= f.radius()) throw Error("upper_bound_constant: r must be below the radius");
    double acc = 0.0;
    const double cutoff_tol = std::min(trunc.tol, 1e-13);
    int P = 2;
    // 2 p(p-1) <= 2 p^2, so twice the p^2-weighted tail dominates the rest
    while (2.0 * f.derivative_tail_bound(r, P, 2) >= cutoff_tol) {
        if (P > 4096) throw DivergenceError("upper_bound_constant: series does not converge at r");
        ++P;
    }
    for (int p = 2; p <= P; ++p) acc += 2.0 * std::abs(f.coeff(p)) * p * (p - 1) * std::pow(r, p);
    return acc + 2.0 * f.derivative_tail_bound(r, P, 2);
}

ConvergenceRecord make_record(const AnalyticSeries& f, int n, const Rational& alpha,
                              const op::DiskSpec& disk, const op::TruncationPolicy& trunc,
                              const std::vector<int>& l_values, double r1) {
    const double r = disk.r;
    const int M = disk.grid_points;
    const op::Truncation tr = op::choose_truncation(f, r, trunc);
    auto table = op::MomentCache::global().get(n, alpha, tr.terms);
    const op::CollapsedImage img = op::collapse(f, *table, tr);

    int l_max = 2;
    for (int l : l_values) l_max = std::max(l_max, l);
    const CPoly fref = f.truncated(f.machine_cutoff(r, l_max));

    const kernels::PointBlock pts = kernels::circle_points(r, 2 * M);
    const kernels::PointBlock gv = kernels::eval_poly(img.poly, pts);
    const kernels::PointBlock fv = kernels::eval_poly(fref, pts);
    const kernels::PointBlock f2v = kernels::eval_poly(fref.derivative(2), pts);

    ConvergenceRecord rec;
    rec.n = n;
    rec.alpha = alpha;
    rec.r = r;
    rec.f_label = f.label();

    const double c_r = upper_bound_constant(f, r, trunc);
    rec.bound = c_r / n;

    const double a = alpha.to_double();
    const double proof_factor = (n + 1.0 - a) / (n + 1.0);
    double fpp_sup = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) fpp_sup = std::max(fpp_sup, std::abs(f2v.at(i)));
    const double vor_bound = (c_r + r * (1.0 + r) * fpp_sup) * (1.0 + kFloatSlack);

    CircleSup err_sup, vor_sup;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Complex z = pts.at(i);
        const Complex diff = gv.at(i) - fv.at(i);
        const double err = std::abs(diff);
        if (err > rec.bound * (1.0 + kFloatSlack) + img.tail)
            throw BoundViolation("upper bound violated for " + f.label() + " at n=" +
                                 std::to_string(n) + ", alpha=" + alpha.str() + ", z=" +
                                 complex_str(z) + ": error " + std::to_string(err) + " > " +
                                 std::to_string(rec.bound));
        const Complex limit_term = z * (1.0 - z) * f2v.at(i);
        const Complex scaled = static_cast<double>(n) * diff;
        const double vor = std::abs(scaled - limit_term);
        const double vor_proof = std::abs(scaled - proof_factor * limit_term);
        if (vor_proof > vor_bound + n * img.tail)
            throw BoundViolation("residual boundedness violated for " + f.label() + " at n=" +
                                 std::to_string(n) + ", z=" + complex_str(z));
        err_sup.fine = std::max(err_sup.fine, err);
        vor_sup.fine = std::max(vor_sup.fine, vor);
        if (i % 2 == 0) {
            err_sup.coarse = std::max(err_sup.coarse, err);
            vor_sup.coarse = std::max(vor_sup.coarse, vor);
        }
    }
    if (!err_sup.refinement_agrees() || !vor_sup.refinement_agrees())
        throw Error("circle sampling too coarse at M=" + std::to_string(M) + " for " + f.label() +
                    ", n=" + std::to_string(n));
    rec.sup_error = err_sup.value();
    rec.voronovskaja_residual = vor_sup.value();

    for (int l : l_values) {
        const kernels::PointBlock dv = kernels::eval_poly(img.poly.derivative(l), pts);
        const kernels::PointBlock frefd = kernels::eval_poly(fref.derivative(l), pts);
        double sup = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            sup = std::max(sup, std::abs(dv.at(i) - frefd.at(i)));
        rec.derivative_errors[l] = sup;
    }
    (void)r1;
    return rec;
}

std::vector<ConvergenceRecord> verify_upper_bound(const AnalyticSeries& f,
                                                  const std::vector<int>& n_list,
                                                  const Rational& alpha, const op::DiskSpec& disk) {
    std::vector<ConvergenceRecord> records;
    records.reserve(n_list.size());
    for (int n : n_list) {
        if (n < 2) throw Error("verify_upper_bound: n must be >= 2");
        records.push_back(make_record(f, n, alpha, disk, op::TruncationPolicy{}));
    }
    return records;
}

double voronovskaja_residual(const AnalyticSeries& f, int n, const Rational& alpha,
                             const op::DiskSpec& disk) {
    if (n < 2) throw Error("voronovskaja_residual: n must be >= 2");
    return make_record(f, n, alpha, disk, op::TruncationPolicy{}).voronovskaja_residual;
}

OrderEstimate estimate_order(const std::vector<ConvergenceRecord>& records) {
    std::vector<std::pair<double, double>> pts;
    int n_lo = 0, n_hi = 0;
    for (const auto& rec : records) {
        if (rec.sup_error < 1e-13)
            throw HypothesisError(
                "estimate_order: vanishing errors (polynomial of degree <= 1?) at n=" +
                std::to_string(rec.n));
        pts.emplace_back(std::log(static_cast<double>(rec.n)), std::log(rec.sup_error));
        n_lo = n_lo == 0 ? rec.n : std::min(n_lo, rec.n);
        n_hi = std::max(n_hi, rec.n);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              pts.end());
    if (pts.size() < 4) throw Error("estimate_order: need >= 4 distinct n values");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(pts.size());
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / m;
    double max_resid = 0.0;
    for (const auto& [x, y] : pts)
        max_resid = std::max(max_resid, std::abs(y - (slope * x + intercept)));
    OrderEstimate est;
    est.slope = slope;
    est.slope_ci = {slope - max_resid, slope + max_resid};
    est.n_range = {n_lo, n_hi};
    return est;
}

double derivative_sup_error(const AnalyticSeries& f, int l, int n, const Rational& alpha,
                            const op::DiskSpec& disk, const op::TruncationPolicy& trunc) {
    const auto rec = make_record(f, n, alpha, disk, trunc, {l});
    return rec.derivative_errors.at(l);
}

OrderEstimate verify_simultaneous(const AnalyticSeries& f, int l, const std::vector<int>& n_list,
                                  const Rational& alpha, double r, double r1) {
    if (l < 1) throw Error("verify_simultaneous: l must be >= 1");
    if (!(1.0 <= r && r < r1 && r1 < f.radius()))
        throw Error("verify_simultaneous: need 1 <= r < r1 < radius");
    const int min_degree = std::max(1, l - 1);
    if (f.is_polynomial() && f.degree() <= min_degree)
        throw HypothesisError("verify_simultaneous: f is a polynomial of degree <= " +
                              std::to_string(min_degree));
    double lfac = 1.0;
    for (int i = 2; i <= l; ++i) lfac *= i;
    const double c_r1 = upper_bound_constant(f, r1, op::TruncationPolicy{});
    const op::DiskSpec disk{r, f.radius(), 720};
    std::mt19937 rng(0x5eed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<ConvergenceRecord> records;
    for (int n : n_list) {
        ConvergenceRecord rec = make_record(f, n, alpha, disk, op::TruncationPolicy{}, {l});
        const double err = rec.derivative_errors.at(l);
        const double limit = c_r1 * lfac * r1 / (n * std::pow(r1 - r, l + 1));
        if (err > limit * (1.0 + kFloatSlack))
            throw BoundViolation("derivative bound violated for " + f.label() + " at n=" +
                                 std::to_string(n) + ", l=" + std::to_string(l) + ": " +
                                 std::to_string(err) + " > " + std::to_string(limit));
        for (int probe = 0; probe < 3; ++probe) {
            const double rho = 0.8 * r * std::sqrt(unit(rng));
            const double theta = 2.0 * M_PI * unit(rng);
            const Complex z = std::polar(rho, theta);
            const Complex series_route =
                op::operator_derivative(f, n, alpha, l, z, disk, op::TruncationPolicy{}).value;
            const Complex contour_route = op::contour_derivative(f, n, alpha, l, z, r1, 256);
            if (std::abs(series_route - contour_route) > 1e-8)
                throw Error("derivative routes disagree at n=" + std::to_string(n) + ", z=" +
                            complex_str(z) + ": |diff|=" +
                            std::to_string(std::abs(series_route - contour_route)));
        }
        // reuse the slope fit by reporting the derivative error as the record error
        rec.sup_error = err;
        records.push_back(std::move(rec));
    }
    return estimate_order(records);
}

}  // namespace gdop::analysis
