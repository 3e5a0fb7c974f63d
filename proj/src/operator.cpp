#include "gdop/operator.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "gdop/basis.hpp"
#include "gdop/errors.hpp"
#include "gdop/kernels.hpp"
#include "gdop/quadrature.hpp"

namespace gdop::op {

Truncation choose_truncation(const AnalyticSeries& f, double r, const TruncationPolicy& policy) {
    if (policy.tol <= 0.0) throw Error("choose_truncation: tol must be positive");
    int p_min = -1;
    for (int P = 0; P <= policy.max_terms; ++P) {
        if (f.tail_bound(r, P) < policy.tol) {
            p_min = P;
            break;
        }
    }
    if (p_min < 0)
        throw TruncationError("tail bound " + std::to_string(policy.tol) +
                              " unattainable within " + std::to_string(policy.max_terms) +
                              " terms for " + f.label() + " at r=" + std::to_string(r));
    if (f.tail_bound(r, p_min) == 0.0) return Truncation{p_min, 0.0};  // exact (polynomial) tail
    const int P = std::min(std::max(2 * p_min, p_min), policy.max_terms);
    return Truncation{P, f.tail_bound(r, P)};
}

CollapsedImage collapse(const AnalyticSeries& f, const moments::MomentTable& table,
                        const Truncation& tr) {
    if (table.max_p() < tr.terms)
        throw Error("collapse: moment table holds p <= " + std::to_string(table.max_p()) +
                    " but truncation needs " + std::to_string(tr.terms));
    CPoly acc;
    for (int p = 0; p <= tr.terms; ++p) {
        const Complex cp = f.coeff(p);
        if (cp == Complex(0.0)) continue;
        acc = acc + (cp * to_float(table.image(p)));
    }
    return CollapsedImage{std::move(acc), tr.tail, tr.terms};
}

struct MomentCache::Impl {
    std::mutex mu;
    std::map<std::pair<int, std::string>, std::shared_ptr<const moments::MomentTable>> tables;
};

MomentCache::MomentCache() : impl_(std::make_shared<Impl>()) {}

MomentCache& MomentCache::global() {
    static MomentCache cache;
    return cache;
}

std::shared_ptr<const moments::MomentTable> MomentCache::get(int n, const Rational& alpha,
                                                             int min_p) {
    const auto key = std::make_pair(n, alpha.str());
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto it = impl_->tables.find(key);
    if (it != impl_->tables.end() && it->second->max_p() >= min_p) return it->second;
    auto built = std::make_shared<const moments::MomentTable>(
        moments::monomial_image_closed(n, alpha, min_p));
    impl_->tables[key] = built;
    return built;
}

namespace {

void validate_disk(const DiskSpec& disk, const AnalyticSeries& f) {
    if (disk.r < 1.0) throw Error("DiskSpec: r must be >= 1");
    const double R = disk.R > 0.0 ? std::min(disk.R, f.radius()) : f.radius();
    if (!(disk.r < R)) throw Error("DiskSpec: need r < R within the radius of analyticity");
}

}  // namespace

OperatorValue apply_analytic(const AnalyticSeries& f, int n, const Rational& alpha, Complex z,
                             const DiskSpec& disk, const TruncationPolicy& trunc) {
    validate_disk(disk, f);
    const double r = disk.r;
    if (std::abs(z) > r * (1.0 + 1e-12))
        throw Error("apply_analytic: |z| exceeds the disk radius");
    const Truncation tr = choose_truncation(f, r, trunc);
    auto table = MomentCache::global().get(n, alpha, tr.terms);
    const CollapsedImage img = collapse(f, *table, tr);
    return OperatorValue{img.poly(z), img.tail, img.terms};
}

namespace {

// Interior integrals I_k = integral of p_{n-2,k-1}(t) f(t) dt, k = 1..n-1,
// on a shared rule; basis rows are evaluated per node.
std::vector<Complex> interior_integrals(const std::function<Complex(double)>& f, int n,
                                        int npoints) {
    const auto& rule = quadrature::gauss_legendre(npoints);
    std::vector<Complex> integrals(static_cast<std::size_t>(n - 1), Complex(0.0));
    for (int i = 0; i < npoints; ++i) {
        const double t = rule.nodes[static_cast<std::size_t>(i)];
        const Complex wf = rule.weights[static_cast<std::size_t>(i)] * f(t);
        for (int k = 1; k <= n - 1; ++k)
            integrals[static_cast<std::size_t>(k - 1)] += wf * basis::bernstein_value(n - 2, k - 1, t);
    }
    return integrals;
}

Complex assemble_quadrature(const std::vector<Complex>& integrals, Complex f0, Complex f1, int n,
                            double alpha, Complex z) {
    Complex acc = basis::alpha_basis_value(n, 0, alpha, z) * f0 +
                  basis::alpha_basis_value(n, n, alpha, z) * f1;
    for (int k = 1; k <= n - 1; ++k)
        acc += static_cast<double>(n - 1) * basis::alpha_basis_value(n, k, alpha, z) *
               integrals[static_cast<std::size_t>(k - 1)];
    return acc;
}

}  // namespace

Complex apply_quadrature(const std::function<Complex(double)>& f, Complex f_at_0, Complex f_at_1,
                         int n, const Rational& alpha, Complex z, double quad_tol,
                         int declared_degree) {
    if (n < 1) throw Error("apply_quadrature: n must be >= 1");
    const double a = alpha.to_double();
    if (n == 1) return (1.0 - z) * f_at_0 + z * f_at_1;
    if (declared_degree >= 0) {
        const int npoints = (n + declared_degree + 1) / 2 + 2;
        return assemble_quadrature(interior_integrals(f, n, npoints), f_at_0, f_at_1, n, a, z);
    }
    const Complex coarse = assemble_quadrature(interior_integrals(f, n, 64), f_at_0, f_at_1, n, a, z);
    const Complex fine = assemble_quadrature(interior_integrals(f, n, 128), f_at_0, f_at_1, n, a, z);
    if (std::abs(coarse - fine) > quad_tol * std::max(1.0, std::abs(fine)))
        throw QuadratureError("quadrature failed to converge to " + std::to_string(quad_tol));
    return fine;
}

OperatorValue operator_derivative(const AnalyticSeries& f, int n, const Rational& alpha, int l,
                                  Complex z, const DiskSpec& disk, const TruncationPolicy& trunc) {
    if (l < 1) throw Error("operator_derivative: l must be >= 1");
    validate_disk(disk, f);
    if (std::abs(z) > disk.r * (1.0 + 1e-12))
        throw Error("operator_derivative: |z| exceeds the disk radius");
    const Truncation tr = choose_truncation(f, disk.r, trunc);
    auto table = MomentCache::global().get(n, alpha, tr.terms);
    const CollapsedImage img = collapse(f, *table, tr);
    const CPoly dl = img.poly.derivative(l);
    // |image(p)^{(l)}| <= p^l r^p on |z| <= r (nonnegative coefficients
    // summing to one, degree <= p), so the differentiated tail is bounded
    // by the p^l-weighted series tail.
    const double tail = f.derivative_tail_bound(disk.r, tr.terms, l);
    return OperatorValue{dl(z), tail, tr.terms};
}

Complex contour_derivative(const AnalyticSeries& f, int n, const Rational& alpha, int l, Complex z,
                           double r1, int nodes) {
    if (l < 0) throw Error("contour_derivative: l must be >= 0");
    if (!(std::abs(z) < r1)) throw Error("contour_derivative: need |z| < r1");
    if (!(r1 < f.radius())) throw Error("contour_derivative: need r1 < radius of analyticity");
    if (nodes < 8) throw Error("contour_derivative: too few nodes");

    const TruncationPolicy policy{1e-12, 256};
    const Truncation tr = choose_truncation(f, r1, policy);
    auto table = MomentCache::global().get(n, alpha, tr.terms);
    const CollapsedImage img = collapse(f, *table, tr);

    double lfac = 1.0;
    for (int i = 2; i <= l; ++i) lfac *= i;

    auto trapezoid = [&](int m) {
        const kernels::PointBlock pts = kernels::circle_points(r1, m);
        const kernels::PointBlock vals = kernels::eval_poly(img.poly, pts);
        Complex acc = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const Complex mu = pts.at(i);
            acc += vals.at(i) * mu / std::pow(mu - z, l + 1);
        }
        return lfac * acc / static_cast<double>(m);
    };

    const Complex coarse = trapezoid(nodes);
    const Complex fine = trapezoid(2 * nodes);
    if (std::abs(coarse - fine) > 1e-9 * std::max(1.0, std::abs(fine)))
        throw ContourError("contour rule not converged: doubling moved the value by " +
                           std::to_string(std::abs(coarse - fine)));
    return fine;
}

}  // namespace gdop::op
