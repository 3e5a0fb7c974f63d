#include "gdop/basis.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include "gdop/errors.hpp"

namespace gdop::basis {

namespace {

// Adds c * z^shift * (1-z)^m to dst.
void add_shifted_binomial_power(std::vector<Rational>& dst, const Rational& c, int shift, int m) {
    if (c.is_zero()) return;
    for (int j = 0; j <= m; ++j) {
        Rational term = c * Rational::binomial(m, j);
        if (j % 2 != 0) term = -term;
        dst[static_cast<std::size_t>(shift + j)] += term;
    }
}

constexpr int kDirectBinomialLimit = 300;

double log_choose(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// z^a (1-z)^b scaled by C(n_choose, k_choose), stable for large n.
std::complex<double> scaled_power_term(int n_choose, int k_choose, std::complex<double> z, int a,
                                       int b) {
    if (k_choose < 0 || k_choose > n_choose) return 0.0;
    std::complex<double> w = 1.0 - z;
    if (n_choose <= kDirectBinomialLimit) {
        double binom = Rational::binomial(n_choose, k_choose).to_double();
        std::complex<double> r = binom;
        for (int i = 0; i < a; ++i) r *= z;
        for (int i = 0; i < b; ++i) r *= w;
        return r;
    }
    if ((a > 0 && z == std::complex<double>(0.0)) || (b > 0 && w == std::complex<double>(0.0)))
        return 0.0;
    std::complex<double> lg = log_choose(n_choose, k_choose);
    if (a > 0) lg += static_cast<double>(a) * std::log(z);
    if (b > 0) lg += static_cast<double>(b) * std::log(w);
    return std::exp(lg);
}

}  // namespace

BasisSpec::BasisSpec(int n_, Rational alpha_, int k_) : n(n_), alpha(std::move(alpha_)), k(k_) {
    if (n < 1) throw Error("BasisSpec: n must be >= 1");
    if (k < 0 || k > n) throw Error("BasisSpec: k out of [0, n]");
    outside_unit_interval = alpha < Rational(0) || alpha > Rational(1);
}

QPoly bernstein_poly(int n, int k) {
    if (k < 0 || k > n) return QPoly::zero();
    std::vector<Rational> c(static_cast<std::size_t>(n) + 1, Rational(0));
    add_shifted_binomial_power(c, Rational::binomial(n, k), k, n - k);
    return QPoly(std::move(c));
}

QPoly alpha_basis_poly(int n, int k, const Rational& alpha) {
    if (n < 1) throw Error("alpha_basis_poly: n must be >= 1");
    if (k < 0 || k > n) throw Error("alpha_basis_poly: k out of [0, n]");
    if (n == 1) {
        if (k == 0) return QPoly(std::vector<Rational>{Rational(1), Rational(-1)});  // 1 - z
        return QPoly::monomial(1);                                                   // z
    }
    const Rational one_minus_alpha = Rational(1) - alpha;
    std::vector<Rational> c(static_cast<std::size_t>(n) + 1, Rational(0));
    // C(n-2,k) (1-a) z^k (1-z)^{n-k-1}: present only for k <= n-2
    if (k <= n - 2)
        add_shifted_binomial_power(c, one_minus_alpha * Rational::binomial(n - 2, k), k, n - k - 1);
    // C(n-2,k-2) (1-a) z^{k-1} (1-z)^{n-k}: present only for k >= 2
    if (k >= 2)
        add_shifted_binomial_power(c, one_minus_alpha * Rational::binomial(n - 2, k - 2), k - 1,
                                   n - k);
    // C(n,k) a z^k (1-z)^{n-k}
    add_shifted_binomial_power(c, alpha * Rational::binomial(n, k), k, n - k);
    return QPoly(std::move(c));
}

std::complex<double> alpha_basis_value(int n, int k, double alpha, std::complex<double> z) {
    if (n < 1) throw Error("alpha_basis_value: n must be >= 1");
    if (k < 0 || k > n) throw Error("alpha_basis_value: k out of [0, n]");
    if (n == 1) return k == 0 ? 1.0 - z : z;
    std::complex<double> acc = 0.0;
    if (k <= n - 2) acc += (1.0 - alpha) * scaled_power_term(n - 2, k, z, k, n - k - 1);
    if (k >= 2) acc += (1.0 - alpha) * scaled_power_term(n - 2, k - 2, z, k - 1, n - k);
    acc += alpha * scaled_power_term(n, k, z, k, n - k);
    return acc;
}

double bernstein_value(int n, int k, double t) {
    if (k < 0 || k > n) return 0.0;
    if (n <= kDirectBinomialLimit)
        return Rational::binomial(n, k).to_double() * std::pow(t, k) * std::pow(1.0 - t, n - k);
    if ((k > 0 && t == 0.0) || (k < n && t == 1.0)) return 0.0;
    double lg = log_choose(n, k);
    if (k > 0) lg += k * std::log(t);
    if (k < n) lg += (n - k) * std::log1p(-t);
    return std::exp(lg);
}

}  // namespace gdop::basis
