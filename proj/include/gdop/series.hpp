#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gdop/polynomial.hpp"

namespace gdop {

// Taylor coefficients c_p of a function analytic on |z| < radius, plus the
// decay envelope |c_p| <= decay_m / decay_rho^p used for rigorous tail
// bounds. Polynomials carry their degree and have zero tails.
class AnalyticSeries {
public:
    using Coeff = std::complex<double>;

    const std::string& label() const { return label_; }
    double radius() const { return radius_; }
    // -1 when the series is genuinely infinite
    int degree() const { return degree_; }
    bool is_polynomial() const { return degree_ >= 0; }

    Coeff coeff(int p) const;

    // Reference value by direct series summation to machine precision.
    Coeff value(std::complex<double> z) const;
    // l-th derivative, same route.
    Coeff derivative_value(std::complex<double> z, int l) const;

    // Rigorous bound on sum_{p > P} |c_p| r^p. Throws DivergenceError when
    // a materialized coefficient violates the declared envelope.
    double tail_bound(double r, int P) const;
    // Same with the |c_p| p^l r^p weight (controls differentiated tails).
    double derivative_tail_bound(double r, int P, int l) const;

    // First P+1 coefficients as a float-mode polynomial.
    CPoly truncated(int P) const;

    // Truncation after which the series equals the function to double
    // precision on |z| <= r (used for reference values in measurements).
    int machine_cutoff(double r, int l = 0) const;

    static AnalyticSeries exponential();
    static AnalyticSeries sine();
    // 1/(2-z) = sum z^p / 2^{p+1}, radius 2
    static AnalyticSeries geometric_half();
    static AnalyticSeries monomial(int p);
    static AnalyticSeries from_coefficients(std::string label, double radius,
                                            std::vector<Coeff> coeffs);

    // Built-in test set by label: "exp", "sin", "1/(2-z)" (alias "geom2"),
    // "e<k>" monomials.
    static std::optional<AnalyticSeries> builtin(const std::string& label);

private:
    AnalyticSeries(std::string label, double radius, double decay_m, double decay_rho, int degree,
                   std::function<Coeff(int)> gen);

    std::string label_;
    double radius_;
    double decay_m_;
    double decay_rho_;
    int degree_;
    std::function<Coeff(int)> gen_;
};

}  // namespace gdop
