#pragma once

#include <complex>

#include "gdop/polynomial.hpp"
#include "gdop/rational.hpp"

namespace gdop::basis {

struct BasisSpec {
    int n;
    Rational alpha;
    int k;
    // Set when alpha falls outside [0, 1]; the basis is still well defined
    // but loses positivity on [0, 1].
    bool outside_unit_interval = false;

    BasisSpec(int n_, Rational alpha_, int k_);
};

// Classical Bernstein basis p_{n,k}(t) = C(n,k) t^k (1-t)^{n-k} as an exact
// polynomial. Out-of-range k yields the zero polynomial, matching the
// binomial convention.
QPoly bernstein_poly(int n, int k);

// One-parameter deformation of the Bernstein basis; reduces to
// bernstein_poly at alpha = 1. n >= 1, 0 <= k <= n (throws otherwise).
// Built by expanding the three bracket terms separately with the
// out-of-range-binomial-is-zero convention, so negative powers never
// materialize.
QPoly alpha_basis_poly(int n, int k, const Rational& alpha);

// Float-path point evaluation used by the quadrature route. Switches to a
// log-gamma form above n = 300, where double-precision binomials overflow.
std::complex<double> alpha_basis_value(int n, int k, double alpha, std::complex<double> z);

// Real-argument classical basis value p_{n,k}(t), t in (0,1); log-gamma
// form above n = 300.
double bernstein_value(int n, int k, double t);

}  // namespace gdop::basis
