#pragma once

#include <string>
#include <vector>

#include "gdop/polynomial.hpp"
#include "gdop/rational.hpp"

namespace gdop::moments {

// Exact-mode envelope. Requests beyond it are refused outright; nothing in
// this module ever falls back to floating point, since the forward
// differences it rests on cancel catastrophically there.
inline constexpr int kExactMaxN = 1024;
inline constexpr int kExactMaxP = 256;

// E_p(k) = k (k+1) ... (k+p-1); empty product for p = 0.
Rational rising_factorial(int k, int p);

// Exact value of the interior integral against the monomial t^p:
// (n-2)!/(n-1+p)! E_p(k). Requires n >= 2 and 1 <= k <= n-1 (the basis
// index k-1 of the integrand must lie in [0, n-2]).
Rational beta_moment(int n, int k, int p);

// p B(p,q) == (p+q) B(p+1,q), with B evaluated as an exact factorial ratio.
bool beta_step_identity_check(int p, int q);

// Rising-factorial moment tables with their forward differences at 0.
// E[p][k] = E_p(k); F[p][k] = (1 - k/(n-1)) E_p(k) + (k/(n-1)) E_p(k+1);
// dE[p][s] and dF[p][s] are the order-s forward differences at 0, computed
// from the alternating-sum formula.
struct FactorialMoments {
    int n = 0;
    int max_p = 0;
    std::vector<std::vector<Rational>> E, F, dE, dF;

    static FactorialMoments build(int n, int max_p);
};

// The three interior component sums at a fixed monomial exponent p, as
// exact polynomials in z. They satisfy, for p >= 1,
//   s1 + s2 + s3 = image(p) - q_{n,n}^alpha
// (the endpoint basis terms are absent from the interior sums and re-enter
// through q_{n,n}; at p = 0 the q_{n,0} term is missing as well).
struct AuxTriple {
    QPoly s1, s2, s3;
    int p = 0;
};

// Components at p = 0, computed directly from their defining sums (basis
// polynomials times beta_moment values). n >= 2.
AuxTriple aux_initial(int n, const Rational& alpha);

// One step p -> p+1 via the exact advancement identities
//   (n+p) s1' = z(1-z) d(s1) + ((n-1)z + p)   s1
//   (n+p) s2' = z(1-z) d(s2) + ((n-1)z + p+1) s2
//   (n+p) s3' = z(1-z) d(s3) + (nz + p)       s3
// where d() is the formal derivative; division by (n+p) is exact.
AuxTriple aux_advance(const AuxTriple& t, int n);

enum class Method { recurrence, closed_form };

// Cache of monomial-image polynomials image(p), p = 0..P, at fixed
// (n, alpha). Invariants: image(0) = 1, image(1) = z,
// deg image(p) <= min(n, p), image(p)(1) = 1.
struct MomentTable {
    int n = 0;
    Rational alpha;
    Method method = Method::closed_form;
    std::vector<QPoly> images;

    const QPoly& image(int p) const;
    int max_p() const { return static_cast<int>(images.size()) - 1; }

    // { n, alpha: "num/den", images: [["num/den", ...], ...] } — exact
    // strings, never floats.
    std::string to_json() const;
};

// Recurrence route: advance the component triple and reconstruct each image
// as q_{n,n}^alpha + s1 + s2 + s3.
MomentTable monomial_image_recurrence(int n, const Rational& alpha, int P);

// Closed route: assemble each image from the forward-difference tables.
MomentTable monomial_image_closed(int n, const Rational& alpha, int P);

// Fully independent third route: the defining sum
//   q_{n,0} e_p(0) + q_{n,n} e_p(1) + (n-1) sum_k q_{n,k} beta_moment(n,k,p)
// by exact polynomial arithmetic. Intended as the adjudicating oracle for
// the two construction routes; cost grows with n, keep n small.
QPoly defining_sum_monomial_image(int n, const Rational& alpha, int p);

// Coefficient of z^p in image(p), 2 <= p <= n, computed two independent
// ways (forward-difference form and the endpoint-product form
// (1-a) prod_j (n+j-1-p)/(n+j-1) + a prod_j (n+j-p)/(n+j), j = 1..p-1)
// and compared exactly before returning.
Rational leading_coefficient_product(int n, const Rational& alpha, int p);

}  // namespace gdop::moments
