#include "gdop/moments.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>

#include <nlohmann/json.hpp>

#include "gdop/basis.hpp"
#include "gdop/errors.hpp"

namespace gdop::moments {

namespace {

void check_cap(int n, int P) {
    if (n < 1) throw Error("moment table: n must be >= 1");
    if (P < 0) throw Error("moment table: P must be >= 0");
    if (n > kExactMaxN || P > kExactMaxP)
        throw ExactCapError("exact-mode cap exceeded: n <= " + std::to_string(kExactMaxN) +
                            ", P <= " + std::to_string(kExactMaxP) + " (requested n=" +
                            std::to_string(n) + ", P=" + std::to_string(P) + ")");
}

// n = 1 has no interior sum at all: image(0) = 1 and image(p) = z for p >= 1.
MomentTable order_one_table(const Rational& alpha, int P, Method method) {
    MomentTable t;
    t.n = 1;
    t.alpha = alpha;
    t.method = method;
    t.images.reserve(static_cast<std::size_t>(P) + 1);
    t.images.push_back(QPoly::one());
    for (int p = 1; p <= P; ++p) t.images.push_back(QPoly::monomial(1));
    return t;
}

QPoly z_poly() { return QPoly::monomial(1); }

QPoly z_one_minus_z() {
    return QPoly(std::vector<Rational>{Rational(0), Rational(1), Rational(-1)});
}

// c0 + c1 z as a polynomial
QPoly linear(const Rational& c0, const Rational& c1) {
    return QPoly(std::vector<Rational>{c0, c1});
}

}  // namespace

Rational rising_factorial(int k, int p) {
    Rational r(1);
    for (int j = 0; j < p; ++j) r *= Rational(k + j);
    return r;
}

Rational beta_moment(int n, int k, int p) {
    if (n < 2) throw Error("beta_moment: n must be >= 2");
    if (p < 0) throw Error("beta_moment: p must be >= 0");
    if (k < 1 || k > n - 1)
        throw Error("beta_moment: k must lie in [1, n-1], got k=" + std::to_string(k));
    return Rational::factorial(n - 2) / Rational::factorial(n - 1 + p) * rising_factorial(k, p);
}

bool beta_step_identity_check(int p, int q) {
    if (p < 1 || q < 1) throw Error("beta_step_identity_check: p, q must be >= 1");
    auto beta = [](int a, int b) {
        return Rational::factorial(a - 1) * Rational::factorial(b - 1) /
               Rational::factorial(a + b - 1);
    };
    return Rational(p) * beta(p, q) == Rational(p + q) * beta(p + 1, q);
}

FactorialMoments FactorialMoments::build(int n, int max_p) {
    if (n < 2) throw Error("FactorialMoments: n must be >= 2");
    FactorialMoments fm;
    fm.n = n;
    fm.max_p = max_p;
    fm.E.resize(static_cast<std::size_t>(max_p) + 1);
    fm.F.resize(static_cast<std::size_t>(max_p) + 1);
    fm.dE.resize(static_cast<std::size_t>(max_p) + 1);
    fm.dF.resize(static_cast<std::size_t>(max_p) + 1);
    const Rational inv_nm1 = Rational(1, n - 1);
    for (int p = 0; p <= max_p; ++p) {
        auto& E = fm.E[static_cast<std::size_t>(p)];
        auto& F = fm.F[static_cast<std::size_t>(p)];
        E.resize(static_cast<std::size_t>(p) + 2);
        F.resize(static_cast<std::size_t>(p) + 1);
        for (int k = 0; k <= p + 1; ++k) E[static_cast<std::size_t>(k)] = rising_factorial(k, p);
        for (int k = 0; k <= p; ++k)
            F[static_cast<std::size_t>(k)] =
                (Rational(1) - Rational(k) * inv_nm1) * E[static_cast<std::size_t>(k)] +
                Rational(k) * inv_nm1 * E[static_cast<std::size_t>(k) + 1];
        auto diff_at_zero = [](const std::vector<Rational>& g, int s) {
            Rational acc(0);
            for (int k = 0; k <= s; ++k) {
                Rational term = Rational::binomial(s, k) * g[static_cast<std::size_t>(s - k)];
                acc += (k % 2 == 0) ? term : -term;
            }
            return acc;
        };
        auto& dE = fm.dE[static_cast<std::size_t>(p)];
        auto& dF = fm.dF[static_cast<std::size_t>(p)];
        dE.resize(static_cast<std::size_t>(p) + 1);
        dF.resize(static_cast<std::size_t>(p) + 1);
        for (int s = 0; s <= p; ++s) {
            dE[static_cast<std::size_t>(s)] = diff_at_zero(E, s);
            dF[static_cast<std::size_t>(s)] = diff_at_zero(F, s);
        }
    }
    return fm;
}

AuxTriple aux_initial(int n, const Rational& alpha) {
    if (n < 2) throw Error("aux_initial: n must be >= 2");
    const Rational one_minus_alpha = Rational(1) - alpha;
    const Rational scale(n - 1);
    QPoly s1 = QPoly::zero(), s2 = QPoly::zero(), s3 = QPoly::zero();
    for (int k = 1; k <= n - 1; ++k) {
        const Rational w = scale * beta_moment(n, k, 0);
        if (k <= n - 2) s1 = s1 + (w * basis::bernstein_poly(n - 2, k));
        if (k >= 2) s2 = s2 + (w * basis::bernstein_poly(n - 2, k - 2));
        s3 = s3 + (w * basis::bernstein_poly(n, k));
    }
    AuxTriple t;
    t.s1 = one_minus_alpha * (linear(Rational(1), Rational(-1)) * s1);  // (1-z) factor
    t.s2 = one_minus_alpha * (z_poly() * s2);
    t.s3 = alpha * s3;
    t.p = 0;
    return t;
}

AuxTriple aux_advance(const AuxTriple& t, int n) {
    const int p = t.p;
    const Rational inv(1, n + p);
    const QPoly zz = z_one_minus_z();
    AuxTriple next;
    next.s1 = inv * (zz * t.s1.derivative() + linear(Rational(p), Rational(n - 1)) * t.s1);
    next.s2 = inv * (zz * t.s2.derivative() + linear(Rational(p + 1), Rational(n - 1)) * t.s2);
    next.s3 = inv * (zz * t.s3.derivative() + linear(Rational(p), Rational(n)) * t.s3);
    next.p = p + 1;
    return next;
}

const QPoly& MomentTable::image(int p) const {
    if (p < 0 || p > max_p()) throw Error("MomentTable: image index out of range");
    return images[static_cast<std::size_t>(p)];
}

std::string MomentTable::to_json() const {
    nlohmann::json doc;
    doc["n"] = n;
    doc["alpha"] = alpha.str();
    nlohmann::json imgs = nlohmann::json::array();
    for (const auto& poly : images) {
        nlohmann::json coeffs = nlohmann::json::array();
        if (poly.is_zero()) {
            coeffs.push_back("0");
        } else {
            for (const auto& c : poly.coeffs()) coeffs.push_back(c.str());
        }
        imgs.push_back(std::move(coeffs));
    }
    doc["images"] = std::move(imgs);
    return doc.dump(2);
}

MomentTable monomial_image_recurrence(int n, const Rational& alpha, int P) {
    check_cap(n, P);
    if (n == 1) return order_one_table(alpha, P, Method::recurrence);
    MomentTable t;
    t.n = n;
    t.alpha = alpha;
    t.method = Method::recurrence;
    t.images.reserve(static_cast<std::size_t>(P) + 1);
    t.images.push_back(QPoly::one());
    if (P == 0) return t;
    const QPoly endpoint = basis::alpha_basis_poly(n, n, alpha);
    AuxTriple triple = aux_initial(n, alpha);
    for (int p = 1; p <= P; ++p) {
        triple = aux_advance(triple, n);
        t.images.push_back(endpoint + triple.s1 + triple.s2 + triple.s3);
    }
    if (t.images[1] != z_poly())
        throw Error("monomial_image_recurrence: image(1) != z at n=" + std::to_string(n) +
                    ", alpha=" + alpha.str());
    return t;
}

MomentTable monomial_image_closed(int n, const Rational& alpha, int P) {
    check_cap(n, P);
    if (n == 1) return order_one_table(alpha, P, Method::closed_form);
    MomentTable t;
    t.n = n;
    t.alpha = alpha;
    t.method = Method::closed_form;
    t.images.reserve(static_cast<std::size_t>(P) + 1);
    t.images.push_back(QPoly::one());
    if (P == 0) return t;
    const FactorialMoments fm = FactorialMoments::build(n, P);
    const Rational one_minus_alpha = Rational(1) - alpha;
    for (int p = 1; p <= P; ++p) {
        const Rational pref = Rational::factorial(n - 1) / Rational::factorial(n - 1 + p);
        const auto& dF = fm.dF[static_cast<std::size_t>(p)];
        const auto& dE = fm.dE[static_cast<std::size_t>(p)];
        const int s_max_f = std::min(n - 1, p);
        const int s_max_e = std::min(n, p);
        std::vector<Rational> coeffs(static_cast<std::size_t>(std::max(s_max_f, s_max_e)) + 1,
                                     Rational(0));
        for (int s = 0; s <= s_max_f; ++s)
            coeffs[static_cast<std::size_t>(s)] +=
                one_minus_alpha * Rational::binomial(n - 1, s) * dF[static_cast<std::size_t>(s)];
        for (int s = 0; s <= s_max_e; ++s)
            coeffs[static_cast<std::size_t>(s)] +=
                alpha * Rational::binomial(n, s) * dE[static_cast<std::size_t>(s)];
        for (auto& c : coeffs) c *= pref;
        t.images.push_back(QPoly(std::move(coeffs)));
    }
    return t;
}

QPoly defining_sum_monomial_image(int n, const Rational& alpha, int p) {
    if (n < 1) throw Error("defining_sum_monomial_image: n must be >= 1");
    if (n == 1) return p == 0 ? QPoly::one() : QPoly::monomial(1);
    QPoly acc = QPoly::zero();
    if (p == 0) acc = acc + basis::alpha_basis_poly(n, 0, alpha);  // e_p(0) = 1 only at p = 0
    acc = acc + basis::alpha_basis_poly(n, n, alpha);              // e_p(1) = 1
    for (int k = 1; k <= n - 1; ++k)
        acc = acc + (Rational(n - 1) * beta_moment(n, k, p)) * basis::alpha_basis_poly(n, k, alpha);
    return acc;
}

Rational leading_coefficient_product(int n, const Rational& alpha, int p) {
    if (p < 2 || p > n)
        throw Error("leading_coefficient_product: p must lie in [2, n], got p=" +
                    std::to_string(p));
    const Rational one_minus_alpha = Rational(1) - alpha;
    // route 1: forward-difference form of the z^p coefficient
    const FactorialMoments fm = FactorialMoments::build(n, p);
    const Rational pref = Rational::factorial(n - 1) / Rational::factorial(n - 1 + p);
    Rational via_differences =
        pref * (one_minus_alpha * Rational::binomial(n - 1, p) *
                    fm.dF[static_cast<std::size_t>(p)][static_cast<std::size_t>(p)] +
                alpha * Rational::binomial(n, p) *
                    fm.dE[static_cast<std::size_t>(p)][static_cast<std::size_t>(p)]);
    // route 2: endpoint products
    Rational prod_a(1), prod_b(1);
    for (int j = 1; j <= p - 1; ++j) {
        prod_a *= Rational(n + j - 1 - p, n + j - 1);
        prod_b *= Rational(n + j - p, n + j);
    }
    Rational via_products = one_minus_alpha * prod_a + alpha * prod_b;
    if (via_differences != via_products)
        throw Error("leading coefficient mismatch between difference and product forms at n=" +
                    std::to_string(n) + ", p=" + std::to_string(p) + ", alpha=" + alpha.str());
    return via_differences;
}

}  // namespace gdop::moments
