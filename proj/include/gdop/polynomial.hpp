#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "gdop/rational.hpp"

namespace gdop {

namespace detail {

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
    static Rational from_int(long v) { return Rational(v); }
    static bool is_zero(const Rational& x) { return x.is_zero(); }
};

template <>
struct ScalarOps<std::complex<double>> {
    static std::complex<double> from_int(long v) { return {static_cast<double>(v), 0.0}; }
    static bool is_zero(const std::complex<double>& x) { return x.real() == 0.0 && x.imag() == 0.0; }
};

template <>
struct ScalarOps<double> {
    static double from_int(long v) { return static_cast<double>(v); }
    static bool is_zero(double x) { return x == 0.0; }
};

}  // namespace detail

// Dense univariate polynomial over S. coeffs()[j] multiplies z^j; trailing
// zero coefficients are trimmed, so the zero polynomial has an empty
// coefficient vector and degree() == -1. The scalar mode is the template
// parameter: Rational for the exact mode, std::complex<double> for the
// float mode (mixing modes is a compile error).
template <class S>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly constant(S v) { return Poly(std::vector<S>{std::move(v)}); }
    static Poly one() { return constant(detail::ScalarOps<S>::from_int(1)); }
    static Poly monomial(int degree, S lead = detail::ScalarOps<S>::from_int(1)) {
        std::vector<S> c(static_cast<std::size_t>(degree) + 1, detail::ScalarOps<S>::from_int(0));
        c.back() = std::move(lead);
        return Poly(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<S>& coeffs() const { return c_; }

    S coeff(int j) const {
        if (j < 0 || j > degree()) return detail::ScalarOps<S>::from_int(0);
        return c_[static_cast<std::size_t>(j)];
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<S> c(std::max(a.c_.size(), b.c_.size()), detail::ScalarOps<S>::from_int(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return Poly(std::move(c));
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<S> c(std::max(a.c_.size(), b.c_.size()), detail::ScalarOps<S>::from_int(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
        return Poly(std::move(c));
    }

    Poly operator-() const {
        std::vector<S> c = c_;
        for (auto& v : c) v = -v;
        return Poly(std::move(c));
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        std::vector<S> c(a.c_.size() + b.c_.size() - 1, detail::ScalarOps<S>::from_int(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }

    friend Poly operator*(const S& s, Poly p) {
        for (auto& v : p.c_) v = s * v;
        p.trim();
        return p;
    }

    Poly derivative() const {
        if (degree() < 1) return zero();
        std::vector<S> c(c_.size() - 1, detail::ScalarOps<S>::from_int(0));
        for (std::size_t j = 1; j < c_.size(); ++j)
            c[j - 1] = detail::ScalarOps<S>::from_int(static_cast<long>(j)) * c_[j];
        return Poly(std::move(c));
    }

    Poly derivative(int order) const {
        Poly p = *this;
        for (int i = 0; i < order; ++i) p = p.derivative();
        return p;
    }

    // Horner evaluation; exact in the Rational mode.
    S operator()(const S& x) const {
        S acc = detail::ScalarOps<S>::from_int(0);
        for (std::size_t j = c_.size(); j-- > 0;) acc = acc * x + c_[j];
        return acc;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    void trim() {
        while (!c_.empty() && detail::ScalarOps<S>::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<S> c_;
};

using QPoly = Poly<Rational>;
using CPoly = Poly<std::complex<double>>;

// One rounding per coefficient; the exact polynomial stays the source of
// truth.
inline CPoly to_float(const QPoly& p) {
    std::vector<std::complex<double>> c;
    c.reserve(p.coeffs().size());
    for (const auto& q : p.coeffs()) c.emplace_back(q.to_double(), 0.0);
    return CPoly(std::move(c));
}

inline std::complex<double> eval(const QPoly& p, std::complex<double> z) {
    return to_float(p)(z);
}

}  // namespace gdop
