#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>

namespace gdop {

// Arbitrary-precision rational scalar. Always stored in lowest terms with a
// positive denominator; every arithmetic operation is exact. Backed by GMP.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long v) : q_(static_cast<signed long>(v)) {}  // NOLINT: implicit by design
    Rational(long num, long den);

    // Accepts "n" or "n/d" (optional leading '-'). Anything else, including
    // decimal notation, yields nullopt.
    static std::optional<Rational> parse(const std::string& s);

    // C(a, b) with the out-of-range convention: zero when b < 0 or b > a.
    static Rational binomial(long a, long b);
    static Rational factorial(long a);

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    double to_double() const { return q_.get_d(); }

    // "num" for integers, "num/den" otherwise.
    std::string str() const;

    const mpq_class& raw() const { return q_; }

private:
    explicit Rational(mpq_class q) : q_(std::move(q)) {}
    mpq_class q_;
};

}  // namespace gdop
