#include "gdop/rational.hpp"

#include <cctype>

#include "gdop/errors.hpp"

namespace gdop {

Rational::Rational(long num, long den) : q_(num, den) {
    if (den == 0) throw Error("Rational: zero denominator");
    q_.canonicalize();
}

std::optional<Rational> Rational::parse(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto digits = [](const std::string& t) {
        if (t.empty()) return false;
        for (char c : t)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    std::string body = s;
    bool neg = false;
    if (body[0] == '-' || body[0] == '+') {
        neg = body[0] == '-';
        body.erase(0, 1);
    }
    std::string num = body, den = "1";
    if (auto pos = body.find('/'); pos != std::string::npos) {
        num = body.substr(0, pos);
        den = body.substr(pos + 1);
    }
    if (!digits(num) || !digits(den)) return std::nullopt;
    const mpz_class num_z(num);
    const mpz_class den_z(den);
    mpq_class q(num_z, den_z);
    if (q.get_den() == 0) return std::nullopt;
    q.canonicalize();
    if (neg) q = -q;
    return Rational(std::move(q));
}

Rational Rational::binomial(long a, long b) {
    if (b < 0 || b > a) return Rational(0);
    if (b > a - b) b = a - b;
    mpz_class r(1);
    for (long i = 1; i <= b; ++i) {
        r *= (a - b + i);
        mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(i));
    }
    return Rational(mpq_class(r));
}

Rational Rational::factorial(long a) {
    if (a < 0) throw Error("factorial of negative integer");
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(a));
    return Rational(mpq_class(r));
}

Rational Rational::operator-() const { return Rational(mpq_class(-q_)); }

Rational& Rational::operator+=(const Rational& o) {
    q_ += o.q_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    q_ -= o.q_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    q_ *= o.q_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

std::string Rational::str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

}  // namespace gdop
