#include "gdop/series.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <utility>

#include "gdop/errors.hpp"

namespace gdop {

namespace {

double inv_factorial(int p) {
    double f = 1.0;
    for (int i = 2; i <= p; ++i) f /= i;
    return f;
}

constexpr int kHardTermCap = 2048;

}  // namespace

AnalyticSeries::AnalyticSeries(std::string label, double radius, double decay_m, double decay_rho,
                               int degree, std::function<Coeff(int)> gen)
    : label_(std::move(label)),
      radius_(radius),
      decay_m_(decay_m),
      decay_rho_(decay_rho),
      degree_(degree),
      gen_(std::move(gen)) {}

AnalyticSeries::Coeff AnalyticSeries::coeff(int p) const {
    if (p < 0 || (degree_ >= 0 && p > degree_)) return 0.0;
    return gen_(p);
}

AnalyticSeries::Coeff AnalyticSeries::value(std::complex<double> z) const {
    return derivative_value(z, 0);
}

AnalyticSeries::Coeff AnalyticSeries::derivative_value(std::complex<double> z, int l) const {
    const int cutoff = machine_cutoff(std::abs(z), l);
    Coeff acc = 0.0;
    Coeff zp = 1.0;  // z^{p-l}
    for (int p = l; p <= cutoff; ++p) {
        double fall = 1.0;  // p (p-1) ... (p-l+1)
        for (int i = 0; i < l; ++i) fall *= p - i;
        acc += coeff(p) * fall * zp;
        zp *= z;
    }
    return acc;
}

double AnalyticSeries::tail_bound(double r, int P) const {
    return derivative_tail_bound(r, P, 0);
}

double AnalyticSeries::derivative_tail_bound(double r, int P, int l) const {
    if (degree_ >= 0) return P >= degree_ ? 0.0 : std::numeric_limits<double>::infinity();
    if (r >= decay_rho_)
        throw DivergenceError("tail bound requested at r = " + std::to_string(r) +
                              " >= declared decay radius " + std::to_string(decay_rho_) +
                              " for " + label_);
    const double q = r / decay_rho_;
    // sum_{p>P} M p^l q^p <= M (P+1)^l q^{P+1} / (1 - q * ((P+2)/(P+1))^l),
    // valid once the term ratio q ((p+1)/p)^l drops below 1; walk P forward
    // until it does.
    double bound = 0.0;
    int p = P + 1;
    for (;; ++p) {
        if (p > kHardTermCap) return std::numeric_limits<double>::infinity();
        const double term = decay_m_ * std::pow(static_cast<double>(std::max(p, 1)), l) *
                            std::pow(q, p);
        const double ratio = q * std::pow((p + 1.0) / p, l);
        if (ratio < 0.999) {
            bound += term / (1.0 - ratio);
            break;
        }
        bound += term;
    }
    return bound;
}

CPoly AnalyticSeries::truncated(int P) const {
    std::vector<Coeff> c;
    const int top = degree_ >= 0 ? std::min(P, degree_) : P;
    c.reserve(static_cast<std::size_t>(top) + 1);
    for (int p = 0; p <= top; ++p) {
        const Coeff cp = coeff(p);
        if (degree_ < 0) {
            const double limit = decay_m_ / std::pow(decay_rho_, p);
            if (std::abs(cp) > limit * (1.0 + 1e-9))
                throw DivergenceError("coefficient " + std::to_string(p) +
                                      " violates declared decay for " + label_);
        }
        c.push_back(cp);
    }
    return CPoly(std::move(c));
}

int AnalyticSeries::machine_cutoff(double r, int l) const {
    if (degree_ >= 0) return degree_;
    const double target = 1e-19;
    for (int p = 1; p <= kHardTermCap; ++p) {
        const double weight = std::pow(static_cast<double>(p), std::max(l, 2));
        if (decay_m_ * std::pow(r / decay_rho_, p) * weight < target && r < decay_rho_)
            return p;
    }
    throw TruncationError("series does not reach machine precision on |z| <= " +
                          std::to_string(r) + " for " + label_);
}

AnalyticSeries AnalyticSeries::exponential() {
    // |c_p| = 1/p! <= e^8 / 8^p
    return AnalyticSeries("exp", std::numeric_limits<double>::infinity(), std::exp(8.0), 8.0, -1,
                          [](int p) -> Coeff { return inv_factorial(p); });
}

AnalyticSeries AnalyticSeries::sine() {
    return AnalyticSeries("sin", std::numeric_limits<double>::infinity(), std::exp(8.0), 8.0, -1,
                          [](int p) -> Coeff {
                              if (p % 2 == 0) return 0.0;
                              const double v = inv_factorial(p);
                              return (p / 2) % 2 == 0 ? v : -v;
                          });
}

AnalyticSeries AnalyticSeries::geometric_half() {
    return AnalyticSeries("1/(2-z)", 2.0, 0.5, 2.0, -1,
                          [](int p) -> Coeff { return 0.5 * std::pow(0.5, p); });
}

AnalyticSeries AnalyticSeries::monomial(int p) {
    return AnalyticSeries("e" + std::to_string(p), std::numeric_limits<double>::infinity(), 1.0,
                          1.0, p, [p](int q) -> Coeff { return q == p ? 1.0 : 0.0; });
}

AnalyticSeries AnalyticSeries::from_coefficients(std::string label, double radius,
                                                 std::vector<Coeff> coeffs) {
    const int degree = static_cast<int>(coeffs.size()) - 1;
    return AnalyticSeries(std::move(label), radius, 1.0, 1.0, std::max(degree, 0),
                          [c = std::move(coeffs)](int p) -> Coeff {
                              if (p < 0 || p >= static_cast<int>(c.size())) return 0.0;
                              return c[static_cast<std::size_t>(p)];
                          });
}

std::optional<AnalyticSeries> AnalyticSeries::builtin(const std::string& label) {
    if (label == "exp") return exponential();
    if (label == "sin") return sine();
    if (label == "1/(2-z)" || label == "geom2") return geometric_half();
    if (label.size() >= 2 && label[0] == 'e') {
        bool digits = true;
        for (std::size_t i = 1; i < label.size(); ++i)
            digits = digits && std::isdigit(static_cast<unsigned char>(label[i]));
        if (digits) return monomial(std::stoi(label.substr(1)));
    }
    return std::nullopt;
}

}  // namespace gdop
