#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "gdop/analysis.hpp"
#include "gdop/errors.hpp"
#include "gdop/moments.hpp"

using gdop::AnalyticSeries;
using gdop::Rational;
namespace analysis = gdop::analysis;
namespace op = gdop::op;
using Complex = std::complex<double>;

namespace {

const op::DiskSpec kUnitDisk{1.0, 0.0, 720};

}  // namespace

TEST_CASE("circle sup examples") {
    const auto identity = [](Complex z) { return z; };
    CHECK(analysis::sup_norm_on_circle(identity, 2.0, 64).value() == doctest::Approx(2.0));
    const auto hump = [](Complex z) { return z * (1.0 - z); };
    // attained at z = -1
    CHECK(analysis::sup_norm_on_circle(hump, 1.0, 720).value() ==
          doctest::Approx(2.0).epsilon(1e-9));
    const auto zero = [](Complex) { return Complex{0.0, 0.0}; };
    const auto sup = analysis::sup_norm_on_circle(zero, 1.0, 64);
    CHECK(sup.value() == 0.0);
    CHECK(sup.refinement_agrees());
    CHECK_THROWS_AS(analysis::sup_norm_on_circle(identity, 1.0, 4), gdop::Error);
}

TEST_CASE("refinement is monotone") {
    const auto spiky = [](Complex z) { return std::pow(z, 9); };
    const auto sup = analysis::sup_norm_on_circle(spiky, 1.3, 16);
    CHECK(sup.coarse <= sup.fine);
}

TEST_CASE("upper bound constant") {
    const op::TruncationPolicy trunc;
    CHECK(analysis::upper_bound_constant(AnalyticSeries::monomial(2), 1.0, trunc) ==
          doctest::Approx(4.0));
    CHECK(analysis::upper_bound_constant(AnalyticSeries::monomial(1), 1.0, trunc) == 0.0);
    CHECK(analysis::upper_bound_constant(AnalyticSeries::exponential(), 1.0, trunc) ==
          doctest::Approx(2.0 * std::exp(1.0)).epsilon(1e-10));
    // 2 sum p(p-1) (1/2)^{p+1} r^p at r=1: sum p(p-1) x^p = 2x^2/(1-x)^3 at x=1/2 -> 4
    CHECK(analysis::upper_bound_constant(AnalyticSeries::geometric_half(), 1.0, trunc) ==
          doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("upper bound verified for the quadratic at n=2") {
    const auto recs = analysis::verify_upper_bound(AnalyticSeries::monomial(2), {2}, Rational(1, 2),
                                                   kUnitDisk);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].sup_error == doctest::Approx(5.0 / 3.0).epsilon(1e-9));
    CHECK(recs[0].bound == doctest::Approx(2.0));
    CHECK(recs[0].sup_error <= recs[0].bound);
}

TEST_CASE("linear functions have zero error") {
    const auto rec =
        analysis::make_record(AnalyticSeries::monomial(1), 4, Rational(1, 3), kUnitDisk, {});
    CHECK(rec.sup_error == 0.0);
    CHECK(rec.voronovskaja_residual == 0.0);
}

TEST_CASE("upper bound holds across the pipeline for exp, uniformly in alpha") {
    // same assertions, same tolerances, across the alpha grid
    for (const auto& a : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)}) {
        const auto recs = analysis::verify_upper_bound(AnalyticSeries::exponential(),
                                                       {4, 16, 64, 256}, a, kUnitDisk);
        for (const auto& rec : recs) CHECK(rec.sup_error <= rec.bound);
    }
}

TEST_CASE("voronovskaja residual closed form for the quadratic: 4 alpha / (n+1)") {
    for (const auto& a : {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)})
        for (int n : {2, 7, 10, 33}) {
            const double residual =
                analysis::voronovskaja_residual(AnalyticSeries::monomial(2), n, a, kUnitDisk);
            const double expected = 4.0 * a.to_double() / (n + 1.0);
            CHECK(residual == doctest::Approx(expected).epsilon(1e-9));
        }
    // alpha = 0 is the identically-zero case
    CHECK(analysis::voronovskaja_residual(AnalyticSeries::monomial(2), 12, Rational(0),
                                          kUnitDisk) <= 1e-12);
}

TEST_CASE("proof-form residual vanishes identically for the quadratic at every alpha") {
    // n (G e2 - e2) equals ((n+1-alpha)/(n+1)) z(1-z) (e2)'' exactly
    for (const auto& a : {Rational(0), Rational(1, 2), Rational(1)})
        for (int n : {2, 9, 31}) {
            const auto table = gdop::moments::monomial_image_closed(n, a, 2);
            const auto img = gdop::to_float(table.image(2));
            const double factor = (n + 1.0 - a.to_double()) / (n + 1.0);
            for (int i = 0; i < 64; ++i) {
                const Complex z = std::polar(1.0, 2.0 * M_PI * i / 64.0);
                const Complex lhs = static_cast<double>(n) * (img(z) - z * z);
                const Complex rhs = factor * z * (1.0 - z) * 2.0;
                CHECK(std::abs(lhs - rhs) <= 1e-12);
            }
        }
}

TEST_CASE("voronovskaja residual decays for exp") {
    const auto f = AnalyticSeries::exponential();
    const Rational a(1, 3);
    const double r32 = analysis::voronovskaja_residual(f, 32, a, kUnitDisk);
    const double r256 = analysis::voronovskaja_residual(f, 256, a, kUnitDisk);
    CHECK(r256 < r32);
    CHECK(r256 < 0.25 * r32);
}

TEST_CASE("voronovskaja residual is monotone along 4x jumps") {
    for (const auto& f : {AnalyticSeries::exponential(), AnalyticSeries::geometric_half()})
        for (int k : {8, 16, 32, 64}) {
            const double at_k = analysis::voronovskaja_residual(f, k, Rational(1, 3), kUnitDisk);
            const double at_4k =
                analysis::voronovskaja_residual(f, 4 * k, Rational(1, 3), kUnitDisk);
            CHECK(at_4k < at_k);
        }
}

TEST_CASE("order estimation on the closed-form error sequence") {
    // alpha = 0 quadratic: sup error = 4 (n+1) / (n (n+1)) = 4/n exactly
    const auto recs = analysis::verify_upper_bound(AnalyticSeries::monomial(2), {32, 64, 128, 256, 512},
                                                   Rational(0), kUnitDisk);
    const auto est = analysis::estimate_order(recs);
    CHECK(est.slope > -1.1);
    CHECK(est.slope < -0.9);
    CHECK(est.n_range.first == 32);
    CHECK(est.n_range.second == 512);
    CHECK(est.slope_ci.first <= est.slope);
    CHECK(est.slope_ci.second >= est.slope);
}

TEST_CASE("order estimation rejects degenerate input") {
    const auto recs = analysis::verify_upper_bound(AnalyticSeries::monomial(1), {32, 64, 128, 256},
                                                   Rational(1, 2), kUnitDisk);
    CHECK_THROWS_AS(analysis::estimate_order(recs), gdop::HypothesisError);
    CHECK_THROWS_AS(analysis::estimate_order({}), gdop::Error);
}

TEST_CASE("order estimation for exp") {
    const auto recs = analysis::verify_upper_bound(AnalyticSeries::exponential(),
                                                   {32, 64, 128, 256, 512}, Rational(1, 2),
                                                   kUnitDisk);
    const auto est = analysis::estimate_order(recs);
    CHECK(est.slope > -1.1);
    CHECK(est.slope < -0.9);
}

TEST_CASE("simultaneous approximation for the quadratic at n=2") {
    const double err = analysis::derivative_sup_error(AnalyticSeries::monomial(2), 1, 2,
                                                      Rational(1, 2), kUnitDisk, {});
    // d/dz [(5/6) z(1-z)] = (5/6)(1-2z), sup over |z|=1 is (5/6)*3 = 5/2
    CHECK(err == doctest::Approx(2.5).epsilon(1e-9));
    // contour bound with r1=2: C_2(e2) l! r1 / (n (r1-r)^2) = 16*2/2 = 16
    const double bound = 16.0 * 1.0 * 2.0 / (2.0 * 1.0);
    CHECK(err <= bound);
}

TEST_CASE("simultaneous approximation hypothesis check") {
    CHECK_THROWS_AS(analysis::verify_simultaneous(AnalyticSeries::monomial(1), 1, {8, 16, 32, 64},
                                                  Rational(1, 2), 1.0, 1.5),
                    gdop::HypothesisError);
    CHECK_THROWS_AS(analysis::verify_simultaneous(AnalyticSeries::monomial(2), 3, {8, 16, 32, 64},
                                                  Rational(1, 2), 1.0, 1.5),
                    gdop::HypothesisError);
}

TEST_CASE("simultaneous approximation order for exp, l=1") {
    const auto est = analysis::verify_simultaneous(AnalyticSeries::exponential(), 1,
                                                   {32, 64, 128, 256}, Rational(1, 2), 1.0, 1.5);
    CHECK(est.slope > -1.15);
    CHECK(est.slope < -0.85);
}
