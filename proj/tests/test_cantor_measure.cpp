#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cantor_beam/cantor_measure.hpp"
#include "oracle.hpp"

using namespace cantor_beam;
using oracle::Rational;

namespace {

TriadicRational tr(long long num, unsigned exp) { return TriadicRational(num, exp); }

BatchFunction from_poly(Polynomial p) {
    return [p](std::span<const double> x, std::span<double> out) { p.evaluate(x, out); };
}

}  // namespace

TEST_CASE("cdf examples") {
    const CantorMeasure m(1.0);
    CHECK(m.cdf(0.0) == 0.0);
    CHECK(m.cdf(1.0) == 1.0);
    CHECK(m.cdf(0.5) == 0.5);
    CHECK(m.cdf(0.25) == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
    CHECK(m.cdf(-3.0) == 0.0);
    CHECK(m.cdf(7.0) == 1.0);
    const CantorMeasure m2(2.0);
    CHECK(m2.cdf(1.0) == 1.0);
    CHECK(m2.cdf(2.0) == 2.0);
}

TEST_CASE("cdf agrees with the rational ternary-expansion oracle") {
    const CantorMeasure m(1.0);
    // Dyadic inputs are exact doubles.
    for (int den : {4, 8, 16, 64, 256, 1024}) {
        for (int num = 0; num <= den; ++num) {
            const double want = oracle::to_double(oracle::cantor_function(Rational(num, den)));
            CAPTURE(num);
            CAPTURE(den);
            CHECK(std::abs(m.cdf(static_cast<double>(num) / den) - want) <= 1e-16);
        }
    }
    // Elsewhere the double differs from q by half an ulp, which moves F by at most
    // 2 |dx|^s.
    const double tol = 2.0 * std::pow(std::ldexp(1.0, -53), kCantorDimension);
    for (int den : {5, 7, 10, 13, 28, 81, 100}) {
        for (int num = 0; num <= den; ++num) {
            const double want = oracle::to_double(oracle::cantor_function(Rational(num, den)));
            CHECK(std::abs(m.cdf(static_cast<double>(num) / den) - want) <= tol);
        }
    }
    for (unsigned e = 1; e <= 8; ++e) {
        for (long long a = 0; a <= static_cast<long long>(std::pow(3, e)); a += 5) {
            const double want = oracle::to_double(oracle::cantor_function(Rational(a) / oracle::pow_rational(3, static_cast<int>(e))));
            CHECK(m.cdf(tr(a, e)) == want);
        }
    }
}

TEST_CASE("cdf is monotone with the Holder modulus") {
    const CantorMeasure m(1.0);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100000; ++k) {
        const double x = u(rng);
        const int j = 1 + k % 20;
        const double h = std::pow(3.0, -j);
        const double y = std::min(1.0, x + h);
        const double d = m.cdf(y) - m.cdf(x);
        REQUIRE(d >= 0.0);
        REQUIRE(d <= 2.0 * std::pow(h, kCantorDimension) + 1e-15);
    }
}

TEST_CASE("interval masses are exactly 2^-n ell for n <= 15") {
    for (double ell : {1.0, 2.5}) {
        const CantorMeasure m(ell);
        for (int n = 0; n <= 15; ++n) {
            const PrefractalLevel level(n, ell);
            const double want = std::ldexp(ell, -n);
            for (std::uint64_t i = 0; i < level.size(); ++i) REQUIRE(m.mass(level.interval(i)) == want);
        }
    }
}

TEST_CASE("no atoms, mass on gaps is zero") {
    const CantorMeasure m(1.0);
    CHECK(m.mass(TriadicInterval{tr(1, 1), tr(1, 1)}) == 0.0);
    CHECK(m.mass(TriadicInterval{tr(1, 1), tr(2, 1)}) == 0.0);
    CHECK(m.mass(TriadicInterval{tr(7, 3), tr(8, 3)}) == 0.0);
    CHECK(m.mass(0.0, 1.0) == 1.0);
}

TEST_CASE("moments agree with the rational oracle and with quadrature") {
    const CantorMeasure m(1.0);
    const auto want = oracle::cantor_moments(12);
    CHECK(m.moment(0) == 1.0);
    CHECK(m.moment(1) == 0.5);
    CHECK(m.moment(2) == doctest::Approx(0.375).epsilon(1e-16));
    for (int d = 0; d <= 12; ++d) {
        CHECK(m.moment(d) == doctest::Approx(oracle::to_double(want[static_cast<std::size_t>(d)])).epsilon(1e-15));
    }
    const TriadicInterval whole{tr(0, 0), tr(1, 0)};
    for (int d = 0; d <= 6; ++d) {
        CHECK(std::abs(m.integrate(Polynomial::monomial(d), whole, 14) - m.moment(d)) < 1e-10);
    }
    // The recursion m_{k+1} = m_k / 9 + 1/3 has the same fixed point.
    double mk = 1.0 / 3.0;
    for (int k = 0; k < 40; ++k) mk = mk / 9 + 1.0 / 3.0;
    CHECK(mk == doctest::Approx(m.moment(2)));
    const CantorMeasure m3(3.0);
    CHECK(m3.moment(2) == doctest::Approx(3.0 * 9.0 * 0.375));
}

TEST_CASE("integrate examples") {
    const CantorMeasure m(1.0);
    const TriadicInterval whole{tr(0, 0), tr(1, 0)};
    for (int depth : {0, 3, 10}) {
        CHECK(m.integrate(Polynomial{1.0}, whole, depth) == doctest::Approx(1.0));
        CHECK(m.integrate(Polynomial{0.0, 1.0}, whole, depth) == doctest::Approx(0.5));
    }
    CHECK(m.integrate(Polynomial{0.0, 0.0, 1.0}, whole, 12) == doctest::Approx(0.375).epsilon(1e-10));
    CHECK_THROWS(m.integrate(Polynomial{1.0}, whole, 41));
    // Left third: mass 1/2, first moment 1/12.
    CHECK(m.integrate(Polynomial{0.0, 1.0}, TriadicInterval{tr(0, 0), tr(1, 1)}, 12) == doctest::Approx(1.0 / 12.0));
    CHECK(m.integrate(from_poly(Polynomial{1.0}), 0.0, 0.25, 10) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("integrate converges with the modulus of continuity") {
    const CantorMeasure m(1.0);
    const TestFunction hat = TestFunction::hat(0.3, 0.2);
    for (int d = 2; d <= 10; d += 2) {
        const double a = m.integrate(hat, 0.0, 1.0, d);
        const double b = m.integrate(hat, 0.0, 1.0, d + 2);
        // Lipschitz constant 5.
        CHECK(std::abs(a - b) <= 5.0 * std::pow(3.0, -d));
    }
}

TEST_CASE("pushforward defect vanishes on triadic intervals up to depth 8") {
    const CantorMeasure m(1.0);
    CHECK(m.pushforward_defect(TriadicInterval{tr(0, 0), tr(1, 0)}) == 0.0);
    CHECK(m.pushforward_defect(TriadicInterval{tr(0, 0), tr(1, 1)}) == 0.0);
    CHECK(m.pushforward_defect(TriadicInterval{tr(2, 2), tr(1, 1)}) == 0.0);
    for (unsigned k = 1; k <= 8; ++k) {
        const long long top = static_cast<long long>(std::pow(3, k));
        const long long stride = k <= 4 ? 1 : top / 61;
        for (long long a = 0; a < top; a += stride) {
            for (long long b = a + 1; b <= top; b += stride) {
                REQUIRE(std::abs(m.pushforward_defect(TriadicInterval{tr(a, k), tr(b, k)})) <= 1e-15);
            }
        }
    }
    CHECK(m.pushforward_defect(2.0 / 9.0, 1.0 / 3.0) == 0.0);
    CHECK_THROWS_AS(m.pushforward_defect(0.1, 0.5), std::invalid_argument);
}

TEST_CASE("prefractal measure examples") {
    const Polynomial sq{1.0, -2.0, 1.0};
    CHECK(PrefractalMeasure(1, 1.0).integrate(sq, 0.0, 1.0) == doctest::Approx(10.0 / 27.0).epsilon(1e-15));
    CHECK(PrefractalMeasure(2, 1.0).integrate(sq, 0.0, 1.0) == doctest::Approx(91.0 / 243.0).epsilon(1e-15));
    for (int n = 0; n <= 10; ++n) {
        const PrefractalMeasure pm(n, 1.0);
        CHECK(pm.integrate(Polynomial{1.0}, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(pm.density() == doctest::Approx(std::pow(1.5, n)));
        if (n <= 8) {
            CHECK(pm.integrate(sq, 0.0, 1.0) ==
                  doctest::Approx(oracle::to_double(oracle::prefractal_tip(n))).epsilon(1e-14));
            CHECK(pm.moments(2)[2] ==
                  doctest::Approx(oracle::to_double(oracle::prefractal_second_moment(n))).epsilon(1e-15));
        }
    }
    CHECK(PrefractalMeasure(1, 1.0).integrate(Polynomial{1.0}, 0.0, 0.5) == doctest::Approx(0.5));
}

TEST_CASE("weak* gap for z^2 is exactly 9^-n / 24") {
    const CantorMeasure m(1.0);
    for (int n = 0; n <= 10; ++n) {
        const PrefractalMeasure pm(n, 1.0);
        CHECK(std::abs(weakstar_gap(pm, m, TestFunction::monomial(2)) - std::pow(9.0, -n) / 24.0) <= 1e-12);
        CHECK(weakstar_gap(pm, m, TestFunction::monomial(1)) <= 1e-15);
    }
    const CantorMeasure m2(2.0);
    for (int n = 0; n <= 6; ++n) {
        CHECK(std::abs(weakstar_gap(PrefractalMeasure(n, 2.0), m2, TestFunction::monomial(2)) -
                       8.0 * std::pow(9.0, -n) / 24.0) <= 1e-12);
    }
}

TEST_CASE("weak* gap shrinks for hats and the bump") {
    const CantorMeasure m(1.0);
    for (const TestFunction& f : default_test_suite(1.0)) {
        if (f.kind() == TestFunction::Kind::Monomial) continue;
        CAPTURE(f.name());
        const double g0 = weakstar_gap(PrefractalMeasure(0, 1.0), m, f);
        const double g10 = weakstar_gap(PrefractalMeasure(10, 1.0), m, f);
        CHECK(g10 <= 1e-3 * g0);
    }
}

TEST_CASE("hausdorff report constant") {
    CHECK(hausdorff_measure_report(1.0) == 1.0);
    CHECK(hausdorff_measure_report(3.0) == doctest::Approx(2.0));
}
