#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "qft/qcore.hpp"

using qft::Complex;
using qft::DeformationIndex;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("heaviside gate selects [1,2)") {
    CHECK(qft::heaviside_gate(1.5) == 1);
    CHECK(qft::heaviside_gate(1.0) == 1);   // H(0)=1 keeps the classical endpoint
    CHECK(qft::heaviside_gate(2.0) == 0);
    CHECK(qft::heaviside_gate(0.9) == 0);
    CHECK(qft::heaviside_gate(2.5) == 0);
    CHECK_THROWS_AS(qft::heaviside_gate(std::nan("")), qft::InvalidInputError);
    CHECK_THROWS_AS(qft::heaviside_gate(std::numeric_limits<double>::infinity()),
                    qft::InvalidInputError);
}

TEST_CASE("deformation index validates its interval") {
    CHECK(DeformationIndex(1.0).is_classical());
    CHECK_FALSE(DeformationIndex(1.5).is_classical());
    CHECK(DeformationIndex(1.999).value() == 1.999);
    CHECK_THROWS_AS(DeformationIndex(0.99), qft::InvalidInputError);
    CHECK_THROWS_AS(DeformationIndex(2.0), qft::InvalidInputError);
    CHECK_THROWS_AS(DeformationIndex(std::nan("")), qft::InvalidInputError);
}

TEST_CASE("principal_power basics") {
    const Complex one = qft::principal_power({1.0, 0.0}, 2.0);
    CHECK(one.real() == 1.0);
    CHECK(one.imag() == 0.0);

    // oracle: plain complex arithmetic for an integer power
    const Complex z{1.0, -0.707107};
    const Complex expect = 1.0 / (z * z);
    const Complex got = qft::principal_power(z, -2.0);
    CHECK_THAT(got.real(), WithinRel(expect.real(), 1e-14));
    CHECK_THAT(got.imag(), WithinRel(expect.imag(), 1e-14));
    CHECK_THAT(got.real(), WithinAbs(0.222222, 1e-6));
    CHECK_THAT(got.imag(), WithinAbs(0.628539, 1e-6));
}

TEST_CASE("principal_power branch convention on the negative real axis") {
    const Complex r = qft::principal_power({-1.0, 0.0}, 0.5);
    CHECK_THAT(r.real(), WithinAbs(0.0, 1e-15));
    CHECK_THAT(r.imag(), WithinRel(1.0, 1e-15));

    // a -0.0 imaginary part must not flip to the arg = -pi side
    const Complex rneg = qft::principal_power({-1.0, -0.0}, 0.5);
    CHECK(rneg.imag() > 0.0);
}

TEST_CASE("principal_power pole and trivial exponents") {
    CHECK_THROWS_AS(qft::principal_power({0.0, 0.0}, -1.0), qft::PoleError);
    CHECK(qft::principal_power({0.0, 0.0}, 2.0) == Complex{0.0, 0.0});
    CHECK(qft::principal_power({0.0, 0.0}, 0.0) == Complex{1.0, 0.0});
}

TEST_CASE("q_exponential at distinguished points") {
    for (double q : {1.0, 1.3, 1.9})
        CHECK(qft::q_exponential({0.0, 0.0}, DeformationIndex(q)) == Complex{1.0, 0.0});

    const Complex e1 = qft::q_exponential({1.0, 0.0}, DeformationIndex(1.0));
    CHECK_THAT(e1.real(), WithinRel(std::exp(1.0), 1e-15));

    // (1 - 0.5)^{-2} = 4 exactly
    const Complex e15 = qft::q_exponential({1.0, 0.0}, DeformationIndex(1.5));
    CHECK_THAT(e15.real(), WithinAbs(4.0, 1e-14));
    CHECK_THAT(e15.imag(), WithinAbs(0.0, 1e-14));
}

TEST_CASE("q_exponential pole carries its argument") {
    try {
        qft::q_exponential({2.0, 0.0}, DeformationIndex(1.5));
        FAIL("expected PoleError");
    } catch (const qft::PoleError& e) {
        CHECK(e.argument() == Complex{2.0, 0.0});
    }
}

TEST_CASE("q_exponential converges to exp as q -> 1+") {
    for (Complex z : {Complex{0.3, 0.4}, Complex{-0.2, 1.1}, Complex{1.0, 0.0}}) {
        const double e2 = std::abs(qft::q_exponential(z, DeformationIndex(1.0 + 1e-2)) -
                                   std::exp(z));
        const double e4 = std::abs(qft::q_exponential(z, DeformationIndex(1.0 + 1e-4)) -
                                   std::exp(z));
        CHECK(e4 < e2);
        CHECK(e2 < 0.1);
    }
}

TEST_CASE("q_exponential is continuous along the imaginary axis") {
    // base 1 + (1-q) i theta has real part 1: the principal branch never cuts
    const DeformationIndex q(1.7);
    const int n = 4000;
    const double lo = -50.0, hi = 50.0;
    const double dt = (hi - lo) / n;
    Complex prev = qft::q_exponential({0.0, lo}, q);
    for (int i = 1; i <= n; ++i) {
        const Complex cur = qft::q_exponential({0.0, lo + i * dt}, q);
        CHECK(std::abs(cur - prev) < 2.0 * dt);
        prev = cur;
    }
}

TEST_CASE("q_exponential conjugation symmetry") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (double q : {1.0, 1.25, 1.5, 1.8}) {
        const DeformationIndex qi(q);
        for (int i = 0; i < 200; ++i) {
            const Complex z{dist(rng), dist(rng)};
            if (std::abs(1.0 + qi.one_minus_q() * z) < 1e-6) continue;
            const Complex lhs = qft::q_exponential(std::conj(z), qi);
            const Complex rhs = std::conj(qft::q_exponential(z, qi));
            CHECK_THAT(std::abs(lhs - rhs), WithinAbs(0.0, 1e-13 * std::abs(rhs) + 1e-300));
        }
    }
}

TEST_CASE("q_logarithm values and domain") {
    for (double q : {1.0, 1.4, 1.9})
        CHECK(qft::q_logarithm(1.0, DeformationIndex(q)) == 0.0);
    CHECK_THAT(qft::q_logarithm(std::exp(1.0), DeformationIndex(1.0)), WithinRel(1.0, 1e-15));
    // (4^{-0.5} - 1)/(-0.5) = 1
    CHECK_THAT(qft::q_logarithm(4.0, DeformationIndex(1.5)), WithinAbs(1.0, 1e-14));
    CHECK_THROWS_AS(qft::q_logarithm(0.0, DeformationIndex(1.5)), qft::DomainError);
    CHECK_THROWS_AS(qft::q_logarithm(-1.0, DeformationIndex(1.5)), qft::DomainError);
}

TEST_CASE("q_logarithm inverts q_exponential on the positive axis") {
    for (double q : {1.0, 1.2, 1.5, 1.9}) {
        const DeformationIndex qi(q);
        for (double x : {0.01, 0.1, 0.5, 1.0, 2.0, 2.718281828459045, 10.0, 100.0}) {
            const Complex back = qft::q_exponential({qft::q_logarithm(x, qi), 0.0}, qi);
            CHECK_THAT(back.real(), WithinRel(x, 1e-12));
            CHECK_THAT(back.imag(), WithinAbs(0.0, 1e-12 * x));
        }
    }
}

TEST_CASE("q_gaussian fixture values") {
    CHECK(qft::q_gaussian(0.0, DeformationIndex(1.5), 2.0) == 1.0);
    CHECK_THAT(qft::q_gaussian(1.0, DeformationIndex(1.0), 1.0),
               WithinRel(std::exp(-1.0), 1e-15));
    // (1 + 0.5 * 4)^{-2} = 1/9
    CHECK_THAT(qft::q_gaussian(2.0, DeformationIndex(1.5), 1.0),
               WithinRel(1.0 / 9.0, 1e-14));
    CHECK_THROWS_AS(qft::q_gaussian(0.0, DeformationIndex(1.5), 0.0),
                    qft::InvalidInputError);
}
