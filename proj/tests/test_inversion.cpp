#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "qft/hilhorst.hpp"
#include "qft/inversion.hpp"

using qft::Complex;
using qft::FunctionSpec;
using qft::PowerLawWindow;
using qft::SliceSample;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

// classical FT by composite Simpson, independent of the engine's quadrature
Complex classical_ft_simpson(const FunctionSpec& f, double k, int n = 20000) {
    const auto s = f.support();
    const double h = s.width() / n;
    Complex acc{0.0, 0.0};
    for (int i = 0; i <= n; ++i) {
        const double x = s.lo + i * h;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * f(x) * std::exp(Complex{0.0, k * x});
    }
    return acc * (h / 3.0);
}

const std::vector<double> kEps{1e-1, 1e-2, 1e-3};

}  // namespace

TEST_CASE("q1_slice validates its inputs") {
    const auto f = FunctionSpec::indicator(0.0, 1.0);
    const auto kg = linspace(-5.0, 5.0, 21);

    const std::vector<double> asym{-1.0, 0.0, 2.0};
    CHECK_THROWS_AS(qft::q1_slice(f, asym, kEps), qft::InvalidInputError);
    const std::vector<double> unsorted{1.0, 0.0, -1.0};
    CHECK_THROWS_AS(qft::q1_slice(f, unsorted, kEps), qft::InvalidInputError);
    const std::vector<double> inc{1e-3, 1e-2};
    CHECK_THROWS_AS(qft::q1_slice(f, kg, inc), qft::InvalidInputError);
    const std::vector<double> toobig{1.5, 0.5};
    CHECK_THROWS_AS(qft::q1_slice(f, kg, toobig), qft::InvalidInputError);
    CHECK_THROWS_AS(qft::q1_slice(f, kg, {}), qft::InvalidInputError);
}

TEST_CASE("q1_slice reproduces the classical transform of each fixture") {
    const auto kg = linspace(-5.0, 5.0, 41);
    const std::vector<double> eps{1e-3, 3e-4, 1e-4};
    const auto fixtures = {FunctionSpec::indicator(0.0, 1.0),
                           FunctionSpec::power_law(PowerLawWindow(1.0, 2.0, 2.0,
                                                                  std::sqrt(2.0))),
                           FunctionSpec::q_gaussian_fixture(1.3, 2.0, 6.0)};
    for (const auto& f : fixtures) {
        const auto slice = qft::q1_slice(f, kg, eps);
        CHECK_FALSE(slice.low_confidence);
        double worst = 0.0;
        for (std::size_t i = 0; i < kg.size(); ++i)
            worst = std::max(worst,
                             std::abs(slice.values[i] - classical_ft_simpson(f, kg[i])));
        INFO(f.descriptor());
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("q1_slice trace and symmetry") {
    const auto f = FunctionSpec::indicator(0.0, 1.0);
    const auto kg = linspace(-5.0, 5.0, 41);
    const auto slice = qft::q1_slice(f, kg, kEps);

    // k = 0 row equals the L1 norm in the limit
    CHECK_THAT(slice.values[20].real(), WithinRel(1.0, 1e-9));
    CHECK_THAT(slice.values[20].imag(), WithinAbs(0.0, 1e-12));

    // eps trace: each rung sits further from the limit than the next
    REQUIRE(slice.eps_residuals.size() == 3);
    CHECK(slice.eps_residuals[0] > slice.eps_residuals[1]);
    CHECK(slice.eps_residuals[1] > slice.eps_residuals[2]);

    // Hermitian symmetry within the recorded residuals
    for (std::size_t i = 0; i < kg.size(); ++i) {
        const auto j = kg.size() - 1 - i;
        CHECK(std::abs(slice.values[i] - std::conj(slice.values[j])) <
              slice.k_residuals[i] + slice.k_residuals[j] + 1e-9);
    }
}

TEST_CASE("single-eps slice is passed through and flagged") {
    const auto f = FunctionSpec::indicator(0.0, 1.0);
    const auto kg = linspace(-2.0, 2.0, 5);
    const std::vector<double> eps{1e-2};
    const auto slice = qft::q1_slice(f, kg, eps);
    CHECK(slice.low_confidence);
    for (std::size_t i = 0; i < kg.size(); ++i) {
        const auto direct = qft::qft_point(f, 1.0 + 1e-2, kg[i]);
        CHECK(std::abs(slice.values[i] - direct.value) == 0.0);
    }
}

TEST_CASE("inverse_transform of the zero slice is the zero function") {
    SliceSample s;
    s.k_grid = linspace(-5.0, 5.0, 11);
    s.values.assign(11, Complex{0.0, 0.0});
    s.k_residuals.assign(11, 0.0);
    const auto xs = linspace(-1.0, 1.0, 17);
    const auto rec = qft::inverse_transform(s, xs);
    for (double v : rec.values) CHECK(v == 0.0);
}

TEST_CASE("inverse_transform rejects an untruncated spectrum") {
    SliceSample s;
    s.k_grid = linspace(-5.0, 5.0, 11);
    s.values.assign(11, Complex{1.0, 0.0});  // flat: edges equal the peak
    s.k_residuals.assign(11, 0.0);
    const auto xs = linspace(-1.0, 1.0, 17);
    CHECK_THROWS_AS(qft::inverse_transform(s, xs), qft::TruncationError);
}

TEST_CASE("imaginary residue is tiny for an honest Hermitian slice") {
    const auto f = FunctionSpec::indicator(0.0, 1.0);
    const auto kg = linspace(-10.0, 10.0, 201);
    const auto slice = qft::q1_slice(f, kg, kEps);
    const auto rec = qft::inverse_transform(slice, linspace(-0.5, 1.5, 64));
    CHECK(rec.imag_residue < 1e-8);
}

TEST_CASE("broken Hermitian symmetry shows up in the residue") {
    const auto f = FunctionSpec::indicator(0.0, 1.0);
    const auto kg = linspace(-10.0, 10.0, 201);
    auto slice = qft::q1_slice(f, kg, kEps);
    slice.values[5] += Complex{0.0, 0.3};  // damage one row
    const auto rec = qft::inverse_transform(slice, linspace(-0.5, 1.5, 64));
    CHECK(rec.imag_residue > 1e-3);
}

TEST_CASE("round trip at the reference grids reflects the truncation floor") {
    // sharp-cutoff inversion of a discontinuous input: the L2 error is
    // dominated by the spectral tail, sqrt(2/(pi K)) ~ 0.25 at K = 10
    const auto f = FunctionSpec::indicator(0.0, 1.0);
    const auto kg = linspace(-10.0, 10.0, 401);
    const auto xs = linspace(-0.5, 1.5, 256);
    const double err = qft::roundtrip_error(f, kg, kEps, xs);
    CHECK(err > 0.2);
    CHECK(err < 0.25);

    // halving dk and doubling the range lowers the floor
    const auto kg2 = linspace(-20.0, 20.0, 1601);
    const double err2 = qft::roundtrip_error(f, kg2, kEps, xs);
    CHECK(err2 < err);
}

TEST_CASE("round trip of a smooth fixture is accurate") {
    // spectrum decays fast enough that K = 10 truncation is harmless
    const auto f = FunctionSpec::q_gaussian_fixture(1.0, 4.0, 2.5);
    const auto kg = linspace(-10.0, 10.0, 401);
    const auto xs = linspace(-3.0, 3.0, 256);
    const double err = qft::roundtrip_error(f, kg, kEps, xs);
    INFO("roundtrip error " << err);
    CHECK(err < 5e-3);
}

TEST_CASE("degenerate pair reconstructs to distinct originals") {
    const auto w1 = qft::make_window(1.0, 2.0, 2.0, std::sqrt(2.0));
    const auto w2 = qft::degeneracy_partner(w1, 1.5, 1.1);
    const auto f1 = FunctionSpec::power_law(w1);
    const auto f2 = FunctionSpec::power_law(w2);

    const auto kg = linspace(-10.0, 10.0, 201);
    const auto xs = linspace(0.5, 3.0, 128);

    const auto r1 = qft::inverse_transform(qft::q1_slice(f1, kg, kEps), xs);
    const auto r2 = qft::inverse_transform(qft::q1_slice(f2, kg, kEps), xs);

    double cross = 0.0, dist_true = 0.0, norm1 = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double h = 0.5 * (xs[i + 1] - xs[i]);
        for (std::size_t j = i; j <= i + 1; ++j) {
            cross += h * std::pow(r1.values[j] - r2.values[j], 2);
            dist_true += h * std::pow(f1(xs[j]) - f2(xs[j]), 2);
            norm1 += h * f1(xs[j]) * f1(xs[j]);
        }
    }
    cross = std::sqrt(cross / norm1);
    dist_true = std::sqrt(dist_true / norm1);

    // reconstructions keep the pair separated by about the true distance
    CHECK(cross > 0.65 * dist_true);
    CHECK(cross < 1.35 * dist_true);
}

TEST_CASE("roundtrip_error needs the input on the window") {
    const auto f = FunctionSpec::indicator(0.0, 1.0);
    const auto kg = linspace(-10.0, 10.0, 201);
    const auto xs = linspace(5.0, 6.0, 16);  // away from the support
    CHECK_THROWS_AS(qft::roundtrip_error(f, kg, kEps, xs), qft::InvalidInputError);
}
