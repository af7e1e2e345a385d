#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qft/errors.hpp"
#include "qft/qcore.hpp"

namespace qft {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const noexcept { return hi - lo; }
};

namespace detail {

inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace detail

/// (lambda/x)^beta on [a,b], zero outside. beta = 0 degenerates to the
/// constant-1 indicator of [a,b].
struct PowerLawWindow {
    double a, b, beta, lambda;

    PowerLawWindow(double a_, double b_, double beta_, double lambda_)
        : a(a_), b(b_), beta(beta_), lambda(lambda_) {
        if (!(0.0 < a && a < b))
            throw InvalidInputError("PowerLawWindow: requires 0 < a < b");
        if (!(beta >= 0.0) || !std::isfinite(beta))
            throw InvalidInputError("PowerLawWindow: requires beta >= 0");
        if (!(lambda > 0.0) || !std::isfinite(lambda))
            throw InvalidInputError("PowerLawWindow: requires lambda > 0");
    }

    double operator()(double x) const {
        if (x < a || x > b) return 0.0;
        return std::pow(lambda / x, beta);
    }

    /// Antiderivative value of the integral over [a,b].
    double analytic_l1() const {
        if (beta == 1.0) return lambda * std::log(b / a);
        return std::pow(lambda, beta) *
               (std::pow(a, 1.0 - beta) - std::pow(b, 1.0 - beta)) / (beta - 1.0);
    }

    bool operator==(const PowerLawWindow& o) const = default;
};

/// A nonnegative integrable input function with finite support: one of the
/// analytic fixture families or a tabulated sample set (linear interpolation).
class FunctionSpec {
public:
    struct Indicator {
        double lo, hi;
    };
    struct QGaussian {
        double q_shape, width, radius;
    };
    struct Tabulated {
        std::vector<double> x, y;
    };

    static FunctionSpec indicator(double lo, double hi) {
        if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
            throw InvalidInputError("FunctionSpec: indicator requires lo < hi");
        FunctionSpec f;
        f.impl_ = Indicator{lo, hi};
        f.descriptor_ = "indicator:" + detail::format_double(lo) + "," +
                        detail::format_double(hi);
        return f;
    }

    static FunctionSpec power_law(PowerLawWindow w) {
        FunctionSpec f;
        f.descriptor_ = "powerlaw:" + detail::format_double(w.a) + "," +
                        detail::format_double(w.b) + "," +
                        detail::format_double(w.beta) + "," +
                        detail::format_double(w.lambda);
        f.impl_ = std::move(w);
        return f;
    }

    /// q-Gaussian shape truncated at |x| <= radius; the truncation keeps all
    /// fixtures compactly supported (the q > 1 tails are power laws).
    static FunctionSpec q_gaussian_fixture(double q_shape, double width,
                                           double radius) {
        DeformationIndex qi(q_shape);
        if (!(width > 0.0) || !(radius > 0.0))
            throw InvalidInputError(
                "FunctionSpec: q-Gaussian fixture requires width > 0 and radius > 0");
        FunctionSpec f;
        f.impl_ = QGaussian{q_shape, width, radius};
        f.descriptor_ = "qgauss:" + detail::format_double(q_shape) + "," +
                        detail::format_double(width) + "," +
                        detail::format_double(radius);
        return f;
    }

    static FunctionSpec tabulated(std::vector<double> x, std::vector<double> y) {
        if (x.size() < 2 || x.size() != y.size())
            throw InvalidInputError("FunctionSpec: tabulated needs >= 2 samples");
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
                throw InvalidInputError("FunctionSpec: non-finite tabulated sample");
            if (y[i] < 0.0)
                throw InvalidInputError("FunctionSpec: tabulated values must be >= 0");
            if (i > 0 && !(x[i] > x[i - 1]))
                throw InvalidInputError(
                    "FunctionSpec: tabulated abscissae must be strictly increasing");
        }
        FunctionSpec f;
        std::string d = "tabulated:";
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (i) d += ";";
            d += detail::format_double(x[i]) + "," + detail::format_double(y[i]);
        }
        f.impl_ = Tabulated{std::move(x), std::move(y)};
        f.descriptor_ = std::move(d);
        return f;
    }

    double operator()(double x) const {
        return std::visit(
            [x](const auto& g) -> double {
                using T = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<T, Indicator>) {
                    return (x >= g.lo && x <= g.hi) ? 1.0 : 0.0;
                } else if constexpr (std::is_same_v<T, PowerLawWindow>) {
                    return g(x);
                } else if constexpr (std::is_same_v<T, QGaussian>) {
                    if (std::abs(x) > g.radius) return 0.0;
                    return q_gaussian(x, DeformationIndex(g.q_shape), g.width);
                } else {
                    const auto& xs = g.x;
                    if (x < xs.front() || x > xs.back()) return 0.0;
                    auto it = std::upper_bound(xs.begin(), xs.end(), x);
                    if (it == xs.begin()) return g.y.front();
                    if (it == xs.end()) return g.y.back();
                    const auto i = static_cast<std::size_t>(it - xs.begin());
                    const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
                    return g.y[i - 1] + t * (g.y[i] - g.y[i - 1]);
                }
            },
            impl_);
    }

    Interval support() const {
        return std::visit(
            [](const auto& g) -> Interval {
                using T = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<T, Indicator>) {
                    return {g.lo, g.hi};
                } else if constexpr (std::is_same_v<T, PowerLawWindow>) {
                    return {g.a, g.b};
                } else if constexpr (std::is_same_v<T, QGaussian>) {
                    return {-g.radius, g.radius};
                } else {
                    return {g.x.front(), g.x.back()};
                }
            },
            impl_);
    }

    double max_value() const {
        return std::visit(
            [](const auto& g) -> double {
                using T = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<T, Indicator>) {
                    return 1.0;
                } else if constexpr (std::is_same_v<T, PowerLawWindow>) {
                    return std::pow(g.lambda / g.a, g.beta);
                } else if constexpr (std::is_same_v<T, QGaussian>) {
                    return 1.0;
                } else {
                    return *std::max_element(g.y.begin(), g.y.end());
                }
            },
            impl_);
    }

    /// Interior sample abscissae (kinks of the linear interpolant); quadrature
    /// panels must not straddle them.
    std::vector<double> interior_knots() const {
        if (const auto* t = std::get_if<Tabulated>(&impl_))
            return std::vector<double>(t->x.begin() + 1, t->x.end() - 1);
        return {};
    }

    const std::string& descriptor() const noexcept { return descriptor_; }

    std::uint64_t hash() const noexcept {
        // FNV-1a over the canonical descriptor
        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char ch : descriptor_) {
            h ^= ch;
            h *= 1099511628211ull;
        }
        return h;
    }

    const PowerLawWindow* as_power_law() const {
        return std::get_if<PowerLawWindow>(&impl_);
    }

private:
    FunctionSpec() = default;
    std::variant<Indicator, PowerLawWindow, QGaussian, Tabulated> impl_;
    std::string descriptor_;
};

}  // namespace qft
