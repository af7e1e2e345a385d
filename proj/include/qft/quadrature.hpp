#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <span>
#include <sstream>
#include <type_traits>
#include <utility>
#include <vector>

#include "qft/errors.hpp"

namespace qft {

struct QuadratureOptions {
    double rel_tol = 1e-9;
    double abs_tol = 0.0;          // floor added to the relative target
    int max_subdivisions = 10000;  // total panels across the whole interval
};

template <typename T>
struct QuadratureResult {
    T value{};
    double error = 0.0;   // a-posteriori estimate, sum of |K15 - G7| per panel
    int panels = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1,1].
// Nodes are symmetric; only the nonnegative half is stored.
inline constexpr std::array<double, 8> kGK15Nodes = {
    0.000000000000000000000000000000000e+00,
    2.077849550078984676006894037732449e-01,
    4.058451513773971669066064120769615e-01,
    5.860872354676911302941448382587296e-01,
    7.415311855993944398638647732807884e-01,
    8.648644233597690727897127886409262e-01,
    9.491079123427585245261896840478513e-01,
    9.914553711208126392068546975263285e-01,
};

inline constexpr std::array<double, 8> kK15Weights = {
    2.094821410847278280129991748917143e-01,
    2.044329400752988924141619992346491e-01,
    1.903505780647854099132564024210137e-01,
    1.690047266392679028265834265985503e-01,
    1.406532597155259187451895905102379e-01,
    1.047900103222501838398763225415180e-01,
    6.309209262997855329070066318920429e-02,
    2.293532201052922496373200805896959e-02,
};

// Gauss-7 weights aligned with the odd Kronrod node indices (1, 3, 5 in the
// half-array above are not Gauss nodes; indices 0, 2, 4, 6 are).
inline constexpr std::array<double, 4> kG7Weights = {
    4.179591836734693877551020408163265e-01,
    3.818300505051189449503697754889751e-01,
    2.797053914892766679014677714237796e-01,
    1.294849661688696932706114326790820e-01,
};

template <typename F>
auto gk15(F&& f, double a, double b, double& err)
    -> std::decay_t<decltype(f(a))> {
    using T = std::decay_t<decltype(f(a))>;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const T f0 = f(mid);
    T k15 = kK15Weights[0] * f0;
    T g7 = kG7Weights[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kGK15Nodes[i];
        const T fsum = f(mid + dx) + f(mid - dx);
        k15 += kK15Weights[i] * fsum;
        if (i % 2 == 0) g7 += kG7Weights[i / 2] * fsum;
    }
    k15 *= half;
    g7 *= half;
    err = std::abs(k15 - g7);
    return k15;
}

struct PanelKey {
    double error;
    std::size_t order;   // insertion index, ties broken deterministically
    bool operator<(const PanelKey& o) const {
        if (error != o.error) return error < o.error;
        return order > o.order;
    }
};

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b]. `presplit` lists
/// interior break points to seed the panel set (oscillation scale, sample
/// knots); the worst panel is bisected until the summed |K15-G7| estimate
/// drops below max(abs_tol, rel_tol * |integral|).
template <typename F>
auto adaptive_integrate(F&& f, double a, double b, const QuadratureOptions& opt = {},
                        std::span<const double> presplit = {})
    -> QuadratureResult<std::decay_t<decltype(f(a))>> {
    using T = std::decay_t<decltype(f(a))>;
    if (!(a < b)) {
        if (a == b) return {T{}, 0.0, 0};
        throw InvalidInputError("adaptive_integrate: requires a <= b");
    }

    struct Panel {
        double a, b, error;
        T value;
    };
    std::vector<Panel> panels;
    std::priority_queue<detail::PanelKey> active;

    auto push_panel = [&](double lo, double hi) {
        double perr = 0.0;
        T pval = detail::gk15(f, lo, hi, perr);
        panels.push_back({lo, hi, perr, pval});
        active.push({perr, panels.size() - 1});
    };

    std::vector<double> edges;
    edges.push_back(a);
    for (double p : presplit)
        if (p > a && p < b) edges.push_back(p);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        push_panel(edges[i], edges[i + 1]);

    auto totals = [&] {
        T sum{};
        double esum = 0.0;
        for (const auto& p : panels) {
            sum += p.value;
            esum += p.error;
        }
        return std::pair<T, double>(sum, esum);
    };

    while (true) {
        auto [sum, esum] = totals();
        const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(sum));
        if (esum <= target || esum == 0.0)
            return {sum, esum, static_cast<int>(panels.size())};
        if (static_cast<int>(panels.size()) >= opt.max_subdivisions) {
            const auto worst = active.top();
            const auto& p = panels[worst.order];
            std::ostringstream diag;
            diag << "adaptive_integrate: " << panels.size()
                 << " panels, error " << esum << " > target " << target
                 << ", worst subinterval [" << p.a << ", " << p.b << "] error "
                 << p.error;
            throw ConvergenceError("quadrature failed to converge", diag.str());
        }
        const auto worst = active.top();
        active.pop();
        Panel& p = panels[worst.order];
        const double mid = 0.5 * (p.a + p.b);
        const double hi = p.b;
        // split in place: left half replaces the worst panel, right half appended
        double lerr = 0.0;
        T lval = detail::gk15(f, p.a, mid, lerr);
        p.b = mid;
        p.error = lerr;
        p.value = lval;
        active.push({lerr, worst.order});
        push_panel(mid, hi);
    }
}

}  // namespace qft
