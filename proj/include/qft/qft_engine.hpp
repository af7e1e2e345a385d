#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "qft/errors.hpp"
#include "qft/function_spec.hpp"
#include "qft/qcore.hpp"
#include "qft/quadrature.hpp"

namespace qft {

struct QftOptions {
    double rel_tol = 1e-9;
    int max_subdivisions = 10000;
};

struct PointResult {
    Complex value{};
    double error = 0.0;
};

/// Integral of f over its support by adaptive quadrature.
inline double l1_norm(const FunctionSpec& f, double rel_tol = 1e-12) {
    const Interval s = f.support();
    QuadratureOptions opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = 1e-300;
    const auto knots = f.interior_knots();
    const auto r = adaptive_integrate([&f](double x) { return f(x); }, s.lo, s.hi,
                                      opt, knots);
    return r.value;
}

/// Pointwise integrand of the transform: f(x) e_q(i k x f(x)^{q-1}).
/// Zeros of f contribute 0 (the continuous extension on both factors).
inline Complex integrand(const FunctionSpec& f, DeformationIndex q, double k,
                         double x) {
    const double fx = f(x);
    if (fx == 0.0) return {0.0, 0.0};
    if (q.is_classical()) return fx * std::exp(Complex{0.0, k * x});
    const Complex arg{0.0, k * x * std::pow(fx, q.value() - 1.0)};
    // base has real part exactly 1 for real k, so no pole can occur here
    return fx * q_exponential(arg, q);
}

namespace detail {

inline std::vector<double> oscillation_presplit(const FunctionSpec& f, double q,
                                                double k) {
    const Interval s = f.support();
    std::vector<double> splits = f.interior_knots();
    const double fmax = f.max_value();
    if (fmax > 0.0 && k != 0.0) {
        // aim for O(1) oscillations per seed panel: dx ~ pi / (|k| max f^{q-1})
        const double freq = std::abs(k) * std::pow(fmax, q - 1.0);
        const int n0 = std::min(
            1024, static_cast<int>(std::ceil(s.width() * freq / std::numbers::pi)));
        for (int i = 1; i < n0; ++i)
            splits.push_back(s.lo + s.width() * i / n0);
    }
    return splits;
}

}  // namespace detail

/// The transform at a single (k, q). Outside the gate interval [1,2) the
/// value is exactly zero by definition.
inline PointResult qft_point(const FunctionSpec& f, double q, double k,
                             const QftOptions& opt = {}) {
    if (heaviside_gate(q) == 0) return {Complex{0.0, 0.0}, 0.0};
    if (!std::isfinite(k)) throw InvalidInputError("qft_point: non-finite k");
    const DeformationIndex qi(q);
    const Interval s = f.support();
    const double fmax = f.max_value();
    if (fmax == 0.0) return {Complex{0.0, 0.0}, 0.0};

    QuadratureOptions qopt;
    qopt.rel_tol = opt.rel_tol;
    qopt.max_subdivisions = opt.max_subdivisions;
    qopt.abs_tol = opt.rel_tol * fmax * s.width() * 1e-3;

    const auto splits = detail::oscillation_presplit(f, q, k);
    const auto r = adaptive_integrate(
        [&](double x) { return integrand(f, qi, k, x); }, s.lo, s.hi, qopt, splits);
    return {r.value, r.error};
}

/// Transform values on a rectangular (k, q) grid plus per-node error
/// estimates and input provenance.
struct QftSurface {
    std::vector<double> k_grid;
    std::vector<double> q_grid;
    std::vector<Complex> values;   // row-major, index = iq * nk + ik
    std::vector<double> errors;
    std::string fn_descriptor;
    std::uint64_t fn_hash = 0;
    double rel_tol = 0.0;

    Complex at(std::size_t iq, std::size_t ik) const {
        return values[iq * k_grid.size() + ik];
    }
    double error_at(std::size_t iq, std::size_t ik) const {
        return errors[iq * k_grid.size() + ik];
    }
};

/// Evaluates qft_point at every grid node. Nodes are independent, so the
/// result does not depend on evaluation order; any failure names its node.
inline QftSurface qft_surface(const FunctionSpec& f, std::span<const double> k_grid,
                              std::span<const double> q_grid,
                              const QftOptions& opt = {}) {
    if (k_grid.empty() || q_grid.empty())
        throw InvalidInputError("qft_surface: empty grid");
    for (double q : q_grid)
        if (heaviside_gate(q) == 0)
            throw InvalidInputError("qft_surface: q grid must lie in [1,2)");

    QftSurface surf;
    surf.k_grid.assign(k_grid.begin(), k_grid.end());
    surf.q_grid.assign(q_grid.begin(), q_grid.end());
    surf.values.resize(k_grid.size() * q_grid.size());
    surf.errors.resize(k_grid.size() * q_grid.size());
    surf.fn_descriptor = f.descriptor();
    surf.fn_hash = f.hash();
    surf.rel_tol = opt.rel_tol;

    std::size_t done = 0;
    for (std::size_t iq = 0; iq < q_grid.size(); ++iq) {
        for (std::size_t ik = 0; ik < k_grid.size(); ++ik) {
            try {
                const auto r = qft_point(f, q_grid[iq], k_grid[ik], opt);
                surf.values[iq * k_grid.size() + ik] = r.value;
                surf.errors[iq * k_grid.size() + ik] = r.error;
                ++done;
            } catch (const Error& e) {
                std::ostringstream msg;
                msg << "qft_surface: node (k=" << k_grid[ik] << ", q=" << q_grid[iq]
                    << ") failed after " << done << "/" << surf.values.size()
                    << " nodes: " << e.what();
                throw SurfaceError(msg.str(), k_grid[ik], q_grid[iq]);
            }
        }
    }
    return surf;
}

}  // namespace qft
