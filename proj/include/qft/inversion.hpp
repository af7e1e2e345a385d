#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "qft/errors.hpp"
#include "qft/function_spec.hpp"
#include "qft/qft_engine.hpp"
#include "qft/richardson.hpp"

namespace qft {

/// The q -> 1+ row of the surface: values of lim_{eps->0+} F(k, 1+eps) on a
/// symmetric k grid, with the extrapolation trace that produced them.
struct SliceSample {
    std::vector<double> k_grid;
    std::vector<Complex> values;
    std::vector<double> eps_used;
    std::vector<double> eps_residuals;  // per eps: max_k distance from the limit
    std::vector<double> k_residuals;    // per k: extrapolation residual
    bool low_confidence = false;        // single-eps evaluation, no extrapolation
};

struct SliceOptions {
    int extrapolation_order = 2;
    double residual_tol = 0.05;  // relative to the L1 norm of the input
    QftOptions point;
};

namespace detail {

inline void require_symmetric_sorted(std::span<const double> k_grid) {
    const std::size_t n = k_grid.size();
    if (n == 0) throw InvalidInputError("k grid is empty");
    for (std::size_t i = 1; i < n; ++i)
        if (!(k_grid[i] > k_grid[i - 1]))
            throw InvalidInputError("k grid must be strictly increasing");
    const double span = std::max(std::abs(k_grid.front()), std::abs(k_grid.back()));
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(k_grid[i] + k_grid[n - 1 - i]) > 1e-12 * std::max(1.0, span))
            throw InvalidInputError("k grid must be symmetric about 0");
}

}  // namespace detail

/// Samples F(k, 1+eps) down the eps ladder and extrapolates each k to eps = 0.
/// The delta(q - 1 - eps) integral of the definition is applied analytically
/// through the sifting property; nothing here discretizes a delta.
inline SliceSample q1_slice(const FunctionSpec& f, std::span<const double> k_grid,
                            std::span<const double> eps_sequence,
                            const SliceOptions& opt = {}) {
    detail::require_symmetric_sorted(k_grid);
    if (eps_sequence.empty())
        throw InvalidInputError("q1_slice: eps sequence is empty");
    for (std::size_t i = 0; i < eps_sequence.size(); ++i) {
        if (!(eps_sequence[i] > 0.0))
            throw InvalidInputError("q1_slice: eps must be positive");
        if (i > 0 && !(eps_sequence[i] < eps_sequence[i - 1]))
            throw InvalidInputError("q1_slice: eps must be strictly decreasing");
    }
    if (!(1.0 + eps_sequence.front() < 2.0))
        throw InvalidInputError("q1_slice: 1 + max(eps) must stay below 2");

    const std::size_t nk = k_grid.size();
    const std::size_t ne = eps_sequence.size();
    std::vector<std::vector<Complex>> rows(ne);
    for (std::size_t ie = 0; ie < ne; ++ie) {
        rows[ie].resize(nk);
        for (std::size_t ik = 0; ik < nk; ++ik)
            rows[ie][ik] = qft_point(f, 1.0 + eps_sequence[ie], k_grid[ik], opt.point).value;
    }

    SliceSample slice;
    slice.k_grid.assign(k_grid.begin(), k_grid.end());
    slice.eps_used.assign(eps_sequence.begin(), eps_sequence.end());
    slice.values.resize(nk);
    slice.k_residuals.resize(nk);
    slice.low_confidence = ne < 2;

    const double scale = l1_norm(f);
    std::vector<Complex> column(ne);
    for (std::size_t ik = 0; ik < nk; ++ik) {
        for (std::size_t ie = 0; ie < ne; ++ie) column[ie] = rows[ie][ik];
        const auto ext = extrapolate_to_zero<Complex>(eps_sequence, column,
                                                      opt.extrapolation_order);
        if (!slice.low_confidence && ext.residual > opt.residual_tol * scale)
            throw SliceError("q1_slice: extrapolation residual " +
                                 std::to_string(ext.residual) + " at k=" +
                                 std::to_string(k_grid[ik]),
                             k_grid[ik]);
        slice.values[ik] = ext.limit;
        slice.k_residuals[ik] = slice.low_confidence ? 0.0 : ext.residual;
    }

    slice.eps_residuals.resize(ne, 0.0);
    for (std::size_t ie = 0; ie < ne; ++ie)
        for (std::size_t ik = 0; ik < nk; ++ik)
            slice.eps_residuals[ie] = std::max(
                slice.eps_residuals[ie], std::abs(rows[ie][ik] - slice.values[ik]));
    return slice;
}

struct InverseOptions {
    // largest acceptable |F| at the grid edges, as a fraction of the peak |F|
    double edge_fraction = 0.25;
};

/// Sampled real reconstruction plus its diagnostics.
struct Reconstruction {
    std::vector<double> x_grid;
    std::vector<double> values;
    double imag_residue = 0.0;    // max |Im| of the raw inverse / peak |Re|
    double slice_error = 0.0;     // propagated slice extrapolation residual
    double edge_fraction = 0.0;   // recorded |F(edge)| / peak |F|
};

/// Truncated trapezoidal inverse transform (1/2pi) int F(k) e^{-ikx} dk of a
/// slice. The imaginary part of the raw integral is reported as a residue,
/// the real part is the reconstruction. No window is applied; truncation
/// ringing on discontinuous inputs is the caller's to budget for.
inline Reconstruction inverse_transform(const SliceSample& s,
                                        std::span<const double> x_grid,
                                        const InverseOptions& opt = {}) {
    detail::require_symmetric_sorted(s.k_grid);
    if (s.values.size() != s.k_grid.size())
        throw InvalidInputError("inverse_transform: malformed slice");
    if (x_grid.empty()) throw InvalidInputError("inverse_transform: empty x grid");
    if (s.k_grid.size() < 2)
        throw InvalidInputError("inverse_transform: need at least two k samples");

    double peak = 0.0;
    for (const Complex& v : s.values) peak = std::max(peak, std::abs(v));

    Reconstruction rec;
    rec.x_grid.assign(x_grid.begin(), x_grid.end());
    rec.values.assign(x_grid.size(), 0.0);
    if (peak == 0.0) return rec;

    const double edge = std::max(std::abs(s.values.front()), std::abs(s.values.back()));
    rec.edge_fraction = edge / peak;
    if (rec.edge_fraction > opt.edge_fraction)
        throw TruncationError(
            "inverse_transform: slice magnitude at the grid edges is " +
            std::to_string(rec.edge_fraction) +
            " of the peak; widen the k grid");

    const std::size_t nk = s.k_grid.size();
    std::vector<double> wk(nk, 0.0);
    for (std::size_t i = 0; i + 1 < nk; ++i) {
        const double h = 0.5 * (s.k_grid[i + 1] - s.k_grid[i]);
        wk[i] += h;
        wk[i + 1] += h;
    }

    constexpr double two_pi = 2.0 * std::numbers::pi;
    double imag_max = 0.0, real_max = 0.0;
    for (std::size_t ix = 0; ix < x_grid.size(); ++ix) {
        Complex acc{0.0, 0.0};
        for (std::size_t i = 0; i < nk; ++i)
            acc += wk[i] * s.values[i] *
                   std::exp(Complex{0.0, -s.k_grid[i] * x_grid[ix]});
        acc /= two_pi;
        rec.values[ix] = acc.real();
        imag_max = std::max(imag_max, std::abs(acc.imag()));
        real_max = std::max(real_max, std::abs(acc.real()));
    }
    rec.imag_residue = real_max > 0.0 ? imag_max / real_max : imag_max;

    double slice_err = 0.0;
    for (std::size_t i = 0; i < nk; ++i) slice_err += wk[i] * s.k_residuals[i];
    rec.slice_error = slice_err / two_pi;
    return rec;
}

/// Relative L2 distance on the x grid (trapezoid weights) between f and its
/// slice-and-invert reconstruction.
inline double roundtrip_error(const FunctionSpec& f, std::span<const double> k_grid,
                              std::span<const double> eps_sequence,
                              std::span<const double> x_grid,
                              const SliceOptions& sopt = {},
                              const InverseOptions& iopt = {}) {
    const auto slice = q1_slice(f, k_grid, eps_sequence, sopt);
    const auto rec = inverse_transform(slice, x_grid, iopt);

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i + 1 < x_grid.size(); ++i) {
        const double h = 0.5 * (x_grid[i + 1] - x_grid[i]);
        for (std::size_t j = i; j <= i + 1; ++j) {
            const double d = rec.values[j] - f(x_grid[j]);
            num += h * d * d;
            den += h * f(x_grid[j]) * f(x_grid[j]);
        }
    }
    if (den == 0.0)
        throw InvalidInputError("roundtrip_error: f vanishes on the x grid");
    return std::sqrt(num / den);
}

}  // namespace qft
