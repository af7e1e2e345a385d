#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "qft/errors.hpp"

namespace qft {

template <typename T>
struct ExtrapolationResult {
    T limit{};
    double residual = 0.0;   // magnitude of the last tableau correction
};

/// Polynomial (Neville) extrapolation of samples f(eps_i) to eps = 0.
/// Column depth is capped at `order`; eps must be strictly decreasing and
/// positive. With a single sample the value is returned as-is with an
/// infinite residual (no extrapolation possible).
template <typename T>
ExtrapolationResult<T> extrapolate_to_zero(std::span<const double> eps,
                                           std::span<const T> values,
                                           int order) {
    const std::size_t n = eps.size();
    if (n == 0 || values.size() != n)
        throw InvalidInputError("extrapolate_to_zero: empty or mismatched inputs");
    if (order < 0)
        throw InvalidInputError("extrapolate_to_zero: negative order");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(eps[i] > 0.0))
            throw InvalidInputError("extrapolate_to_zero: eps must be positive");
        if (i > 0 && !(eps[i] < eps[i - 1]))
            throw InvalidInputError("extrapolate_to_zero: eps must be strictly decreasing");
    }
    if (n == 1)
        return {values[0], std::numeric_limits<double>::infinity()};

    std::vector<T> tab(values.begin(), values.end());
    const auto depth = static_cast<std::size_t>(
        std::min<int>(order, static_cast<int>(n) - 1));
    T estimate = tab[n - 1];
    double residual = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j <= depth; ++j) {
        for (std::size_t i = n - 1; i >= j; --i) {
            tab[i] = tab[i] + (tab[i] - tab[i - 1]) * (eps[i] / (eps[i - j] - eps[i]));
            if (i == j) break;
        }
        residual = std::abs(tab[n - 1] - estimate);
        estimate = tab[n - 1];
    }
    return {estimate, residual};
}

}  // namespace qft
