#pragma once

#include <cmath>
#include <complex>

#include "qft/errors.hpp"

namespace qft {

using Complex = std::complex<double>;

/// Deformation index q restricted to [1,2). q = 1 is the classical limit and
/// is evaluated by exp/log directly rather than by the deformed formulas.
class DeformationIndex {
public:
    explicit DeformationIndex(double q) : q_(q) {
        if (!std::isfinite(q) || q < 1.0 || q >= 2.0)
            throw InvalidInputError("DeformationIndex: q must lie in [1,2), got " +
                                    std::to_string(q));
    }

    double value() const noexcept { return q_; }
    double one_minus_q() const noexcept { return 1.0 - q_; }
    bool is_classical() const noexcept { return q_ == 1.0; }

private:
    double q_;
};

/// The gate [H(q-1) - H(q-2)] with the H(0)=1 convention, so the classical
/// q = 1 endpoint is admitted and q = 2 is not.
inline int heaviside_gate(double q) {
    if (!std::isfinite(q))
        throw InvalidInputError("heaviside_gate: non-finite q");
    return (q >= 1.0 && q < 2.0) ? 1 : 0;
}

/// z^p on the principal branch, arg in (-pi, pi]. A negative real base is a
/// regular point of the convention (arg = pi), not an error.
inline Complex principal_power(Complex base, double p) {
    if (base.real() == 0.0 && base.imag() == 0.0) {
        if (p > 0.0) return {0.0, 0.0};
        if (p == 0.0) return {1.0, 0.0};
        throw PoleError("principal_power: zero base with negative exponent", base);
    }
    // -0.0 imaginary parts would select arg = -pi; fold them onto the +pi side.
    if (base.imag() == 0.0) base = Complex(base.real(), 0.0);
    Complex r = std::exp(p * std::log(base));
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
        throw NonFiniteResultError("principal_power: overflow");
    return r;
}

/// Deformed exponential e_q(z) = [1 + (1-q) z]^{1/(1-q)}, e_1 = exp.
inline Complex q_exponential(Complex z, DeformationIndex q) {
    if (q.is_classical()) return std::exp(z);
    const Complex base = 1.0 + q.one_minus_q() * z;
    if (base.real() == 0.0 && base.imag() == 0.0)
        throw PoleError("q_exponential: pole of the deformed exponential", z);
    return principal_power(base, 1.0 / q.one_minus_q());
}

/// Deformed logarithm, inverse of e_q on the positive real axis.
inline double q_logarithm(double x, DeformationIndex q) {
    if (!(x > 0.0))
        throw DomainError("q_logarithm: requires x > 0");
    if (q.is_classical()) return std::log(x);
    return std::expm1(q.one_minus_q() * std::log(x)) / q.one_minus_q();
}

/// q-Gaussian e_q(-width x^2) with the compact-support cutoff convention
/// (value 0 where the deformed base goes negative; for q >= 1 the base
/// stays positive, so the cutoff never fires there).
inline double q_gaussian(double x, DeformationIndex q, double width) {
    if (!(width > 0.0))
        throw InvalidInputError("q_gaussian: requires width > 0");
    if (q.is_classical()) return std::exp(-width * x * x);
    const double base = 1.0 + (q.value() - 1.0) * width * x * x;
    if (base <= 0.0) return 0.0;
    return std::pow(base, 1.0 / q.one_minus_q());
}

}  // namespace qft
