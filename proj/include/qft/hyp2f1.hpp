#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <span>
#include <sstream>
#include <vector>

#include "qft/errors.hpp"
#include "qft/qcore.hpp"
#include "qft/richardson.hpp"

namespace qft {

/// Evaluation knobs for the Gauss hypergeometric function.
struct Hyp2F1Config {
    double series_margin = 0.05;   // series requires |z| < 1 - margin
    double term_tol = 1e-15;       // series termination threshold
    double result_tol = 1e-10;     // nominal accuracy target of a clean evaluation
    long max_terms = 1000000;
    double degenerate_tol = 1e-5;  // connection coefficient within this of an integer
    double perturbation = 1e-7;    // parameter shift used for degenerate cases
    bool allow_perturbation = true;
    double boundary_rel_tol = 1e-8;  // residual tolerance of the cut extrapolation
};

struct Hyp2F1Params {
    double a, b, c;
    Complex z;

    Hyp2F1Params(double a_, double b_, double c_, Complex z_)
        : a(a_), b(b_), c(c_), z(z_) {
        if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) ||
            !std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw InvalidInputError("Hyp2F1Params: non-finite input");
        if (c <= 0.5 && std::abs(c - std::round(c)) < 1e-12)
            throw InvalidInputError("Hyp2F1Params: c must not be a nonpositive integer");
    }
};

/// The "k + i0" prescription: a decreasing ladder of offsets above the branch
/// cut plus the polynomial extrapolation order used to reach the limit.
struct BoundaryPolicy {
    std::vector<double> eps_sequence{1e-3, 1e-4, 1e-5, 1e-6};
    int extrapolation_order = 2;

    void validate() const {
        if (eps_sequence.size() < 2)
            throw InvalidInputError("BoundaryPolicy: need at least two eps values");
        for (std::size_t i = 0; i < eps_sequence.size(); ++i) {
            if (!(eps_sequence[i] > 0.0))
                throw InvalidInputError("BoundaryPolicy: eps must be positive");
            if (i > 0 && !(eps_sequence[i] < eps_sequence[i - 1]))
                throw InvalidInputError("BoundaryPolicy: eps must be strictly decreasing");
        }
        if (extrapolation_order < 1)
            throw InvalidInputError("BoundaryPolicy: extrapolation order must be >= 1");
    }
};

struct BoundaryValue {
    Complex value{};
    double error_estimate = 0.0;
};

namespace detail {

inline bool near_integer(double x, double tol) {
    return std::abs(x - std::round(x)) <= tol;
}

inline bool is_nonpositive_integer(double x, double tol = 1e-12) {
    return x <= tol && near_integer(x, tol);
}

inline int gamma_sign(double x) {
    if (x > 0.0) return 1;
    return (static_cast<long long>(std::floor(x)) % 2 == 0) ? 1 : -1;
}

/// Product of gammas over product of gammas for real arguments. A pole in a
/// denominator entry annihilates the ratio (returns 0); a pole in a numerator
/// entry must have been excluded by the degeneracy screen.
inline double gamma_ratio(std::initializer_list<double> num,
                          std::initializer_list<double> den) {
    for (double x : num)
        if (is_nonpositive_integer(x))
            throw DegenerateCaseError(
                "gamma_ratio: pole in numerator (unscreened degenerate case)");
    for (double x : den)
        if (is_nonpositive_integer(x)) return 0.0;
    double lg = 0.0;
    int sign = 1;
    for (double x : num) {
        lg += std::lgamma(x);
        sign *= gamma_sign(x);
    }
    for (double x : den) {
        lg -= std::lgamma(x);
        sign *= gamma_sign(x);
    }
    if (lg > 700.0)
        throw NonFiniteResultError("gamma_ratio: overflow");
    return sign * std::exp(lg);
}

/// Gauss series sum_{n} (a)_n (b)_n / ((c)_n n!) z^n via term recurrence.
/// Terminates once the term magnitude stays below term_tol * |sum| twice in a
/// row (exactly zero terms, from a terminating parameter, also qualify).
/// `peak_ratio`, when given, receives max|term| / |sum| -- the cancellation
/// amplification of the summation.
inline Complex gauss_series(double a, double b, double c, Complex z,
                            const Hyp2F1Config& cfg,
                            double* peak_ratio = nullptr) {
    Complex sum{1.0, 0.0};
    Complex term{1.0, 0.0};
    double peak = 1.0;
    int small_count = 0;
    for (long n = 0; n < cfg.max_terms; ++n) {
        const double dn = static_cast<double>(n);
        term *= z * ((a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)));
        sum += term;
        peak = std::max(peak, std::abs(term));
        if (std::abs(term) <= cfg.term_tol * std::abs(sum)) {
            if (++small_count >= 2) {
                if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag()))
                    throw NonFiniteResultError("gauss_series: non-finite sum");
                if (peak_ratio) *peak_ratio = peak / std::max(std::abs(sum), 1e-300);
                return sum;
            }
        } else {
            small_count = 0;
        }
    }
    std::ostringstream diag;
    diag << "gauss_series(a=" << a << ", b=" << b << ", c=" << c
         << ", |z|=" << std::abs(z) << "): no convergence after "
         << cfg.max_terms << " terms, |term|/|sum|="
         << std::abs(term) / std::abs(sum);
    throw ConvergenceError("hypergeometric series did not converge", diag.str());
}

enum class Route { Direct = 0, Pfaff = 1, OneMinusZ = 2, InvZ = 3, InvOneMinusZ = 4, OneMinusInvZ = 5 };

inline Complex route_argument(Route r, Complex z) {
    switch (r) {
        case Route::Direct: return z;
        case Route::Pfaff: return z / (z - 1.0);
        case Route::OneMinusZ: return 1.0 - z;
        case Route::InvZ: return 1.0 / z;
        case Route::InvOneMinusZ: return 1.0 / (1.0 - z);
        case Route::OneMinusInvZ: return (z - 1.0) / z;
    }
    return z;
}

// Which connection coefficient the route's gamma factors require to stay off
// the integers: 0 none, 1 "a-b", 2 "c-a-b".
inline int route_coefficient_kind(Route r) {
    switch (r) {
        case Route::Direct:
        case Route::Pfaff: return 0;
        case Route::InvZ:
        case Route::InvOneMinusZ: return 1;
        case Route::OneMinusZ:
        case Route::OneMinusInvZ: return 2;
    }
    return 0;
}

// combine two connection-formula terms, accumulating the cancellation
// amplification: per-term series noise plus the loss in the final sum
inline Complex combine_terms(Complex t1, double peak1, Complex t2, double peak2,
                             double* cond) {
    const Complex sum = t1 + t2;
    if (cond) {
        const double mag = std::max(std::abs(sum), 1e-300);
        *cond = (std::abs(t1) * peak1 + std::abs(t2) * peak2 +
                 std::max(std::abs(t1), std::abs(t2))) /
                mag;
    }
    return sum;
}

/// One linear-transformation representation, evaluated with principal-branch
/// powers. Callers have already screened (or deliberately bypassed) the
/// degenerate integer cases for the coefficient this route needs. `cond`,
/// when given, receives the cancellation amplification of the evaluation
/// (relative error is about cond times machine epsilon).
inline Complex evaluate_route(Route r, double a, double b, double c, Complex z,
                              const Hyp2F1Config& cfg, double* cond = nullptr) {
    switch (r) {
        case Route::Direct:
            return gauss_series(a, b, c, z, cfg, cond);
        case Route::Pfaff: {
            const Complex w = z / (z - 1.0);
            // the variant with a terminating series is exact; prefer it
            if (is_nonpositive_integer(c - a))
                return principal_power(1.0 - z, -b) *
                       gauss_series(c - a, b, c, w, cfg, cond);
            return principal_power(1.0 - z, -a) *
                   gauss_series(a, c - b, c, w, cfg, cond);
        }
        case Route::OneMinusZ: {
            const Complex w = 1.0 - z;
            Complex t1{0.0, 0.0}, t2{0.0, 0.0};
            double p1 = 0.0, p2 = 0.0;
            const double c1 = gamma_ratio({c, c - a - b}, {c - a, c - b});
            if (c1 != 0.0)
                t1 = c1 * gauss_series(a, b, a + b - c + 1.0, w, cfg, &p1);
            const double c2 = gamma_ratio({c, a + b - c}, {a, b});
            if (c2 != 0.0)
                t2 = c2 * principal_power(w, c - a - b) *
                     gauss_series(c - a, c - b, c - a - b + 1.0, w, cfg, &p2);
            return combine_terms(t1, p1, t2, p2, cond);
        }
        case Route::InvZ: {
            const Complex w = 1.0 / z;
            Complex t1{0.0, 0.0}, t2{0.0, 0.0};
            double p1 = 0.0, p2 = 0.0;
            const double c1 = gamma_ratio({c, b - a}, {b, c - a});
            if (c1 != 0.0)
                t1 = c1 * principal_power(-z, -a) *
                     gauss_series(a, a - c + 1.0, a - b + 1.0, w, cfg, &p1);
            const double c2 = gamma_ratio({c, a - b}, {a, c - b});
            if (c2 != 0.0)
                t2 = c2 * principal_power(-z, -b) *
                     gauss_series(b, b - c + 1.0, b - a + 1.0, w, cfg, &p2);
            return combine_terms(t1, p1, t2, p2, cond);
        }
        case Route::InvOneMinusZ: {
            const Complex w = 1.0 / (1.0 - z);
            Complex t1{0.0, 0.0}, t2{0.0, 0.0};
            double p1 = 0.0, p2 = 0.0;
            const double c1 = gamma_ratio({c, b - a}, {b, c - a});
            if (c1 != 0.0)
                t1 = c1 * principal_power(1.0 - z, -a) *
                     gauss_series(a, c - b, a - b + 1.0, w, cfg, &p1);
            const double c2 = gamma_ratio({c, a - b}, {a, c - b});
            if (c2 != 0.0)
                t2 = c2 * principal_power(1.0 - z, -b) *
                     gauss_series(b, c - a, b - a + 1.0, w, cfg, &p2);
            return combine_terms(t1, p1, t2, p2, cond);
        }
        case Route::OneMinusInvZ: {
            const Complex w = (z - 1.0) / z;
            Complex t1{0.0, 0.0}, t2{0.0, 0.0};
            double p1 = 0.0, p2 = 0.0;
            const double c1 = gamma_ratio({c, c - a - b}, {c - a, c - b});
            if (c1 != 0.0)
                t1 = c1 * principal_power(z, -a) *
                     gauss_series(a, a - c + 1.0, a + b - c + 1.0, w, cfg, &p1);
            const double c2 = gamma_ratio({c, a + b - c}, {a, b});
            if (c2 != 0.0)
                t2 = c2 * principal_power(1.0 - z, c - a - b) *
                     principal_power(z, a - c) *
                     gauss_series(c - a, 1.0 - a, c - a - b + 1.0, w, cfg, &p2);
            return combine_terms(t1, p1, t2, p2, cond);
        }
    }
    throw InvalidInputError("evaluate_route: unknown route");
}

/// Degenerate connection coefficient: evaluate the same route at parameters
/// shifted off the integer by +/- delta and average; the odd error term in
/// delta cancels. Accuracy is limited by the 1/delta cancellation and is
/// recorded as a precision limitation of these strata.
inline Complex evaluate_route_perturbed(Route r, double a, double b, double c,
                                        Complex z, const Hyp2F1Config& cfg,
                                        double* cond = nullptr) {
    const int kind = route_coefficient_kind(r);
    const double d = cfg.perturbation;
    Complex lo, hi;
    double chi = 0.0, clo = 0.0;
    if (kind == 1) {  // a - b integer: shift a
        hi = evaluate_route(r, a + d, b, c, z, cfg, &chi);
        lo = evaluate_route(r, a - d, b, c, z, cfg, &clo);
    } else {          // c - a - b integer: shift c
        hi = evaluate_route(r, a, b, c + d, z, cfg, &chi);
        lo = evaluate_route(r, a, b, c - d, z, cfg, &clo);
    }
    if (cond) *cond = std::max(chi, clo);
    return 0.5 * (hi + lo);
}

inline Complex hyp2f1_impl(double a, double b, double c, Complex z,
                           const Hyp2F1Config& cfg, double* cond = nullptr) {
    if (cond) *cond = 1.0;
    if (z == Complex{0.0, 0.0}) return {1.0, 0.0};

    // Terminating series are polynomials, valid in the whole plane.
    if (is_nonpositive_integer(a) || is_nonpositive_integer(b))
        return gauss_series(a, b, c, z, cfg, cond);

    if (z.imag() == 0.0 && z.real() >= 1.0)
        throw DomainError(
            "hyp2f1: argument on the branch cut [1, inf); use hyp2f1_boundary");

    struct Candidate {
        Route route;
        double mod;
        bool degenerate;
    };
    const double cab = c - a - b;
    const double ab = a - b;
    std::vector<Candidate> cands;
    for (Route r : {Route::Direct, Route::Pfaff, Route::OneMinusZ, Route::InvZ,
                    Route::InvOneMinusZ, Route::OneMinusInvZ}) {
        if (r == Route::InvZ && z.imag() == 0.0 && z.real() >= 0.0) continue;
        if (r == Route::OneMinusInvZ && z.imag() == 0.0 && z.real() <= 0.0) continue;
        const int kind = route_coefficient_kind(r);
        const bool degen = (kind == 1 && near_integer(ab, cfg.degenerate_tol)) ||
                           (kind == 2 && near_integer(cab, cfg.degenerate_tol));
        cands.push_back({r, std::abs(route_argument(r, z)), degen});
    }

    const double convergent = 1.0 - cfg.series_margin;
    auto best = [&](bool allow_degenerate, double limit) -> const Candidate* {
        const Candidate* pick = nullptr;
        for (const auto& cand : cands) {
            if (cand.degenerate && !allow_degenerate) continue;
            if (cand.mod >= limit) continue;
            if (!pick || cand.mod < pick->mod) pick = &cand;
        }
        return pick;
    };

    // smallest transformed argument wins; representations needing a
    // near-integer connection coefficient are considered only if nothing
    // clean converges, then only slow series before giving up
    const Candidate* choice = best(false, convergent);
    if (!choice) choice = best(true, convergent);
    if (!choice) choice = best(false, 0.999);
    if (!choice) choice = best(true, 0.999);
    if (!choice)
        throw ConvergenceError(
            "hyp2f1: argument too close to the unit-circle triple points",
            "all transformed arguments have modulus >= 0.999");

    if (choice->degenerate) {
        if (!cfg.allow_perturbation)
            throw DegenerateCaseError(
                "hyp2f1: integer connection coefficient (a-b or c-a-b) and "
                "perturbation disabled");
        return evaluate_route_perturbed(choice->route, a, b, c, z, cfg, cond);
    }
    return evaluate_route(choice->route, a, b, c, z, cfg, cond);
}

}  // namespace detail

/// Plain Gauss series; requires |z| < 1 - series_margin.
inline Complex hyp2f1_series(const Hyp2F1Params& p, const Hyp2F1Config& cfg = {}) {
    if (!(std::abs(p.z) < 1.0 - cfg.series_margin))
        throw DomainError("hyp2f1_series: |z| too close to 1 for the plain series");
    return detail::gauss_series(p.a, p.b, p.c, p.z, cfg);
}

/// Gauss hypergeometric function for real parameters and complex argument off
/// the cut [1, inf), by the linear transformation ladder.
inline Complex hyp2f1(const Hyp2F1Params& p, const Hyp2F1Config& cfg = {}) {
    return detail::hyp2f1_impl(p.a, p.b, p.c, p.z, cfg);
}

/// One-sided boundary value from the upper half-plane, lim_{eps->0+}
/// 2F1(a,b;c; z + i eps). Away from the cut the limit is the function itself;
/// on the cut the ladder of eps offsets is polynomial-extrapolated to 0.
inline BoundaryValue hyp2f1_boundary(const Hyp2F1Params& p,
                                     const BoundaryPolicy& policy = {},
                                     const Hyp2F1Config& cfg = {}) {
    policy.validate();
    const Complex z = p.z;

    const bool polynomial = detail::is_nonpositive_integer(p.a) ||
                            detail::is_nonpositive_integer(p.b);
    if (z.imag() != 0.0 || z.real() < 1.0 || polynomial) {
        double cond = 1.0;
        const Complex v = detail::hyp2f1_impl(p.a, p.b, p.c, z, cfg, &cond);
        // the estimate reflects the actual cancellation met on the route
        const double noise = 8.0 * cond * std::numeric_limits<double>::epsilon();
        return {v, std::max(cfg.result_tol, noise) * std::abs(v)};
    }

    if (z.real() == 1.0) {
        // Gauss summation point: finite only for c-a-b > 0
        const double cab = p.c - p.a - p.b;
        if (!(cab > 0.0))
            throw BoundaryConvergenceError(
                "hyp2f1_boundary: divergent at z=1 (c-a-b <= 0)");
        const double v = detail::gamma_ratio({p.c, cab}, {p.c - p.a, p.c - p.b});
        return {{v, 0.0}, 1e-14 * std::abs(v)};
    }

    std::vector<Complex> values;
    values.reserve(policy.eps_sequence.size());
    double worst_cond = 1.0;
    for (double eps : policy.eps_sequence) {
        double cond = 1.0;
        values.push_back(
            detail::hyp2f1_impl(p.a, p.b, p.c, z + Complex{0.0, eps}, cfg, &cond));
        worst_cond = std::max(worst_cond, cond);
    }
    const auto ext = extrapolate_to_zero<Complex>(policy.eps_sequence, values,
                                                  policy.extrapolation_order);
    const double scale = std::max(std::abs(ext.limit), 1e-300);
    if (ext.residual > cfg.boundary_rel_tol * scale)
        throw BoundaryConvergenceError(
            "hyp2f1_boundary: extrapolation residual " +
            std::to_string(ext.residual) + " above tolerance");
    const double noise =
        worst_cond * 8.0 * std::numeric_limits<double>::epsilon() * scale;
    return {ext.limit, std::max(ext.residual, noise)};
}

}  // namespace qft
