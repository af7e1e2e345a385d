#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "qft/errors.hpp"
#include "qft/function_spec.hpp"
#include "qft/hyp2f1.hpp"
#include "qft/qcore.hpp"
#include "qft/qft_engine.hpp"

namespace qft {

inline PowerLawWindow make_window(double a, double b, double beta, double lambda) {
    return PowerLawWindow(a, b, beta, lambda);
}

/// The scale making the beta = 1/(q-1) window integrate to one:
/// lambda = [ ((q-1)/(2-q)) (a^{(q-2)/(q-1)} - b^{(q-2)/(q-1)}) ]^{1-q}.
inline double hilhorst_lambda(double a, double b, double q) {
    if (!(0.0 < a && a < b))
        throw InvalidInputError("hilhorst_lambda: requires 0 < a < b");
    if (!(q > 1.0 && q < 2.0))
        throw DomainError("hilhorst_lambda: requires 1 < q < 2 (degenerate at q=1)");
    const double e = (q - 2.0) / (q - 1.0);
    const double base = ((q - 1.0) / (2.0 - q)) * (std::pow(a, e) - std::pow(b, e));
    return std::pow(base, 1.0 - q);
}

/// The level-set coordinate a^{(q-2)/(q-1)} - b^{(q-2)/(q-1)}; windows sharing
/// it share the Hilhorst lambda, hence the same fixed-q transform.
inline double level_set_constant(double a, double b, double q) {
    if (!(q > 1.0 && q < 2.0))
        throw DomainError("level_set_constant: requires 1 < q < 2");
    const double e = (q - 2.0) / (q - 1.0);
    return std::pow(a, e) - std::pow(b, e);
}

/// The collapsed fixed-q transform of a normalized level set:
/// F = [1 + (1-q) i k lambda]^{1/(1-q)}, independent of (a, b).
inline Complex degenerate_F(double lambda, double q, double k) {
    if (!(q > 1.0 && q < 2.0))
        throw DomainError("degenerate_F: requires 1 < q < 2");
    if (!(lambda > 0.0))
        throw InvalidInputError("degenerate_F: requires lambda > 0");
    return principal_power(Complex{1.0, (1.0 - q) * k * lambda}, 1.0 / (1.0 - q));
}

struct ClosedFormOptions {
    double delta_singular = 1e-3;  // exclusion band around beta (q-1) = 1
    double k_min = 1e-3;           // exclusion band around k = 0
    // largest tolerated a-posteriori relative error estimate; the
    // hypergeometric parameters grow like 1/(q-1) and 1/|1 - beta(q-1)|, and
    // the connection formulas lose precision accordingly
    double max_rel_error = 5e-7;
};

/// Hypergeometric closed form of the power-law window transform. Two branches
/// split at q = 1 + 1/beta; hypergeometric evaluations go through the k + i0
/// boundary prescription. Inside the singular strata (the change of variables
/// degenerates, or the arguments blow up at small k) direct quadrature must be
/// used instead.
inline Complex closed_form_F(const PowerLawWindow& w, DeformationIndex q, double k,
                             const BoundaryPolicy& policy = {},
                             const ClosedFormOptions& opt = {},
                             const Hyp2F1Config& cfg = {}) {
    const double qv = q.value();
    if (qv <= 1.0)
        throw DomainError("closed_form_F: requires 1 < q < 2");
    const double beta = w.beta;
    const double s = 1.0 - beta * (qv - 1.0);
    if (std::abs(s) <= opt.delta_singular)
        throw FallbackRequiredError(
            "closed_form_F: |1 - beta (q-1)| = " + std::to_string(std::abs(s)) +
            " inside the singular stratum; use qft_point");
    if (std::abs(k) <= opt.k_min)
        throw FallbackRequiredError("closed_form_F: |k| too small; use qft_point");

    const double lam_beta = std::pow(w.lambda, beta);
    const double lam_s = std::pow(w.lambda, beta * (qv - 1.0));

    Complex pref, ta, tb;
    double err_a, err_b;
    if (s > 0.0) {
        // q < 1 + 1/beta: argument 1 / ((q-1) i k lambda^{beta(q-1)} x^s).
        // The scale prefactor is [(1-q) i k lambda^{beta(q-1)}]^{1/(q-1)}, so
        // its lambda part cancels the leading lambda^beta exactly.
        const double A = 1.0 / (qv - 1.0);
        const double B = (2.0 - qv) / ((qv - 1.0) * s);
        const double C = A + beta * (2.0 - qv) / s;
        const Complex pref_pow = principal_power(Complex{0.0, (1.0 - qv) * k}, A);
        pref = (qv - 1.0) / ((2.0 - qv) * pref_pow);
        auto term = [&](double x, double& err) {
            const Complex zx =
                1.0 / Complex{0.0, (qv - 1.0) * k * lam_s * std::pow(x, s)};
            const auto h = hyp2f1_boundary({A, B, C, zx}, policy, cfg);
            err = std::pow(x, (qv - 2.0) / (qv - 1.0)) * h.error_estimate;
            return std::pow(x, (qv - 2.0) / (qv - 1.0)) * h.value;
        };
        ta = term(w.a, err_a);
        tb = term(w.b, err_b);
    } else {
        // q > 1 + 1/beta: argument (q-1) i k lambda^{beta(q-1)} x^s
        const double A = 1.0 / (qv - 1.0);
        const double B = (beta - 1.0) / (beta * (qv - 1.0) - 1.0);
        const double C = (beta * qv - 2.0) / (beta * (qv - 1.0) - 1.0);
        pref = Complex{lam_beta / (beta - 1.0), 0.0};
        auto term = [&](double x, double& err) {
            const Complex wx{0.0, (qv - 1.0) * k * lam_s * std::pow(x, s)};
            const auto h = hyp2f1_boundary({A, B, C, wx}, policy, cfg);
            err = std::pow(x, 1.0 - beta) * h.error_estimate;
            return std::pow(x, 1.0 - beta) * h.value;
        };
        ta = term(w.a, err_a);
        tb = term(w.b, err_b);
    }

    const Complex diff = ta - tb;
    // a-posteriori budget: propagated hypergeometric noise plus the
    // cancellation of the a- and b-terms themselves
    const double eps_sub = std::numeric_limits<double>::epsilon() *
                           std::max(std::abs(ta), std::abs(tb));
    const double rel_est =
        (err_a + err_b + eps_sub) / std::max(std::abs(diff), 1e-300);
    if (rel_est > opt.max_rel_error)
        throw FallbackRequiredError(
            "closed_form_F: estimated relative error " + std::to_string(rel_est) +
            " exceeds the budget on this (beta, q, k) stratum; use qft_point");
    return pref * diff;
}

/// Second window on the same lambda level set: solves
/// a2^{(q-2)/(q-1)} - b2^{(q-2)/(q-1)} = C for b2.
inline PowerLawWindow degeneracy_partner(const PowerLawWindow& w, double q,
                                         double a2) {
    if (!(q > 1.0 && q < 2.0))
        throw DomainError("degeneracy_partner: requires 1 < q < 2");
    const double beta_expected = 1.0 / (q - 1.0);
    if (std::abs(w.beta - beta_expected) > 1e-9 * beta_expected)
        throw InvalidInputError(
            "degeneracy_partner: window must have beta = 1/(q-1)");
    if (!(a2 > 0.0))
        throw InvalidInputError("degeneracy_partner: requires a2 > 0");
    if (std::abs(a2 - w.a) <= 1e-12 * w.a)
        throw NoPartnerError("degeneracy_partner: a2 equals the original edge");

    const double e = (q - 2.0) / (q - 1.0);
    const double C = level_set_constant(w.a, w.b, q);
    const double t = std::pow(a2, e) - C;
    if (!(t > 0.0))
        throw NoPartnerError("degeneracy_partner: no upper edge exists for a2=" +
                             std::to_string(a2));
    const double b2 = std::pow(t, 1.0 / e);
    return PowerLawWindow(a2, b2, w.beta, hilhorst_lambda(a2, b2, q));
}

enum class Verdict { Degenerate, Separated, Inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Degenerate: return "degenerate";
        case Verdict::Separated: return "separated";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

/// Per-q separation evidence for a pair of windows: the max gap over k, the
/// combined quadrature error bound, and the verdict. "separated" is claimed
/// only when the gap exceeds 10x the combined bound.
struct SeparationReport {
    std::vector<double> q_probes;
    std::vector<double> max_gap;
    std::vector<double> error_bound;
    std::vector<Verdict> verdicts;
    std::string fixture1;
    std::string fixture2;
};

inline SeparationReport separation_scan(const PowerLawWindow& w1,
                                        const PowerLawWindow& w2,
                                        std::span<const double> q_grid,
                                        std::span<const double> k_grid,
                                        const QftOptions& opt = {}) {
    const auto f1 = FunctionSpec::power_law(w1);
    const auto f2 = FunctionSpec::power_law(w2);
    const auto s1 = qft_surface(f1, k_grid, q_grid, opt);
    const auto s2 = qft_surface(f2, k_grid, q_grid, opt);

    SeparationReport rep;
    rep.q_probes.assign(q_grid.begin(), q_grid.end());
    rep.fixture1 = f1.descriptor();
    rep.fixture2 = f2.descriptor();
    for (std::size_t iq = 0; iq < q_grid.size(); ++iq) {
        double gap = 0.0, bound = 0.0;
        for (std::size_t ik = 0; ik < k_grid.size(); ++ik) {
            gap = std::max(gap, std::abs(s1.at(iq, ik) - s2.at(iq, ik)));
            bound = std::max(bound, s1.error_at(iq, ik) + s2.error_at(iq, ik));
        }
        rep.max_gap.push_back(gap);
        rep.error_bound.push_back(bound);
        if (gap > 10.0 * bound)
            rep.verdicts.push_back(Verdict::Separated);
        else if (gap <= bound)
            rep.verdicts.push_back(Verdict::Degenerate);
        else
            rep.verdicts.push_back(Verdict::Inconclusive);
    }
    return rep;
}

}  // namespace qft
