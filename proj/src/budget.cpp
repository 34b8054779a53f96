#include "mvgdp/budget.hpp"

#include <cmath>

#include "mvgdp/errors.hpp"
#include "mvgdp/scalars.hpp"

namespace mvgdp {

PrivacyParams::PrivacyParams(double epsilon, double delta)
    : epsilon_(epsilon), delta_(delta) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw ParameterError("epsilon must be a positive finite number");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw ParameterError("delta must lie in (0, 1)");
    }
}

QuerySpec::QuerySpec(std::size_t m, std::size_t n, double s2, double gamma,
                     QueryStructure structure)
    : m_(m), n_(n), s2_(s2), gamma_(gamma), structure_(structure) {
    if (m == 0 || n == 0) throw ParameterError("query dimensions must be positive");
    if (!(s2 > 0.0) || !std::isfinite(s2)) {
        throw ParameterError("s2 sensitivity must be a positive finite number");
    }
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw ParameterError("gamma must be a positive finite number");
    }
    const double slack = 1.0 + 1e-12;
    if (s2 > 2.0 * gamma * slack) {
        throw ParameterError("s2 may not exceed 2*gamma");
    }
    if (structure == QueryStructure::SymmetricPsd) {
        if (m != n) throw ParameterError("symmetric PSD queries must be square");
        if (s2 > std::sqrt(2.0) * gamma * slack) {
            throw ParameterError("PSD queries require s2 <= sqrt(2)*gamma");
        }
    }
}

BudgetTerms budget_terms(const QuerySpec& q, const PrivacyParams& p) {
    BudgetTerms t;
    t.r = q.rank_bound();
    t.h_r = harmonic(t.r, HarmonicOrder::One);
    t.h_r_half = harmonic(t.r, HarmonicOrder::Half);
    t.zeta = zeta(p.delta(), q.m(), q.n());
    const double g = q.gamma();
    const double s2 = q.s2();
    t.alpha = (t.h_r + t.h_r_half) * g * g + 2.0 * t.h_r * g * s2;
    const double mn = static_cast<double>(q.m()) * static_cast<double>(q.n());
    t.beta = 2.0 * std::pow(mn, 0.25) * t.zeta * t.h_r * s2;
    if (q.structure() == QueryStructure::SymmetricPsd) {
        // With m == n the quartic-root factor reduces to sqrt(r), so the same
        // beta serves both branches.
        t.omega = 4.0 * t.h_r * g * s2;
    }
    return t;
}

namespace {

// (-beta + sqrt(beta^2 + 8*a*eps))^2 / (4*a^2), written to avoid the
// catastrophic cancellation when 8*a*eps << beta^2.
double closed_form_bound(double a, double beta, double eps) {
    const double disc = std::sqrt(beta * beta + 8.0 * a * eps);
    // -beta + disc = 8*a*eps / (beta + disc) exactly, and the right-hand
    // division form is stable for every magnitude ordering.
    const double num = 8.0 * a * eps / (beta + disc);
    return (num * num) / (4.0 * a * a);
}

} // namespace

double general_bound(const BudgetTerms& t, const PrivacyParams& p) {
    return closed_form_bound(t.alpha, t.beta, p.epsilon());
}

double psd_bound(const BudgetTerms& t, const PrivacyParams& p) {
    if (!t.omega) {
        throw MechanismError("psd_bound requires a symmetric PSD query");
    }
    return closed_form_bound(*t.omega, t.beta, p.epsilon());
}

namespace {

double inverse_l2_norm(const SpdMatrix& s) {
    double sum = 0.0;
    for (double e : s.eigenvalues()) {
        if (e <= 0.0) throw MechanismError("covariance is singular");
        sum += 1.0 / (e * e);
    }
    return std::sqrt(sum);
}

} // namespace

ConditionReport check_sufficient(const SpdMatrix& sigma, const SpdMatrix& psi,
                                 const QuerySpec& q, const PrivacyParams& p,
                                 std::optional<DesignTheorem> theorem) {
    if (sigma.dim() != q.m() || psi.dim() != q.n()) {
        throw MechanismError("covariance dimensions do not match the query");
    }
    const DesignTheorem used = theorem.value_or(
        q.structure() == QueryStructure::SymmetricPsd ? DesignTheorem::Psd
                                                      : DesignTheorem::General);
    const BudgetTerms t = budget_terms(q, p);
    ConditionReport report;
    report.lhs = inverse_l2_norm(sigma) * inverse_l2_norm(psi);
    report.rhs = used == DesignTheorem::Psd ? psd_bound(t, p) : general_bound(t, p);
    report.holds = report.lhs <= report.rhs * (1.0 + 1e-12);
    return report;
}

double precision_budget(const QuerySpec& q, const PrivacyParams& p, BudgetMode mode,
                        std::optional<DesignTheorem> theorem) {
    const BudgetTerms t = budget_terms(q, p);
    if (mode == BudgetMode::Unimodal) {
        if (q.structure() == QueryStructure::SymmetricPsd) {
            throw MechanismError(
                "unimodal design does not apply to symmetric PSD queries");
        }
        if (theorem && *theorem == DesignTheorem::Psd) {
            throw MechanismError("unimodal design has no PSD branch");
        }
        const double bound = general_bound(t, p);
        return bound * bound / static_cast<double>(q.n());
    }
    const DesignTheorem used = theorem.value_or(
        q.structure() == QueryStructure::SymmetricPsd ? DesignTheorem::Psd
                                                      : DesignTheorem::General);
    if (used == DesignTheorem::Psd) {
        return psd_bound(t, p);
    }
    return general_bound(t, p);
}

PsdPreference prefer_psd_theorem(const QuerySpec& q) {
    PsdPreference pref;
    if (q.s2() <= q.gamma()) {
        pref.preferred = true;
        pref.reason = PsdPreferenceReason::SensitivityLeqGamma;
    } else if (q.rank_bound() > 12) {
        pref.preferred = true;
        pref.reason = PsdPreferenceReason::RankGt12;
    }
    return pref;
}

QuerySpec identity_query(double lo, double hi, std::size_t m, std::size_t n) {
    if (!(hi > lo)) throw ParameterError("identity query needs hi > lo");
    const double s2 = (hi - lo) * std::sqrt(static_cast<double>(m));
    const double gamma = std::max(std::fabs(lo), std::fabs(hi)) *
                         std::sqrt(static_cast<double>(m) * static_cast<double>(n));
    return QuerySpec(m, n, s2, gamma, QueryStructure::General);
}

QuerySpec covariance_query(double c, std::size_t m, std::size_t n) {
    if (!(c > 0.0)) throw ParameterError("covariance query needs a positive bound c");
    const double md = static_cast<double>(m);
    const double s2 = 2.0 * md * c * c / static_cast<double>(n);
    const double gamma = md * c * c;
    return QuerySpec(m, m, s2, gamma, QueryStructure::SymmetricPsd);
}

QuerySpec kernel_query(double c, std::size_t n) {
    if (!(c > 0.0)) throw ParameterError("kernel query needs a positive bound c");
    const double nd = static_cast<double>(n);
    const double s2 = c * std::sqrt(8.0 * nd - 4.0);
    const double gamma = nd * c;
    return QuerySpec(n, n, s2, gamma, QueryStructure::SymmetricPsd);
}

} // namespace mvgdp
