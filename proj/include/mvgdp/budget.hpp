#pragma once

#include <cstddef>
#include <optional>

#include "mvgdp/decomp.hpp"

namespace mvgdp {

// ----- parameter types --------------------------------------------------------------

class PrivacyParams {
public:
    PrivacyParams(double epsilon, double delta);
    double epsilon() const { return epsilon_; }
    double delta() const { return delta_; }

private:
    double epsilon_;
    double delta_;
};

enum class QueryStructure { General, SymmetricPsd };

// Shape and sensitivity summary of a matrix-valued query: s2 is the L2
// sensitivity over neighboring inputs, gamma the supremum of the output's
// Frobenius norm. Any query obeys s2 <= 2*gamma; a symmetric positive
// semidefinite query additionally obeys s2 <= sqrt(2)*gamma and m == n.
class QuerySpec {
public:
    QuerySpec(std::size_t m, std::size_t n, double s2, double gamma,
              QueryStructure structure);

    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }
    double s2() const { return s2_; }
    double gamma() const { return gamma_; }
    QueryStructure structure() const { return structure_; }
    std::size_t rank_bound() const { return m_ < n_ ? m_ : n_; }

private:
    std::size_t m_;
    std::size_t n_;
    double s2_;
    double gamma_;
    QueryStructure structure_;
};

// Scalar ingredients of the design conditions. omega is only defined for
// symmetric positive semidefinite queries.
struct BudgetTerms {
    std::size_t r = 0;
    double h_r = 0.0;
    double h_r_half = 0.0;
    double zeta = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    std::optional<double> omega;
};

BudgetTerms budget_terms(const QuerySpec& q, const PrivacyParams& p);

// ----- design conditions ------------------------------------------------------------

// Right-hand side of the general design condition on
// ||sv(Sigma^-1)||_2 * ||sv(Psi^-1)||_2:
//   (-beta + sqrt(beta^2 + 8*alpha*epsilon))^2 / (4*alpha^2).
double general_bound(const BudgetTerms& t, const PrivacyParams& p);

// Right-hand side of the tighter condition available to symmetric positive
// semidefinite queries with matched row and column covariances; same closed
// form with alpha replaced by omega.
double psd_bound(const BudgetTerms& t, const PrivacyParams& p);

enum class DesignTheorem { General, Psd };

struct ConditionReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

// Evaluates the design condition for a concrete covariance pair. The theorem
// defaults to the tighter branch the query structure admits; passing
// DesignTheorem::General forces the general branch on a PSD query. A relative
// slack of 1e-12 absorbs rounding on the boundary.
ConditionReport check_sufficient(const SpdMatrix& sigma, const SpdMatrix& psi,
                                 const QuerySpec& q, const PrivacyParams& p,
                                 std::optional<DesignTheorem> theorem = std::nullopt);

// ----- precision budgets ------------------------------------------------------------

enum class BudgetMode {
    Unimodal,  // directional row covariance, identity column covariance
    EquiModal, // matched row and column covariances
};

// Total precision available to a directional noise design.
//   Unimodal:  bound on sum_i 1/lambda_i(Sigma)^2, equal to
//              general_bound^2 / n; rejects SymmetricPsd queries because the
//              identity column covariance breaks the matched-pair analysis.
//   EquiModal: bound on sum_i 1/lambda_i(Sigma)^2 for Psi = Sigma, equal to
//              general_bound or psd_bound per the chosen theorem.
double precision_budget(const QuerySpec& q, const PrivacyParams& p, BudgetMode mode,
                        std::optional<DesignTheorem> theorem = std::nullopt);

// ----- theorem preference -----------------------------------------------------------

enum class PsdPreferenceReason { SensitivityLeqGamma, RankGt12, Neither };

struct PsdPreference {
    bool preferred = false;
    PsdPreferenceReason reason = PsdPreferenceReason::Neither;
};

// Whether the PSD branch is provably at least as generous as the general one:
// true when s2 <= gamma or when min(m, n) > 12. The first clause wins when
// both apply.
PsdPreference prefer_psd_theorem(const QuerySpec& q);

// ----- sensitivity catalog ----------------------------------------------------------

// Identity query on an m-by-n matrix with entries in [lo, hi]:
//   s2 = (hi - lo) * sqrt(m), gamma = max(|lo|, |hi|) * sqrt(m*n).
QuerySpec identity_query(double lo, double hi, std::size_t m, std::size_t n);

// Covariance query (1/n) * X * X^T for m-by-n data with entries in [-c, c]:
//   s2 = 2*m*c^2 / n, gamma = m*c^2. Symmetric positive semidefinite.
QuerySpec covariance_query(double c, std::size_t m, std::size_t n);

// Gaussian kernel matrix query over n records with bandwidth-derived entry
// bound c: s2 = c * sqrt(8*n - 4), gamma = n * c. Symmetric positive
// semidefinite; needs n >= 4 for the PSD sensitivity cap to be satisfiable.
QuerySpec kernel_query(double c, std::size_t n);

} // namespace mvgdp
