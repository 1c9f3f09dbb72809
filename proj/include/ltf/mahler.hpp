#pragma once

// The generalized Mahler apparatus of a Lubin-Tate group:
//   - the polynomial basis P_m defined by sum P_m(Y) Z^m = exp(Y log_G(Z)),
//     with P_m = binom(Y,m) in the multiplicative case;
//   - the pairing {F, f} on monomials, {Z^m, x^n} = Omega^(-n) (d^n Z^m)|_0
//     with d the invariant derivation, extended bilinearly;
//   - Mahler expansion f = sum c_m P_m(. Omega), c_m = {Z^m, f}, and its
//     reconstruction as an exact graded identity;
//   - the Gauss-norm estimates for ||P_m(Y Omega)||_(a,n) and the
//     convergence criterion for sum c_m P_m(y Omega);
//   - the classical specialization over Q_p (Amice transform, Dirac
//     series), the unit-support projector test and the Mellin
//     interpolation identity for Dirac distributions.

#include "ltf/lubin_tate.hpp"

namespace ltf {

struct MahlerBasis {
    GroupPtr group;
    long long cap = 0;                            // P_0 .. P_cap available
    std::vector<std::vector<PadicElement>> a;     // a[m][j]: coefficient of Y^j in P_m

    const std::vector<PadicElement>& poly(long long m) const { return a.at(m); }
    /// P_m evaluated at an element of L.
    PadicElement eval(long long m, const PadicElement& y) const;
    /// P_m(a Omega) as a graded scalar (grade of Y^j is j).
    PeriodScalar eval_graded(long long m, const PadicElement& x) const;
};

/// Extract P_0..P_M from exp(Y log_G(Z)); the precision budget must cover
/// ord_p(M!), which is reported in the PrecisionError on shortfall.
MahlerBasis mahler_basis(const GroupPtr& G, long long M);

/// Table of D(n,m) = (d^n Z^m)|_0 and the bilinear pairing built on it.
class Pairing {
public:
    Pairing(GroupPtr G, long long mmax, long long nmax);

    const GroupPtr& group() const { return G_; }
    long long mmax() const { return mmax_; }
    long long nmax() const { return nmax_; }
    const PadicElement& D(long long n, long long m) const { return D_.at(n).at(m); }

    /// {Z^m, x^n} = Omega^(-n) D(n,m); zero for m > n.
    PeriodScalar monomial(long long m, long long n) const;
    /// Bilinear extension to a series F (coefficients of Z^m, m <= mmax)
    /// against a polynomial f (coefficients of x^n, n <= nmax).
    PeriodScalar pair(const PeriodSeries& F, const PeriodSeries& f) const;
    PeriodScalar pair(const PeriodSeries& F, const PadicSeries& f) const;

private:
    GroupPtr G_;
    long long mmax_, nmax_;
    std::vector<std::vector<PadicElement>> D_;
};

struct MahlerExpansion {
    std::vector<PeriodScalar> c;  // c_m = {Z^m, f}
};

/// c_m = {Z^m, f} for a polynomial f over L (deg f <= basis cap).
MahlerExpansion mahler_expand(const MahlerBasis& basis, const Pairing& pairing,
                              const PadicSeries& f);

/// sum_m c_m P_m(x Omega) as a polynomial in x with graded coefficients.
PeriodSeries mahler_reconstruct(const MahlerBasis& basis, const MahlerExpansion& exp,
                                long long deg);

// --- norm estimates -----------------------------------------------------------

struct NormEstimate {
    std::optional<Rat> lhs_exp;  // nullopt: zero norm
    Rat rhs_exp;
    bool holds = false;
    bool lhs_exact = true;
};

/// ||P_m(Y Omega)||_(a,n) <= max_(i<=m) ||P_i(Y Omega)||_(0,n), compared as
/// exact exponents.  The left side is expanded around the coset center a;
/// the right side runs over 1 <= i <= m (i = 0 for m = 0), each a
/// single-grade monomial sum so its exponent is exact.
NormEstimate norm_estimate_43(const MahlerBasis& basis, long long m,
                              const PadicElement& a, long long n);

/// ||P_m(Y Omega)||_(0,n) < p^(-1/(p-1)) p^(m / (e q^(n-1) (q-1))), i.e.
/// lhs exponent strictly greater than 1/(p-1) - m/(e q^(n-1)(q-1)).
NormEstimate norm_estimate_44(const MahlerBasis& basis, long long m, long long n);

struct ConvergenceReport {
    Rat alpha;        // eventual slope of the valuation profile
    Rat level_bound;  // 1 / (e q^(n-1) (q-1))
    bool converges_at_level = false;  // alpha > level_bound
    bool converges_globally = false;  // alpha > 0 (some radius r > 1)
};

/// Decides |c_m| p^(m/(e q^(n-1)(q-1))) -> 0 for an eventually-linear
/// valuation profile (v(c_m) given for consecutive m; the tail must have
/// constant slope over at least three points).
ConvergenceReport convergence_check(const std::vector<Rat>& coeff_vals,
                                    const PadicField& field, long long n);

// --- classical (multiplicative) specialization ---------------------------------

/// Transform of the Dirac distribution delta_a over Q_p: (1+Z)^a truncated,
/// coefficients binom(a, m); a may be any p-adic integer.
PadicSeries amice_dirac(const PadicElement& a, long long M);

/// binom(a, m) for a p-adic a.
PadicElement padic_binomial(const PadicElement& a, long long m);

/// Moments a_m = lambda(binom(x,m)) and the power series sum a_m Z^m carry
/// the same data; these make the re-indexing explicit for the CLI.
PadicSeries amice_moments_to_series(const std::vector<PadicElement>& moments, long long M);
std::vector<PadicElement> amice_series_to_moments(const PadicSeries& F);

/// Q_p(mu_p): the totally ramified cyclotomic extension with Eisenstein
/// modulus Phi_p(1+X); zeta = 1 + pi.
FieldPtr cyclotomic_field(long long p, long long precision = 64);

/// Support criterion sum_{[p](z)=0} F(zeta (1+Z) - 1) = 0 for a polynomial
/// F over Q_p(mu_p); true iff the distribution is supported on the units.
bool units_support_check(const PadicPoly& F, long long M, Rat tol = Rat(kDefaultAssertPrec));

// numeric one-point exp/log on elements (independent of the series route)
PadicElement padic_exp(const PadicElement& x, Rat target_prec);
PadicElement padic_log1p(const PadicElement& x, Rat target_prec);

struct MellinTriple {
    PadicElement lhs;  // omega(a)^i psi_z(n)(<a>)
    PadicElement mid;  // a^n
    PadicElement rhs;  // Omega^(-n) d^n (1+Z)^a |_0 (Omega = 1 here)
    bool ok = false;
};

/// Prop-5.1 style interpolation check for the Dirac distribution delta_a on
/// the multiplicative group over Q_p (p >= 3, e = 1 < p-1); requires
/// n = i mod (q-1).
MellinTriple mellin_demo(long long p, long long a, long long n, long long i,
                         Rat tol = Rat(15));

// --- property suites -------------------------------------------------------------

struct SuiteCase {
    std::string name;
    std::string params;
    bool ok = false;
};

struct SuiteReport {
    std::vector<SuiteCase> cases;
    bool all_ok() const {
        for (const auto& c : cases)
            if (!c.ok) return false;
        return true;
    }
    const SuiteCase* first_failure() const {
        for (const auto& c : cases)
            if (!c.ok) return &c;
        return nullptr;
    }
};

/// Checks the defining properties of the P_m family: P_0 = 1 and P_1 = Y,
/// P_m(0) = 0, degree and leading coefficient 1/m!, the addition law
/// P_m(Y+Y') = sum_{i+j=m} P_i(Y) P_j(Y'), and (P_m(d) Z^k)|_0 =
/// (1/m!)(d/dZ)^m Z^k|_0 for k <= kmax.
SuiteReport pm_property_suite(const MahlerBasis& basis, const Pairing& pairing,
                              long long mmax, long long kmax,
                              Rat tol = Rat(kDefaultAssertPrec));

/// Exact graded checks of the pairing formulae
///   (1) {1,f} = f(0)                 (2) {F_a, f} = f(a) - f(0)
///   (4) {F_a F, f} = {F, f(a+.) - f} (6) {F, f(a.)} = {F o [a], f}
///   (7) {F, f'} = {Omega log_G F, f} (8) {F, x f} = {Omega^(-1) dF, f}
///   (9) {F, P_k(. Omega)} = (1/k!) d^k F / dZ^k (0)
/// over F in {Z^m : m <= mmax} + {F_a : a in {1, pi}} and f = x^n, n <= nmax.
SuiteReport pairing_identity_suite(const MahlerBasis& basis, const Pairing& pairing,
                                   long long mmax, long long nmax,
                                   Rat tol = Rat(kDefaultAssertPrec));

/// f(x) -> f(x + a) on polynomial coefficients.
PadicSeries shift_argument(const PadicSeries& f, const PadicElement& a);

/// Omega^(-1) dF for a graded series (invariant derivation on coefficients,
/// grade lowered by one).
PeriodSeries period_inv_derivation(const LubinTateGroup& G, const PeriodSeries& F);

struct CoefficientBoundCase {
    long long m;
    Rat termwise_bound;  // valuation bound of P_{m+1}(Omega)/Omega
    Rat required;        // -m / (e (q-1))
    bool pass;           // termwise_bound >= required; otherwise inconclusive
};

/// Termwise experiment for the coefficient bound |c_m| <= p^(m/e(q-1)) of
/// the normalized homomorphism F/(Omega Z); failures are reported as
/// inconclusive (the ultrametric bound may simply be too weak), never as
/// errors.
std::vector<CoefficientBoundCase> coefficient_bound_experiment(const MahlerBasis& basis,
                                                               long long cap);

} // namespace ltf
