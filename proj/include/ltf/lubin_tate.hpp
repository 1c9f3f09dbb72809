#pragma once

// Lubin-Tate formal groups over o_L.  A Frobenius series f with
// f = pi Z mod deg 2 and f = Z^q mod pi determines:
//   - the group law F(X,Y), built by the classical induction with
//     degree-(r+1) correction divided by (pi^(r+1) - pi);
//   - the o-action a -> [a](Z), same induction, [pi] = f;
//   - log_G (normalized invariant differential; also available at high
//     truncation through log(f(Z)) = pi log(Z)) and exp_G = reversion;
//   - torsion valuations via Newton polygons of [pi^n]/[pi^(n-1)];
//   - the disk preimage law of [pi] and the graded homomorphism
//     exp(a Omega log_G(Z)) - 1 into the multiplicative group.
//
// Everything is immutable after construction; lazy caches are built under
// std::call_once so concurrent readers only ever see complete series.

#include "ltf/multiseries.hpp"
#include "ltf/newton.hpp"
#include "ltf/period.hpp"
#include "ltf/series.hpp"

#include <mutex>

namespace ltf {

using PadicSeries = TruncSeries<PadicElement>;
using PadicPoly = std::vector<PadicElement>;
using PadicBivar = MultiSeries<PadicElement>;
using PadicTrivar = MultiSeries<PadicElement>;

class LubinTateGroup;
using GroupPtr = std::shared_ptr<const LubinTateGroup>;

class LubinTateGroup : public std::enable_shared_from_this<LubinTateGroup> {
public:
    const FieldPtr& field() const { return fld_; }
    const PadicElement& pi() const { return pi_; }
    long long trunc() const { return trunc_; }
    /// Frobenius polynomial, dense, degree q for the default pi Z + Z^q.
    const PadicPoly& frobenius_poly() const { return frob_; }
    PadicSeries frobenius_series(long long trunc) const;

    /// The unique F = X + Y + ... with f(F(X,Y)) = F(f(X), f(Y)) mod
    /// total degree trunc+1.  Coefficients are checked integral.
    const PadicBivar& group_law() const;

    /// [a](Z) = aZ + ... with f o [a] = [a] o f; requires ord(a) >= 0.
    PadicSeries endomorphism(const PadicElement& a) const;

    /// log_G at the group truncation, from the invariant differential
    /// (dF/dY at (Z,0))^(-1) integrated with log_G'(0) = 1.
    const PadicSeries& formal_log() const;
    const PadicSeries& formal_exp() const;

    /// log_G mod Z^(M+1) for M possibly above the group truncation, via
    /// the functional equation log(f(Z)) = pi log(Z).  Agrees with
    /// formal_log() where both are defined.
    PadicSeries formal_log_at(long long M) const;
    PadicSeries formal_exp_at(long long M) const;

    /// dh = h' / log_G', the invariant derivation; d(log_G) = 1.
    PadicSeries invariant_derivation(const PadicSeries& h) const;

private:
    friend GroupPtr make_lt_group(FieldPtr, const PadicElement&, const PadicPoly*, long long);
    LubinTateGroup() = default;

    FieldPtr fld_;
    PadicElement pi_;
    PadicPoly frob_;
    long long trunc_ = 0;

    mutable std::once_flag law_once_, log_once_;
    mutable std::unique_ptr<PadicBivar> law_;
    mutable std::unique_ptr<PadicSeries> log_, exp_, dlogmul_;  // dlogmul = dF/dY(Z,0)
};

/// Validates ord(pi) = 1/e and the two Frobenius congruences; the default
/// Frobenius is pi Z + Z^q.  The truncation must cover deg(frobenius).
GroupPtr make_lt_group(FieldPtr field, const PadicElement& pi,
                       const PadicPoly* frobenius = nullptr, long long trunc = 16);

/// The multiplicative group in Lubin-Tate normal form over Q_p:
/// f = (1+Z)^p - 1, for which log_G = log(1+Z) and P_m = binom(Y,m).
GroupPtr multiplicative_group(FieldPtr qp_field, long long trunc = 16);

/// Valuations (with multiplicities) of the level-n torsion: Newton polygon
/// of [pi^n](Z)/[pi^(n-1)](Z), exact polynomial division.
std::vector<std::pair<Rat, long long>> torsion_valuations(const LubinTateGroup& G, long long n);

struct DiskPreimage {
    bool single_slope;                            // true iff v_r <= q/(e(q-1))
    Rat threshold;                                // q/(e(q-1))
    std::vector<std::pair<Rat, long long>> root_valuations;  // of f(Z) - w, ord(w) = v_r
};

/// Newton-polygon form of [pi]^(-1)(B(r)) for r = p^(-v_r): a single slope
/// of valuation v_r / q below the threshold, a split polygon above it.
DiskPreimage disk_preimage_law(const LubinTateGroup& G, Rat v_r);

/// sum_{m>=1} P_m(a Omega) Z^m = exp(a Omega log_G(Z)) - 1 as a graded
/// series; requires ord(a) >= 0 and M <= achievable log truncation.
PeriodSeries gm_hom_series(const LubinTateGroup& G, const PadicElement& a, long long M);

// helpers shared with the verification suites
PadicSeries eval_poly_series(const PadicPoly& g, const PadicSeries& S);
PadicBivar eval_poly_bivar(const PadicPoly& g, const PadicBivar& S);
PadicBivar substitute_univariates(const PadicBivar& F, const PadicSeries& gX, const PadicSeries& gY);
/// F(S(X,Y), W) and F(X, S(Y,W)) as trivariate series, for associativity checks.
PadicTrivar compose_left(const PadicBivar& F, const PadicBivar& S);
PadicTrivar compose_right(const PadicBivar& F, const PadicBivar& S);

// exact dense polynomial arithmetic over L
PadicPoly poly_mul(const PadicPoly& a, const PadicPoly& b);
PadicPoly poly_compose(const PadicPoly& outer, const PadicPoly& inner);
PadicPoly poly_divide_exact(PadicPoly num, const PadicPoly& den, Rat tol);

} // namespace ltf
