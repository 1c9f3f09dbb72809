#pragma once

// Graded scalars sum c_k Omega^k over a field L.  The period Omega of the
// Lubin-Tate group is never instantiated numerically: the only fact used
// about it is ord_p(Omega) = s = 1/(p-1) - 1/(e(q-1)), which turns every
// graded scalar into an exact valuation lower bound
//     ord(sum c_k Omega^k) >= min_k (ord(c_k) + k s),
// exact when a unique grade attains the minimum.  Identities such as the
// Mahler round trip are checked as graded identities: every grade must
// cancel to zero at the assertion precision.

#include "ltf/padic.hpp"
#include "ltf/series.hpp"

#include <map>

namespace ltf {

/// (s, r): ord of the fundamental period, and of its different-twisted
/// companion r = s + ord_p(different of L/Q_p).
std::pair<Rat, Rat> period_exponents(const PadicField& field);

class PeriodScalar {
public:
    explicit PeriodScalar(FieldPtr field);
    /// c * Omega^grade
    PeriodScalar(const PadicElement& c, long long grade = 0);

    const FieldPtr& field() const { return fld_; }
    Rat s() const { return s_; }
    const std::map<long long, PadicElement>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    PeriodScalar operator+(const PeriodScalar& o) const;
    PeriodScalar operator-(const PeriodScalar& o) const;
    PeriodScalar operator-() const;
    PeriodScalar operator*(const PeriodScalar& o) const;
    PeriodScalar scale(const PadicElement& g) const;
    PeriodScalar shift_grade(long long k) const;

    /// Lower bound min_k (ord(c_k) + k s); nullopt for (graded) zero.
    /// `exact` per the unique-minimizer rule.
    ValBound valuation_bound() const;

    /// All grades indistinguishable from zero at tol.
    bool is_zero_at(Rat tol) const;
    bool is_zero_to_precision() const;

    /// Coefficient at a grade (zero element if absent).
    PadicElement coeff(long long grade) const;

    /// Substitute Omega = 1.  Only meaningful for the multiplicative group
    /// over Q_p, where the identity trivialization forces s = 0 and the
    /// grading collapses; guarded accordingly.
    PadicElement collapse_multiplicative() const;

private:
    void prune();
    FieldPtr fld_;
    Rat s_;
    std::map<long long, PadicElement> terms_;
};

bool equal_graded(const PeriodScalar& a, const PeriodScalar& b, Rat tol);

// ring hooks so TruncSeries<PeriodScalar> works
inline PeriodScalar ring_zero(const PeriodScalar& m) { return PeriodScalar(m.field()); }
inline PeriodScalar ring_one(const PeriodScalar& m) {
    return PeriodScalar(m.field()->one(), 0);
}
inline PeriodScalar ring_from_int(const PeriodScalar& m, long long n) {
    return PeriodScalar(m.field()->from_integer(n), 0);
}
PeriodScalar ring_div_int(const PeriodScalar& x, long long n);
PeriodScalar ring_inv(const PeriodScalar& x);
inline bool ring_is_zero(const PeriodScalar& x) { return x.is_zero_to_precision(); }

using PeriodSeries = TruncSeries<PeriodScalar>;

/// Lift an L-coefficient series to grade g per coefficient.
PeriodSeries lift_series(const TruncSeries<PadicElement>& f, long long grade = 0);

ValBound val_bound(const PeriodScalar& x);

inline GaussNorm gauss_norm(const PeriodSeries& f, long long n) {
    return gauss_norm_with(f, n, f.model().field()->e,
                           [](const PeriodScalar& c) { return val_bound(c); });
}

} // namespace ltf
