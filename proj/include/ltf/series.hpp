#pragma once

// Dense truncated power series over an abstract coefficient ring.
//
// All arithmetic is modulo Z^(N+1) where N is the truncation order; binary
// operations record the minimum truncation of their operands.  Coefficient
// rings are plugged in through the ring_* free functions below; the library
// instantiates them for exact rationals, p-adic elements, graded period
// scalars and (recursively) series themselves, which is how bivariate
// expansions like exp(Y log_G(Z)) are computed.
//
// Every series keeps a model coefficient so that zeros and ones of rings
// with runtime state (a parent field) can be minted.

#include "ltf/padic.hpp"
#include "ltf/rational.hpp"

#include <optional>
#include <vector>

namespace ltf {

// --- coefficient-ring hooks -------------------------------------------------

inline BigRat ring_zero(const BigRat&) { return BigRat(0); }
inline BigRat ring_one(const BigRat&) { return BigRat(1); }
inline BigRat ring_from_int(const BigRat&, long long n) { return BigRat(n); }
inline BigRat ring_div_int(const BigRat& x, long long n) { return x / BigRat(n); }
inline BigRat ring_inv(const BigRat& x) { return BigRat(1) / x; }
inline bool ring_is_zero(const BigRat& x) { return numerator(x) == 0; }

inline PadicElement ring_zero(const PadicElement& m) { return m.field()->zero(); }
inline PadicElement ring_one(const PadicElement& m) { return m.field()->one(); }
inline PadicElement ring_from_int(const PadicElement& m, long long n) {
    return m.field()->from_integer(n);
}
inline PadicElement ring_div_int(const PadicElement& x, long long n) {
    return x * x.field()->from_integer(n).inv();
}
inline PadicElement ring_inv(const PadicElement& x) { return x.inv(); }
inline bool ring_is_zero(const PadicElement& x) { return x.is_zero_to_precision(); }

// --- univariate truncated series ---------------------------------------------

template <class C>
class TruncSeries {
public:
    TruncSeries(const C& model, long long trunc)
        : model_(ring_zero(model)), c_(trunc + 1, ring_zero(model)) {}
    TruncSeries(const C& model, std::vector<C> coeffs)
        : model_(ring_zero(model)), c_(std::move(coeffs)) {
        if (c_.empty()) c_.push_back(model_);
    }

    long long trunc() const { return static_cast<long long>(c_.size()) - 1; }
    const C& operator[](long long k) const { return c_[k]; }
    C& at(long long k) { return c_[k]; }
    const std::vector<C>& coeffs() const { return c_; }
    const C& model() const { return model_; }

    TruncSeries truncated(long long n) const {
        TruncSeries r(model_, std::min(n, trunc()));
        for (long long k = 0; k <= r.trunc(); ++k) r.c_[k] = c_[k];
        return r;
    }

    /// Zero-pad to a higher truncation.  Only sound where the padded top
    /// degrees cannot reach the degrees the caller keeps.
    TruncSeries extended(long long n) const {
        if (n <= trunc()) return truncated(n);
        TruncSeries r(model_, n);
        for (long long k = 0; k <= trunc(); ++k) r.c_[k] = c_[k];
        return r;
    }

    static TruncSeries monomial(const C& model, const C& coeff, long long deg, long long trunc) {
        TruncSeries r(model, trunc);
        if (deg <= trunc) r.c_[deg] = coeff;
        return r;
    }
    static TruncSeries identity(const C& model, long long trunc) {
        return monomial(model, ring_one(model), 1, trunc);
    }
    static TruncSeries constant(const C& model, const C& value, long long trunc) {
        return monomial(model, value, 0, trunc);
    }

    TruncSeries operator+(const TruncSeries& o) const {
        long long n = std::min(trunc(), o.trunc());
        TruncSeries r(model_, n);
        for (long long k = 0; k <= n; ++k) r.c_[k] = c_[k] + o.c_[k];
        return r;
    }
    TruncSeries operator-(const TruncSeries& o) const { return *this + (-o); }
    TruncSeries operator-() const {
        TruncSeries r(model_, trunc());
        for (long long k = 0; k <= trunc(); ++k) r.c_[k] = -c_[k];
        return r;
    }
    TruncSeries operator*(const TruncSeries& o) const {
        long long n = std::min(trunc(), o.trunc());
        TruncSeries r(model_, n);
        for (long long i = 0; i <= n; ++i) {
            if (ring_is_structural_zero(c_[i])) continue;
            for (long long j = 0; i + j <= n; ++j)
                r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
        }
        return r;
    }
    TruncSeries scalar_mul(const C& s) const {
        TruncSeries r(model_, trunc());
        for (long long k = 0; k <= trunc(); ++k) r.c_[k] = s * c_[k];
        return r;
    }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!ring_is_zero(x)) return false;
        return true;
    }

private:
    // mul fast-path only; never changes results
    static bool ring_is_structural_zero(const C&) { return false; }

    C model_;
    std::vector<C> c_;
};

// Recursive ring instance: series over series (bivariate expansions).
template <class C>
TruncSeries<C> ring_zero(const TruncSeries<C>& m) {
    return TruncSeries<C>(m.model(), m.trunc());
}
template <class C>
TruncSeries<C> ring_one(const TruncSeries<C>& m) {
    return TruncSeries<C>::constant(m.model(), ring_one(m.model()), m.trunc());
}
template <class C>
TruncSeries<C> ring_from_int(const TruncSeries<C>& m, long long n) {
    return TruncSeries<C>::constant(m.model(), ring_from_int(m.model(), n), m.trunc());
}
template <class C>
TruncSeries<C> ring_div_int(const TruncSeries<C>& x, long long n) {
    TruncSeries<C> r = x;
    for (long long k = 0; k <= x.trunc(); ++k) r.at(k) = ring_div_int(x[k], n);
    return r;
}
template <class C>
bool ring_is_zero(const TruncSeries<C>& x) {
    return x.is_zero();
}

// --- composition, inversion, reversion ---------------------------------------

/// g(h(Z)) mod Z^(min trunc + 1); requires h(0) = 0.
template <class C>
TruncSeries<C> compose(const TruncSeries<C>& g, const TruncSeries<C>& h) {
    if (!ring_is_zero(h[0]))
        throw std::invalid_argument("compose: inner series must have zero constant term");
    long long n = std::min(g.trunc(), h.trunc());
    TruncSeries<C> r = TruncSeries<C>::constant(g.model(), g[g.trunc()], n);
    for (long long k = g.trunc() - 1; k >= 0; --k) {
        r = r * h.truncated(n);
        r.at(0) = r[0] + g[k];
    }
    return r;
}

/// Multiplicative inverse of a series with invertible constant term.
template <class C>
TruncSeries<C> series_inverse(const TruncSeries<C>& g) {
    long long n = g.trunc();
    TruncSeries<C> r(g.model(), n);
    C inv0 = ring_inv(g[0]);
    r.at(0) = inv0;
    for (long long k = 1; k <= n; ++k) {
        C acc = ring_zero(g.model());
        for (long long j = 1; j <= k; ++j) acc = acc + g[j] * r[k - j];
        r.at(k) = -(inv0 * acc);
    }
    return r;
}

template <class C>
TruncSeries<C> derivative(const TruncSeries<C>& g) {
    long long n = std::max<long long>(g.trunc() - 1, 0);
    TruncSeries<C> r(g.model(), n);
    for (long long k = 1; k <= g.trunc(); ++k) {
        if (k - 1 > n) break;
        r.at(k - 1) = ring_from_int(g.model(), k) * g[k];
    }
    return r;
}

/// Termwise antiderivative with zero constant term; divides by k, which is
/// where the precision budget for exp/log is spent.
template <class C>
TruncSeries<C> integrate(const TruncSeries<C>& g, long long trunc) {
    TruncSeries<C> r(g.model(), trunc);
    for (long long k = 0; k <= g.trunc() && k + 1 <= trunc; ++k)
        r.at(k + 1) = ring_div_int(g[k], k + 1);
    return r;
}

/// Compositional inverse: the unique k with h(k(Z)) = Z mod Z^(N+1).
/// Requires h(0) = 0 and h'(0) invertible.  Newton iteration
/// k <- k - (h(k) - Z) / h'(k), quadratic in the Z-adic metric.
template <class C>
TruncSeries<C> reversion(const TruncSeries<C>& h) {
    if (!ring_is_zero(h[0]))
        throw std::invalid_argument("reversion: series must have zero constant term");
    long long n = h.trunc();
    if (n < 1) throw std::invalid_argument("reversion: truncation order must be >= 1");
    C lin_inv = ring_inv(h[1]);  // throws if not invertible
    TruncSeries<C> z = TruncSeries<C>::identity(h.model(), n);
    TruncSeries<C> k = z.scalar_mul(lin_inv);
    // h'(k) is only needed mod Z^(n+1-correct), so zero-padding h' is sound
    TruncSeries<C> hp = derivative(h).extended(n);
    long long correct = 2;
    while (correct <= n + 1) {
        TruncSeries<C> err = compose(h, k) - z;
        TruncSeries<C> slope = compose(hp, k);
        k = k - err * series_inverse(slope);
        correct *= 2;
    }
    return k;
}

/// Formal exp(h) - 1 for h(0) = 0, via the ODE E' = h'E.
template <class C>
TruncSeries<C> series_exp_minus_one(const TruncSeries<C>& h) {
    if (!ring_is_zero(h[0]))
        throw std::invalid_argument("series exp: argument must have zero constant term");
    long long n = h.trunc();
    TruncSeries<C> e(h.model(), n);
    e.at(0) = ring_one(h.model());
    for (long long m = 1; m <= n; ++m) {
        C acc = ring_zero(h.model());
        for (long long k = 1; k <= m; ++k)
            acc = acc + ring_from_int(h.model(), k) * h[k] * e[m - k];
        e.at(m) = ring_div_int(acc, m);
    }
    e.at(0) = ring_zero(h.model());
    return e;
}

/// Formal log(1 + h) for h(0) = 0: integrate h'/(1+h).
template <class C>
TruncSeries<C> series_log_one_plus(const TruncSeries<C>& h) {
    if (!ring_is_zero(h[0]))
        throw std::invalid_argument("series log: argument must have zero constant term");
    TruncSeries<C> onePlus = h;
    onePlus.at(0) = onePlus[0] + ring_one(h.model());
    return integrate(derivative(h) * series_inverse(onePlus), h.trunc());
}

/// Horner evaluation at a ring point.
template <class C>
C evaluate(const TruncSeries<C>& g, const C& x) {
    C r = g[g.trunc()];
    for (long long k = g.trunc() - 1; k >= 0; --k) r = r * x + g[k];
    return r;
}

// --- Gauss norms --------------------------------------------------------------

/// Valuation data of a coefficient: a lower bound plus whether it is exact.
struct ValBound {
    std::optional<Rat> bound;  // nullopt: zero (to precision)
    bool exact = true;
};

inline ValBound val_bound(const PadicElement& x) {
    auto v = x.valuation();
    return {v, true};
}
inline ValBound val_bound(const BigRat& x, long long p) {
    return {rat_valuation(x, p), true};
}

/// Gauss-norm exponent of a local expansion sum c_i (x-a)^i on the coset
/// a + pi^n o:  w with ||f||_(a,n) = p^(-w), w = min_i (ord(c_i) + i n/e).
/// The `exact` flag clears when some contributing coefficient valuation is
/// itself only a lower bound (graded period coefficients with colliding
/// grade minima).
struct GaussNorm {
    std::optional<Rat> exponent;  // nullopt: zero series
    bool exact = true;
};

template <class C, class ValFn>
GaussNorm gauss_norm_with(const TruncSeries<C>& f, long long n, long long e, ValFn vb) {
    GaussNorm g;
    for (long long i = 0; i <= f.trunc(); ++i) {
        ValBound b = vb(f[i]);
        if (!b.bound) continue;
        Rat w = *b.bound + Rat(i * n, e);
        if (!g.exponent || w < *g.exponent) {
            g.exponent = w;
            g.exact = b.exact;
        } else if (w == *g.exponent && !b.exact) {
            g.exact = false;
        }
    }
    return g;
}

inline GaussNorm gauss_norm(const TruncSeries<PadicElement>& f, long long n) {
    return gauss_norm_with(f, n, f.model().field()->e,
                           [](const PadicElement& c) { return val_bound(c); });
}

/// A locally analytic function at level n: one truncated expansion in
/// (x - a) per coset a + pi^n o, indexed by a complete residue system.
struct LocalFunction {
    FieldPtr field;
    long long level = 0;
    std::vector<std::pair<PadicElement, TruncSeries<PadicElement>>> branches;

    GaussNorm branch_norm(size_t k) const { return gauss_norm(branches[k].second, level); }
};

/// Validates that the representatives form a complete residue system mod
/// pi^n (pairwise distinct, q^n of them).
inline LocalFunction make_local_function(
    FieldPtr field, long long level,
    std::vector<std::pair<PadicElement, TruncSeries<PadicElement>>> branches) {
    long long expected = 1;
    for (long long k = 0; k < level * field->f; ++k) expected *= field->p;
    if (static_cast<long long>(branches.size()) != expected)
        throw std::invalid_argument("LocalFunction: want q^n coset representatives");
    Rat radius(level, field->e);
    for (size_t i = 0; i < branches.size(); ++i)
        for (size_t j = i + 1; j < branches.size(); ++j) {
            auto v = (branches[i].first - branches[j].first).valuation();
            if (!v || *v >= radius)
                throw std::invalid_argument("LocalFunction: representatives collide mod pi^n");
        }
    return LocalFunction{std::move(field), level, std::move(branches)};
}

} // namespace ltf
