#include "ltf/padic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ltf {

namespace {

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

long long mod_ll(long long a, long long p) {
    long long r = a % p;
    return r < 0 ? r + p : r;
}

BigInt mod_big(BigInt a, const BigInt& m) {
    a %= m;
    if (a < 0) a += m;
    return a;
}

// F_p[Y] arithmetic modulo an arbitrary monic poly g (for irreducibility
// tests g is the candidate itself, not the field modulus).
ModPoly poly_mod(ModPoly a, const ModPoly& g, long long p) {
    long long dg = static_cast<long long>(g.size()) - 1;
    while (static_cast<long long>(a.size()) - 1 >= dg && !a.empty()) {
        long long da = static_cast<long long>(a.size()) - 1;
        long long lead = mod_ll(a.back(), p);
        if (lead == 0) { a.pop_back(); continue; }
        for (long long k = 0; k <= dg; ++k)
            a[da - dg + k] = mod_ll(a[da - dg + k] - lead * g[k], p);
        a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

ModPoly poly_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& g, long long p) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = mod_ll(r[i + j] + a[i] * b[j], p);
    return poly_mod(std::move(r), g, p);
}

ModPoly poly_powmod(ModPoly base, BigInt n, const ModPoly& g, long long p) {
    ModPoly r{1};
    base = poly_mod(std::move(base), g, p);
    while (n > 0) {
        if ((n & 1) != 0) r = poly_mulmod(r, base, g, p);
        base = poly_mulmod(base, base, g, p);
        n >>= 1;
    }
    return r;
}

ModPoly poly_gcd(ModPoly a, ModPoly b, long long p) {
    auto inv_mod_p = [p](long long x) {
        long long r = 1, b = mod_ll(x, p), n = p - 2;
        while (n) { if (n & 1) r = r * b % p; b = b * b % p; n >>= 1; }
        return r;
    };
    while (!b.empty()) {
        // reduce a mod b (b made monic first)
        ModPoly bm = b;
        long long li = inv_mod_p(bm.back());
        for (auto& c : bm) c = mod_ll(c * li, p);
        a = poly_mod(std::move(a), bm, p);
        std::swap(a, b);
    }
    return a;
}

} // namespace

bool is_irreducible_mod_p(const std::vector<long long>& poly, long long p) {
    long long f = static_cast<long long>(poly.size()) - 1;
    if (f < 1) return false;
    ModPoly g(poly.size());
    for (size_t i = 0; i < poly.size(); ++i) g[i] = mod_ll(poly[i], p);
    if (g.back() != 1) return false;
    if (f == 1) return true;
    ModPoly x{0, 1};
    // x^(p^f) == x mod g
    ModPoly xq = x;
    for (long long i = 0; i < f; ++i) xq = poly_powmod(xq, p, g, p);
    ModPoly diff = xq;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = mod_ll(diff[1] - 1, p);
    while (!diff.empty() && diff.back() == 0) diff.pop_back();
    if (!diff.empty()) return false;
    // gcd(x^(p^(f/l)) - x, g) must be trivial for every prime l | f
    for (long long l = 2; l <= f; ++l) {
        if (f % l != 0 || !is_prime(l)) continue;
        ModPoly xe = x;
        for (long long i = 0; i < f / l; ++i) xe = poly_powmod(xe, p, g, p);
        ModPoly d = xe;
        d.resize(std::max<size_t>(d.size(), 2), 0);
        d[1] = mod_ll(d[1] - 1, p);
        while (!d.empty() && d.back() == 0) d.pop_back();
        ModPoly gc = poly_gcd(g, d, p);
        if (static_cast<long long>(gc.size()) - 1 > 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// field construction
// ---------------------------------------------------------------------------

namespace {

std::vector<long long> default_unram_modulus(long long p, long long f) {
    if (f == 1) return {0, 1};  // Y; never used since u-powers stay below 1
    // enumerate (c_{f-1}, ..., c_0) lexicographically, smallest first
    std::vector<long long> c(f, 0);
    while (true) {
        std::vector<long long> poly(c.rbegin(), c.rend());  // c_0 .. c_{f-1}
        poly.push_back(1);
        if (is_irreducible_mod_p(poly, p)) return poly;
        long long k = f - 1;
        while (k >= 0 && c[k] == p - 1) { c[k] = 0; --k; }
        if (k < 0) throw std::logic_error("no irreducible polynomial found");
        ++c[k];
    }
}

} // namespace

FieldPtr make_field(long long p, long long f, long long e, long long precision,
                    const std::vector<long long>* unram_modulus,
                    const std::vector<std::vector<long long>>* eisenstein_modulus) {
    if (!is_prime(p)) throw std::invalid_argument("make_field: p = " + std::to_string(p) + " is not prime");
    if (f < 1 || e < 1) throw std::invalid_argument("make_field: need f >= 1 and e >= 1");
    if (precision < 1) throw std::invalid_argument("make_field: precision must be positive");
    if (f * std::log2(static_cast<double>(p)) > 40)
        throw std::invalid_argument("make_field: residue field too large (q > 2^40)");

    auto F = std::shared_ptr<PadicField>(new PadicField());
    F->p = p;
    F->f = f;
    F->e = e;
    F->q = 1;
    for (long long i = 0; i < f; ++i) F->q *= p;
    F->prec = precision;
    F->shift = precision;  // elements live in p^(-W) o_L
    F->modulus = big_pow(p, static_cast<unsigned long>(F->prec + 2 * F->shift));
    F->shift_unit = big_pow(p, static_cast<unsigned long>(F->shift));

    // unramified step
    if (unram_modulus) {
        if (static_cast<long long>(unram_modulus->size()) != f + 1 || unram_modulus->back() != 1)
            throw std::invalid_argument("make_field: unramified modulus must be monic of degree f");
        if (!is_irreducible_mod_p(*unram_modulus, p))
            throw std::invalid_argument("make_field: unramified modulus is reducible mod p");
        F->unram = *unram_modulus;
    } else {
        F->unram = default_unram_modulus(p, f);
    }

    // Eisenstein step
    F->eis.assign(e + 1, std::vector<BigInt>(f, 0));
    if (eisenstein_modulus) {
        const auto& E = *eisenstein_modulus;
        if (static_cast<long long>(E.size()) != e + 1)
            throw std::invalid_argument("make_field: Eisenstein modulus must have degree e");
        for (long long k = 0; k <= e; ++k) {
            if (static_cast<long long>(E[k].size()) > f)
                throw std::invalid_argument("make_field: Eisenstein coefficient exceeds unramified degree");
            for (size_t j = 0; j < E[k].size(); ++j) F->eis[k][j] = E[k][j];
        }
        // monic
        if (F->eis[e][0] != 1 ||
            std::any_of(F->eis[e].begin() + 1, F->eis[e].end(), [](const BigInt& b) { return b != 0; }))
            throw std::invalid_argument("make_field: Eisenstein modulus must be monic");
        auto coeff_val = [&](long long k) -> std::optional<long long> {
            std::optional<long long> v;
            for (const BigInt& b : F->eis[k])
                if (b != 0) {
                    long long w = int_valuation(b, p);
                    if (!v || w < *v) v = w;
                }
            return v;
        };
        auto v0 = coeff_val(0);
        if (!v0 || *v0 != 1)
            throw std::invalid_argument("make_field: Eisenstein constant term must have ord_p = 1");
        for (long long k = 1; k < e; ++k) {
            auto vk = coeff_val(k);
            if (vk && *vk < 1)
                throw std::invalid_argument("make_field: Eisenstein middle coefficient has ord_p < 1");
        }
    } else {
        F->eis[0][0] = -p;  // X^e - p
        F->eis[e][0] = 1;
    }
    for (long long k = 0; k <= e; ++k)
        for (auto& b : F->eis[k]) b = mod_big(b, F->modulus);
    return F;
}

bool PadicField::compatible(const PadicField& o) const {
    return p == o.p && f == o.f && e == o.e && prec == o.prec && unram == o.unram && eis == o.eis;
}

// ---------------------------------------------------------------------------
// element construction
// ---------------------------------------------------------------------------

PadicElement::PadicElement(FieldPtr fld, std::vector<BigInt> c, Rat prec)
    : fld_(std::move(fld)), c_(std::move(c)), prec_(prec) {}

PadicElement PadicField::zero() const {
    return PadicElement(shared_from_this(), std::vector<BigInt>(grid_size(), 0), Rat(prec));
}

PadicElement PadicField::one() const { return from_integer(1); }

PadicElement PadicField::from_integer(const BigInt& n) const {
    std::vector<BigInt> c(grid_size(), 0);
    c[0] = mod_big(n * shift_unit, modulus);
    return PadicElement(shared_from_this(), std::move(c), Rat(prec));
}

PadicElement PadicField::from_rational(const BigRat& r) const {
    PadicElement num = from_integer(numerator(r));
    if (denominator(r) == 1) return num;
    return num * from_integer(denominator(r)).inv();
}

PadicElement PadicField::pi() const {
    std::vector<BigInt> c(grid_size(), 0);
    if (e == 1) {
        // the Eisenstein step is X - (-eis[0]); its root is -eis[0] (= p by default)
        for (long long j = 0; j < f; ++j)
            c[j] = mod_big(-eis[0][j] * shift_unit, modulus);
    } else {
        c[1 * f + 0] = mod_big(shift_unit, modulus);
    }
    return PadicElement(shared_from_this(), std::move(c), Rat(prec));
}

PadicElement PadicField::unram_gen() const {
    std::vector<BigInt> c(grid_size(), 0);
    if (f == 1) {
        // u is a root of the degree-1 default Y, i.e. 0; a custom modulus Y - a gives a
        c[0] = mod_big(BigInt(-unram[0]) * shift_unit, modulus);
    } else {
        c[1] = mod_big(shift_unit, modulus);
    }
    return PadicElement(shared_from_this(), std::move(c), Rat(prec));
}

PadicElement PadicField::from_coords(const std::vector<BigInt>& coords) const {
    if (static_cast<long long>(coords.size()) != grid_size())
        throw std::invalid_argument("from_coords: wrong number of coordinates");
    std::vector<BigInt> c(grid_size());
    for (size_t k = 0; k < coords.size(); ++k) c[k] = mod_big(coords[k] * shift_unit, modulus);
    return PadicElement(shared_from_this(), std::move(c), Rat(prec));
}

std::vector<PadicElement> PadicField::coset_representatives(long long n) const {
    // digits c_{kj} in [0,p) for pi^k u^j, k < n
    long long slots = n * f;
    std::vector<PadicElement> reps;
    std::vector<long long> digit(slots, 0);
    while (true) {
        PadicElement x = zero();
        PadicElement pw = one();
        // build sum_{k<n} pi^k * (digit poly in u)
        for (long long k = 0; k < n; ++k) {
            std::vector<BigInt> uc(grid_size(), 0);
            for (long long j = 0; j < f; ++j) uc[j] = digit[k * f + j];
            x = x + pw * from_coords(uc);
            if (k + 1 < n) pw = pw * pi();
        }
        reps.push_back(x);
        long long s = slots - 1;
        while (s >= 0 && digit[s] == p - 1) { digit[s] = 0; --s; }
        if (s < 0) break;
        ++digit[s];
    }
    return reps;
}

// ---------------------------------------------------------------------------
// element arithmetic
// ---------------------------------------------------------------------------

namespace {

Rat val_lower_bound(const PadicElement& x) {
    auto v = x.valuation();
    return v ? *v : x.abs_precision();
}

} // namespace

std::optional<Rat> PadicElement::valuation() const {
    const auto& F = *fld_;
    std::optional<Rat> best;
    for (long long i = 0; i < F.e; ++i)
        for (long long j = 0; j < F.f; ++j) {
            const BigInt& c = c_[i * F.f + j];
            if (c == 0) continue;
            Rat v = Rat(int_valuation(c, F.p) - F.shift) + Rat(i, F.e);
            if (!best || v < *best) best = v;
        }
    if (!best || *best >= prec_) return std::nullopt;
    return best;
}

bool PadicElement::is_zero_at(Rat tol) const {
    if (prec_ < tol)
        throw PrecisionError("is_zero_at: insufficient absolute precision to decide", prec_, tol);
    auto v = valuation();
    return !v || *v >= tol;
}

bool equal_at(const PadicElement& a, const PadicElement& b, Rat tol) {
    return (a - b).is_zero_at(tol);
}

PadicElement PadicElement::operator+(const PadicElement& o) const {
    if (!fld_->compatible(*o.fld_)) throw std::invalid_argument("padic add: incompatible fields");
    std::vector<BigInt> c(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) c[k] = mod_big(c_[k] + o.c_[k], fld_->modulus);
    return PadicElement(fld_, std::move(c), std::min(prec_, o.prec_));
}

PadicElement PadicElement::operator-() const {
    std::vector<BigInt> c(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) c[k] = mod_big(-c_[k], fld_->modulus);
    return PadicElement(fld_, std::move(c), prec_);
}

PadicElement PadicElement::operator-(const PadicElement& o) const { return *this + (-o); }

PadicElement PadicElement::operator*(const PadicElement& o) const {
    if (!fld_->compatible(*o.fld_)) throw std::invalid_argument("padic mul: incompatible fields");
    const auto& F = *fld_;
    const long long e = F.e, f = F.f;
    // convolution on the pi x u grid
    std::vector<std::vector<BigInt>> wide(2 * e - 1, std::vector<BigInt>(2 * f - 1, 0));
    for (long long i1 = 0; i1 < e; ++i1)
        for (long long j1 = 0; j1 < f; ++j1) {
            const BigInt& a = c_[i1 * f + j1];
            if (a == 0) continue;
            for (long long i2 = 0; i2 < e; ++i2)
                for (long long j2 = 0; j2 < f; ++j2) {
                    const BigInt& b = o.c_[i2 * f + j2];
                    if (b == 0) continue;
                    wide[i1 + i2][j1 + j2] = mod_big(wide[i1 + i2][j1 + j2] + a * b, F.modulus);
                }
        }
    // reduce u-powers >= f via the unramified modulus (u^f = -sum g_k u^k)
    auto reduce_u = [&](std::vector<BigInt>& row) {
        for (long long d = static_cast<long long>(row.size()) - 1; d >= f; --d) {
            if (row[d] == 0) continue;
            for (long long k = 0; k < f; ++k)
                row[d - f + k] = mod_big(row[d - f + k] - F.unram[k] * row[d], F.modulus);
            row[d] = 0;
        }
    };
    for (auto& row : wide) reduce_u(row);
    // reduce pi-powers >= e via the Eisenstein modulus (pi^e = -sum h_k pi^k)
    for (long long d = 2 * e - 2; d >= e; --d) {
        for (long long j = 0; j < f; ++j)
            if (wide[d][j] != 0) {
                for (long long k = 0; k < e; ++k) {
                    // wide[d - e + k] -= eis[k] * wide[d]  (u-poly multiply)
                    std::vector<BigInt> prod(2 * f - 1, 0);
                    for (long long a = 0; a < f; ++a) {
                        if (F.eis[k][a] == 0) continue;
                        for (long long b = 0; b < f; ++b) {
                            if (wide[d][b] == 0) continue;
                            prod[a + b] = mod_big(prod[a + b] + F.eis[k][a] * wide[d][b], F.modulus);
                        }
                    }
                    reduce_u(prod);
                    for (long long b = 0; b < f; ++b)
                        wide[d - e + k][b] = mod_big(wide[d - e + k][b] - prod[b], F.modulus);
                }
                std::fill(wide[d].begin(), wide[d].end(), BigInt(0));
                break;
            }
    }
    // divide out one shift unit: (p^-S x)(p^-S y) = p^-S (xy / p^S)
    std::vector<BigInt> c(F.grid_size());
    for (long long i = 0; i < e; ++i)
        for (long long j = 0; j < f; ++j) {
            BigInt v = wide[i][j];
            if (v % F.shift_unit != 0)
                throw PrecisionError("padic mul: denominator capacity exceeded",
                                     Rat(-F.shift), Rat(-F.shift - 1));
            c[i * f + j] = v / F.shift_unit;
        }
    Rat va = val_lower_bound(*this), vb = val_lower_bound(o);
    Rat np = std::min<Rat>(std::min<Rat>(prec_ + vb, o.prec_ + va), Rat(F.prec));
    return PadicElement(fld_, std::move(c), np);
}

PadicElement PadicElement::mul_p_pow(long long k) const {
    const auto& F = *fld_;
    std::vector<BigInt> c(c_.size());
    if (k >= 0) {
        BigInt pk = big_pow(F.p, static_cast<unsigned long>(k));
        for (size_t i = 0; i < c_.size(); ++i) c[i] = mod_big(c_[i] * pk, F.modulus);
    } else {
        BigInt pk = big_pow(F.p, static_cast<unsigned long>(-k));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] % pk != 0) {
                auto v = valuation();
                throw PrecisionError("mul_p_pow: denominator capacity exceeded",
                                     v ? *v : prec_, Rat(-F.shift));
            }
            c[i] = c_[i] / pk;
        }
    }
    return PadicElement(fld_, std::move(c), std::min<Rat>(prec_ + k, Rat(F.prec)));
}

PadicElement PadicElement::coordinate_qp(long long i, long long j) const {
    const auto& F = *fld_;
    std::vector<BigInt> c(F.grid_size(), 0);
    c[0] = c_[i * F.f + j];
    // the pi^i coordinate is determined modulo p^(prec - i/e)
    Rat np = std::max<Rat>(prec_ - Rat(i, F.e), Rat(0));
    return PadicElement(fld_, std::move(c), np);
}

ModPoly PadicElement::residue() const {
    const auto& F = *fld_;
    ModPoly r(F.f, 0);
    for (long long j = 0; j < F.f; ++j) {
        const BigInt& c = c_[j];
        if (c % F.shift_unit != 0)
            throw std::domain_error("residue: element is not integral");
        BigInt d = (c / F.shift_unit) % F.p;
        r[j] = static_cast<long long>(d);
    }
    for (long long i = 1; i < F.e; ++i)
        for (long long j = 0; j < F.f; ++j)
            if (c_[i * F.f + j] % F.shift_unit != 0)
                throw std::domain_error("residue: element is not integral");
    return r;
}

ModPoly fq_mul(const ModPoly& a, const ModPoly& b, const PadicField& fld) {
    ModPoly g(fld.unram.size());
    for (size_t i = 0; i < g.size(); ++i) g[i] = mod_ll(fld.unram[i], fld.p);
    ModPoly r = poly_mulmod(a, b, g, fld.p);
    r.resize(fld.f, 0);
    return r;
}

ModPoly fq_pow(ModPoly a, long long n, const PadicField& fld) {
    ModPoly g(fld.unram.size());
    for (size_t i = 0; i < g.size(); ++i) g[i] = mod_ll(fld.unram[i], fld.p);
    ModPoly r = poly_powmod(std::move(a), BigInt(n), g, fld.p);
    r.resize(fld.f, 0);
    return r;
}

PadicElement PadicElement::inv() const {
    const auto& F = *fld_;
    auto w = valuation();
    if (!w)
        throw PrecisionError("inv: element is zero to precision " + to_string(prec_), prec_, Rat(F.prec));
    // w is in (1/e)Z by construction, so w*e is integral
    Rat we = *w * Rat(F.e);
    long long m = rat_to_ll(we);
    long long k = ((m % F.e) + F.e) % F.e;
    long long t = (m - k) / F.e;
    long long s = (F.e - k) % F.e;
    PadicElement b = *this;
    for (long long i = 0; i < s; ++i) b = b * F.pi();
    long long T = t + (k > 0 ? 1 : 0);
    PadicElement v = b.mul_p_pow(-T).with_precision(Rat(F.prec));
    // Newton iteration x <- x(2 - vx) from the residue-field inverse
    ModPoly r = v.residue();
    ModPoly rinv = fq_pow(r, F.q - 2, F);
    std::vector<BigInt> seed(F.grid_size(), 0);
    for (long long j = 0; j < F.f; ++j) seed[j] = mod_big(BigInt(rinv[j]) * F.shift_unit, F.modulus);
    PadicElement x(fld_, std::move(seed), Rat(F.prec));
    PadicElement two = F.from_integer(2);
    long long iters = 3;
    for (long long need = 1; need < (F.prec + 2 * F.shift) * F.e; need *= 2) ++iters;
    for (long long i = 0; i < iters; ++i) x = (x * (two - v * x)).with_precision(Rat(F.prec));
    PadicElement res = x;
    for (long long i = 0; i < s; ++i) res = res * F.pi();
    res = res.mul_p_pow(-T);
    // pessimistic: inverting costs 2*ord of precision
    Rat np = std::min<Rat>(prec_ - *w - *w, Rat(F.prec) - *w - *w);
    return res.with_precision(std::min<Rat>(np, Rat(F.prec)));
}

PadicElement PadicElement::pow_int(long long n) const {
    if (n < 0) return inv().pow_int(-n);
    PadicElement r = fld_->one();
    PadicElement b = *this;
    unsigned long long m = static_cast<unsigned long long>(n);
    while (m) {
        if (m & 1ULL) r = r * b;
        b = b * b;
        m >>= 1ULL;
    }
    return r;
}

PadicElement PadicElement::with_precision(Rat prec) const {
    return PadicElement(fld_, c_, prec);
}

PadicElement teichmuller(const PadicElement& a) {
    auto v = a.valuation();
    if (!v || *v != 0)
        throw std::domain_error("teichmuller: input must be a unit (valuation 0)");
    const auto& F = *a.field();
    PadicElement x = a;
    long long cap = 8 * F.e * (F.prec + 2 * F.shift) + 16;
    for (long long i = 0; i < cap; ++i) {
        PadicElement nx = x.pow_int(F.q).with_precision(Rat(F.prec));
        if (nx.coords() == x.coords()) return x;
        x = nx;
    }
    throw std::runtime_error("teichmuller: iteration did not stabilize");
}

Rat different_valuation(const PadicField& field) {
    if (field.e == 1) return Rat(0);
    // h'(pi) for the Eisenstein step; the unramified step is etale (0)
    auto F = field.shared_from_this();
    PadicElement piel = F->pi();
    PadicElement acc = F->zero();
    PadicElement pw = F->one();  // pi^(k-1)
    for (long long k = 1; k <= field.e; ++k) {
        std::vector<BigInt> lifted(F->grid_size(), 0);
        for (long long j = 0; j < field.f; ++j)
            lifted[j] = mod_big(field.eis[k][j] * F->shift_unit, F->modulus);
        PadicElement ck(F, std::move(lifted), Rat(field.prec));
        acc = acc + F->from_integer(k) * ck * pw;
        if (k < field.e) pw = pw * piel;
    }
    auto v = acc.valuation();
    if (!v) throw std::runtime_error("different_valuation: derivative vanished to precision");
    return *v;
}

} // namespace ltf
