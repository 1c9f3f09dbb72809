#pragma once

// Arithmetic in finite extensions L/Q_p presented as a two-step tower:
// an unramified step U = Q_p[u]/(g(u)) with g monic of degree f and
// irreducible mod p, followed by an Eisenstein step L = U[pi]/(h(pi))
// of degree e.  Invariants: q = p^f, [L:Q_p] = e*f, ord_p is normalized
// by ord_p(p) = 1, so ord_p(pi) = 1/e.
//
// Elements are stored on the integral basis {pi^i u^j : 0<=i<e, 0<=j<f}
// as a fixed-point lattice: value = p^(-S) * sum c_ij pi^i u^j with the
// c_ij integer residues mod p^(W+2S).  W is the absolute working
// precision, S the denominator capacity; an element is representable
// exactly when its valuation is >= -S.  Every element carries an
// absolute precision (a rational, since mixed powers of pi appear) and
// all propagation is pessimistic interval arithmetic.  Valuations are
// exact rationals in (1/e)Z, never floats.

#include "ltf/rational.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace ltf {

inline constexpr long long kDefaultAssertPrec = 20;

/// Raised when a computation needs digits below p^(-S) or more absolute
/// precision than the field carries.
struct PrecisionError : std::runtime_error {
    Rat available;
    Rat required;
    PrecisionError(const std::string& what, Rat avail, Rat req)
        : std::runtime_error(what), available(avail), required(req) {}
};

class PadicElement;
class PadicField;
using FieldPtr = std::shared_ptr<const PadicField>;

/// Dense polynomial over F_p used for residue-field computations.
using ModPoly = std::vector<long long>;

class PadicField : public std::enable_shared_from_this<PadicField> {
public:
    long long p;
    long long f;  // residue degree
    long long e;  // ramification index
    long long q;  // p^f
    long long prec;   // W: absolute precision cap (units of ord_p)
    long long shift;  // S: denominator capacity

    std::vector<long long> unram;          // monic, degree f, Z coefficients
    std::vector<std::vector<BigInt>> eis;  // degree e over the unramified step;
                                           // eis[k] is a u-poly (length f), eis[e] = 1

    BigInt modulus;     // p^(prec + 2*shift)
    BigInt shift_unit;  // p^shift

    long long degree() const { return e * f; }
    long long grid_size() const { return e * f; }

    PadicElement zero() const;
    PadicElement one() const;
    PadicElement from_integer(const BigInt& n) const;
    PadicElement from_rational(const BigRat& r) const;
    PadicElement pi() const;         // class of X in the Eisenstein step
    PadicElement unram_gen() const;  // class of u
    /// Element from integer coordinates on the basis {pi^i u^j}.
    PadicElement from_coords(const std::vector<BigInt>& c) const;

    bool compatible(const PadicField& other) const;

    /// All q^n representatives of o/pi^n, as sums of p-digit combinations
    /// of pi^k u^j, k < n.  Ordered deterministically.
    std::vector<PadicElement> coset_representatives(long long n) const;

private:
    friend FieldPtr make_field(long long, long long, long long, long long,
                               const std::vector<long long>*,
                               const std::vector<std::vector<long long>>*);
    PadicField() = default;
};

/// Construct a field descriptor.  Omitted moduli get reproducible defaults:
/// the lexicographically smallest irreducible monic polynomial mod p
/// (coefficients compared from the Y^(f-1) one down to the constant) for
/// the unramified step, and X^e - p for the Eisenstein step.
FieldPtr make_field(long long p, long long f, long long e,
                    long long precision = 64,
                    const std::vector<long long>* unram_modulus = nullptr,
                    const std::vector<std::vector<long long>>* eisenstein_modulus = nullptr);

class PadicElement {
public:
    PadicElement() = default;

    const FieldPtr& field() const { return fld_; }
    const std::vector<BigInt>& coords() const { return c_; }
    Rat abs_precision() const { return prec_; }

    /// Exact valuation in (1/e)Z, or nullopt when the element is
    /// indistinguishable from zero at its absolute precision.
    std::optional<Rat> valuation() const;
    bool is_zero_to_precision() const { return !valuation().has_value(); }
    /// ord(x) >= tol, i.e. x cannot be distinguished from 0 below tol.
    bool is_zero_at(Rat tol) const;

    PadicElement operator+(const PadicElement& o) const;
    PadicElement operator-(const PadicElement& o) const;
    PadicElement operator-() const;
    PadicElement operator*(const PadicElement& o) const;
    PadicElement inv() const;
    PadicElement pow_int(long long n) const;

    /// value * p^k; for k < 0 requires the result to stay inside the
    /// p^(-S) lattice, else PrecisionError.
    PadicElement mul_p_pow(long long k) const;

    PadicElement with_precision(Rat prec) const;

    /// Residue in F_q = F_p[u]/(g), as a u-poly mod p.  Requires ord >= 0.
    ModPoly residue() const;

    /// The Q_p coordinate on the basis element pi^i u^j, as an element of
    /// the same field (its value lies in Q_p).
    PadicElement coordinate_qp(long long i, long long j) const;

private:
    friend class PadicField;
    friend PadicElement teichmuller(const PadicElement&);
    friend Rat different_valuation(const PadicField&);
    PadicElement(FieldPtr fld, std::vector<BigInt> c, Rat prec);

    FieldPtr fld_;
    std::vector<BigInt> c_;  // size e*f, residues in [0, modulus)
    Rat prec_{0};
};

/// a - b indistinguishable from 0 at tol (both must carry >= tol precision).
bool equal_at(const PadicElement& a, const PadicElement& b, Rat tol);

/// Teichmuller representative: the unique (q-1)-st root of unity congruent
/// to the unit a mod pi, computed by iterating x -> x^q to a fixed point.
PadicElement teichmuller(const PadicElement& a);

/// ord_p of the different of L/Q_p for the tower presentation: the
/// unramified step contributes 0, the Eisenstein step ord_p(h'(pi)).
Rat different_valuation(const PadicField& field);

// Residue-field helpers (F_q as F_p[u]/(g mod p)).
ModPoly fq_mul(const ModPoly& a, const ModPoly& b, const PadicField& fld);
ModPoly fq_pow(ModPoly a, long long n, const PadicField& fld);
bool is_irreducible_mod_p(const std::vector<long long>& poly, long long p);

} // namespace ltf
