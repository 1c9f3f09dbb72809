#include "ltf/period.hpp"

namespace ltf {

std::pair<Rat, Rat> period_exponents(const PadicField& field) {
    Rat s = Rat(1, field.p - 1) - Rat(1, field.e * (field.q - 1));
    Rat r = s + different_valuation(field);
    return {s, r};
}

PeriodScalar::PeriodScalar(FieldPtr field)
    : fld_(std::move(field)), s_(period_exponents(*fld_).first) {}

PeriodScalar::PeriodScalar(const PadicElement& c, long long grade)
    : fld_(c.field()), s_(period_exponents(*fld_).first) {
    terms_.emplace(grade, c);
    prune();
}

void PeriodScalar::prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = it->second.is_zero_to_precision() ? terms_.erase(it) : std::next(it);
}

PeriodScalar PeriodScalar::operator+(const PeriodScalar& o) const {
    if (!fld_->compatible(*o.fld_)) throw std::invalid_argument("period add: incompatible fields");
    PeriodScalar r = *this;
    for (const auto& [g, c] : o.terms_) {
        auto it = r.terms_.find(g);
        if (it == r.terms_.end())
            r.terms_.emplace(g, c);
        else
            it->second = it->second + c;
    }
    r.prune();
    return r;
}

PeriodScalar PeriodScalar::operator-() const {
    PeriodScalar r = *this;
    for (auto& [g, c] : r.terms_) c = -c;
    return r;
}

PeriodScalar PeriodScalar::operator-(const PeriodScalar& o) const { return *this + (-o); }

PeriodScalar PeriodScalar::operator*(const PeriodScalar& o) const {
    if (!fld_->compatible(*o.fld_)) throw std::invalid_argument("period mul: incompatible fields");
    PeriodScalar r(fld_);
    for (const auto& [g1, c1] : terms_)
        for (const auto& [g2, c2] : o.terms_) {
            PadicElement prod = c1 * c2;
            auto it = r.terms_.find(g1 + g2);
            if (it == r.terms_.end())
                r.terms_.emplace(g1 + g2, prod);
            else
                it->second = it->second + prod;
        }
    r.prune();
    return r;
}

PeriodScalar PeriodScalar::scale(const PadicElement& g) const {
    PeriodScalar r = *this;
    for (auto& [k, c] : r.terms_) c = c * g;
    r.prune();
    return r;
}

PeriodScalar PeriodScalar::shift_grade(long long k) const {
    PeriodScalar r(fld_);
    for (const auto& [g, c] : terms_) r.terms_.emplace(g + k, c);
    return r;
}

ValBound PeriodScalar::valuation_bound() const {
    ValBound vb;
    long long minimizers = 0;
    for (const auto& [g, c] : terms_) {
        auto v = c.valuation();
        if (!v) continue;
        Rat w = *v + s_ * Rat(g);
        if (!vb.bound || w < *vb.bound) {
            vb.bound = w;
            minimizers = 1;
        } else if (w == *vb.bound) {
            ++minimizers;
        }
    }
    vb.exact = minimizers <= 1;
    return vb;
}

bool PeriodScalar::is_zero_at(Rat tol) const {
    for (const auto& [g, c] : terms_)
        if (!c.is_zero_at(tol)) return false;
    return true;
}

bool PeriodScalar::is_zero_to_precision() const {
    for (const auto& [g, c] : terms_)
        if (!c.is_zero_to_precision()) return false;
    return true;
}

PadicElement PeriodScalar::coeff(long long grade) const {
    auto it = terms_.find(grade);
    return it == terms_.end() ? fld_->zero() : it->second;
}

PadicElement PeriodScalar::collapse_multiplicative() const {
    if (s_ != 0)
        throw std::domain_error("collapse_multiplicative: grading only collapses when s = 0");
    PadicElement acc = fld_->zero();
    for (const auto& [g, c] : terms_) acc = acc + c;
    return acc;
}

bool equal_graded(const PeriodScalar& a, const PeriodScalar& b, Rat tol) {
    return (a - b).is_zero_at(tol);
}

PeriodScalar ring_div_int(const PeriodScalar& x, long long n) {
    return x.scale(x.field()->from_integer(n).inv());
}

PeriodScalar ring_inv(const PeriodScalar& x) {
    if (x.terms().size() != 1)
        throw std::domain_error("period inv: only single-grade scalars are invertible here");
    const auto& [g, c] = *x.terms().begin();
    return PeriodScalar(c.inv(), -g);
}

PeriodSeries lift_series(const TruncSeries<PadicElement>& f, long long grade) {
    PeriodSeries r(PeriodScalar(f.model().field()->zero(), 0), f.trunc());
    for (long long k = 0; k <= f.trunc(); ++k) r.at(k) = PeriodScalar(f[k], grade);
    return r;
}

ValBound val_bound(const PeriodScalar& x) { return x.valuation_bound(); }

} // namespace ltf
