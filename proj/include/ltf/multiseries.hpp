#pragma once

// Multivariate truncated series stored as dense triangular arrays (all
// monomials of total degree <= N).  Used for formal group laws in two and
// three variables and for the scalar-restriction checker, where the
// variables are the coordinates of L over Q_p with respect to a basis.

#include "ltf/series.hpp"

#include <map>
#include <optional>
#include <vector>

namespace ltf {

template <class C>
class MultiSeries {
public:
    MultiSeries(const C& model, long long nvars, long long trunc)
        : model_(ring_zero(model)), nvars_(nvars), trunc_(trunc) {
        enumerate({}, 0);
        c_.assign(exps_.size(), model_);
    }

    long long nvars() const { return nvars_; }
    long long trunc() const { return trunc_; }
    const C& model() const { return model_; }
    const std::vector<std::vector<long long>>& exponents() const { return exps_; }
    size_t size() const { return exps_.size(); }

    const C& coeff(const std::vector<long long>& exp) const { return c_[pos(exp)]; }
    void set_coeff(const std::vector<long long>& exp, const C& v) { c_[pos(exp)] = v; }
    const C& coeff_at(size_t flat) const { return c_[flat]; }
    C& at(size_t flat) { return c_[flat]; }

    bool has(const std::vector<long long>& exp) const {
        long long s = 0;
        for (long long x : exp) s += x;
        return s <= trunc_;
    }

    MultiSeries operator+(const MultiSeries& o) const {
        check(o);
        MultiSeries r = *this;
        for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k] + o.c_[k];
        return r;
    }
    MultiSeries operator-() const {
        MultiSeries r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    MultiSeries operator-(const MultiSeries& o) const { return *this + (-o); }

    MultiSeries operator*(const MultiSeries& o) const {
        check(o);
        MultiSeries r(model_, nvars_, trunc_);
        for (size_t a = 0; a < c_.size(); ++a) {
            if (ring_is_zero(c_[a]) && deg_[a] > 0) continue;
            for (size_t b = 0; b < o.c_.size(); ++b) {
                if (deg_[a] + deg_[b] > trunc_) continue;
                std::vector<long long> exp(nvars_);
                for (long long v = 0; v < nvars_; ++v) exp[v] = exps_[a][v] + exps_[b][v];
                r.c_[pos(exp)] = r.c_[pos(exp)] + c_[a] * o.c_[b];
            }
        }
        return r;
    }

    MultiSeries scalar_mul(const C& s) const {
        MultiSeries r = *this;
        for (auto& x : r.c_) x = s * x;
        return r;
    }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!ring_is_zero(x)) return false;
        return true;
    }

    long long total_degree_of(size_t flat) const { return deg_[flat]; }

private:
    void enumerate(std::vector<long long> prefix, long long used) {
        if (static_cast<long long>(prefix.size()) == nvars_) {
            deg_.push_back(used);
            pos_map_[prefix] = exps_.size();
            exps_.push_back(prefix);
            return;
        }
        for (long long k = 0; used + k <= trunc_; ++k) {
            prefix.push_back(k);
            enumerate(prefix, used + k);
            prefix.pop_back();
        }
    }
    size_t pos(const std::vector<long long>& exp) const {
        auto it = pos_map_.find(exp);
        if (it == pos_map_.end()) throw std::out_of_range("MultiSeries: exponent beyond truncation");
        return it->second;
    }
    void check(const MultiSeries& o) const {
        if (nvars_ != o.nvars_ || trunc_ != o.trunc_)
            throw std::invalid_argument("MultiSeries: shape mismatch");
    }

    C model_;
    long long nvars_;
    long long trunc_;
    std::vector<std::vector<long long>> exps_;
    std::vector<long long> deg_;
    std::map<std::vector<long long>, size_t> pos_map_;
    std::vector<C> c_;
};

/// Result of the locally-L-analytic membership test (restriction of scalars):
/// a coefficient tensor in the coordinates t_1..t_b of L/Q_p with respect to
/// a basis v_1 = 1, v_2, ..., v_b passes iff every recurrence instance
///   (n_i + 1) c_{n + e_i} = v_i (n_1 + 1) c_{n + e_1}
/// holds at the assertion precision.
struct ScalarRestrictionResult {
    bool ok = true;
    // first violating instance: base multi-index and the coordinate i (1-based)
    std::optional<std::vector<long long>> violation_index;
    long long violation_coordinate = 0;
};

ScalarRestrictionResult scalar_restriction_check(const MultiSeries<PadicElement>& f,
                                                 const std::vector<PadicElement>& basis,
                                                 long long order,
                                                 Rat assert_prec = Rat(kDefaultAssertPrec));

/// ord of det(Tr(v_i v_j)); the checker requires a basis with v_1 = 1 whose
/// discriminant is a unit.
Rat basis_discriminant_valuation(const std::vector<PadicElement>& basis);

} // namespace ltf
