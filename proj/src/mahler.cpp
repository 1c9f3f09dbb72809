#include "ltf/mahler.hpp"

#include <algorithm>

namespace ltf {

// --- Mahler basis ---------------------------------------------------------------

MahlerBasis mahler_basis(const GroupPtr& G, long long M) {
    const auto& F = *G->field();
    MahlerBasis B;
    B.group = G;
    B.cap = M;
    B.a.assign(M + 1, {});
    B.a[0] = {F.one()};
    try {
        PadicSeries lg = G->formal_log_at(M);
        // exp(Y log_G(Z)) coefficientwise: with t_k = l_k Y the ODE
        // recurrence is e_m = (Y/m) sum_k k l_k e_{m-k}.
        for (long long m = 1; m <= M; ++m) {
            std::vector<PadicElement> em(m + 1, F.zero());
            PadicElement minv = F.from_integer(m).inv();
            for (long long k = 1; k <= m; ++k) {
                if (lg[k].is_zero_to_precision()) continue;
                PadicElement w = F.from_integer(k) * lg[k] * minv;
                const auto& prev = B.a[m - k];
                for (size_t j = 0; j < prev.size(); ++j) em[j + 1] = em[j + 1] + w * prev[j];
            }
            B.a[m] = std::move(em);
        }
    } catch (const PrecisionError& pe) {
        long long need = factorial_valuation(M, F.p);
        throw PrecisionError(std::string(pe.what()) +
                                 " (mahler_basis: working precision must cover assertion + ord_p(M!) = "
                                 "assertion + " + std::to_string(need) + ")",
                             pe.available, Rat(need));
    }
    return B;
}

PadicElement MahlerBasis::eval(long long m, const PadicElement& y) const {
    const auto& c = a.at(m);
    PadicElement r = c.back();
    for (long long j = static_cast<long long>(c.size()) - 2; j >= 0; --j) r = r * y + c[j];
    return r;
}

PeriodScalar MahlerBasis::eval_graded(long long m, const PadicElement& x) const {
    const auto& F = *group->field();
    PeriodScalar r(F.zero().field());
    PadicElement pw = F.one();
    for (size_t j = 0; j < a.at(m).size(); ++j) {
        if (j > 0) pw = pw * x;
        r = r + PeriodScalar(a[m][j] * pw, static_cast<long long>(j));
    }
    return r;
}

// --- pairing --------------------------------------------------------------------

Pairing::Pairing(GroupPtr G, long long mmax, long long nmax)
    : G_(std::move(G)), mmax_(std::max(mmax, nmax)), nmax_(nmax) {
    const auto& F = *G_->field();
    long long T = mmax_ + nmax_ + 2;
    PadicSeries logp = derivative(G_->formal_log_at(T + 1)).truncated(T);
    PadicSeries il = series_inverse(logp);
    D_.assign(nmax_ + 1, std::vector<PadicElement>(mmax_ + 1, F.zero()));
    for (long long m = 0; m <= mmax_; ++m) {
        PadicSeries cur = PadicSeries::monomial(F.zero(), F.one(), m, T);
        for (long long n = 0; n <= nmax_; ++n) {
            D_[n][m] = cur[0];
            if (n < nmax_) cur = derivative(cur) * il;
        }
    }
}

PeriodScalar Pairing::monomial(long long m, long long n) const {
    if (m < 0 || n < 0 || m > mmax_ || n > nmax_)
        throw std::invalid_argument("pairing: monomial indices exceed table caps");
    const auto& F = *G_->field();
    if (m > n) return PeriodScalar(F.zero().field());
    return PeriodScalar(D_[n][m], -n);
}

PeriodScalar Pairing::pair(const PeriodSeries& Fser, const PeriodSeries& f) const {
    if (f.trunc() > nmax_)
        throw std::invalid_argument("pairing: polynomial degree exceeds table cap");
    PeriodScalar acc(Fser.model().field());
    for (long long n = 0; n <= f.trunc(); ++n) {
        if (ring_is_zero(f[n])) continue;
        for (long long m = 0; m <= std::min(n, Fser.trunc()); ++m) {
            if (ring_is_zero(Fser[m])) continue;
            acc = acc + Fser[m] * f[n] * monomial(m, n);
        }
    }
    return acc;
}

PeriodScalar Pairing::pair(const PeriodSeries& Fser, const PadicSeries& f) const {
    return pair(Fser, lift_series(f, 0));
}

// --- expansion and reconstruction -------------------------------------------------

MahlerExpansion mahler_expand(const MahlerBasis& basis, const Pairing& pairing,
                              const PadicSeries& f) {
    long long deg = f.trunc();
    if (deg > basis.cap)
        throw std::invalid_argument("mahler_expand: polynomial degree exceeds basis cap");
    if (deg > pairing.nmax())
        throw std::invalid_argument("mahler_expand: polynomial degree exceeds pairing cap");
    MahlerExpansion ex;
    const auto& fld = f.model().field();
    for (long long m = 0; m <= deg; ++m) {
        PeriodScalar cm(fld);
        for (long long n = m; n <= deg; ++n) {
            if (f[n].is_zero_to_precision()) continue;
            cm = cm + PeriodScalar(f[n] * pairing.D(n, m), -n);
        }
        ex.c.push_back(cm);
    }
    return ex;
}

PeriodSeries mahler_reconstruct(const MahlerBasis& basis, const MahlerExpansion& expn,
                                long long deg) {
    const auto& F = *basis.group->field();
    PeriodSeries r(PeriodScalar(F.zero().field()), deg);
    for (long long j = 0; j <= deg; ++j) {
        PeriodScalar acc(F.zero().field());
        for (size_t m = 0; m < expn.c.size(); ++m) {
            if (static_cast<long long>(m) < j) continue;
            if (j >= static_cast<long long>(basis.a[m].size())) continue;
            acc = acc + expn.c[m] * PeriodScalar(basis.a[m][j], j);
        }
        r.at(j) = acc;
    }
    return r;
}

// --- norm estimates ----------------------------------------------------------------

NormEstimate norm_estimate_43(const MahlerBasis& basis, long long m, const PadicElement& a,
                              long long n) {
    const auto& F = *basis.group->field();
    Rat s = period_exponents(F).first;
    NormEstimate out;
    // left side: P_m((a + y) Omega) expanded in y; coefficient of y^k is
    // sum_{j>=k} a_{m,j} binom(j,k) a^(j-k) at grade j
    std::vector<PadicElement> apow{F.one()};
    for (long long t = 1; t <= m; ++t) apow.push_back(apow[t - 1] * a);
    std::optional<Rat> lhs;
    bool lhs_exact = true;
    for (long long k = 0; k <= m; ++k) {
        PeriodScalar ck(F.zero().field());
        for (long long j = k; j < static_cast<long long>(basis.a[m].size()); ++j) {
            PadicElement term = basis.a[m][j] * F.from_integer(binomial(j, k)) * apow[j - k];
            ck = ck + PeriodScalar(term, j);
        }
        ValBound b = ck.valuation_bound();
        if (!b.bound) continue;
        Rat w = *b.bound + Rat(k * n, F.e);
        if (!lhs || w < *lhs) {
            lhs = w;
            lhs_exact = b.exact;
        } else if (w == *lhs && !b.exact) {
            lhs_exact = false;
        }
    }
    out.lhs_exp = lhs;
    out.lhs_exact = lhs_exact;
    // right side: min over 1 <= i <= m (0 for m = 0) of the single-grade sums
    std::optional<Rat> rhs;
    long long ilo = (m == 0) ? 0 : 1;
    for (long long i = ilo; i <= std::max<long long>(m, 0); ++i) {
        for (long long j = 0; j < static_cast<long long>(basis.a[i].size()); ++j) {
            auto v = basis.a[i][j].valuation();
            if (!v) continue;
            Rat w = *v + s * Rat(j) + Rat(j * n, F.e);
            if (!rhs || w < *rhs) rhs = w;
        }
    }
    out.rhs_exp = rhs.value_or(Rat(0));
    out.holds = !out.lhs_exp || *out.lhs_exp >= out.rhs_exp;
    return out;
}

NormEstimate norm_estimate_44(const MahlerBasis& basis, long long m, long long n) {
    if (m < 1) throw std::invalid_argument("norm_estimate_44: m >= 1 required");
    const auto& F = *basis.group->field();
    Rat s = period_exponents(F).first;
    NormEstimate out;
    std::optional<Rat> lhs;
    for (long long j = 0; j < static_cast<long long>(basis.a[m].size()); ++j) {
        auto v = basis.a[m][j].valuation();
        if (!v) continue;
        Rat w = *v + s * Rat(j) + Rat(j * n, F.e);
        if (!lhs || w < *lhs) lhs = w;
    }
    long long qn1 = 1;
    for (long long t = 0; t < n - 1; ++t) qn1 *= F.q;
    out.lhs_exp = lhs;
    out.rhs_exp = Rat(1, F.p - 1) - Rat(m) / Rat(F.e * qn1 * (F.q - 1));
    out.holds = !out.lhs_exp || *out.lhs_exp > out.rhs_exp;
    return out;
}

ConvergenceReport convergence_check(const std::vector<Rat>& coeff_vals, const PadicField& field,
                                    long long n) {
    if (coeff_vals.size() < 3)
        throw std::invalid_argument("convergence_check: profile not eventually linear (too short)");
    std::vector<Rat> d;
    for (size_t k = 0; k + 1 < coeff_vals.size(); ++k) d.push_back(coeff_vals[k + 1] - coeff_vals[k]);
    size_t tail = 1;
    while (tail < d.size() && d[d.size() - 1 - tail] == d.back()) ++tail;
    if (tail < 2)
        throw std::invalid_argument("convergence_check: profile not eventually linear");
    ConvergenceReport rep;
    rep.alpha = d.back();
    long long qn1 = 1;
    for (long long t = 0; t < n - 1; ++t) qn1 *= field.q;
    rep.level_bound = Rat(1, field.e * qn1 * (field.q - 1));
    rep.converges_at_level = rep.alpha > rep.level_bound;
    rep.converges_globally = rep.alpha > Rat(0);
    return rep;
}

// --- classical specialization --------------------------------------------------------

PadicElement padic_binomial(const PadicElement& a, long long m) {
    const auto& F = *a.field();
    PadicElement num = F.one();
    for (long long i = 0; i < m; ++i) num = num * (a - F.from_integer(i));
    return num * F.from_integer(factorial(m)).inv();
}

PadicSeries amice_dirac(const PadicElement& a, long long M) {
    PadicSeries r(a.field()->zero(), M);
    for (long long m = 0; m <= M; ++m) r.at(m) = padic_binomial(a, m);
    return r;
}

PadicSeries amice_moments_to_series(const std::vector<PadicElement>& moments, long long M) {
    if (moments.empty()) throw std::invalid_argument("amice: empty moment list");
    PadicSeries r(moments[0].field()->zero(), M);
    for (long long m = 0; m <= M && m < static_cast<long long>(moments.size()); ++m)
        r.at(m) = moments[m];
    return r;
}

std::vector<PadicElement> amice_series_to_moments(const PadicSeries& F) {
    return F.coeffs();
}

FieldPtr cyclotomic_field(long long p, long long precision) {
    // Phi_p(1+X) = sum_k binom(p, k+1) X^k, Eisenstein at p
    std::vector<std::vector<long long>> eis(p);
    for (long long k = 0; k < p - 1; ++k)
        eis[k] = {static_cast<long long>(binomial(p, k + 1))};
    eis[p - 1] = {1};
    return make_field(p, 1, p - 1, precision, nullptr, &eis);
}

bool units_support_check(const PadicPoly& F, long long M, Rat tol) {
    const auto fld = F.at(0).field();
    long long p = fld->p;
    if (fld->e != p - 1 || fld->f != 1)
        throw std::invalid_argument("units_support_check: series must live over Q_p(mu_p)");
    PadicElement zeta = fld->one() + fld->pi();
    PadicPoly sum{fld->zero()};
    PadicElement zj = fld->one();
    for (long long j = 0; j < p; ++j) {
        if (j > 0) zj = zj * zeta;
        PadicPoly arg{zj - fld->one(), zj};  // zeta^j (1+Z) - 1
        PadicPoly comp = poly_compose(F, arg);
        if (sum.size() < comp.size()) sum.resize(comp.size(), fld->zero());
        for (size_t k = 0; k < comp.size(); ++k) sum[k] = sum[k] + comp[k];
    }
    for (size_t k = 0; k < sum.size() && static_cast<long long>(k) <= M; ++k)
        if (!sum[k].is_zero_at(tol)) return false;
    return true;
}

PadicElement padic_exp(const PadicElement& x, Rat target_prec) {
    const auto& F = *x.field();
    auto v = x.valuation();
    if (!v || *v <= Rat(1, F.p - 1))
        throw std::domain_error("padic_exp: requires ord(x) > 1/(p-1)");
    Rat gain = *v - Rat(1, F.p - 1);
    long long K = 4;
    while (Rat(K) * gain < target_prec + 4) ++K;
    PadicElement acc = F.one();
    PadicElement term = F.one();
    for (long long k = 1; k <= K; ++k) {
        term = term * x * F.from_integer(k).inv();
        acc = acc + term;
    }
    return acc;
}

PadicElement padic_log1p(const PadicElement& x, Rat target_prec) {
    const auto& F = *x.field();
    auto v = x.valuation();
    if (!v || *v <= 0) throw std::domain_error("padic_log1p: requires ord(x) > 0");
    long long K = 4;
    while (Rat(K) * *v - Rat(static_cast<long long>(std::log2(static_cast<double>(K)) /
                                                    std::log2(static_cast<double>(F.p))) +
                             1) < target_prec + 4)
        ++K;
    PadicElement acc = F.zero();
    PadicElement pw = F.one();
    for (long long k = 1; k <= K; ++k) {
        pw = pw * x;
        PadicElement term = pw * F.from_integer(k).inv();
        acc = (k % 2 == 1) ? acc + term : acc - term;
    }
    return acc;
}

MellinTriple mellin_demo(long long p, long long a, long long n, long long i, Rat tol) {
    if (p < 3) throw std::invalid_argument("mellin_demo: requires p >= 3 (e < p-1)");
    if (a % p == 0) throw std::invalid_argument("mellin_demo: a must be a unit");
    if (n < 1) throw std::invalid_argument("mellin_demo: n >= 1 required");
    if (((n - i) % (p - 1) + (p - 1)) % (p - 1) != 0)
        throw std::invalid_argument("mellin_demo: requires n = i mod (q-1)");
    FieldPtr F = make_field(p, 1, 1, 64);
    Rat wp(F->prec);
    PadicElement ae = F->from_integer(a);
    PadicElement omega = teichmuller(ae);
    PadicElement proj = ae * omega.inv();  // <a> in 1 + pZ_p
    PadicElement ell = padic_log1p(proj - F->one(), wp).mul_p_pow(-1);
    PadicElement z = padic_exp(F->from_integer(n * p), wp) - F->one();
    // psi_z(<a>) = (1+z)^ell via the binomial series, independent of exp/log
    PadicElement psi = F->zero();
    PadicElement zp = F->one();
    long long K = 4 * ((numerator(tol) / denominator(tol)).convert_to<long long>() + 4) + 8;
    for (long long m = 0; m <= K; ++m) {
        if (m > 0) zp = zp * z;
        psi = psi + padic_binomial(ell, m) * zp;
    }
    MellinTriple out;
    out.lhs = omega.pow_int(i) * psi;
    out.mid = ae.pow_int(n);
    // rhs: d^n (1+Z)^a |_0 with d = (1+Z) d/dZ
    PadicPoly Fz(a + 1, F->zero());
    for (long long k = 0; k <= a; ++k) Fz[k] = F->from_integer(binomial(a, k));
    for (long long t = 0; t < n; ++t) {
        PadicPoly dF(Fz.size(), F->zero());
        for (size_t k = 1; k < Fz.size(); ++k)
            dF[k - 1] = F->from_integer(static_cast<long long>(k)) * Fz[k];
        // multiply by (1+Z)
        PadicPoly res(Fz.size(), F->zero());
        for (size_t k = 0; k + 1 < dF.size() + 1; ++k) {
            res[k] = res[k] + dF[k];
            if (k + 1 < res.size()) res[k + 1] = res[k + 1] + dF[k];
        }
        Fz = res;
    }
    out.rhs = Fz[0];
    out.ok = equal_at(out.lhs, out.mid, tol) && equal_at(out.rhs, out.mid, tol);
    return out;
}

std::vector<CoefficientBoundCase> coefficient_bound_experiment(const MahlerBasis& basis,
                                                               long long cap) {
    const auto& F = *basis.group->field();
    if (cap + 1 > basis.cap)
        throw std::invalid_argument("coefficient_bound_experiment: basis cap too small");
    Rat s = period_exponents(F).first;
    std::vector<CoefficientBoundCase> out;
    for (long long m = 1; m <= cap; ++m) {
        // P_{m+1}(Omega)/Omega = sum_t a_{m+1,t} Omega^(t-1)
        std::optional<Rat> bound;
        for (long long t = 1; t < static_cast<long long>(basis.a[m + 1].size()); ++t) {
            auto v = basis.a[m + 1][t].valuation();
            if (!v) continue;
            Rat w = *v + s * Rat(t - 1);
            if (!bound || w < *bound) bound = w;
        }
        CoefficientBoundCase c;
        c.m = m;
        c.termwise_bound = bound.value_or(Rat(F.prec));
        c.required = -Rat(m, F.e * (F.q - 1));
        c.pass = c.termwise_bound >= c.required;
        out.push_back(c);
    }
    return out;
}

} // namespace ltf
