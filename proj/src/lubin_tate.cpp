#include "ltf/lubin_tate.hpp"

#include <algorithm>
#include <cmath>

namespace ltf {

namespace {

Rat assert_tol(const PadicField& F) {
    return Rat(std::min(F.prec, kDefaultAssertPrec));
}

} // namespace

// --- polynomial/series substitution helpers ----------------------------------

PadicSeries eval_poly_series(const PadicPoly& g, const PadicSeries& S) {
    const PadicElement& model = S.model();
    long long n = S.trunc();
    PadicSeries acc(model, n);
    PadicSeries pw = PadicSeries::constant(model, model.field()->one(), n);
    for (size_t k = 0; k < g.size(); ++k) {
        if (k > 0) pw = pw * S;
        if (!g[k].is_zero_to_precision())
            acc = acc + pw.scalar_mul(g[k]);
    }
    return acc;
}

PadicBivar eval_poly_bivar(const PadicPoly& g, const PadicBivar& S) {
    const PadicElement& model = S.model();
    PadicBivar acc(model, S.nvars(), S.trunc());
    PadicBivar pw = acc;
    pw.set_coeff(std::vector<long long>(S.nvars(), 0), model.field()->one());
    for (size_t k = 0; k < g.size(); ++k) {
        if (k > 0) pw = pw * S;
        if (!g[k].is_zero_to_precision())
            acc = acc + pw.scalar_mul(g[k]);
    }
    return acc;
}

PadicBivar substitute_univariates(const PadicBivar& F, const PadicSeries& gX, const PadicSeries& gY) {
    const PadicElement& model = F.model();
    long long N = F.trunc();
    // powers of gX and gY up to N
    std::vector<PadicSeries> px, py;
    px.reserve(N + 1);
    py.reserve(N + 1);
    px.push_back(PadicSeries::constant(model, model.field()->one(), N));
    py.push_back(px[0]);
    for (long long k = 1; k <= N; ++k) {
        px.push_back(px[k - 1] * gX);
        py.push_back(py[k - 1] * gY);
    }
    PadicBivar r(model, 2, N);
    for (size_t flat = 0; flat < F.size(); ++flat) {
        const PadicElement& c = F.coeff_at(flat);
        if (c.is_zero_to_precision()) continue;
        long long i = F.exponents()[flat][0], j = F.exponents()[flat][1];
        // c * gX^i * gY^j, truncated at total degree N
        for (long long a = i; a <= N; ++a) {
            if (px[i][a].is_zero_to_precision()) continue;
            for (long long b = j; a + b <= N; ++b) {
                if (py[j][b].is_zero_to_precision()) continue;
                std::vector<long long> exp{a, b};
                r.set_coeff(exp, r.coeff(exp) + c * px[i][a] * py[j][b]);
            }
        }
    }
    return r;
}

namespace {

// trivariate assembly: out[xa, xb, xj] += A_j[xa, xb] for sum <= N
PadicTrivar assemble_left(const std::vector<PadicBivar>& A, const PadicElement& model, long long N) {
    PadicTrivar r(model, 3, N);
    for (long long j = 0; j <= N; ++j)
        for (size_t flat = 0; flat < A[j].size(); ++flat) {
            long long a = A[j].exponents()[flat][0], b = A[j].exponents()[flat][1];
            if (a + b + j > N) continue;
            const PadicElement& c = A[j].coeff_at(flat);
            if (c.is_zero_to_precision()) continue;
            r.set_coeff({a, b, j}, c);
        }
    return r;
}

} // namespace

PadicTrivar compose_left(const PadicBivar& F, const PadicBivar& S) {
    const PadicElement& model = F.model();
    long long N = F.trunc();
    std::vector<PadicBivar> pw;  // S^i in (X,Y)
    pw.push_back(PadicBivar(model, 2, N));
    pw[0].set_coeff({0, 0}, model.field()->one());
    for (long long i = 1; i <= N; ++i) pw.push_back(pw[i - 1] * S);
    // A_j(X,Y) = sum_i F_{ij} S^i
    std::vector<PadicBivar> A(N + 1, PadicBivar(model, 2, N));
    for (size_t flat = 0; flat < F.size(); ++flat) {
        long long i = F.exponents()[flat][0], j = F.exponents()[flat][1];
        const PadicElement& c = F.coeff_at(flat);
        if (c.is_zero_to_precision()) continue;
        A[j] = A[j] + pw[i].scalar_mul(c);
    }
    return assemble_left(A, model, N);
}

PadicTrivar compose_right(const PadicBivar& F, const PadicBivar& S) {
    const PadicElement& model = F.model();
    long long N = F.trunc();
    std::vector<PadicBivar> pw;  // S^j in (Y,W)
    pw.push_back(PadicBivar(model, 2, N));
    pw[0].set_coeff({0, 0}, model.field()->one());
    for (long long j = 1; j <= N; ++j) pw.push_back(pw[j - 1] * S);
    std::vector<PadicBivar> B(N + 1, PadicBivar(model, 2, N));
    for (size_t flat = 0; flat < F.size(); ++flat) {
        long long i = F.exponents()[flat][0], j = F.exponents()[flat][1];
        const PadicElement& c = F.coeff_at(flat);
        if (c.is_zero_to_precision()) continue;
        B[i] = B[i] + pw[j].scalar_mul(c);
    }
    PadicTrivar r(model, 3, N);
    for (long long i = 0; i <= N; ++i)
        for (size_t flat = 0; flat < B[i].size(); ++flat) {
            long long b = B[i].exponents()[flat][0], c3 = B[i].exponents()[flat][1];
            if (i + b + c3 > N) continue;
            const PadicElement& c = B[i].coeff_at(flat);
            if (c.is_zero_to_precision()) continue;
            r.set_coeff({i, b, c3}, c);
        }
    return r;
}

// --- construction -------------------------------------------------------------

GroupPtr make_lt_group(FieldPtr field, const PadicElement& pi, const PadicPoly* frobenius,
                       long long trunc) {
    const auto& F = *field;
    auto vpi = pi.valuation();
    if (!vpi || *vpi != Rat(1, F.e))
        throw std::invalid_argument("make_lt_group: pi must be a prime element (ord = 1/e)");
    auto G = std::shared_ptr<LubinTateGroup>(new LubinTateGroup());
    G->fld_ = field;
    G->pi_ = pi;
    G->trunc_ = trunc;
    Rat tol = assert_tol(F);
    if (frobenius) {
        G->frob_ = *frobenius;
        if (G->frob_.size() < 2)
            throw std::invalid_argument("make_lt_group: Frobenius must have degree >= 1");
        if (!G->frob_[0].is_zero_at(tol) || !equal_at(G->frob_[1], pi, tol))
            throw std::invalid_argument("make_lt_group: Frobenius must be pi Z mod deg 2");
        for (size_t k = 0; k < G->frob_.size(); ++k) {
            PadicElement expect = (static_cast<long long>(k) == F.q) ? F.one() : F.zero();
            PadicElement diff = G->frob_[k] - expect;
            auto v = diff.valuation();
            if (v && *v < Rat(1, F.e))
                throw std::invalid_argument("make_lt_group: Frobenius must be Z^q mod pi");
        }
    } else {
        G->frob_.assign(F.q + 1, F.zero());
        G->frob_[1] = pi;
        G->frob_[F.q] = F.one();
    }
    if (trunc < static_cast<long long>(G->frob_.size()) - 1)
        throw std::invalid_argument("make_lt_group: truncation must cover deg(Frobenius)");
    return G;
}

GroupPtr multiplicative_group(FieldPtr qp_field, long long trunc) {
    const auto& F = *qp_field;
    if (F.e != 1 || F.f != 1)
        throw std::invalid_argument("multiplicative_group: base field must be Q_p");
    PadicPoly frob(F.p + 1, F.zero());
    for (long long k = 1; k <= F.p; ++k) frob[k] = F.from_integer(binomial(F.p, k));
    return make_lt_group(qp_field, F.pi(), &frob, trunc);
}

PadicSeries LubinTateGroup::frobenius_series(long long trunc) const {
    PadicSeries r(fld_->zero(), trunc);
    for (size_t k = 0; k < frob_.size() && static_cast<long long>(k) <= trunc; ++k)
        r.at(k) = frob_[k];
    return r;
}

// --- group law ----------------------------------------------------------------

const PadicBivar& LubinTateGroup::group_law() const {
    std::call_once(law_once_, [this]() {
        const auto& Fd = *fld_;
        long long N = trunc_;
        PadicBivar F(fld_->zero(), 2, N);
        F.set_coeff({1, 0}, fld_->one());
        F.set_coeff({0, 1}, fld_->one());
        PadicSeries fX(fld_->zero(), N), fY(fld_->zero(), N);
        for (size_t k = 0; k < frob_.size() && static_cast<long long>(k) <= N; ++k)
            fX.at(k) = fY.at(k) = frob_[k];
        PadicElement pi_pow = pi_;  // pi^r during step r
        for (long long r = 1; r < N; ++r) {
            pi_pow = pi_pow * pi_;  // pi^(r+1)
            PadicBivar D = eval_poly_bivar(frob_, F) - substitute_univariates(F, fX, fY);
            // D is homogeneous of degree r+1 modulo deg r+2
            PadicElement divisor = (pi_pow - pi_).inv();
            bool touched = false;
            for (size_t flat = 0; flat < D.size(); ++flat) {
                if (D.total_degree_of(flat) != r + 1) continue;
                const PadicElement& d = D.coeff_at(flat);
                if (d.is_zero_to_precision()) continue;
                const auto& exp = D.exponents()[flat];
                F.set_coeff(exp, F.coeff(exp) + d * divisor);
                touched = true;
            }
            (void)touched;
        }
        // defining congruence and integrality, verified rather than assumed
        PadicBivar D = eval_poly_bivar(frob_, F) - substitute_univariates(F, fX, fY);
        Rat tol = assert_tol(Fd);
        if (!D.is_zero())
            for (size_t flat = 0; flat < D.size(); ++flat)
                if (!D.coeff_at(flat).is_zero_at(tol))
                    throw std::runtime_error("group_law: defining congruence failed at assertion precision");
        for (size_t flat = 0; flat < F.size(); ++flat) {
            auto v = F.coeff_at(flat).valuation();
            if (v && *v < 0)
                throw std::runtime_error("group_law: non-integral coefficient produced");
        }
        law_ = std::make_unique<PadicBivar>(std::move(F));
    });
    return *law_;
}

PadicSeries LubinTateGroup::endomorphism(const PadicElement& a) const {
    auto va = a.valuation();
    if (va && *va < 0)
        throw std::invalid_argument("endomorphism: a must lie in o (ord >= 0)");
    long long N = trunc_;
    PadicSeries g(fld_->zero(), N);
    g.at(1) = a;
    PadicSeries f = frobenius_series(N);
    PadicElement pi_pow = pi_;
    for (long long r = 1; r < N; ++r) {
        pi_pow = pi_pow * pi_;
        PadicSeries D = eval_poly_series(frob_, g) - compose(g, f);
        PadicElement corr = D[r + 1] * (pi_pow - pi_).inv();
        g.at(r + 1) = g[r + 1] + corr;
    }
    PadicSeries D = eval_poly_series(frob_, g) - compose(g, f);
    Rat tol = assert_tol(*fld_);
    for (long long k = 0; k <= N; ++k)
        if (!D[k].is_zero_at(tol))
            throw std::runtime_error("endomorphism: commutation with Frobenius failed");
    return g;
}

// --- log / exp ----------------------------------------------------------------

const PadicSeries& LubinTateGroup::formal_log() const {
    std::call_once(log_once_, [this]() {
        const PadicBivar& F = group_law();
        long long N = trunc_;
        // dF/dY at (Z, 0): collect coefficients with Y-degree 1
        PadicSeries dlog(fld_->zero(), N - 1 < 0 ? 0 : N - 1);
        for (long long i = 0; i <= N - 1; ++i) dlog.at(i) = F.coeff({i, 1});
        PadicSeries logp = series_inverse(dlog);  // log'(Z), constant term 1
        PadicSeries lg = integrate(logp, N);
        log_ = std::make_unique<PadicSeries>(lg);
        exp_ = std::make_unique<PadicSeries>(reversion(lg));
        dlogmul_ = std::make_unique<PadicSeries>(dlog);
    });
    return *log_;
}

const PadicSeries& LubinTateGroup::formal_exp() const {
    formal_log();
    return *exp_;
}

PadicSeries LubinTateGroup::formal_log_at(long long M) const {
    // log(f(Z)) = pi log(Z): l_1 = 1, and for m >= 2
    //   l_m = sum_{k<m} l_k [Z^m](f^k) / (pi - pi^m).
    PadicSeries f = frobenius_series(M);
    PadicSeries lg(fld_->zero(), M);
    if (M >= 1) lg.at(1) = fld_->one();
    std::vector<PadicSeries> fpow;  // f^k
    fpow.push_back(PadicSeries::constant(fld_->zero(), fld_->one(), M));
    for (long long k = 1; k <= M; ++k) fpow.push_back(fpow[k - 1] * f);
    PadicElement pi_pow = pi_;
    for (long long m = 2; m <= M; ++m) {
        pi_pow = pi_pow * pi_;  // pi^m
        PadicElement acc = fld_->zero();
        for (long long k = 1; k < m; ++k) acc = acc + lg[k] * fpow[k][m];
        lg.at(m) = acc * (pi_ - pi_pow).inv();
    }
    return lg;
}

PadicSeries LubinTateGroup::formal_exp_at(long long M) const { return reversion(formal_log_at(M)); }

PadicSeries LubinTateGroup::invariant_derivation(const PadicSeries& h) const {
    long long M = h.trunc();
    // dh = h'/log_G'; log_G' is recomputed at the needed truncation
    PadicSeries logp = derivative(formal_log_at(M + 1)).truncated(M);
    return (derivative(h).truncated(std::max<long long>(M - 1, 0)) *
            series_inverse(logp).truncated(std::max<long long>(M - 1, 0)));
}

// --- torsion and disks ----------------------------------------------------------

PadicPoly poly_mul(const PadicPoly& a, const PadicPoly& b) {
    const auto F = a.at(0).field();
    PadicPoly r(a.size() + b.size() - 1, F->zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero_to_precision()) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    }
    return r;
}

PadicPoly poly_compose(const PadicPoly& outer, const PadicPoly& inner) {
    const auto F = outer.at(0).field();
    PadicPoly r{F->zero()};
    PadicPoly pw{F->one()};
    for (size_t k = 0; k < outer.size(); ++k) {
        if (k > 0) pw = poly_mul(pw, inner);
        if (!outer[k].is_zero_to_precision()) {
            if (r.size() < pw.size()) r.resize(pw.size(), F->zero());
            for (size_t i = 0; i < pw.size(); ++i) r[i] = r[i] + pw[i] * outer[k];
        }
    }
    return r;
}

// exact division: num = den * q, remainder must vanish at assertion precision
PadicPoly poly_divide_exact(PadicPoly num, const PadicPoly& den, Rat tol) {
    const auto F = num.at(0).field();
    long long dn = static_cast<long long>(num.size()) - 1;
    long long dd = static_cast<long long>(den.size()) - 1;
    while (dd > 0 && den[dd].is_zero_to_precision()) --dd;
    PadicElement lead_inv = den[dd].inv();
    PadicPoly q(dn - dd + 1, F->zero());
    for (long long k = dn - dd; k >= 0; --k) {
        PadicElement c = num[k + dd] * lead_inv;
        q[k] = c;
        for (long long j = 0; j <= dd; ++j) num[k + j] = num[k + j] - c * den[j];
    }
    for (const auto& c : num)
        if (!c.is_zero_at(tol))
            throw std::runtime_error("poly_divide_exact: division left a remainder");
    return q;
}

std::vector<std::pair<Rat, long long>> torsion_valuations(const LubinTateGroup& G, long long n) {
    if (n < 1) throw std::invalid_argument("torsion_valuations: n >= 1 required");
    const auto& F = *G.field();
    double deg_estimate = std::pow(static_cast<double>(G.frobenius_poly().size() - 1),
                                   static_cast<double>(n));
    if (deg_estimate > 2000.0)
        throw std::invalid_argument("torsion_valuations: degree overflow (q^n too large)");
    PadicPoly prev{F.zero(), F.one()};  // [pi^0] = Z
    PadicPoly cur = G.frobenius_poly();
    for (long long k = 2; k <= n; ++k) {
        prev = cur;
        cur = poly_compose(G.frobenius_poly(), cur);
    }
    if (n == 1) prev = {F.zero(), F.one()};
    PadicPoly quot = poly_divide_exact(cur, prev, assert_tol(F));
    std::vector<std::pair<long long, Rat>> pts;
    for (size_t k = 0; k < quot.size(); ++k) {
        auto v = quot[k].valuation();
        if (v) pts.emplace_back(static_cast<long long>(k), *v);
    }
    return newton_polygon(pts).root_valuations();
}

DiskPreimage disk_preimage_law(const LubinTateGroup& G, Rat v_r) {
    if (v_r <= 0) throw std::invalid_argument("disk_preimage_law: need v_r > 0");
    const auto& F = *G.field();
    DiskPreimage out;
    out.threshold = Rat(F.q, F.e * (F.q - 1));
    std::vector<std::pair<long long, Rat>> pts;
    pts.emplace_back(0, v_r);  // the translate f(Z) - w with ord(w) = v_r
    for (size_t k = 1; k < G.frobenius_poly().size(); ++k) {
        auto v = G.frobenius_poly()[k].valuation();
        if (v) pts.emplace_back(static_cast<long long>(k), *v);
    }
    NewtonPolygon np = newton_polygon(pts);
    out.root_valuations = np.root_valuations();
    out.single_slope = np.segments.size() == 1;
    return out;
}

PeriodSeries gm_hom_series(const LubinTateGroup& G, const PadicElement& a, long long M) {
    auto va = a.valuation();
    if (va && *va < 0) throw std::invalid_argument("gm_hom_series: a must lie in o");
    PadicSeries lg = G.formal_log_at(M);
    PeriodSeries t = lift_series(lg, 1).scalar_mul(PeriodScalar(a, 0));
    return series_exp_minus_one(t);
}

} // namespace ltf
