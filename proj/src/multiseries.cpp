#include "ltf/multiseries.hpp"

namespace ltf {

namespace {

PadicElement trace(const PadicElement& x) {
    const auto& F = *x.field();
    PadicElement t = F.zero();
    // trace of the multiplication-by-x operator on the basis {pi^i u^j}
    PadicElement pw_pi = F.one();
    for (long long i = 0; i < F.e; ++i) {
        PadicElement pw_u = pw_pi;
        for (long long j = 0; j < F.f; ++j) {
            t = t + (x * pw_u).coordinate_qp(i, j);
            if (j + 1 < F.f) pw_u = pw_u * F.unram_gen();
        }
        if (i + 1 < F.e) pw_pi = pw_pi * F.pi();
    }
    return t;
}

} // namespace

Rat basis_discriminant_valuation(const std::vector<PadicElement>& basis) {
    size_t d = basis.size();
    std::vector<std::vector<PadicElement>> M(d, std::vector<PadicElement>());
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) M[i].push_back(trace(basis[i] * basis[j]));
    // Gaussian elimination, det as the product of pivots
    const auto& F = *basis[0].field();
    Rat detval(0);
    for (size_t col = 0; col < d; ++col) {
        // pick the pivot of minimal valuation
        std::optional<size_t> piv;
        std::optional<Rat> best;
        for (size_t r = col; r < d; ++r) {
            auto v = M[r][col].valuation();
            if (v && (!best || *v < *best)) { best = v; piv = r; }
        }
        if (!piv) throw std::domain_error("basis discriminant is zero to precision");
        std::swap(M[col], M[*piv]);
        detval += *best;
        PadicElement pinv = M[col][col].inv();
        for (size_t r = col + 1; r < d; ++r) {
            PadicElement factor = M[r][col] * pinv;
            for (size_t cc = col; cc < d; ++cc) M[r][cc] = M[r][cc] - factor * M[col][cc];
        }
    }
    return detval;
}

ScalarRestrictionResult scalar_restriction_check(const MultiSeries<PadicElement>& f,
                                                 const std::vector<PadicElement>& basis,
                                                 long long order, Rat assert_prec) {
    const auto& F = *f.model().field();
    long long b = static_cast<long long>(basis.size());
    if (b != F.degree())
        throw std::invalid_argument("scalar_restriction_check: basis size must equal [L:Q_p]");
    if (f.nvars() != b)
        throw std::invalid_argument("scalar_restriction_check: variable count must match basis size");
    if (f.trunc() < order)
        throw std::invalid_argument("scalar_restriction_check: coefficient tensor incomplete up to requested order");
    if (!equal_at(basis[0], F.one(), assert_prec))
        throw std::invalid_argument("scalar_restriction_check: basis must start with v_1 = 1");
    if (basis_discriminant_valuation(basis) != 0)
        throw std::invalid_argument("scalar_restriction_check: basis discriminant must be a unit");

    ScalarRestrictionResult res;
    for (size_t flat = 0; flat < f.size(); ++flat) {
        if (f.total_degree_of(flat) > order - 1) continue;
        const auto& n = f.exponents()[flat];
        std::vector<long long> up1 = n;
        up1[0] += 1;
        const PadicElement& c1 = f.coeff(up1);
        for (long long i = 2; i <= b; ++i) {
            std::vector<long long> upi = n;
            upi[i - 1] += 1;
            PadicElement lhs = F.from_integer(n[i - 1] + 1) * f.coeff(upi);
            PadicElement rhs = basis[i - 1] * F.from_integer(n[0] + 1) * c1;
            if (!equal_at(lhs, rhs, assert_prec)) {
                res.ok = false;
                res.violation_index = n;
                res.violation_coordinate = i;
                return res;
            }
        }
    }
    return res;
}

} // namespace ltf
