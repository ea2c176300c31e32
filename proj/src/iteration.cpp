#include "mahler/iteration.hpp"

#include "mahler/errors.hpp"

#include <algorithm>

namespace mahler {

namespace {

Integer ipow(long base, long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
    return r;
}

}  // namespace

LiftedTriple as_lifted(const ApproxTriple& t) {
    LiftedTriple l;
    static_cast<ApproxTriple&>(l) = t;
    l.base_order = t.order.n;
    return l;
}

LiftedTriple lift_once(const MahlerPair& pair, const ApproxTriple& t) { return lift_once(pair, as_lifted(t)); }

LiftedTriple lift_once(const MahlerPair& pair, const LiftedTriple& t) {
    if (t.pair != pair.tag) throw std::invalid_argument("triple belongs to a different pair");
    const long d = pair.d;
    BigPoly Ad = poly_compose_power(t.A(), d);
    BigPoly Bd = poly_compose_power(t.B(), d);
    BigPoly Cd = poly_compose_power(t.C(), d);
    TruncSeries Rd = series_compose_power(t.remainder, d);

    LiftedTriple out = t;
    out.level = t.level + 1;
    if (pair.is_scalar()) {
        const ScalarData& s = pair.scalar;
        out.polys = {s.psi_hat2 * s.eq_f.phi1 * Ad, s.phi_hat2 * s.eq_g.phi1 * Bd,
                     s.psi_hat2 * s.eq_f.phi3 * Ad + s.phi_hat2 * s.eq_g.phi3 * Bd - s.phi * Cd};
        out.remainder = series_mul_poly(-s.phi, Rd);
    } else {
        // substitute f(z^d) = M00 f + M01 g, g(z^d) = M10 f + M11 g
        const auto& M = pair.coupled.M;
        out.polys = {Ad * M[0][0] + Bd * M[1][0], Ad * M[0][1] + Bd * M[1][1], Cd};
        out.remainder = Rd;
    }
    out.order = series_order(out.remainder);
    return out;
}

long ebar(const MahlerPair& pair, const DegreeShape& shape) {
    return *std::max_element(shape.degs.begin(), shape.degs.end()) - pair.e1;
}

Integer scaled_degree_bound(const MahlerPair& pair, long ebar_k, long m) {
    const long d = pair.d;
    return Integer(ebar_k * (d - 1) + pair.tau()) * ipow(d, m) - pair.tau();
}

bool within_degree_bound(const MahlerPair& pair, long ebar_k, long m, long degree) {
    return Integer(degree) * (pair.d - 1) <= scaled_degree_bound(pair, ebar_k, m);
}

TruncSeries base_remainder(const MahlerPair& pair, const ApproxTriple& t, std::size_t n) {
    return combine(t.polys, pair_series(pair, n));
}

long max_feasible_level(const MahlerPair& pair, std::size_t base_order, std::size_t max_len) {
    long m = 0;
    Integer need = Integer(base_order) * pair.d + 1;
    while (need <= max_len) {
        ++m;
        need = (need - 1) * pair.d + 1;
    }
    return m;
}

IterationResult iterate(const MahlerPair& pair, const ApproxTriple& t0, long m, std::size_t check_len) {
    if (m < 0) throw std::invalid_argument("m must be nonnegative");
    if (!t0.order.is_exact()) throw std::invalid_argument("base triple has no exact order");
    IterationResult res;
    LiftedTriple cur = as_lifted(t0);
    if (m == 0) {
        res.triple = cur;
        return res;
    }
    const std::size_t base = cur.base_order;
    const Integer dm = ipow(pair.d, m);
    if (Integer(base) * dm + 1 > check_len)
        throw std::invalid_argument("check_len must be at least base_order*d^m+1 = " +
                                    Integer(Integer(base) * dm + 1).get_str());

    // the base remainder must reach check_len / d^m after m compositions
    Integer need0 = (Integer(check_len) + dm - 1) / dm;
    if (cur.remainder.valid_len() < need0.get_ui()) cur.remainder = base_remainder(pair, t0, need0.get_ui());

    const std::vector<TruncSeries> series = pair_series(pair, check_len);
    const long eb = ebar(pair, t0.shape);
    Integer expected = base;
    for (long j = 1; j <= m; ++j) {
        cur = lift_once(pair, cur);
        expected *= pair.d;
        std::size_t len = std::min(check_len, cur.remainder.valid_len());
        std::vector<TruncSeries> trunc;
        for (const auto& s : series) trunc.push_back(s.truncated(len));
        TruncSeries direct = combine(cur.polys, trunc);
        if (!(direct == cur.remainder.truncated(len)))
            throw IdentityViolation("substitution identity differs from the lifted remainder", j);
        SeriesOrder ord = series_order(direct);
        if (!ord.is_exact() || Integer(ord.n) != expected)
            throw OrderLawViolation("order " + ord.to_string() + ", expected " + expected.get_str(), j);
        long maxdeg = -1;
        for (const auto& p : cur.polys) {
            maxdeg = std::max(maxdeg, p.degree());
            if (!within_degree_bound(pair, eb, j, p.degree()))
                throw DegreeBoundViolation("degree " + std::to_string(p.degree()) + " exceeds the bound", j);
        }
        res.levels.push_back({j, len, ord, maxdeg});
    }
    res.triple = cur;
    return res;
}

}  // namespace mahler
