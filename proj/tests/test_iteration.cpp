#include "mahler/errors.hpp"
#include "mahler/iteration.hpp"

#include <doctest.h>

#include <algorithm>

using namespace mahler;

namespace {

Integer pow_ul(long base, long e) {
    Integer r = 1;
    for (long i = 0; i < e; ++i) r *= base;
    return r;
}

// independent order of A f + B g + C
std::size_t brute_order(const LiftedTriple& t, const MahlerPair& pair, std::size_t len) {
    auto f = family_integers(pair.f, len), g = family_integers(pair.g, len);
    for (std::size_t n = 0; n < len; ++n) {
        Integer acc = t.C().coeff(n);
        for (std::size_t i = 0; i <= n; ++i) acc += t.A().coeff(i) * f[n - i] + t.B().coeff(i) * g[n - i];
        if (acc != 0) return n;
    }
    return len;
}

}  // namespace

TEST_CASE("order law examples") {
    const auto& st = pair_registry(PairTag::Stern);
    auto base = approx_triple_k(st, 25);
    REQUIRE(base.order.n == 77);
    auto r = iterate(st, base, 3, 617);
    CHECK(r.triple.order == SeriesOrder::exact(616));
    CHECK(brute_order(r.triple, st, 617) == 616);

    auto one = lift_once(st, approx_triple_k(st, 8));
    CHECK(one.order.n == 52);

    const auto& ds = pair_registry(PairTag::DS);
    auto d16 = approx_triple_k(ds, 16);
    auto rd = iterate(ds, d16, 2, 1025);
    CHECK(rd.triple.order == SeriesOrder::exact(1024));
    CHECK(rd.triple.A().degree() <= 266);
    CHECK(rd.triple.B().degree() <= 266);
    CHECK(brute_order(rd.triple, ds, 1025) == 1024);

    auto r0 = iterate(st, base, 0, 78);
    CHECK(r0.triple.polys == base.polys);
    CHECK(r0.triple.order == base.order);
    CHECK_THROWS(iterate(st, base, 2, 100));
}

TEST_CASE("order law and degree bound for every pair up to m = 3") {
    for (PairTag tag : all_pairs()) {
        const auto& pair = pair_registry(tag);
        for (long k : {8L, 9L, 16L}) {
            auto base = approx_triple_k(pair, k);
            long m = std::min<long>(3, max_feasible_level(pair, base.order.n, 4096));
            Integer need = Integer(base.order.n) * pow_ul(pair.d, m) + 1;
            auto r = iterate(pair, base, m, need.get_ui());
            REQUIRE(r.levels.size() == static_cast<std::size_t>(m));
            for (const auto& c : r.levels) {
                Integer expect = Integer(base.order.n) * pow_ul(pair.d, c.level);
                CHECK(c.order == SeriesOrder::exact(expect.get_ui()));
                if (c.level >= 1) {
                    // (d-1) deg <= (ebar (d-1) + tau) d^m - tau
                    long eb = *std::max_element(base.shape.degs.begin(), base.shape.degs.end()) - pair.e1;
                    Integer rhs = Integer(eb * (pair.d - 1) + pair.tau()) * pow_ul(pair.d, c.level) - pair.tau();
                    CHECK(Integer((pair.d - 1) * c.max_degree) <= rhs);
                }
            }
        }
    }
}

TEST_CASE("coupled lift keeps C as a composition") {
    const auto& ds = pair_registry(PairTag::DS);
    auto base = approx_triple_k(ds, 21);
    LiftedTriple t = as_lifted(base);
    for (long m = 1; m <= 3; ++m) {
        t = lift_once(ds, t);
        BigPoly expect = base.C();
        for (long j = 0; j < m; ++j) expect = poly_compose_power(expect, 4);
        CHECK(t.C() == expect);
    }
    LiftedTriple prev = as_lifted(base);
    LiftedTriple next = lift_once(ds, prev);
    CHECK(next.A() == -(BigPoly{0, 1} * poly_compose_power(prev.B(), 4)));
    CHECK(next.B() == poly_compose_power(prev.A(), 4) + BigPoly{1, 1, 1} * poly_compose_power(prev.B(), 4));
}

TEST_CASE("scalar lift has the product form") {
    for (PairTag tag : {PairTag::Stern, PairTag::TM, PairTag::G3F3}) {
        const auto& pair = pair_registry(tag);
        auto base = approx_triple_k(pair, 10);
        const BigPoly ua = pair.scalar.psi_hat2 * pair.scalar.eq_f.phi1;
        const BigPoly ub = pair.scalar.phi_hat2 * pair.scalar.eq_g.phi1;
        LiftedTriple t = as_lifted(base);
        for (long m = 1; m <= 3; ++m) {
            t = lift_once(pair, t);
            BigPoly A = base.A(), B = base.B(), pa{1}, pb{1};
            for (long j = 0; j < m; ++j) {
                A = poly_compose_power(A, pair.d);
                Integer dj = pow_ul(pair.d, j);
                pa = pa * (j == 0 ? ua : poly_compose_power(ua, dj.get_si()));
                pb = pb * (j == 0 ? ub : poly_compose_power(ub, dj.get_si()));
            }
            for (long j = 0; j < m; ++j) B = poly_compose_power(B, pair.d);
            CHECK(t.A() == A * pa);
            CHECK(t.B() == B * pb);
        }
    }
}

TEST_CASE("a corrupted triple is rejected") {
    const auto& st = pair_registry(PairTag::Stern);
    auto base = approx_triple_k(st, 8);
    ApproxTriple bad = base;
    std::vector<Integer> c = bad.polys[0].coeffs();
    c[3] += 1;
    bad.polys[0] = BigPoly(c);
    CHECK_THROWS_AS(iterate(st, bad, 1, 53), LiftError);
}

TEST_CASE("feasible levels") {
    const auto& st = pair_registry(PairTag::Stern);
    CHECK(max_feasible_level(st, 26, 4096) == 7);
    CHECK(max_feasible_level(st, 26, 53) == 1);
    CHECK(max_feasible_level(st, 26, 52) == 0);
}
