#include "mahler/errors.hpp"
#include "mahler/numeric_forms.hpp"

#include <doctest.h>

using namespace mahler;

namespace {

const std::vector<RationalPoint> kPoints = {{1, 2}, {1, 3}, {2, 3}, {-1, 2}};

// |a/b|^n as an exact rational
Rational qpow(const Rational& x, std::size_t n) {
    Rational r = 1;
    for (std::size_t i = 0; i < n; ++i) r *= x;
    return r;
}

// smallest tabulated k per pair
long smallest_k(PairTag tag) {
    switch (tag) {
        case PairTag::Stern: return 7;
        case PairTag::TM: return 8;
        case PairTag::G3F3: return 9;
        case PairTag::DS: return 16;
    }
    return 0;
}

}  // namespace

TEST_CASE("point validation") {
    const auto& st = pair_registry(PairTag::Stern);
    CHECK_NOTHROW(validate_point(st, {1, 2}));
    CHECK_THROWS_AS(validate_point(st, {2, 4}), InvalidPoint);
    CHECK_THROWS_AS(validate_point(st, {3, 2}), InvalidPoint);
    CHECK_THROWS_AS(validate_point(st, {0, 2}), InvalidPoint);
    CHECK_THROWS_AS(validate_point(st, {1, 1}), InvalidPoint);
    // (1/2)^2 is the zero of 1 - 4z
    CHECK_THROWS_AS(validate_point({BigPoly{1, -4}}, {1, 2}), InvalidPoint);
    CHECK_NOTHROW(validate_point({BigPoly{1, -4}}, {1, 3}));
    CHECK_THROWS_AS(validate_point({BigPoly{0, 0, 1, -9}}, {1, 3}), InvalidPoint);
}

TEST_CASE("Q exponents") {
    const auto& st = pair_registry(PairTag::Stern);
    CHECK(q_exponent(st, 8, 0) == 8);
    const auto& ds = pair_registry(PairTag::DS);
    CHECK(q_exponent(ds, 16, 1) == 66);
    auto s = eval_forms(st, approx_triple_k(st, 8), 0, {1, 2});
    CHECK(s.Q == 256);
}

TEST_CASE("family values are enclosed") {
    // long partial sums lie in the enclosure up to the neglected tail
    for (FamilyId id : {FamilyId::SternA, FamilyId::ThueMorseT, FamilyId::ThueMorseM, FamilyId::LambertG3,
                        FamilyId::DilcherS}) {
        Rational x(1, 3);
        Interval a = family_value(id, x, 40), b = family_value(id, x, 200);
        CHECK(a.intersects(b));
        CHECK(b.width() < a.width());
        auto c = family_integers(id, 400);
        Rational partial = 0;
        for (std::size_t j = 0; j < 400; ++j) partial += c[j] * qpow(x, j);
        CHECK(b.lo - qpow(x, 300) <= partial);
        CHECK(partial <= b.hi + qpow(x, 300));
    }
    // coefficient bounds hold on a long prefix
    for (FamilyId id : {FamilyId::SternA, FamilyId::SternB, FamilyId::ThueMorseT, FamilyId::ThueMorseM,
                        FamilyId::LambertG3, FamilyId::LambertF3, FamilyId::DilcherS, FamilyId::DilcherS4}) {
        CoeffBound cb = coefficient_bound(id, Rational(1, 2));
        auto c = family_integers(id, 2000);
        for (std::size_t j = 0; j < c.size(); ++j) CHECK(Rational(abs(c[j])) <= cb.at(j));
    }
}

TEST_CASE("integral forms and intersecting enclosures") {
    for (PairTag tag : all_pairs()) {
        const auto& pair = pair_registry(tag);
        auto base = approx_triple_k(pair, smallest_k(tag));
        for (const auto& pt : kPoints) {
            for (long m = 0; m <= 2; ++m) {
                auto s = eval_forms(pair, base, m, pt, 128);
                CHECK(s.intersect);
                // h_i = Q * P_i(a/b) recomputed independently from the lifted polynomials
                LiftedTriple t = as_lifted(base);
                for (long j = 0; j < m; ++j) t = lift_once(pair, t);
                for (std::size_t i = 0; i < 3; ++i) {
                    Rational v = t.polys[i].eval(pt.value()) * s.Q;
                    CHECK(v.get_den() == 1);
                    CHECK(v.get_num() == s.h[i]);
                }
                CHECK(s.r_identity.relative_width_ok(128));
            }
        }
    }
}

TEST_CASE("remainder sign at b = 10") {
    for (PairTag tag : all_pairs()) {
        const auto& pair = pair_registry(tag);
        auto base = approx_triple_k(pair, smallest_k(tag));
        auto s = eval_forms(pair, base, 0, {1, 10});
        int lead = sgn(base.remainder[base.order.n]);
        CHECK(sgn(s.r_identity.lo) == lead);
        CHECK(sgn(s.r_identity.hi) == lead);
    }
}

TEST_CASE("non-integral forms are rejected") {
    // a term beyond the degree bound leaves Q * A(a/b) fractional
    const auto& st = pair_registry(PairTag::Stern);
    ApproxTriple t = approx_triple_k(st, 8);
    t.polys[0] = t.polys[0] + BigPoly::monomial(1, 40);
    CHECK_THROWS(eval_forms(st, t, 0, {1, 2}));
}

TEST_CASE("theoretical beta") {
    const auto& st = pair_registry(PairTag::Stern);
    CHECK(beta_theory_exact(st, 25, 77, 0) == frac(50, 27));
    CHECK(beta_theory(st, 25, 77, 0.0) == doctest::Approx(50.0 / 27.0));
}

TEST_CASE("hypothesis report for the Stern chain") {
    const auto& st = pair_registry(PairTag::Stern);
    ChainSpec chain = default_chain(PairTag::Stern);
    chain.ks = {25, 26};
    chain.orders = {77, 80};
    chain.dbar = {26, 27};
    auto rep = check_hypotheses(st, chain, {1, 2}, 2, 4, 128);
    CHECK(rep.q_ordering_ok);
    REQUIRE(rep.per_k.size() == 2);
    for (const auto& kr : rep.per_k) {
        CHECK(kr.rows.size() == 3);
        CHECK(kr.ls_slope == doctest::Approx(kr.beta_theory).epsilon(0.05));
        CHECK(kr.c_max / kr.c_min < 10.0);
    }
}

TEST_CASE("coupled pair product conditions") {
    auto rep = check_s4_conditions(16, {1, 2}, 1, 4);
    CHECK(rep.a0_zero);
    CHECK(rep.b0_nonzero);
    CHECK(rep.B0 == -1);
    CHECK(rep.c2_lo > 0);
    CHECK(rep.c2_hi <= rep.c1_lo);
    REQUIRE(rep.levels.size() == 4);
    CHECK(rep.levels[2].m == 3);
    CHECK(rep.levels[2].dominance_ok);
    CHECK(rep.m0.has_value());
    for (const auto& lv : rep.levels)
        if (lv.m >= *rep.m0) CHECK((lv.dominance_ok && lv.constant_ok && lv.product_ok));
}
