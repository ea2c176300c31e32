#include "mahler/errors.hpp"
#include "mahler/families.hpp"

#include <doctest.h>

using namespace mahler;

namespace {

std::vector<long> as_longs(const std::vector<Integer>& v) {
    std::vector<long> out;
    for (const auto& x : v) out.push_back(x.get_si());
    return out;
}

long v3(long j) {
    long v = 0;
    while (j % 3 == 0) {
        j /= 3;
        ++v;
    }
    return v;
}

// Stern diatomic a_n from a_{2n} = a_n, a_{2n+1} = a_n + a_{n+1}
std::vector<long> stern_diatomic(std::size_t n) {
    std::vector<long> a(n + 2, 0);
    a[1] = 1;
    for (std::size_t i = 2; i < a.size(); ++i) a[i] = (i % 2 == 0) ? a[i / 2] : a[i / 2] + a[i / 2 + 1];
    return a;
}

}  // namespace

TEST_CASE("family coefficient examples") {
    CHECK(as_longs(family_integers(FamilyId::DilcherS, 20)) ==
          std::vector<long>{1, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 1, 1, 0, 1});
    CHECK(as_longs(family_integers(FamilyId::ThueMorseT, 4)) == std::vector<long>{1, -1, -1, 1});
    CHECK(as_longs(family_integers(FamilyId::SternA, 8)) == std::vector<long>{1, 1, 2, 1, 3, 2, 3, 1});
    CHECK(as_longs(family_integers(FamilyId::LambertG3, 10)) == std::vector<long>{0, 1, 1, 2, 1, 1, 2, 1, 1, 3});
    CHECK_THROWS(series_coeffs(FamilyId::SternA, 0));
}

TEST_CASE("Lambert series against the 3-adic valuation") {
    const std::size_t n = 729 + 1;
    auto g = family_integers(FamilyId::LambertG3, n);
    auto f = family_integers(FamilyId::LambertF3, n);
    CHECK(g[0] == 0);
    CHECK(f[0] == 0);
    for (std::size_t j = 1; j < n; ++j) {
        long l = static_cast<long>(j);
        CHECK(g[j] == v3(l) + 1);
        // z^e/(1+z^e) contributes (-1)^(j/e - 1) for every power e = 3^i dividing j
        long expect = 0;
        for (long e = 1; l % e == 0; e *= 3) expect += ((l / e) % 2 == 1) ? 1 : -1;
        CHECK(f[j] == expect);
    }
}

TEST_CASE("Stern and Thue-Morse series against their recursions") {
    const std::size_t n = 300;
    auto a = stern_diatomic(n);
    auto A = family_integers(FamilyId::SternA, n);
    for (std::size_t j = 0; j < n; ++j) CHECK(A[j] == a[j + 1]);

    // T(z) = prod (1 - z^{2^i}) has coefficients (-1)^{popcount}
    auto T = family_integers(FamilyId::ThueMorseT, n);
    for (std::size_t j = 0; j < n; ++j) CHECK(T[j] == ((__builtin_popcountl(j) % 2) ? -1 : 1));

    // m_0 = 0, m_1 = -m_2 = 1, m_{2n+1} = m_{2n}, m_{2n+2} = m_{2n+1} - m_{n+1}
    std::vector<Integer> Mref(n, 0);
    Mref[1] = 1;
    Mref[2] = -1;
    for (std::size_t j = 3; j < n; ++j) Mref[j] = (j % 2 == 1) ? Mref[j - 1] : Integer(Mref[j - 1] - Mref[j / 2]);
    CHECK(family_integers(FamilyId::ThueMorseM, n) == Mref);

    auto S = family_integers(FamilyId::DilcherS, n);
    auto S4 = family_integers(FamilyId::DilcherS4, 4 * n);
    for (std::size_t j = 0; j < 4 * n; ++j) CHECK(S4[j] == (j % 4 == 0 ? S[j / 4] : Integer(0)));
}

TEST_CASE("pair registry values") {
    const auto& st = pair_registry(PairTag::Stern);
    CHECK(st.is_scalar());
    CHECK(st.d == 2);
    CHECK(st.scalar.phi == BigPoly{1, 1, 1});
    CHECK(st.scalar.phi_hat2 == BigPoly{1});
    CHECK(st.scalar.psi_hat2 == BigPoly{-1});
    CHECK(st.v == 2);
    CHECK(st.e1 == 1);
    CHECK(st.e2 == 0);

    const auto& tm = pair_registry(PairTag::TM);
    CHECK(tm.v == 3);

    const auto& lg = pair_registry(PairTag::G3F3);
    CHECK(lg.d == 3);
    CHECK(lg.scalar.phi == BigPoly{1, 0, -1});
    CHECK(lg.scalar.phi_hat2 == BigPoly{1, -1});
    CHECK(lg.v == 2);
    CHECK(lg.e1 == 0);
    CHECK(lg.e2 == 0);

    const auto& ds = pair_registry(PairTag::DS);
    CHECK(!ds.is_scalar());
    CHECK(ds.d == 4);
    CHECK(ds.coupled.M[0][0] == BigPoly{});
    CHECK(ds.coupled.M[0][1] == BigPoly{1});
    CHECK(ds.coupled.M[1][0] == BigPoly{0, -1});
    CHECK(ds.coupled.M[1][1] == BigPoly{1, 1, 1});
    CHECK(ds.tau() == 2);

    CHECK(&pair_registry(FamilyId::SternA, FamilyId::SternB) == &st);
    CHECK_THROWS_AS(pair_registry(FamilyId::SternA, FamilyId::LambertG3), UnsupportedPair);
    CHECK_THROWS_AS(parse_pair("nope"), UnsupportedPair);
}

TEST_CASE("stored functional equations hold to 2000 terms") {
    for (PairTag t : all_pairs()) {
        auto orders = validate_equation(pair_registry(t), 2000);
        for (const auto& o : orders) CHECK(o == SeriesOrder::at_least(2000));
    }
    for (const auto& o : validate_equation(pair_registry(PairTag::DS), 500)) CHECK(o == SeriesOrder::at_least(500));
}

TEST_CASE("a wrong sign in the M equation is detected") {
    const auto& tm = pair_registry(PairTag::TM);
    auto M = series_coeffs(FamilyId::ThueMorseM, 200);
    ScalarMahlerEq eq = tm.scalar.eq_g;
    CHECK(scalar_residual_order(eq, M) == SeriesOrder::at_least(200));
    ScalarMahlerEq flipped = eq;
    flipped.phi2 = -eq.phi2;
    CHECK(scalar_residual_order(flipped, M).is_exact());
    ScalarMahlerEq flipped3 = eq;
    flipped3.phi3 = -eq.phi3;
    CHECK(scalar_residual_order(flipped3, M) == SeriesOrder::exact(1));
}
