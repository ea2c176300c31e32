#include "mahler/errors.hpp"
#include "mahler/verification.hpp"

#include <doctest.h>

#include <string>

using namespace mahler;

namespace {

const std::string kData = MAHLER_DATA_DIR;

std::size_t error_line(const std::string& text) {
    try {
        parse_fixtures(text);
    } catch (const FixtureError& e) {
        return e.line;
    }
    return 0;
}

}  // namespace

TEST_CASE("fixture files parse") {
    auto b = load_fixtures(kData + "/tm.txt");
    CHECK(b.pair == PairTag::TM);
    CHECK(b.poly_rows.size() == 9);
    CHECK(b.poly_rows.front().k == 8);
    CHECK(b.poly_rows.back().k == 16);
    auto a = load_fixtures(kData + "/stern_det.txt");
    CHECK(a.det_mode);
    CHECK(a.modulus == 49);
    CHECK(a.det_rows.size() == 45);
    CHECK(a.det_rows.front().k == 7);
    CHECK(a.det_rows.back().k == 51);
    auto all = load_fixture_dir(kData);
    std::size_t total = 0;
    for (const auto& s : all) total += s.size();
    CHECK(total == 70);
}

TEST_CASE("syntax errors carry line numbers") {
    CHECK_THROWS_AS(parse_fixtures(""), FixtureError);
    CHECK(error_line("pair=tm shape=k,k,k+1\nk=8 o=32\nA: 1 x\nB: 1\n") == 3);
    CHECK(error_line("pair=tm shape=k,k,k+1\nk=8 o=32\nA: 1\nB: 1\nk=8 o=32\nA: 1\nB: 1\n") == 5);
    CHECK(error_line("pair=tm shape=k,k,k+1\nk=9 o=32\nA: 1\nB: 1\nk=8 o=32\nA: 1\nB: 1\n") == 5);
    CHECK(error_line("pair=tm shape=k,k,k+1\nk=8 o=32\nB: 1\n") == 3);
    CHECK(error_line("pair=zz shape=k,k,k\nk=8 o=1\nA: 1\nB: 1\n") == 1);
    CHECK(error_line("pair=stern mode=det mod=49\nk=7 det=37\nk=8 det=1.5\n") == 3);
    CHECK(error_line("pair=stern mode=det mod=49\nk=7 det=60\n") == 2);
}

TEST_CASE("every tabulated row passes") {
    for (const auto& set : load_fixture_dir(kData)) {
        auto res = verify_fixture_set(set, 2);
        REQUIRE(res.size() == set.size());
        for (std::size_t i = 0; i < res.size(); ++i) {
            INFO(set.source << " k=" << res[i].k << ": " << res[i].message);
            CHECK(res[i].pass);
        }
    }
}

TEST_CASE("a perturbed coefficient fails and is named") {
    auto set = load_fixtures(kData + "/tm.txt");
    PolyRow row = set.poly_rows.front();
    auto c = row.B.coeffs();
    c[3] += 1;
    row.B = BigPoly(c);
    const auto& tm = pair_registry(PairTag::TM);
    ApproxTriple live = approx_triple_k(tm, row.k);
    auto r = verify_fixture_row(set, row, live);
    CHECK(!r.pass);
    CHECK(r.mismatch_index == 9 + 3);
    CHECK(r.message.find("B[3]") != std::string::npos);

    // a global sign flip is accepted, a flip of B alone is not
    PolyRow neg = set.poly_rows.front();
    neg.A = -neg.A;
    neg.B = -neg.B;
    CHECK(verify_fixture_row(set, neg, live).pass);
    PolyRow half = set.poly_rows.front();
    half.B = -half.B;
    CHECK(!verify_fixture_row(set, half, live).pass);
}

TEST_CASE("a perturbed row in a degenerate kernel fails on its order") {
    auto set = load_fixtures(kData + "/g3f3.txt");
    PolyRow row = set.poly_rows.front();
    auto c = row.A.coeffs();
    c[0] += 1;
    row.A = BigPoly(c);
    ApproxTriple live = approx_triple_k(pair_registry(PairTag::G3F3), row.k);
    REQUIRE(live.admissible_dim > 1);
    auto r = verify_fixture_row(set, row, live);
    CHECK(!r.pass);
    PolyRow wrong_o = set.poly_rows.front();
    wrong_o.o += 1;
    CHECK(!verify_fixture_row(set, wrong_o, live).pass);
}

TEST_CASE("determinant rows compare residues") {
    auto set = load_fixtures(kData + "/stern_det.txt");
    CHECK(verify_fixture_row(set, set.det_rows[0], Integer(37 + 49 * 5)).pass);
    CHECK(!verify_fixture_row(set, set.det_rows[0], Integer(36)).pass);
    CHECK(verify_fixture_row(set, set.det_rows[0], Integer(37 - 49 * 3)).pass);
}
