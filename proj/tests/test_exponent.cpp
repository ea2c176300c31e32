#include "mahler/errors.hpp"
#include "mahler/exponent.hpp"

#include <doctest.h>

using namespace mahler;

namespace {

Rational closed_form(PairTag tag, const Rational& l) {
    switch (tag) {
        case PairTag::Stern: return 80 * (1 - l) / (50 - 77 * l);
        case PairTag::TM: return 32 * (1 - l) / (17 - 26 * l);
        case PairTag::G3F3: return 36 * (1 - l) / (19 - 29 * l);
        case PairTag::DS: return 516 * (1 - l) / (253 - 381 * l);
    }
    return 0;
}

}  // namespace

TEST_CASE("bounds at lambda = 0") {
    CHECK(pair_bound(PairTag::Stern, 0).mu_bound == frac(8, 5));
    CHECK(pair_bound(PairTag::TM, 0).mu_bound == frac(32, 17));
    CHECK(pair_bound(PairTag::G3F3, 0).mu_bound == frac(36, 19));
    auto ds = coupled_pair_bound(0);
    CHECK(ds.mu_bound == frac(516, 253));
    CHECK(ds.argmax_j == 6);
    CHECK(!ds.muL_bound);
    CHECK(*pair_bound(PairTag::Stern, 0).muL_bound == 3);
}

TEST_CASE("closed forms inside the stated ranges") {
    for (PairTag tag : all_pairs()) {
        for (const Rational& l : {frac(0, 1), frac(1, 10), frac(1, 4), frac(1, 2), frac(3, 5)}) {
            if (l >= stated_threshold(tag)) {
                CHECK_THROWS_AS(pair_bound(tag, l), BoundDomainError);
                continue;
            }
            CHECK(pair_bound(tag, l).mu_bound == closed_form(tag, l));
        }
    }
    CHECK(pair_bound(PairTag::TM, frac(1, 4)).mu_bound == frac(16, 7));
    CHECK(pair_bound(PairTag::Stern, frac(1, 2)).mu_bound == frac(80, 23));
    CHECK(pair_bound(PairTag::DS, frac(1, 2)).mu_bound == frac(516, 125));
}

TEST_CASE("thresholds") {
    CHECK(lambda_threshold(default_chain(PairTag::Stern)) == frac(50, 77));
    CHECK(lambda_threshold(default_chain(PairTag::G3F3)) == frac(19, 29));
    CHECK(stated_threshold(PairTag::TM) == frac(1, 2));
    CHECK(stated_threshold(PairTag::DS) == frac(178, 291));
    CHECK_THROWS_AS(chain_bound(default_chain(PairTag::Stern), frac(50, 77)), BoundDomainError);
    CHECK_THROWS_AS(coupled_pair_bound(frac(178, 291)), BoundDomainError);
    auto r = coupled_pair_bound(frac(3, 5), true);
    CHECK(r.warnings.empty());
    auto outside = coupled_pair_bound(frac(5, 8), true);
    CHECK(!outside.within_stated_range);
    CHECK(!outside.warnings.empty());
}

TEST_CASE("lemma 1 formula") {
    CHECK(lemma1_mu({2}, {3}, {3}) == frac(8, 3));
    CHECK(lemma1_mu({1, 1}, {1, 1}, {1, 1}) == 2);
    CHECK_THROWS(lemma1_mu({1, 1}, {1}, {1, 1}));
    CHECK_THROWS(lemma1_mu({1}, {1}, {0}));
}

TEST_CASE("both code paths agree") {
    for (PairTag tag : all_pairs()) {
        ChainSpec chain = default_chain(tag);
        for (const Rational& l : {frac(0, 1), frac(1, 10), frac(1, 4)}) {
            if (l >= stated_threshold(tag)) continue;
            // theta, alpha = beta from the chain, rebuilt here by hand
            const MahlerPair& p = pair_registry(tag);
            Rational tp = Rational(p.tau()) / (p.d - 1);
            std::vector<Rational> th, be;
            const std::size_t t = chain.ks.size();
            auto eb = [&](std::size_t j) -> Rational { return Rational(chain.dbar[j] - p.e1) + tp; };
            for (std::size_t j = 0; j < t; ++j) {
                th.push_back(j + 1 < t ? Rational(eb(j + 1) / eb(j)) : Rational(p.d * eb(0) / eb(j)));
                be.push_back((1 - l) * chain.orders[j] / eb(j) - 1);
            }
            CHECK(lemma1_mu(th, be, be) == chain_bound(chain, l).mu_bound);
            Lemma1Inputs in = lemma1_inputs(chain, l);
            CHECK(in.theta == th);
            CHECK(in.beta == be);
        }
    }
}

TEST_CASE("monotone in lambda") {
    for (PairTag tag : all_pairs()) {
        Rational top = stated_threshold(tag);
        Rational prev = 0;
        for (int i = 0; i < 20; ++i) {
            Rational l = top * i / 20;
            l.canonicalize();
            Rational mu = pair_bound(tag, l).mu_bound;
            CHECK(mu >= prev);
            prev = mu;
        }
    }
}

TEST_CASE("transference") {
    CHECK(transference_muL(frac(8, 5)) == 3);
    CHECK(transference_muL(frac(32, 17)) == 15);
    CHECK(transference_muL(frac(36, 19)) == 17);
    CHECK(transference_muL(frac(3, 2)) == 2);
    CHECK_THROWS_AS(transference_muL(2), BoundDomainError);
    Rational prev = transference_muL(frac(3, 2));
    for (int i = 1; i < 20; ++i) {
        Rational u = frac(3, 2) + frac(i, 40);
        Rational v = transference_muL(u);
        CHECK(v > prev);
        prev = v;
    }
}
