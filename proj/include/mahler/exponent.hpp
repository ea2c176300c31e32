#pragma once

#include "mahler/families.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mahler {

struct ChainSpec {
    PairTag pair;
    std::vector<long> ks;
    std::vector<long> orders;
    std::vector<long> dbar;
    long d;
};

// The default chain per pair; orders are the tabulated values.
ChainSpec default_chain(PairTag pair);
// dbar for k under the pair's canonical shape
long chain_dbar(const MahlerPair& pair, long k);

struct BoundTerm {
    std::size_t j;  // 1-based
    Rational theta;
    Rational ratio;
};

struct BoundReport {
    PairTag pair;
    Rational lambda;
    std::vector<BoundTerm> per_j;
    Rational mu_bound;
    std::size_t argmax_j = 0;
    // positivity of all denominators holds for lambda below this value
    Rational lambda_threshold;
    // the range stated with the theorem (equal to lambda_threshold unless noted)
    Rational stated_threshold;
    bool condition_ii_ok = false;
    bool within_stated_range = true;
    std::optional<Rational> muL_bound;
    std::vector<std::string> warnings;
};

struct Lemma1Inputs {
    std::vector<Rational> theta, alpha, beta;
};

// max_j theta(j) (alpha(j+1) + 1) / beta(j) with alpha(t+1) := alpha(1)
Rational lemma1_mu(const std::vector<Rational>& theta, const std::vector<Rational>& alpha,
                   const std::vector<Rational>& beta);

// theta, alpha = beta built from the chain at delta = 0
Lemma1Inputs lemma1_inputs(const ChainSpec& chain, const Rational& lambda);

// min_j (o_j - ebar_j - tau/(d-1)) / o_j
Rational lambda_threshold(const ChainSpec& chain);

// Throws BoundDomainError unless 0 <= lambda < lambda_threshold.
BoundReport chain_bound(const ChainSpec& chain, const Rational& lambda);

// The coupled pair chain. Without allow_outside, lambda >= 178/291 is rejected.
BoundReport coupled_pair_bound(const Rational& lambda, bool allow_outside = false);

// Default chain for the pair, checked against the stated range unless allow_outside.
BoundReport pair_bound(PairTag pair, const Rational& lambda, bool allow_outside = false);
BoundReport pair_bound(const ChainSpec& chain, const Rational& lambda, bool allow_outside = false);

Rational stated_threshold(PairTag pair);

// 2/(2-U) - 2, U < 2
Rational transference_muL(const Rational& U);

// log|a| / log b, display only
double lambda_of_point(long a, long b);

}  // namespace mahler
