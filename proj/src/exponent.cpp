#include "mahler/exponent.hpp"

#include "mahler/errors.hpp"
#include "mahler/hermite_pade.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace mahler {

long chain_dbar(const MahlerPair& pair, long k) {
    return k + *std::max_element(pair.shape_offsets.begin(), pair.shape_offsets.end());
}

ChainSpec default_chain(PairTag pair) {
    const MahlerPair& p = pair_registry(pair);
    ChainSpec c{pair, {}, {}, {}, p.d};
    switch (pair) {
        case PairTag::Stern:
            for (long k = 25; k <= 51; ++k) {
                c.ks.push_back(k);
                c.orders.push_back(3 * k + 2);
            }
            break;
        case PairTag::TM:
            c.ks = {8, 9, 10, 11, 12, 13, 14, 15, 16};
            c.orders = {32, 32, 33, 36, 39, 42, 45, 48, 52};
            break;
        case PairTag::G3F3:
            c.ks = {9, 10, 13, 18, 22, 26};
            c.orders = {29, 36, 45, 56, 70, 80};
            break;
        case PairTag::DS:
            c.ks = {16, 21, 27, 32, 37, 42, 47, 52, 57, 63};
            c.orders = {64, 64, 82, 108, 112, 127, 172, 172, 172, 190};
            break;
    }
    for (long k : c.ks) c.dbar.push_back(chain_dbar(p, k));
    return c;
}

Rational stated_threshold(PairTag pair) {
    switch (pair) {
        case PairTag::Stern: return frac(50, 77);
        case PairTag::TM: return frac(1, 2);
        case PairTag::G3F3: return frac(19, 29);
        case PairTag::DS: return frac(178, 291);
    }
    return 0;
}

Rational lemma1_mu(const std::vector<Rational>& theta, const std::vector<Rational>& alpha,
                   const std::vector<Rational>& beta) {
    const std::size_t t = theta.size();
    if (t == 0 || alpha.size() != t || beta.size() != t) throw std::invalid_argument("lemma1_mu: length mismatch");
    Rational best;
    for (std::size_t j = 0; j < t; ++j) {
        if (sgn(beta[j]) <= 0) throw std::invalid_argument("lemma1_mu: nonpositive beta");
        Rational r = theta[j] * (alpha[(j + 1) % t] + 1) / beta[j];
        if (j == 0 || r > best) best = r;
    }
    return best;
}

namespace {

void check_chain(const ChainSpec& c) {
    if (c.ks.empty() || c.orders.size() != c.ks.size() || c.dbar.size() != c.ks.size())
        throw std::invalid_argument("chain lists must be nonempty and of equal length");
    for (std::size_t j = 1; j < c.ks.size(); ++j)
        if (c.ks[j] <= c.ks[j - 1]) throw std::invalid_argument("chain ks must be strictly increasing");
}

// tau / (d - 1)
Rational tau_prime(const MahlerPair& p) { return frac(p.tau(), p.d - 1); }

Rational ebar_of(const MahlerPair& p, const ChainSpec& c, std::size_t j) { return Rational(c.dbar[j] - p.e1); }

}  // namespace

Lemma1Inputs lemma1_inputs(const ChainSpec& chain, const Rational& lambda) {
    check_chain(chain);
    const MahlerPair& p = pair_registry(chain.pair);
    const Rational tp = tau_prime(p);
    const std::size_t t = chain.ks.size();
    Lemma1Inputs in;
    for (std::size_t j = 0; j < t; ++j) {
        Rational cur = ebar_of(p, chain, j) + tp;
        Rational next = (j + 1 < t) ? Rational(ebar_of(p, chain, j + 1) + tp) : Rational(chain.d * (ebar_of(p, chain, 0) + tp));
        in.theta.push_back(next / cur);
        Rational a = (1 - lambda) * chain.orders[j] / cur - 1;
        in.alpha.push_back(a);
        in.beta.push_back(a);
    }
    return in;
}

Rational lambda_threshold(const ChainSpec& chain) {
    check_chain(chain);
    const MahlerPair& p = pair_registry(chain.pair);
    const Rational tp = tau_prime(p);
    Rational best;
    for (std::size_t j = 0; j < chain.ks.size(); ++j) {
        Rational v = (chain.orders[j] - ebar_of(p, chain, j) - tp) / chain.orders[j];
        if (j == 0 || v < best) best = v;
    }
    return best;
}

namespace {

BoundReport compute_bound(const ChainSpec& chain, const Rational& lambda) {
    check_chain(chain);
    const MahlerPair& p = pair_registry(chain.pair);
    if (sgn(lambda) < 0 || lambda >= 1) throw BoundDomainError("lambda must lie in [0,1)");
    BoundReport rep;
    rep.pair = chain.pair;
    rep.lambda = lambda;
    rep.lambda_threshold = lambda_threshold(chain);
    rep.stated_threshold = stated_threshold(chain.pair);
    if (lambda >= rep.lambda_threshold)
        throw BoundDomainError("lambda " + lambda.get_str() + " is not below the threshold " +
                               rep.lambda_threshold.get_str() + "; bound denominators are nonpositive");
    const Rational tp = tau_prime(p);
    const std::size_t t = chain.ks.size();
    Lemma1Inputs in = lemma1_inputs(chain, lambda);
    for (std::size_t j = 0; j < t; ++j) {
        Rational next_o = (j + 1 < t) ? Rational(chain.orders[j + 1]) : Rational(chain.d * chain.orders[0]);
        Rational den = (1 - lambda) * chain.orders[j] - ebar_of(p, chain, j) - tp;
        Rational ratio = (1 - lambda) * next_o / den;
        rep.per_j.push_back({j + 1, in.theta[j], ratio});
        if (j == 0 || ratio > rep.mu_bound) {
            rep.mu_bound = ratio;
            rep.argmax_j = j + 1;
        }
    }
    long lhs = chain.d * chain.dbar.front() + p.v - chain.dbar.back();
    long rhs = (chain.d - 1) * p.e1 + p.e2;
    rep.condition_ii_ok = lhs > rhs;
    if (!rep.condition_ii_ok) rep.warnings.push_back("condition (ii) fails for this chain");
    if (rep.mu_bound < 2) rep.muL_bound = transference_muL(rep.mu_bound);
    rep.within_stated_range = lambda < rep.stated_threshold;
    return rep;
}

}  // namespace

BoundReport chain_bound(const ChainSpec& chain, const Rational& lambda) { return compute_bound(chain, lambda); }

BoundReport pair_bound(const ChainSpec& chain, const Rational& lambda, bool allow_outside) {
    Rational stated = stated_threshold(chain.pair);
    if (lambda >= stated && !allow_outside)
        throw BoundDomainError("lambda " + lambda.get_str() + " is outside the stated range [0, " + stated.get_str() + ")");
    BoundReport rep = compute_bound(chain, lambda);
    if (!rep.within_stated_range)
        rep.warnings.push_back("lambda is outside the stated range [0, " + stated.get_str() +
                               "); maximum attained at j=" + std::to_string(rep.argmax_j));
    return rep;
}

BoundReport pair_bound(PairTag pair, const Rational& lambda, bool allow_outside) {
    return pair_bound(default_chain(pair), lambda, allow_outside);
}

BoundReport coupled_pair_bound(const Rational& lambda, bool allow_outside) {
    return pair_bound(default_chain(PairTag::DS), lambda, allow_outside);
}

Rational transference_muL(const Rational& U) {
    if (U >= 2) throw BoundDomainError("transference needs U < 2");
    return Rational(2) / (2 - U) - 2;
}

double lambda_of_point(long a, long b) {
    if (b < 2 || a == 0) throw std::invalid_argument("need b >= 2 and a != 0");
    return std::log(static_cast<double>(std::labs(a))) / std::log(static_cast<double>(b));
}

}  // namespace mahler
