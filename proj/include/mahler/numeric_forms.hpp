#pragma once

#include "mahler/exponent.hpp"
#include "mahler/iteration.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace mahler {

struct RationalPoint {
    Integer a, b;
    Rational value() const;
    Rational abs_value() const;
};

// Throws InvalidPoint unless gcd(|a|,b) = 1, b >= 2, 0 < |a| < b and no power
// (a/b)^l is a zero of one of the pair's excluded factors.
void validate_point(const MahlerPair& pair, const RationalPoint& pt);
// same check against an explicit factor list
void validate_point(const std::vector<BigPoly>& factors, const RationalPoint& pt);

struct Interval {
    Rational lo, hi;

    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return contains(0); }
    bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
    // width <= |mid| * 2^-bits and the interval excludes zero
    bool relative_width_ok(long bits) const;
};

// Proven monotone bound |c_j| <= K (j+1)^p, or K rho^j when geometric.
struct CoeffBound {
    bool geometric = false;
    Rational K = 1;
    long p = 0;
    Rational rho = 1;

    Rational at(std::size_t j) const;
    // upper bound for sum_{j >= N} bound(j) x^j, 0 < x < 1
    Rational tail(std::size_t N, const Rational& x) const;
};

CoeffBound coefficient_bound(FamilyId id, const Rational& x_abs);

// f(x) enclosed by the first N terms plus the tail bound
Interval family_value(FamilyId id, const Rational& x, std::size_t N);

struct LinearFormSample {
    long k = -1;
    long m = 0;
    Rational q_exponent;
    Integer Q;
    std::array<Integer, 3> h;
    Interval r_identity;   // h_a f(x) + h_b g(x) + h_c
    Interval r_remainder;  // Q R_{k,m}(x)
    std::size_t truncation = 0;
    bool intersect = false;
};

// q = (ebar + tau/(d-1)) d^m - tau/(d-1)
Rational q_exponent(const MahlerPair& pair, long ebar_k, long m);

// Lifts the base triple m times, evaluates at a/b and encloses r two ways.
// Throws NonIntegralForm or EnclosureMismatch.
LinearFormSample eval_forms(const MahlerPair& pair, const ApproxTriple& base, long m, const RationalPoint& pt,
                            long precision_bits = 256);

struct HypothesisRow {
    long k;
    long m;
    double log_Q;
    double log_abs_r;
    double h_over_Q;     // max|h_i| / Q
    double exponent;     // -log|r| / log Q
    std::optional<double> slope;  // successive slope against the previous m
};

struct HypothesisKReport {
    long k;
    long order;
    double beta_theory;
    double c_min, c_max;
    double exp_min, exp_max;
    double ls_slope = 0;  // least squares slope of -log|r| against log Q
    std::vector<HypothesisRow> rows;
};

struct HypothesisReport {
    PairTag pair;
    RationalPoint pt;
    double lambda;
    bool q_ordering_ok = false;
    std::vector<HypothesisKReport> per_k;
};

// beta(k) = ((1-lambda) o - ebar - tau/(d-1)) / (ebar + tau/(d-1))
double beta_theory(const MahlerPair& pair, long ebar_k, long order, double lambda);
Rational beta_theory_exact(const MahlerPair& pair, long ebar_k, long order, const Rational& lambda);

HypothesisReport check_hypotheses(const MahlerPair& pair, const ChainSpec& chain, const RationalPoint& pt, long m_lo,
                                  long m_hi, long precision_bits = 256);

struct S4Level {
    long m;
    bool dominance_ok;  // |A_k(z^{4^m})| <= |z|^{2 4^{m-1}} |B_k(z^{4^m})| at z = +-|a|/b
    bool constant_ok;   // |B_k(0)|/2 <= |B_k(z^{4^m})| <= 3|B_k(0)|/2 at z = +-|a|/b
    bool product_ok;    // c2 <= |B_{k,m}(a/b)| <= c1
    Rational abs_B_km;
};

struct S4Report {
    long k;
    bool a0_zero = false;
    bool b0_nonzero = false;
    Integer B0;
    // c1 lies in [c1_lo, c1_hi], c2 in [c2_lo, c2_hi]
    Rational c1_lo, c1_hi, c2_lo, c2_hi;
    std::size_t product_terms = 0;
    std::vector<S4Level> levels;
    std::optional<long> m0;  // smallest m from which every level up to m_hi passes
};

// Product constants with a proven tail bound.
void s4_constants(const Integer& B0, const Rational& y, Rational& c1_lo, Rational& c1_hi, Rational& c2_lo,
                  Rational& c2_hi, std::size_t& terms);

S4Report check_s4_conditions(long k, const RationalPoint& pt, long m_lo, long m_hi);

double log_abs(const Rational& q);

}  // namespace mahler
