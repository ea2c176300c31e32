#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace mahler {

using Integer = mpz_class;
using Rational = mpq_class;

// Dense polynomial over Z, coeffs[i] is the coefficient of z^i.
// The highest stored coefficient is nonzero; the zero polynomial is empty.
class BigPoly {
public:
    BigPoly() = default;
    explicit BigPoly(std::vector<Integer> coeffs);
    BigPoly(std::initializer_list<long> coeffs);

    static BigPoly monomial(const Integer& c, std::size_t e);

    bool is_zero() const { return c_.empty(); }
    // -1 for the zero polynomial
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    std::size_t size() const { return c_.size(); }
    const std::vector<Integer>& coeffs() const { return c_; }
    // zero beyond the stored range
    Integer coeff(std::size_t i) const;
    const Integer& leading() const { return c_.back(); }

    Integer content() const;
    BigPoly primitive_part() const;
    Rational eval(const Rational& x) const;
    // sum of |coefficients|
    Integer l1_norm() const;
    std::string to_string() const;

    friend bool operator==(const BigPoly&, const BigPoly&) = default;

private:
    void trim();
    std::vector<Integer> c_;
};

BigPoly operator+(const BigPoly& p, const BigPoly& q);
BigPoly operator-(const BigPoly& p, const BigPoly& q);
BigPoly operator-(const BigPoly& p);
BigPoly operator*(const Integer& c, const BigPoly& p);

BigPoly poly_mul(const BigPoly& p, const BigPoly& q);
inline BigPoly operator*(const BigPoly& p, const BigPoly& q) { return poly_mul(p, q); }

// p(z^d), d >= 2
BigPoly poly_compose_power(const BigPoly& p, long d);

// Primitive gcd with positive leading coefficient. Throws if both are zero.
BigPoly poly_gcd(const BigPoly& p, const BigPoly& q);
BigPoly poly_lcm(const BigPoly& p, const BigPoly& q);

// Exact quotient p / q over Z; throws std::domain_error if q does not divide p.
BigPoly poly_divexact(const BigPoly& p, const BigPoly& q);

class TruncSeries {
public:
    TruncSeries() = default;
    // valid_len == coeffs.size()
    explicit TruncSeries(std::vector<Rational> coeffs);
    static TruncSeries zero(std::size_t valid_len);
    static TruncSeries from_poly(const BigPoly& p, std::size_t valid_len);
    static TruncSeries from_integers(const std::vector<Integer>& c);

    std::size_t valid_len() const { return c_.size(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& operator[](std::size_t i) const { return c_[i]; }
    bool is_integral() const;
    TruncSeries truncated(std::size_t n) const;

    friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

private:
    std::vector<Rational> c_;
};

TruncSeries series_add(const TruncSeries& a, const TruncSeries& b);
TruncSeries series_sub(const TruncSeries& a, const TruncSeries& b);
TruncSeries series_neg(const TruncSeries& a);
TruncSeries series_mul_trunc(const TruncSeries& a, const TruncSeries& b);
// Polynomial times series; the polynomial is exact so valid_len is kept.
TruncSeries series_mul_poly(const BigPoly& p, const TruncSeries& s);
// s(z^d); valid_len grows to d * valid_len
TruncSeries series_compose_power(const TruncSeries& s, long d);

struct SeriesOrder {
    enum class Kind { Exact, AtLeast };
    Kind kind;
    std::size_t n;

    static SeriesOrder exact(std::size_t n) { return {Kind::Exact, n}; }
    static SeriesOrder at_least(std::size_t n) { return {Kind::AtLeast, n}; }
    bool is_exact() const { return kind == Kind::Exact; }
    std::string to_string() const;
    friend bool operator==(const SeriesOrder&, const SeriesOrder&) = default;
};

SeriesOrder series_order(const TruncSeries& s);

// canonical n/d
Rational frac(long n, long d);

std::string rational_to_string(const Rational& q);
// accepts "p" or "p/q"
Rational parse_rational(const std::string& text);

}  // namespace mahler
