#include "mahler/polyseries.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mahler {

BigPoly::BigPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

BigPoly::BigPoly(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    trim();
}

BigPoly BigPoly::monomial(const Integer& c, std::size_t e) {
    std::vector<Integer> v(e + 1);
    v[e] = c;
    return BigPoly(std::move(v));
}

void BigPoly::trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Integer BigPoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }

Integer BigPoly::content() const {
    Integer g = 0;
    for (const auto& c : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

BigPoly BigPoly::primitive_part() const {
    if (is_zero()) return {};
    Integer g = content();
    if (sgn(leading()) < 0) g = -g;
    std::vector<Integer> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) mpz_divexact(v[i].get_mpz_t(), c_[i].get_mpz_t(), g.get_mpz_t());
    return BigPoly(std::move(v));
}

Rational BigPoly::eval(const Rational& x) const {
    // homogeneous Horner over the numerator and denominator of x
    const Integer& a = x.get_num();
    const Integer& b = x.get_den();
    if (c_.empty()) return 0;
    Integer acc = 0, bpow = 1;
    for (std::size_t i = c_.size(); i-- > 0;) {
        acc = acc * a + c_[i] * bpow;
        bpow *= b;
    }
    // acc = sum c_i a^i b^(n-1-i), bpow = b^n
    Integer den = bpow / b;
    Rational r(acc, den);
    r.canonicalize();
    return r;
}

Integer BigPoly::l1_norm() const {
    Integer s = 0;
    for (const auto& c : c_) s += abs(c);
    return s;
}

std::string BigPoly::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const Integer& c = c_[i];
        if (sgn(c) == 0) continue;
        Integer a = abs(c);
        if (first) {
            if (sgn(c) < 0) os << "-";
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0 || a != 1) os << a.get_str();
        if (i >= 1) os << "z";
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

BigPoly operator+(const BigPoly& p, const BigPoly& q) {
    std::vector<Integer> v(std::max(p.size(), q.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = p.coeff(i) + q.coeff(i);
    return BigPoly(std::move(v));
}

BigPoly operator-(const BigPoly& p) {
    std::vector<Integer> v(p.coeffs());
    for (auto& c : v) c = -c;
    return BigPoly(std::move(v));
}

BigPoly operator-(const BigPoly& p, const BigPoly& q) { return p + (-q); }

BigPoly operator*(const Integer& c, const BigPoly& p) {
    std::vector<Integer> v(p.coeffs());
    for (auto& x : v) x *= c;
    return BigPoly(std::move(v));
}

BigPoly poly_mul(const BigPoly& p, const BigPoly& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<Integer> v(p.size() + q.size() - 1);
    const auto& a = p.coeffs();
    const auto& b = q.coeffs();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(v[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    return BigPoly(std::move(v));
}

BigPoly poly_compose_power(const BigPoly& p, long d) {
    if (d < 2) throw std::invalid_argument("poly_compose_power: d must be >= 2");
    if (p.is_zero()) return {};
    std::vector<Integer> v(static_cast<std::size_t>(p.degree()) * d + 1);
    for (std::size_t i = 0; i < p.size(); ++i) v[i * d] = p.coeffs()[i];
    return BigPoly(std::move(v));
}

namespace {

// pseudo-remainder of p by q (deg p >= deg q), scaled by a power of lc(q)
BigPoly pseudo_rem(BigPoly p, const BigPoly& q) {
    const Integer& lq = q.leading();
    while (!p.is_zero() && p.degree() >= q.degree()) {
        Integer lp = p.leading();
        auto shift = static_cast<std::size_t>(p.degree() - q.degree());
        p = lq * p - poly_mul(BigPoly::monomial(lp, shift), q);
    }
    return p;
}

}  // namespace

BigPoly poly_gcd(const BigPoly& p, const BigPoly& q) {
    if (p.is_zero() && q.is_zero()) throw std::invalid_argument("poly_gcd: both polynomials are zero");
    if (p.is_zero()) return q.primitive_part();
    if (q.is_zero()) return p.primitive_part();
    BigPoly a = p.primitive_part(), b = q.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        BigPoly r = pseudo_rem(a, b);
        a = std::move(b);
        b = r.is_zero() ? r : r.primitive_part();
    }
    return a.primitive_part();
}

BigPoly poly_divexact(const BigPoly& p, const BigPoly& q) {
    if (q.is_zero()) throw std::domain_error("poly_divexact: division by zero");
    if (p.is_zero()) return {};
    if (p.degree() < q.degree()) throw std::domain_error("poly_divexact: not divisible");
    std::vector<Integer> rem(p.coeffs());
    std::vector<Integer> quo(static_cast<std::size_t>(p.degree() - q.degree()) + 1);
    const auto& qc = q.coeffs();
    const Integer& lq = q.leading();
    for (std::size_t k = quo.size(); k-- > 0;) {
        Integer& top = rem[k + qc.size() - 1];
        if (!mpz_divisible_p(top.get_mpz_t(), lq.get_mpz_t())) throw std::domain_error("poly_divexact: not divisible");
        mpz_divexact(quo[k].get_mpz_t(), top.get_mpz_t(), lq.get_mpz_t());
        for (std::size_t j = 0; j < qc.size(); ++j) mpz_submul(rem[k + j].get_mpz_t(), quo[k].get_mpz_t(), qc[j].get_mpz_t());
    }
    for (const auto& r : rem)
        if (sgn(r) != 0) throw std::domain_error("poly_divexact: not divisible");
    return BigPoly(std::move(quo));
}

BigPoly poly_lcm(const BigPoly& p, const BigPoly& q) {
    if (p.is_zero() || q.is_zero()) return {};
    return poly_divexact(poly_mul(p.primitive_part(), q.primitive_part()), poly_gcd(p, q)).primitive_part();
}

TruncSeries::TruncSeries(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {}

TruncSeries TruncSeries::zero(std::size_t valid_len) { return TruncSeries(std::vector<Rational>(valid_len)); }

TruncSeries TruncSeries::from_poly(const BigPoly& p, std::size_t valid_len) {
    std::vector<Rational> v(valid_len);
    for (std::size_t i = 0; i < std::min(valid_len, p.size()); ++i) v[i] = p.coeffs()[i];
    return TruncSeries(std::move(v));
}

TruncSeries TruncSeries::from_integers(const std::vector<Integer>& c) {
    std::vector<Rational> v(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) v[i] = c[i];
    return TruncSeries(std::move(v));
}

bool TruncSeries::is_integral() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q.get_den() == 1; });
}

TruncSeries TruncSeries::truncated(std::size_t n) const {
    if (n > c_.size()) throw std::out_of_range("TruncSeries::truncated: beyond valid_len");
    return TruncSeries(std::vector<Rational>(c_.begin(), c_.begin() + static_cast<long>(n)));
}

TruncSeries series_add(const TruncSeries& a, const TruncSeries& b) {
    std::size_t n = std::min(a.valid_len(), b.valid_len());
    std::vector<Rational> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = a[i] + b[i];
    return TruncSeries(std::move(v));
}

TruncSeries series_neg(const TruncSeries& a) {
    std::vector<Rational> v(a.coeffs());
    for (auto& x : v) x = -x;
    return TruncSeries(std::move(v));
}

TruncSeries series_sub(const TruncSeries& a, const TruncSeries& b) { return series_add(a, series_neg(b)); }

namespace {

// Cauchy product of two integer sequences truncated to n terms
std::vector<Integer> int_conv(const std::vector<const Integer*>& a, const std::vector<const Integer*>& b, std::size_t n) {
    std::vector<Integer> out(n);
    for (std::size_t i = 0; i < std::min(n, a.size()); ++i) {
        if (sgn(*a[i]) == 0) continue;
        std::size_t lim = std::min(b.size(), n - i);
        for (std::size_t j = 0; j < lim; ++j) mpz_addmul(out[i + j].get_mpz_t(), a[i]->get_mpz_t(), b[j]->get_mpz_t());
    }
    return out;
}

std::vector<const Integer*> numerators(const TruncSeries& s) {
    std::vector<const Integer*> v(s.valid_len());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = &s[i].get_num();
    return v;
}

}  // namespace

TruncSeries series_mul_trunc(const TruncSeries& a, const TruncSeries& b) {
    std::size_t n = std::min(a.valid_len(), b.valid_len());
    if (a.is_integral() && b.is_integral()) return TruncSeries::from_integers(int_conv(numerators(a), numerators(b), n));
    std::vector<Rational> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; i + j < n; ++j) v[i + j] += a[i] * b[j];
    }
    return TruncSeries(std::move(v));
}

TruncSeries series_mul_poly(const BigPoly& p, const TruncSeries& s) {
    std::size_t n = s.valid_len();
    if (s.is_integral()) {
        std::vector<const Integer*> pc(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) pc[i] = &p.coeffs()[i];
        return TruncSeries::from_integers(int_conv(pc, numerators(s), n));
    }
    std::vector<Rational> v(n);
    for (std::size_t i = 0; i < std::min(n, p.size()); ++i) {
        if (sgn(p.coeffs()[i]) == 0) continue;
        Rational c(p.coeffs()[i]);
        for (std::size_t j = 0; i + j < n; ++j) v[i + j] += c * s[j];
    }
    return TruncSeries(std::move(v));
}

TruncSeries series_compose_power(const TruncSeries& s, long d) {
    if (d < 1) throw std::invalid_argument("series_compose_power: d must be >= 1");
    std::vector<Rational> v(s.valid_len() * static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < s.valid_len(); ++i) v[i * d] = s[i];
    return TruncSeries(std::move(v));
}

std::string SeriesOrder::to_string() const {
    return (is_exact() ? "Exact(" : "AtLeast(") + std::to_string(n) + ")";
}

SeriesOrder series_order(const TruncSeries& s) {
    for (std::size_t i = 0; i < s.valid_len(); ++i)
        if (sgn(s[i]) != 0) return SeriesOrder::exact(i);
    return SeriesOrder::at_least(s.valid_len());
}

Rational frac(long n, long d) {
    if (d == 0) throw std::invalid_argument("frac: zero denominator");
    Rational r{Integer(n), Integer(d)};
    r.canonicalize();
    return r;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
    auto bad = [&] { return std::invalid_argument("not an exact rational (expected p or p/q): '" + text + "'"); };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    auto is_int = [](const std::string& s) {
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i >= s.size()) return false;
        return std::all_of(s.begin() + static_cast<long>(i), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+') throw bad();
    Integer n(num[0] == '+' ? num.substr(1) : num), d(den);
    if (d == 0) throw bad();
    Rational r(n, d);
    r.canonicalize();
    return r;
}

}  // namespace mahler
