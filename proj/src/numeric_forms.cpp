#include "mahler/numeric_forms.hpp"

#include "mahler/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mahler {

namespace {

constexpr std::size_t kMaxTruncation = std::size_t{1} << 16;

Rational qpow(const Rational& x, unsigned long e) {
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), x.get_num_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), x.get_den_mpz_t(), e);
    return Rational(n, d);
}

Integer ipow(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Interval scale(const Interval& iv, const Integer& c) {
    Rational lo = iv.lo * c, hi = iv.hi * c;
    if (sgn(c) < 0) std::swap(lo, hi);
    return {lo, hi};
}

Interval add(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Rational prefix_value(const std::vector<Integer>& c, std::size_t n, const Rational& x) {
    n = std::min(n, c.size());
    return BigPoly(std::vector<Integer>(c.begin(), c.begin() + static_cast<long>(n))).eval(x);
}

std::vector<Integer> series_integers(const TruncSeries& s) {
    if (!s.is_integral()) throw MahlerError("expected an integral series");
    std::vector<Integer> v(s.valid_len());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = s[i].get_num();
    return v;
}

LiftedTriple lift_to(const MahlerPair& pair, const ApproxTriple& base, long m, std::size_t base_len) {
    ApproxTriple b = base;
    b.remainder = base_remainder(pair, base, base_len);
    LiftedTriple t = as_lifted(b);
    for (long j = 0; j < m; ++j) t = lift_once(pair, t);
    return t;
}

}  // namespace

double log_abs(const Rational& q) {
    if (sgn(q) == 0) return -INFINITY;
    long en, ed;
    double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
    double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
    return std::log(std::fabs(mn)) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
}

Rational RationalPoint::value() const {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

Rational RationalPoint::abs_value() const { return abs(value()); }

void validate_point(const std::vector<BigPoly>& factors, const RationalPoint& pt) {
    if (pt.b < 2) throw InvalidPoint("b must be at least 2");
    if (pt.a == 0 || abs(pt.a) >= pt.b) throw InvalidPoint("need 0 < |a| < b");
    Integer g;
    mpz_gcd(g.get_mpz_t(), pt.a.get_mpz_t(), pt.b.get_mpz_t());
    if (g != 1) throw InvalidPoint("a and b must be coprime");
    const Rational x = pt.value();
    for (const BigPoly& p : factors) {
        // strip the power of z; remaining zeros have modulus >= |q0| / (|q0| + max|q_i|)
        std::size_t j = 0;
        while (j < p.size() && sgn(p.coeffs()[j]) == 0) ++j;
        if (j + 1 >= p.size()) continue;
        BigPoly q(std::vector<Integer>(p.coeffs().begin() + static_cast<long>(j), p.coeffs().end()));
        Integer mx = 0;
        for (std::size_t i = 1; i < q.size(); ++i) mx = std::max(mx, Integer(abs(q.coeffs()[i])));
        Integer q0 = abs(q.coeffs()[0]);
        Rational lower(q0, q0 + mx);
        lower.canonicalize();
        Rational xl = x;
        for (unsigned long l = 1; abs(xl) >= lower; ++l, xl *= x)
            if (sgn(q.eval(xl)) == 0)
                throw InvalidPoint("(a/b)^" + std::to_string(l) + " is a zero of " + p.to_string());
    }
}

void validate_point(const MahlerPair& pair, const RationalPoint& pt) { validate_point(pair.excluded_factors, pt); }

bool Interval::relative_width_ok(long bits) const {
    if (contains_zero()) return false;
    Rational w = width();
    mpq_mul_2exp(w.get_mpq_t(), w.get_mpq_t(), static_cast<unsigned long>(bits));
    return w <= abs(mid());
}

Rational CoeffBound::at(std::size_t j) const {
    if (geometric) return K * qpow(rho, j);
    return K * Rational(ipow(Integer(j + 1), static_cast<unsigned long>(p)));
}

Rational CoeffBound::tail(std::size_t N, const Rational& x) const {
    if (geometric) {
        Rational r = rho * x;
        if (r >= 1) throw MahlerError("geometric tail diverges");
        return K * qpow(r, N) / (1 - r);
    }
    Rational q = qpow(Rational(Integer(N + 2), Integer(N + 1)), static_cast<unsigned long>(p)) * x;
    if (q >= 1) throw MahlerError("tail ratio not below 1; truncation too short");
    return K * Rational(ipow(Integer(N + 1), static_cast<unsigned long>(p))) * qpow(x, N) / (1 - q);
}

CoeffBound coefficient_bound(FamilyId id, const Rational& x_abs) {
    CoeffBound cb;
    switch (id) {
        case FamilyId::SternA:
        case FamilyId::SternB:
        case FamilyId::LambertG3:
        case FamilyId::LambertF3:
            // a_{j+1} <= j+1, |b_n| <= a_n, v_3(j)+1 <= j+1
            cb.p = 1;
            return cb;
        case FamilyId::ThueMorseT:
        case FamilyId::DilcherS:
        case FamilyId::DilcherS4:
            return cb;
        case FamilyId::ThueMorseM: {
            // m_n = [n=1] - sum_{i<=n/2} m_i gives |m_n| <= K rho^n once
            // rho^{ceil(n/2)-1} (rho-1) >= 1
            if (sgn(x_abs) <= 0 || x_abs >= 1) throw MahlerError("need 0 < |x| < 1");
            cb.geometric = true;
            cb.rho = (1 / x_abs + 1) / 2;
            std::size_t n0 = 2;
            while (qpow(cb.rho, (n0 + 1) / 2 - 1) * (cb.rho - 1) < 1) ++n0;
            auto m = family_integers(FamilyId::ThueMorseM, n0 + 1);
            cb.K = 0;
            Rational rp = 1;
            for (std::size_t i = 1; i < n0; ++i) {
                rp *= cb.rho;
                Rational v = Rational(abs(m[i])) / rp;
                if (v > cb.K) cb.K = v;
            }
            return cb;
        }
    }
    throw MahlerError("no coefficient bound for family");
}

Interval family_value(FamilyId id, const Rational& x, std::size_t N) {
    const Rational y = abs(x);
    Rational s = prefix_value(family_integers(id, N), N, x);
    Rational t = coefficient_bound(id, y).tail(N, y);
    return {s - t, s + t};
}

Rational q_exponent(const MahlerPair& pair, long ebar_k, long m) {
    Rational tp = frac(pair.tau(), pair.d - 1);
    Integer dm;
    mpz_ui_pow_ui(dm.get_mpz_t(), static_cast<unsigned long>(pair.d), static_cast<unsigned long>(m));
    return (ebar_k + tp) * Rational(dm) - tp;
}

LinearFormSample eval_forms(const MahlerPair& pair, const ApproxTriple& base, long m, const RationalPoint& pt,
                            long precision_bits) {
    validate_point(pair, pt);
    if (base.pair != pair.tag) throw std::invalid_argument("triple belongs to a different pair");
    if (!base.order.is_exact()) throw std::invalid_argument("base triple has no exact order");
    if (m < 0) throw std::invalid_argument("m must be nonnegative");
    const long eb = ebar(pair, base.shape);
    LinearFormSample s;
    s.k = base.k;
    s.m = m;
    s.q_exponent = q_exponent(pair, eb, m);
    if (s.q_exponent.get_den() != 1 || sgn(s.q_exponent) < 0)
        throw NonIntegralForm("Q exponent " + s.q_exponent.get_str() + " is not a nonnegative integer");
    s.Q = ipow(pt.b, s.q_exponent.get_num().get_ui());

    const Rational x = pt.value();
    const Rational y = abs(x);
    Integer dm;
    mpz_ui_pow_ui(dm.get_mpz_t(), static_cast<unsigned long>(pair.d), static_cast<unsigned long>(m));
    const std::size_t ord_m = Integer(Integer(base.order.n) * dm).get_ui();
    const std::size_t dmu = dm.get_ui();

    LiftedTriple lifted = lift_to(pair, base, m, 1);
    for (std::size_t i = 0; i < 3; ++i) {
        Rational v = lifted.polys[i].eval(x) * s.Q;
        if (v.get_den() != 1)
            throw NonIntegralForm("Q*" + std::string(1, "ABC"[i]) + "(a/b) is not an integer (degree " +
                                  std::to_string(lifted.polys[i].degree()) + " > q = " + s.q_exponent.get_str() + ")");
        s.h[i] = v.get_num();
    }

    const CoeffBound bf = coefficient_bound(pair.f, y), bg = coefficient_bound(pair.g, y);
    std::size_t N = std::max<std::size_t>(ord_m + 64, static_cast<std::size_t>(lifted.C().degree() + 2));
    for (;;) {
        // remainder path: lifted R summed to N terms plus the tail of A f + B g
        std::size_t L0 = (N + dmu - 1) / dmu;
        LiftedTriple t = lift_to(pair, base, m, L0);
        Rational rs = prefix_value(series_integers(t.remainder), N, x);
        Rational rt = Rational(t.A().l1_norm()) * bf.tail(N, y) + Rational(t.B().l1_norm()) * bg.tail(N, y);
        s.r_remainder = {(rs - rt) * s.Q, (rs + rt) * s.Q};

        // identity path: h_a f(x) + h_b g(x) + h_c
        Interval fi = family_value(pair.f, x, N), gi = family_value(pair.g, x, N);
        s.r_identity = add(add(scale(fi, s.h[0]), scale(gi, s.h[1])), Interval{Rational(s.h[2]), Rational(s.h[2])});
        s.truncation = N;
        if (s.r_remainder.relative_width_ok(precision_bits) && s.r_identity.relative_width_ok(precision_bits)) break;
        if (N >= kMaxTruncation)
            throw EnclosureMismatch("precision target of " + std::to_string(precision_bits) +
                                    " bits not reached within the truncation cap");
        N = std::min(kMaxTruncation, N + N / 2);
    }
    s.intersect = s.r_identity.intersects(s.r_remainder);
    if (!s.intersect) throw EnclosureMismatch("identity and remainder enclosures are disjoint");
    return s;
}

double beta_theory(const MahlerPair& pair, long ebar_k, long order, double lambda) {
    double tp = static_cast<double>(pair.tau()) / static_cast<double>(pair.d - 1);
    return ((1 - lambda) * static_cast<double>(order) - static_cast<double>(ebar_k) - tp) / (static_cast<double>(ebar_k) + tp);
}

Rational beta_theory_exact(const MahlerPair& pair, long ebar_k, long order, const Rational& lambda) {
    Rational tp = frac(pair.tau(), pair.d - 1);
    return ((1 - lambda) * order - ebar_k - tp) / (ebar_k + tp);
}

HypothesisReport check_hypotheses(const MahlerPair& pair, const ChainSpec& chain, const RationalPoint& pt, long m_lo,
                                  long m_hi, long precision_bits) {
    validate_point(pair, pt);
    if (m_lo < 0 || m_hi < m_lo) throw std::invalid_argument("bad m range");
    HypothesisReport rep;
    rep.pair = pair.tag;
    rep.pt = pt;
    rep.lambda = lambda_of_point(pt.a.get_si(), pt.b.get_si());
    const double logb = std::log(pt.b.get_d());

    // Q_{k_j,m} < Q_{k_{j+1},m} < Q_{k_1,m+1}
    rep.q_ordering_ok = true;
    for (long m = m_lo; m <= std::max(m_lo, m_hi - 1); ++m) {
        for (std::size_t j = 0; j < chain.ks.size(); ++j) {
            Rational cur = q_exponent(pair, chain.dbar[j] - pair.e1, m);
            Rational next = (j + 1 < chain.ks.size()) ? q_exponent(pair, chain.dbar[j + 1] - pair.e1, m)
                                                      : q_exponent(pair, chain.dbar[0] - pair.e1, m + 1);
            if (!(cur < next)) rep.q_ordering_ok = false;
        }
    }

    for (std::size_t j = 0; j < chain.ks.size(); ++j) {
        const long k = chain.ks[j];
        ApproxTriple base = approx_triple_k(pair, k);
        HypothesisKReport kr;
        kr.k = k;
        kr.order = static_cast<long>(base.order.n);
        const long eb = ebar(pair, base.shape);
        kr.beta_theory = beta_theory(pair, eb, kr.order, rep.lambda);
        for (long m = m_lo; m <= m_hi; ++m) {
            LinearFormSample s = eval_forms(pair, base, m, pt, precision_bits);
            HypothesisRow row;
            row.k = k;
            row.m = m;
            row.log_Q = s.q_exponent.get_d() * logb;
            row.log_abs_r = log_abs(s.r_remainder.mid());
            Integer hmax = 0;
            for (const auto& h : s.h) hmax = std::max(hmax, Integer(abs(h)));
            row.h_over_Q = std::exp(log_abs(Rational(hmax)) - row.log_Q);
            row.exponent = row.log_Q > 0 ? -row.log_abs_r / row.log_Q : NAN;
            if (!kr.rows.empty()) {
                const HypothesisRow& prev = kr.rows.back();
                row.slope = (prev.log_abs_r - row.log_abs_r) / (row.log_Q - prev.log_Q);
            }
            kr.rows.push_back(row);
        }
        kr.c_min = kr.c_max = kr.rows.front().h_over_Q;
        kr.exp_min = kr.exp_max = kr.rows.front().exponent;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& r : kr.rows) {
            kr.c_min = std::min(kr.c_min, r.h_over_Q);
            kr.c_max = std::max(kr.c_max, r.h_over_Q);
            kr.exp_min = std::min(kr.exp_min, r.exponent);
            kr.exp_max = std::max(kr.exp_max, r.exponent);
            sx += r.log_Q;
            sy += -r.log_abs_r;
            sxx += r.log_Q * r.log_Q;
            sxy += r.log_Q * -r.log_abs_r;
        }
        const double n = static_cast<double>(kr.rows.size());
        if (kr.rows.size() >= 2) kr.ls_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        rep.per_k.push_back(std::move(kr));
    }
    return rep;
}

void s4_constants(const Integer& B0, const Rational& y, Rational& c1_lo, Rational& c1_hi, Rational& c2_lo,
                  Rational& c2_hi, std::size_t& terms) {
    if (sgn(y) <= 0 || y >= 1) throw std::invalid_argument("need 0 < y < 1");
    const Integer two64 = Integer(1) << 64;
    const Rational eps(Integer(1), two64);
    Rational p1 = 1, p2 = 1, yl = y;  // yl = y^{4^l}
    std::size_t L = 0;
    for (;;) {
        p1 *= 1 + yl + 2 * yl * yl;
        p2 *= 1 - yl;
        yl = qpow(yl, 4);
        ++L;
        // the remaining factors l >= L
        if (3 * yl / (1 - y) <= eps) break;
    }
    Rational t = 3 * yl / (1 - y);
    Rational s = yl / (1 - y);
    Rational b0 = abs(B0);
    c1_lo = b0 * 3 / 2 * p1;
    c1_hi = c1_lo / (1 - t);
    c2_hi = b0 / 2 * p2;
    c2_lo = c2_hi * (1 - s);
    terms = L;
}

S4Report check_s4_conditions(long k, const RationalPoint& pt, long m_lo, long m_hi) {
    const MahlerPair& pair = pair_registry(PairTag::DS);
    validate_point(pair, pt);
    if (m_hi < m_lo) throw std::invalid_argument("bad m range");
    ApproxTriple base = approx_triple_k(pair, k);
    S4Report rep;
    rep.k = k;
    rep.B0 = base.B().coeff(0);
    rep.a0_zero = sgn(base.A().coeff(0)) == 0;
    rep.b0_nonzero = sgn(rep.B0) != 0;
    const Rational x = pt.value();
    const Rational y = abs(x);
    s4_constants(rep.B0, y, rep.c1_lo, rep.c1_hi, rep.c2_lo, rep.c2_hi, rep.product_terms);

    ApproxTriple short_base = base;
    short_base.remainder = base.remainder.truncated(1);
    LiftedTriple t = as_lifted(short_base);
    for (long m = 0; m <= m_hi; ++m) {
        if (m > 0) t = lift_once(pair, t);
        if (m < std::max(m_lo, 1L)) continue;
        S4Level lv;
        lv.m = m;
        // z^{4^m} takes the same value at z = +|a|/b and z = -|a|/b
        unsigned long e = 1;
        for (long i = 0; i < m; ++i) e *= 4;
        Rational X = qpow(y, e);
        Rational absA = abs(base.A().eval(X)), absB = abs(base.B().eval(X));
        lv.dominance_ok = absA <= qpow(y, e / 2) * absB;
        Rational b0 = abs(rep.B0);
        lv.constant_ok = b0 / 2 <= absB && absB <= 3 * b0 / 2;
        lv.abs_B_km = abs(t.B().eval(x));
        lv.product_ok = rep.c2_hi <= lv.abs_B_km && lv.abs_B_km <= rep.c1_lo;
        rep.levels.push_back(lv);
    }
    for (std::size_t i = rep.levels.size(); i-- > 0;) {
        const S4Level& lv = rep.levels[i];
        if (!(lv.dominance_ok && lv.constant_ok && lv.product_ok)) break;
        rep.m0 = lv.m;
    }
    return rep;
}

}  // namespace mahler
