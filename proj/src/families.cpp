#include "mahler/families.hpp"

#include "mahler/errors.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mahler {

namespace {

const std::map<std::string, FamilyId>& family_names() {
    static const std::map<std::string, FamilyId> m = {
        {"stern_a", FamilyId::SternA}, {"stern_b", FamilyId::SternB}, {"t", FamilyId::ThueMorseT},
        {"m", FamilyId::ThueMorseM},   {"g3", FamilyId::LambertG3},   {"f3", FamilyId::LambertF3},
        {"s", FamilyId::DilcherS},     {"s4", FamilyId::DilcherS4},
    };
    return m;
}

// a_0..a_{n} of the Stern diatomic sequence, or the signed variant b_n
std::vector<Integer> stern_raw(std::size_t n, bool signed_variant) {
    std::vector<Integer> a(std::max<std::size_t>(n + 1, 2));
    a[0] = 0;
    a[1] = 1;
    for (std::size_t i = 2; i < a.size(); ++i) {
        std::size_t h = i / 2;
        if (i % 2 == 0)
            a[i] = signed_variant ? Integer(-a[h]) : a[h];
        else
            a[i] = signed_variant ? Integer(-(a[h] + a[h + 1])) : Integer(a[h] + a[h + 1]);
    }
    return a;
}

std::vector<Integer> thue_morse_t(std::size_t n) {
    std::vector<Integer> t(n);
    if (n) t[0] = 1;
    for (std::size_t i = 1; i < n; ++i) t[i] = (i % 2 == 0) ? t[i / 2] : Integer(-t[i / 2]);
    return t;
}

std::vector<Integer> thue_morse_m(std::size_t n) {
    std::vector<Integer> m(std::max<std::size_t>(n, 3));
    m[0] = 0;
    m[1] = 1;
    m[2] = -1;
    for (std::size_t i = 3; i < m.size(); ++i) {
        if (i % 2 == 1)
            m[i] = m[i - 1];
        else
            m[i] = m[i - 1] - m[i / 2];  // m_{2j+2} = m_{2j+1} - m_{j+1}
    }
    m.resize(n);
    return m;
}

// sum over p = 3^k < n of z^p / (1 - sign z^p)
std::vector<Integer> lambert3(std::size_t n, bool alternating) {
    std::vector<Integer> c(n);
    for (std::size_t p = 1; p < n; p *= 3)
        for (std::size_t j = 1; j * p < n; ++j) c[j * p] += (alternating && j % 2 == 0) ? -1 : 1;
    return c;
}

std::vector<Integer> dilcher_s(std::size_t n) {
    std::vector<Integer> s(n);
    if (n) s[0] = 1;
    for (std::size_t i = 1; i < n; ++i) {
        std::size_t k = i / 4, r = i % 4;
        if (r <= 1)
            s[i] = s[k];
        else if (r == 2)
            s[i] = 0;
        else
            s[i] = (k % 4 == 3) ? Integer(0) : s[k + 1];
    }
    return s;
}

SeriesOrder residual_order(const TruncSeries& r) { return series_order(r); }

}  // namespace

std::string family_name(FamilyId id) {
    for (const auto& [name, f] : family_names())
        if (f == id) return name;
    return "?";
}

FamilyId parse_family(const std::string& name) {
    static const std::map<std::string, FamilyId> aliases = {{"ds", FamilyId::DilcherS}, {"stern", FamilyId::SternA},
                                                            {"tm", FamilyId::ThueMorseT}, {"g3f3", FamilyId::LambertG3}};
    auto it = family_names().find(name);
    if (it != family_names().end()) return it->second;
    auto jt = aliases.find(name);
    if (jt != aliases.end()) return jt->second;
    throw std::invalid_argument("unknown family '" + name + "'");
}

std::string pair_name(PairTag tag) {
    switch (tag) {
        case PairTag::Stern: return "stern";
        case PairTag::TM: return "tm";
        case PairTag::G3F3: return "g3f3";
        case PairTag::DS: return "ds";
    }
    return "?";
}

PairTag parse_pair(const std::string& name) {
    for (PairTag t : all_pairs())
        if (pair_name(t) == name) return t;
    throw UnsupportedPair("unknown pair '" + name + "' (expected stern, tm, g3f3 or ds)");
}

const std::vector<PairTag>& all_pairs() {
    static const std::vector<PairTag> v = {PairTag::Stern, PairTag::TM, PairTag::G3F3, PairTag::DS};
    return v;
}

std::vector<Integer> family_integers(FamilyId id, std::size_t n) {
    if (n == 0) throw std::invalid_argument("series length must be >= 1");
    switch (id) {
        case FamilyId::SternA:
        case FamilyId::SternB: {
            auto raw = stern_raw(n, id == FamilyId::SternB);
            return std::vector<Integer>(raw.begin() + 1, raw.begin() + 1 + static_cast<long>(n));
        }
        case FamilyId::ThueMorseT: return thue_morse_t(n);
        case FamilyId::ThueMorseM: return thue_morse_m(n);
        case FamilyId::LambertG3: return lambert3(n, false);
        case FamilyId::LambertF3: return lambert3(n, true);
        case FamilyId::DilcherS: return dilcher_s(n);
        case FamilyId::DilcherS4: {
            auto s = dilcher_s((n + 3) / 4);
            std::vector<Integer> c(n);
            for (std::size_t i = 0; i < n; i += 4) c[i] = s[i / 4];
            return c;
        }
    }
    throw std::invalid_argument("unknown family");
}

TruncSeries series_coeffs(FamilyId id, std::size_t n) { return TruncSeries::from_integers(family_integers(id, n)); }

ScalarData derive_scalar(const ScalarMahlerEq& ef, const ScalarMahlerEq& eg) {
    ScalarData s;
    s.eq_f = ef;
    s.eq_g = eg;
    s.phi = poly_lcm(ef.phi2, eg.phi2);
    if (sgn(s.phi.coeff(0)) < 0) s.phi = -s.phi;
    s.phi_hat2 = poly_divexact(s.phi, eg.phi2);
    s.psi_hat2 = poly_divexact(s.phi, ef.phi2);
    long v = s.phi.degree();
    for (const BigPoly& p : {s.psi_hat2 * ef.phi1, s.phi_hat2 * eg.phi1, s.phi_hat2 * eg.phi3, s.psi_hat2 * ef.phi3})
        v = std::max(v, p.degree());
    s.v = v;
    return s;
}

namespace {

MahlerPair make_scalar(PairTag tag, FamilyId f, FamilyId g, ScalarMahlerEq ef, ScalarMahlerEq eg, long e1, long e2,
                       std::array<long, 3> shape, std::string note) {
    MahlerPair p;
    p.tag = tag;
    p.f = f;
    p.g = g;
    p.kind = PairKind::Scalar;
    p.d = ef.d;
    p.scalar = derive_scalar(ef, eg);
    p.v = p.scalar.v;
    p.e1 = e1;
    p.e2 = e2;
    p.excluded_factors = {ef.phi1, ef.phi2, eg.phi1, eg.phi2};
    p.excluded_note = std::move(note);
    p.shape_offsets = shape;
    return p;
}

std::vector<MahlerPair> build_registry() {
    std::vector<MahlerPair> r;
    // A(z) = (1+z+z^2) A(z^2), B(z) = -(1+z+z^2) B(z^2) + 2
    r.push_back(make_scalar(PairTag::Stern, FamilyId::SternA, FamilyId::SternB, {{1}, {-1, -1, -1}, {}, 2},
                            {{1}, {1, 1, 1}, {-2}, 2}, 1, 0, {0, 1, -1},
                            "1+z+z^2 has no zeros inside the unit disc; no exclusions"));
    // T(z) = (1-z) T(z^2), M(z^2) = (z-1)(M(z)-z)
    r.push_back(make_scalar(PairTag::TM, FamilyId::ThueMorseT, FamilyId::ThueMorseM, {{1}, {-1, 1}, {}, 2},
                            {{-1, 1}, {-1}, {0, 1, -1}, 2}, 0, 2, {0, 0, 1},
                            "factors z-1 and constants; the only zero z=1 is on the boundary"));
    // G(z) = z/(1-z) + G(z^3), F(z) = z/(1+z) + F(z^3)
    r.push_back(make_scalar(PairTag::G3F3, FamilyId::LambertG3, FamilyId::LambertF3, {{-1, 1}, {1, -1}, {0, 1}, 3},
                            {{-1, -1}, {1, 1}, {0, 1}, 3}, 0, 0, {0, 0, 0},
                            "factors 1-z and 1+z; zeros z=1 and z=-1 lie on the boundary"));

    MahlerPair ds;
    ds.tag = PairTag::DS;
    ds.f = FamilyId::DilcherS;
    ds.g = FamilyId::DilcherS4;
    ds.kind = PairKind::Coupled;
    ds.d = 4;
    ds.coupled.d = 4;
    ds.coupled.M = {{{BigPoly{}, BigPoly{1}}, {BigPoly{0, -1}, BigPoly{1, 1, 1}}}};
    // degrees of the lifted polynomials are at most k 4^m + 2 (4^m - 1)/3
    ds.v = 2;
    ds.e1 = 0;
    ds.e2 = 0;
    ds.excluded_factors = {BigPoly{1, 1, 1}};
    ds.excluded_note = "1+z+z^2 has its zeros on the unit circle; no exclusions";
    ds.shape_offsets = {0, 0, -1};
    r.push_back(ds);
    return r;
}

}  // namespace

const MahlerPair& pair_registry(PairTag tag) {
    static const std::vector<MahlerPair> reg = build_registry();
    return reg[static_cast<std::size_t>(tag)];
}

const MahlerPair& pair_registry(FamilyId f, FamilyId g) {
    for (PairTag t : all_pairs()) {
        const MahlerPair& p = pair_registry(t);
        if (p.f == f && p.g == g) return p;
    }
    throw UnsupportedPair("unsupported pair (" + family_name(f) + ", " + family_name(g) + ")");
}

SeriesOrder scalar_residual_order(const ScalarMahlerEq& eq, const TruncSeries& f) {
    std::size_t n = f.valid_len();
    TruncSeries fd = series_compose_power(f, eq.d).truncated(n);
    TruncSeries r = series_add(series_mul_poly(eq.phi1, f), series_mul_poly(eq.phi2, fd));
    r = series_add(r, TruncSeries::from_poly(eq.phi3, n));
    return residual_order(r);
}

std::vector<SeriesOrder> equation_residual_orders(const MahlerPair& pair, std::size_t n) {
    TruncSeries f = series_coeffs(pair.f, n), g = series_coeffs(pair.g, n);
    if (pair.is_scalar()) return {scalar_residual_order(pair.scalar.eq_f, f), scalar_residual_order(pair.scalar.eq_g, g)};
    const auto& M = pair.coupled.M;
    TruncSeries fd = series_compose_power(f, pair.d).truncated(n);
    TruncSeries gd = series_compose_power(g, pair.d).truncated(n);
    TruncSeries r0 = series_sub(fd, series_add(series_mul_poly(M[0][0], f), series_mul_poly(M[0][1], g)));
    TruncSeries r1 = series_sub(gd, series_add(series_mul_poly(M[1][0], f), series_mul_poly(M[1][1], g)));
    return {residual_order(r0), residual_order(r1)};
}

std::vector<SeriesOrder> validate_equation(const MahlerPair& pair, std::size_t n) {
    auto orders = equation_residual_orders(pair, n);
    for (std::size_t i = 0; i < orders.size(); ++i)
        if (orders[i].is_exact())
            throw EquationMismatch(pair_name(pair.tag) + " equation " + std::to_string(i) + " residual has order " +
                                   orders[i].to_string());
    return orders;
}

}  // namespace mahler
