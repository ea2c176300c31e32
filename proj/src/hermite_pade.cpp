#include "mahler/hermite_pade.hpp"

#include "mahler/errors.hpp"

#include <algorithm>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

namespace mahler {

long DegreeShape::s() const {
    long s = static_cast<long>(degs.size()) - 2;
    for (long d : degs) s += d;
    return s;
}

std::size_t DegreeShape::columns() const { return static_cast<std::size_t>(s() + 2); }

std::string DegreeShape::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < degs.size(); ++i) os << (i ? "," : "") << degs[i];
    os << ")";
    return os.str();
}

DegreeShape canonical_shape(const MahlerPair& pair, long k) {
    DegreeShape sh;
    for (long off : pair.shape_offsets) sh.degs.push_back(k + off);
    for (long d : sh.degs)
        if (d < 0) throw std::invalid_argument("shape has a negative degree for k=" + std::to_string(k));
    return sh;
}

std::string shape_rule_string(const std::array<long, 3>& offsets) {
    std::string out;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        if (i) out += ",";
        out += "k";
        if (offsets[i] > 0) out += "+" + std::to_string(offsets[i]);
        if (offsets[i] < 0) out += std::to_string(offsets[i]);
    }
    return out;
}

DegreeShape shape_from_rule(const std::string& rule, long k) {
    static const std::regex term(R"(\s*(k)?\s*([+-]\s*\d+)?\s*|\s*(\d+)\s*)");
    DegreeShape sh;
    std::stringstream ss(rule);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::smatch m;
        if (item.find_first_not_of(" \t") == std::string::npos || !std::regex_match(item, m, term))
            throw std::invalid_argument("bad shape entry '" + item + "'");
        long d;
        if (m[3].matched) {
            d = std::stol(m[3]);
        } else {
            if (!m[1].matched) throw std::invalid_argument("bad shape entry '" + item + "'");
            std::string off = m[2].matched ? m[2].str() : "+0";
            off.erase(std::remove(off.begin(), off.end(), ' '), off.end());
            d = k + std::stol(off);
        }
        if (d < 0) throw std::invalid_argument("negative degree in shape '" + rule + "'");
        sh.degs.push_back(d);
    }
    if (sh.degs.size() < 2) throw std::invalid_argument("shape needs at least two entries");
    return sh;
}

std::vector<std::vector<Rational>> hp_rows(const std::vector<TruncSeries>& series, const DegreeShape& shape,
                                           std::size_t rows) {
    if (series.size() != shape.degs.size()) throw std::invalid_argument("series count does not match shape");
    for (const auto& f : series)
        if (f.valid_len() < rows) throw InsufficientSeries("series valid_len " + std::to_string(f.valid_len()) +
                                                           " below required " + std::to_string(rows));
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(shape.columns()));
    for (std::size_t i = 0; i < rows; ++i) {
        std::size_t col = 0;
        for (std::size_t j = 0; j < series.size(); ++j)
            for (long c = 0; c <= shape.degs[j]; ++c, ++col)
                if (static_cast<long>(i) >= c) m[i][col] = series[j][i - static_cast<std::size_t>(c)];
    }
    return m;
}

HpSystem build_system(const std::vector<TruncSeries>& series, const DegreeShape& shape,
                      std::vector<std::string> sources) {
    if (shape.degs.size() < 2) throw std::invalid_argument("need at least two series");
    return {hp_rows(series, shape, static_cast<std::size_t>(shape.s() + 1)), shape, std::move(sources)};
}

IntMatrix integer_rows(const std::vector<std::vector<Rational>>& rows) {
    IntMatrix out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        Integer l = 1;
        for (const auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        std::vector<Integer> r(row.size());
        for (std::size_t j = 0; j < row.size(); ++j) r[j] = row[j].get_num() * (l / row[j].get_den());
        out.push_back(std::move(r));
    }
    return out;
}

KernelVector kernel_vector(const HpSystem& sys) {
    IntMatrix m = integer_rows(sys.matrix);
    std::size_t cols = sys.shape.columns();
    if (m.empty()) {
        std::vector<Integer> v(cols);
        v[0] = 1;
        return {v, cols};
    }
    IntKernel ker = integer_kernel(std::move(m));
    return {ker.basis.front(), ker.basis.size()};
}

std::vector<BigPoly> split_blocks(const std::vector<Integer>& v, const DegreeShape& shape) {
    std::vector<BigPoly> out;
    std::size_t off = 0;
    for (long d : shape.degs) {
        auto n = static_cast<std::size_t>(d + 1);
        out.emplace_back(std::vector<Integer>(v.begin() + static_cast<long>(off), v.begin() + static_cast<long>(off + n)));
        off += n;
    }
    return out;
}

std::vector<Integer> join_blocks(const std::vector<BigPoly>& polys, const DegreeShape& shape) {
    std::vector<Integer> v;
    for (std::size_t j = 0; j < polys.size(); ++j) {
        if (polys[j].degree() > shape.degs[j]) throw std::invalid_argument("polynomial exceeds its shape degree");
        for (long c = 0; c <= shape.degs[j]; ++c) v.push_back(polys[j].coeff(static_cast<std::size_t>(c)));
    }
    return v;
}

TruncSeries combine(const std::vector<BigPoly>& polys, const std::vector<TruncSeries>& series) {
    std::size_t n = series.front().valid_len();
    for (const auto& s : series) n = std::min(n, s.valid_len());
    TruncSeries acc = TruncSeries::zero(n);
    for (std::size_t j = 0; j < polys.size(); ++j) acc = series_add(acc, series_mul_poly(polys[j], series[j].truncated(n)));
    return acc;
}

std::vector<TruncSeries> pair_series(const MahlerPair& pair, std::size_t n) {
    return {series_coeffs(pair.f, n), series_coeffs(pair.g, n), TruncSeries::from_poly(BigPoly{1}, n)};
}

Approximation approximate(const std::vector<TruncSeries>& series, const DegreeShape& shape,
                          const std::vector<std::size_t>& forced_zero,
                          const std::function<bool(const std::vector<BigPoly>&)>& condition) {
    const HpSystem sys = build_system(series, shape);
    const std::size_t cols = shape.columns();
    std::set<std::size_t> forced(forced_zero.begin(), forced_zero.end());
    std::vector<std::size_t> order;
    for (std::size_t j = 0; j < cols; ++j)
        if (!forced.count(j)) order.push_back(j);
    for (std::size_t j : forced) order.push_back(j);

    IntKernel ker = integer_kernel(integer_rows(sys.matrix), order);
    Approximation out;
    out.kernel_dim = ker.basis.size();

    struct Cand {
        std::vector<Integer> v;
        TruncSeries r;
        SeriesOrder ord;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < ker.basis.size(); ++i) {
        if (forced.count(ker.free_cols[i])) continue;
        TruncSeries r = combine(split_blocks(ker.basis[i], shape), series);
        SeriesOrder o = series_order(r);
        cands.push_back({ker.basis[i], std::move(r), o});
    }
    out.admissible_dim = cands.size();
    if (cands.empty()) throw MahlerError("no admissible kernel vector");

    std::size_t best = 0;
    for (std::size_t i = 1; i < cands.size(); ++i)
        if (cands[i].ord.n < cands[best].ord.n) best = i;
    std::vector<Integer> v = cands[best].v;
    TruncSeries r = cands[best].r;
    const SeriesOrder ord = cands[best].ord;

    if (condition && !condition(split_blocks(v, shape)) && ord.is_exact()) {
        bool found = false;
        for (std::size_t i = 0; i < cands.size() && !found; ++i) {
            if (i == best) continue;
            for (long c = 1; c <= 3 && !found; ++c) {
                // the sum keeps the minimal order unless the leading terms cancel
                if (sgn(r[ord.n] + c * cands[i].r[ord.n]) == 0) continue;
                std::vector<Integer> w(v.size());
                for (std::size_t j = 0; j < v.size(); ++j) w[j] = v[j] + c * cands[i].v[j];
                if (condition(split_blocks(w, shape))) {
                    v = std::move(w);
                    r = series_add(r, series_mul_poly(BigPoly{c}, cands[i].r));
                    found = true;
                }
            }
        }
        out.condition_met = found;
    }

    Integer sign_before = 0;
    for (const auto& x : v)
        if (sgn(x) != 0) {
            sign_before = x;
            break;
        }
    std::vector<Integer> p = v;
    make_primitive(p);
    // rescale the remainder the same way
    Integer first_after = 0;
    for (const auto& x : p)
        if (sgn(x) != 0) {
            first_after = x;
            break;
        }
    Rational factor(first_after, sign_before);
    factor.canonicalize();
    std::vector<Rational> rc(r.coeffs());
    for (auto& q : rc) q *= factor;

    out.polys = split_blocks(p, shape);
    out.remainder = TruncSeries(std::move(rc));
    out.order = series_order(out.remainder);
    return out;
}

namespace {

std::function<bool(const std::vector<BigPoly>&)> pair_condition(const MahlerPair& pair) {
    if (pair.is_scalar())
        return [](const std::vector<BigPoly>& p) { return sgn(p[0].coeff(0)) != 0 || sgn(p[1].coeff(0)) != 0; };
    return [](const std::vector<BigPoly>& p) { return sgn(p[1].coeff(0)) != 0; };
}

}  // namespace

ApproxTriple approx_triple(const MahlerPair& pair, const DegreeShape& shape, std::size_t order_cap) {
    if (shape.degs.size() != 3) throw std::invalid_argument("pair approximations need a shape of length 3");
    if (static_cast<long>(order_cap) <= shape.s() + 1)
        throw std::invalid_argument("order_cap must exceed s+1 = " + std::to_string(shape.s() + 1));
    std::vector<std::size_t> forced;
    // A(0) = 0 for the coupled pair
    if (!pair.is_scalar()) forced.push_back(0);
    Approximation ap = approximate(pair_series(pair, order_cap), shape, forced, pair_condition(pair));
    if (!ap.order.is_exact())
        throw OrderExceedsCap("remainder vanishes to the order cap " + std::to_string(order_cap), order_cap);
    ApproxTriple t;
    t.pair = pair.tag;
    t.shape = shape;
    t.polys = std::move(ap.polys);
    t.order = ap.order;
    t.remainder = std::move(ap.remainder);
    t.kernel_dim = ap.kernel_dim;
    t.admissible_dim = ap.admissible_dim;
    t.condition_met = ap.condition_met;
    return t;
}

ApproxTriple approx_triple(const MahlerPair& pair, const DegreeShape& shape) {
    std::size_t cap = static_cast<std::size_t>(shape.s()) + 65;
    for (;;) {
        try {
            return approx_triple(pair, shape, std::min(cap, kHardOrderCap));
        } catch (const OrderExceedsCap&) {
            if (cap >= kHardOrderCap) throw;
            cap *= 2;
        }
    }
}

ApproxTriple approx_triple_k(const MahlerPair& pair, long k) {
    ApproxTriple t = approx_triple(pair, canonical_shape(pair, k));
    t.k = k;
    return t;
}

Integer bordered_det(const std::vector<TruncSeries>& series, const DegreeShape& shape, std::optional<Integer> modulus) {
    auto rows = hp_rows(series, shape, static_cast<std::size_t>(shape.s() + 2));
    IntMatrix m;
    for (const auto& row : rows) {
        std::vector<Integer> r(row.size());
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j].get_den() != 1) throw std::invalid_argument("bordered_det needs integer series");
            r[j] = row[j].get_num();
        }
        m.push_back(std::move(r));
    }
    Integer det = bareiss_det(std::move(m));
    if (modulus && *modulus != 0) {
        Integer red;
        mpz_fdiv_r(red.get_mpz_t(), det.get_mpz_t(), modulus->get_mpz_t());
        return red;
    }
    return det;
}

Integer bordered_det(const MahlerPair& pair, const DegreeShape& shape, std::optional<Integer> modulus) {
    return bordered_det(pair_series(pair, static_cast<std::size_t>(shape.s() + 2)), shape, modulus);
}

}  // namespace mahler
