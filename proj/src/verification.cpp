#include "mahler/verification.hpp"

#include "mahler/errors.hpp"
#include "mahler/parallel.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

namespace mahler {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> key_values(const std::string& line, std::size_t lineno) {
    std::map<std::string, std::string> kv;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0) throw FixtureError("expected key=value, got '" + tok + "'", lineno);
        std::string key = tok.substr(0, eq);
        if (kv.count(key)) throw FixtureError("duplicate key '" + key + "'", lineno);
        kv[key] = tok.substr(eq + 1);
    }
    return kv;
}

Integer parse_int(const std::string& tok, std::size_t lineno) {
    static const std::regex re(R"([+-]?\d+)");
    if (!std::regex_match(tok, re)) throw FixtureError("non-integer token '" + tok + "'", lineno);
    return Integer(tok[0] == '+' ? tok.substr(1) : tok);
}

long parse_long(const std::string& tok, std::size_t lineno) {
    Integer v = parse_int(tok, lineno);
    if (!v.fits_slong_p()) throw FixtureError("integer out of range '" + tok + "'", lineno);
    return v.get_si();
}

BigPoly parse_poly_line(const std::string& body, std::size_t lineno) {
    std::istringstream is(body);
    std::vector<Integer> c;
    std::string tok;
    while (is >> tok) c.push_back(parse_int(tok, lineno));
    if (c.empty()) throw FixtureError("empty coefficient list", lineno);
    return BigPoly(std::move(c));
}

std::array<long, 3> parse_shape_rule(const std::string& rule, std::size_t lineno) {
    static const std::regex re(R"(k([+-]\d+)?)");
    std::array<long, 3> off{};
    std::stringstream ss(rule);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
        std::smatch m;
        if (i >= 3 || !std::regex_match(item, m, re)) throw FixtureError("bad shape rule '" + rule + "'", lineno);
        off[i++] = m[1].matched ? std::stol(m[1].str()) : 0;
    }
    if (i != 3) throw FixtureError("shape rule needs three entries", lineno);
    return off;
}

}  // namespace

FixtureSet parse_fixtures(const std::string& text, const std::string& source) {
    std::vector<std::pair<std::size_t, std::string>> lines;
    {
        std::istringstream is(text);
        std::string l;
        std::size_t n = 0;
        while (std::getline(is, l)) {
            ++n;
            l = trim(l);
            if (!l.empty()) lines.emplace_back(n, l);
        }
    }
    if (lines.empty()) throw FixtureError("empty fixture file", 1);

    FixtureSet set;
    set.source = source;
    auto head = key_values(lines[0].second, lines[0].first);
    if (!head.count("pair")) throw FixtureError("header lacks pair=", lines[0].first);
    try {
        set.pair = parse_pair(head["pair"]);
    } catch (const UnsupportedPair& e) {
        throw FixtureError(e.what(), lines[0].first);
    }
    if (head.count("mode")) {
        if (head["mode"] != "det") throw FixtureError("unknown mode '" + head["mode"] + "'", lines[0].first);
        if (!head.count("mod")) throw FixtureError("det mode needs mod=", lines[0].first);
        set.det_mode = true;
        set.modulus = parse_int(head["mod"], lines[0].first);
        if (set.modulus <= 0) throw FixtureError("modulus must be positive", lines[0].first);
    } else {
        if (!head.count("shape")) throw FixtureError("header lacks shape=", lines[0].first);
        set.shape_offsets = parse_shape_rule(head["shape"], lines[0].first);
    }

    long last_k = -1;
    auto check_k = [&](long k, std::size_t ln) {
        if (k == last_k) throw FixtureError("duplicate k=" + std::to_string(k), ln);
        if (k < last_k) throw FixtureError("k must increase", ln);
        last_k = k;
    };

    std::size_t i = 1;
    while (i < lines.size()) {
        auto [ln, l] = lines[i];
        auto kv = key_values(l, ln);
        if (!kv.count("k")) throw FixtureError("expected k=...", ln);
        long k = parse_long(kv["k"], ln);
        check_k(k, ln);
        if (set.det_mode) {
            if (!kv.count("det") || kv.size() != 2) throw FixtureError("expected 'k=<int> det=<int>'", ln);
            Integer det = parse_int(kv["det"], ln);
            if (det < 0 || det >= set.modulus) throw FixtureError("residue outside [0, mod)", ln);
            set.det_rows.push_back({k, det, ln});
            ++i;
            continue;
        }
        if (!kv.count("o") || kv.size() != 2) throw FixtureError("expected 'k=<int> o=<int>'", ln);
        PolyRow row;
        row.k = k;
        row.o = parse_long(kv["o"], ln);
        row.line = ln;
        for (const char* tag : {"A:", "B:"}) {
            ++i;
            if (i >= lines.size()) throw FixtureError(std::string("missing ") + tag + " line", ln);
            auto [pln, pl] = lines[i];
            if (pl.rfind(tag, 0) != 0) throw FixtureError(std::string("expected ") + tag + " line", pln);
            BigPoly p = parse_poly_line(pl.substr(2), pln);
            (tag[0] == 'A' ? row.A : row.B) = std::move(p);
        }
        set.poly_rows.push_back(std::move(row));
        ++i;
    }
    if (set.size() == 0) throw FixtureError("no rows", lines.back().first);
    return set;
}

FixtureSet load_fixtures(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FixtureError("cannot open " + path, 0);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_fixtures(os.str(), path);
}

std::vector<FixtureSet> load_fixture_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    std::vector<std::string> files;
    if (!fs::is_directory(dir)) throw FixtureError("not a directory: " + dir, 0);
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    std::vector<FixtureSet> out;
    for (const auto& f : files) out.push_back(load_fixtures(f));
    return out;
}

namespace {

DegreeShape row_shape(const FixtureSet& set, long k) {
    DegreeShape sh;
    for (long off : set.shape_offsets) sh.degs.push_back(k + off);
    return sh;
}

std::string coeff_name(std::size_t idx, const DegreeShape& sh) {
    auto na = static_cast<std::size_t>(sh.degs[0] + 1);
    return idx < na ? "A[" + std::to_string(idx) + "]" : "B[" + std::to_string(idx - na) + "]";
}

}  // namespace

VerifyResult verify_fixture_row(const FixtureSet& set, const PolyRow& row, const ApproxTriple& live) {
    const MahlerPair& pair = pair_registry(set.pair);
    const DegreeShape sh = row_shape(set, row.k);
    if (!(live.shape == sh) || live.pair != set.pair)
        throw std::invalid_argument("live approximation computed with a different pair or shape");

    VerifyResult res;
    res.k = row.k;
    res.expected_order = row.o;
    res.live_order = static_cast<long>(live.order.n);
    res.kernel_dim = live.admissible_dim;
    std::ostringstream msg;

    if (row.A.degree() > sh.degs[0] || row.B.degree() > sh.degs[1]) {
        res.message = "fixture degrees exceed the shape " + sh.to_string();
        return res;
    }
    if (!live.order.is_exact() || res.live_order != row.o) {
        res.message = "live order " + live.order.to_string() + " differs from tabulated " + std::to_string(row.o);
        return res;
    }

    // induced C = -[A f + B g] truncated to its degree
    const std::size_t len = static_cast<std::size_t>(row.o) + 1;
    auto series = pair_series(pair, len);
    TruncSeries ab = series_add(series_mul_poly(row.A, series[0]), series_mul_poly(row.B, series[1]));
    std::vector<Integer> cc(static_cast<std::size_t>(sh.degs[2] + 1));
    for (std::size_t i = 0; i < cc.size() && i < len; ++i) cc[i] = -ab[i].get_num();
    BigPoly C(std::move(cc));
    TruncSeries r = combine({row.A, row.B, C}, series);
    SeriesOrder fo = series_order(r);

    std::vector<Integer> fix = join_blocks({row.A, row.B, C}, sh);
    std::vector<Integer> lv = join_blocks(live.polys, sh);
    const std::size_t nab = static_cast<std::size_t>(sh.degs[0] + sh.degs[1] + 2);

    if (live.admissible_dim == 1) {
        int sign = 0;
        for (std::size_t i = 0; i < fix.size() && sign == 0; ++i)
            if (sgn(fix[i]) != 0) sign = sgn(fix[i]) * (sgn(lv[i]) == 0 ? 1 : sgn(lv[i]));
        for (std::size_t i = 0; i < fix.size(); ++i) {
            if (fix[i] != sign * lv[i]) {
                res.mismatch_index = static_cast<long>(i);
                msg << "coefficient " << (i < nab ? coeff_name(i, sh) : "C[" + std::to_string(i - nab) + "]")
                    << ": fixture " << fix[i] << ", live " << Integer(sign * lv[i]);
                if (fo.n != static_cast<std::size_t>(row.o)) msg << "; fixture remainder order " << fo.to_string();
                res.message = msg.str();
                return res;
            }
        }
    } else if (!fo.is_exact() || fo.n != static_cast<std::size_t>(row.o)) {
        res.message = "fixture polynomials give remainder order " + fo.to_string() + ", tabulated " +
                      std::to_string(row.o) + " (first nonzero remainder coefficient at z^" + std::to_string(fo.n) + ")";
        return res;
    }

    if (!pair.is_scalar()) {
        if (sgn(row.A.coeff(0)) != 0 || sgn(row.B.coeff(0)) == 0) {
            res.message = "fixture violates A(0)=0, B(0)!=0";
            return res;
        }
        if (sgn(live.A().coeff(0)) != 0 || sgn(live.B().coeff(0)) == 0) {
            res.message = "live approximation violates A(0)=0, B(0)!=0";
            return res;
        }
    }

    res.pass = true;
    msg << "o=" << row.o;
    if (live.admissible_dim == 1)
        msg << ", equal to the live kernel vector up to sign";
    else
        msg << ", fixture lies in the " << live.admissible_dim << "-dimensional kernel with the generic order";
    res.message = msg.str();
    return res;
}

VerifyResult verify_fixture_row(const FixtureSet& set, const DetRow& row, const Integer& live_det) {
    VerifyResult res;
    res.k = row.k;
    Integer red;
    mpz_fdiv_r(red.get_mpz_t(), live_det.get_mpz_t(), set.modulus.get_mpz_t());
    res.pass = red == row.det;
    res.message = "det mod " + set.modulus.get_str() + " = " + red.get_str() +
                  (res.pass ? "" : ", tabulated " + row.det.get_str());
    return res;
}

std::vector<VerifyResult> verify_fixture_set(const FixtureSet& set, unsigned jobs) {
    const MahlerPair& pair = pair_registry(set.pair);
    if (set.det_mode) {
        return parallel_map(set.det_rows.size(), jobs, [&](std::size_t i) {
            const DetRow& row = set.det_rows[i];
            return verify_fixture_row(set, row, bordered_det(pair, canonical_shape(pair, row.k), set.modulus));
        });
    }
    return parallel_map(set.poly_rows.size(), jobs, [&](std::size_t i) {
        const PolyRow& row = set.poly_rows[i];
        ApproxTriple live = approx_triple(pair, row_shape(set, row.k));
        live.k = row.k;
        return verify_fixture_row(set, row, live);
    });
}

}  // namespace mahler
