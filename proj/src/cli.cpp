#include "mahler/cli.hpp"

#include "mahler/errors.hpp"
#include "mahler/parallel.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace mahler {

using nlohmann::json;

std::string status_name(Status s) {
    switch (s) {
        case Status::Ok: return "ok";
        case Status::Fail: return "fail";
        case Status::Warn: return "warn";
    }
    return "fail";
}

int exit_code(Status s) {
    switch (s) {
        case Status::Ok: return kExitOk;
        case Status::Warn: return kExitWarn;
        case Status::Fail: return kExitFail;
    }
    return kExitFail;
}

json poly_json(const BigPoly& p) {
    json a = json::array();
    for (long i = 0; i <= p.degree(); ++i) a.push_back(p.coeff(static_cast<std::size_t>(i)).get_str());
    return a;
}

json rational_json(const Rational& q) { return rational_to_string(q); }

namespace {

std::string approx(const Rational& q, int digits = 17) {
    std::ostringstream os;
    os << std::setprecision(digits) << q.get_d();
    return os.str();
}

json order_json(const SeriesOrder& o) {
    return {{"n", o.n}, {"kind", o.is_exact() ? "exact" : "at_least"}};
}

}  // namespace

json interval_json(const Interval& iv) {
    return {{"lo", rational_to_string(iv.lo)}, {"hi", rational_to_string(iv.hi)}, {"approx", approx(iv.mid())}};
}

json series_payload(FamilyId id, std::size_t n) {
    json c = json::array();
    for (const auto& v : family_integers(id, n)) c.push_back(v.get_str());
    return {{"family", family_name(id)}, {"n", n}, {"coefficients", c}};
}

json hp_payload(const ApproxTriple& t) {
    return {{"pair", pair_name(t.pair)},
            {"k", t.k},
            {"shape", t.shape.degs},
            {"level", t.level},
            {"A", poly_json(t.A())},
            {"B", poly_json(t.B())},
            {"C", poly_json(t.C())},
            {"order", order_json(t.order)},
            {"generic_order", t.shape.s() + 1},
            {"kernel_dim", t.kernel_dim},
            {"admissible_dim", t.admissible_dim},
            {"degenerate", t.degenerate()},
            {"condition_met", t.condition_met}};
}

json detsweep_payload(const MahlerPair& pair, long kmin, long kmax, const std::optional<std::string>& shape_rule,
                      const Integer& modulus, unsigned jobs) {
    const std::size_t n = kmax >= kmin ? static_cast<std::size_t>(kmax - kmin + 1) : 0;
    auto dets = parallel_map(n, jobs, [&](std::size_t i) {
        long k = kmin + static_cast<long>(i);
        DegreeShape sh = shape_rule ? shape_from_rule(*shape_rule, k) : canonical_shape(pair, k);
        return modulus > 0 ? bordered_det(pair, sh, modulus) : bordered_det(pair, sh);
    });
    json rows = json::array(), values = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        rows.push_back({{"k", kmin + static_cast<long>(i)}, {"det", dets[i].get_str()}});
        values.push_back(dets[i].get_str());
    }
    return {{"pair", pair_name(pair.tag)},
            {"kmin", kmin},
            {"kmax", kmax},
            {"modulus", modulus > 0 ? json(modulus.get_str()) : json(nullptr)},
            {"rows", rows},
            {"values", values}};
}

json bound_payload(const BoundReport& r) {
    json terms = json::array();
    for (const auto& t : r.per_j)
        terms.push_back({{"j", t.j}, {"theta", rational_json(t.theta)}, {"ratio", rational_json(t.ratio)}});
    return {{"pair", pair_name(r.pair)},
            {"lambda", rational_json(r.lambda)},
            {"mu_bound", rational_json(r.mu_bound)},
            {"mu_bound_approx", approx(r.mu_bound)},
            {"argmax_j", r.argmax_j},
            {"per_j", terms},
            {"lambda_threshold", rational_json(r.lambda_threshold)},
            {"stated_threshold", rational_json(r.stated_threshold)},
            {"condition_ii_ok", r.condition_ii_ok},
            {"within_stated_range", r.within_stated_range},
            {"muL_bound", r.muL_bound ? json(rational_json(*r.muL_bound)) : json(nullptr)},
            {"warnings", r.warnings}};
}

json iterate_payload(const MahlerPair& pair, const IterationResult& r, std::size_t check_len) {
    json levels = json::array();
    for (const auto& c : r.levels)
        levels.push_back({{"m", c.level},
                          {"checked_len", c.checked_len},
                          {"order", order_json(c.order)},
                          {"max_degree", c.max_degree}});
    const auto& t = r.triple;
    return {{"pair", pair_name(pair.tag)},
            {"k", t.k},
            {"m", t.level},
            {"base_order", t.base_order},
            {"order", order_json(t.order)},
            {"check_len", check_len},
            {"degrees", {t.A().degree(), t.B().degree(), t.C().degree()}},
            {"levels", levels},
            {"violations", 0}};
}

json eval_payload(const LinearFormSample& s) {
    return {{"k", s.k},
            {"m", s.m},
            {"q_exponent", rational_json(s.q_exponent)},
            {"Q", s.Q.get_str()},
            {"h", {s.h[0].get_str(), s.h[1].get_str(), s.h[2].get_str()}},
            {"integral", true},
            {"r_identity", interval_json(s.r_identity)},
            {"r_remainder", interval_json(s.r_remainder)},
            {"truncation", s.truncation},
            {"intersect", s.intersect}};
}

json verify_payload(const FixtureSet& set, const std::vector<VerifyResult>& rows) {
    json out = json::array();
    std::size_t passed = 0;
    for (const auto& r : rows) {
        passed += r.pass;
        json row = {{"k", r.k}, {"pass", r.pass}, {"message", r.message}};
        if (!set.det_mode) {
            row["live_order"] = r.live_order;
            row["expected_order"] = r.expected_order;
            row["kernel_dim"] = r.kernel_dim;
            row["mismatch_index"] = r.mismatch_index >= 0 ? json(r.mismatch_index) : json(nullptr);
        }
        out.push_back(row);
    }
    return {{"source", set.source},
            {"pair", pair_name(set.pair)},
            {"mode", set.det_mode ? "det" : "poly"},
            {"rows", out},
            {"passed", passed},
            {"total", rows.size()}};
}

ChainSpec live_chain(PairTag tag, const std::vector<long>& ks) {
    const MahlerPair& pair = pair_registry(tag);
    ChainSpec c;
    c.pair = tag;
    c.d = pair.d;
    for (long k : ks) {
        ApproxTriple t = approx_triple_k(pair, k);
        if (!t.order.is_exact()) throw OrderExceedsCap("no exact order for k=" + std::to_string(k), t.order.n);
        c.ks.push_back(k);
        c.orders.push_back(static_cast<long>(t.order.n));
        c.dbar.push_back(chain_dbar(pair, k));
    }
    return c;
}

namespace {

struct Outcome {
    Status status = Status::Ok;
    json result;
    std::string human;
};

std::string join(const json& arr, const char* sep = " ") {
    std::string s;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (i) s += sep;
        s += arr[i].is_string() ? arr[i].get<std::string>() : arr[i].dump();
    }
    return s;
}

std::string human_hp(const json& p) {
    std::ostringstream os;
    os << "pair=" << p["pair"].get<std::string>() << " k=" << p["k"] << " shape=" << join(p["shape"], ",")
       << " level=" << p["level"] << "\n";
    os << "o=" << p["order"]["n"] << (p["order"]["kind"] == "exact" ? "" : " (at least)")
       << " generic=" << p["generic_order"] << " kernel_dim=" << p["kernel_dim"]
       << " admissible_dim=" << p["admissible_dim"] << "\n";
    for (const char* n : {"A", "B", "C"}) os << n << ": " << join(p[n]) << "\n";
    return os.str();
}

DegreeShape pick_shape(const MahlerPair& pair, long k, const std::optional<std::string>& rule) {
    return rule ? shape_from_rule(*rule, k) : canonical_shape(pair, k);
}

ApproxTriple compute_hp(const MahlerPair& pair, long k, const std::optional<std::string>& rule,
                        std::optional<std::size_t> cap) {
    DegreeShape sh = pick_shape(pair, k, rule);
    ApproxTriple t = cap ? approx_triple(pair, sh, *cap) : approx_triple(pair, sh);
    t.k = k;
    return t;
}

std::vector<long> parse_ks(const std::string& text) {
    std::vector<long> ks;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) ks.push_back(std::stol(item));
    return ks;
}

// Validates a p/q option; floats are rejected.
struct RationalValidator : CLI::Validator {
    RationalValidator() {
        name_ = "RATIONAL";
        func_ = [](const std::string& s) -> std::string {
            try {
                parse_rational(s);
                return {};
            } catch (const std::exception& e) {
                return "expected p or p/q, got '" + s + "'";
            }
        };
    }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hermite-Pade approximations to pairs of Mahler functions"};
    app.require_subcommand(1);
    bool as_json = false;
    unsigned jobs = default_jobs();
    long precision_bits = 256;
    std::optional<std::size_t> order_cap;
    app.add_flag("--json", as_json, "machine-readable output")->configurable(false);
    app.add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--order-cap", order_cap, "fixed truncation for the kernel search")->check(CLI::Range(1ul, kHardOrderCap));
    app.add_option("--precision-bits", precision_bits, "relative width target 2^-bits")->check(CLI::Range(8L, 1L << 16));
    // allow global flags after the subcommand too
    app.fallthrough();

    const RationalValidator rational_check;
    const auto pair_check = CLI::IsMember({"stern", "tm", "g3f3", "ds"});

    auto* series = app.add_subcommand("series", "dump series coefficients");
    std::string family, pair_s;
    std::size_t n = 0;
    auto* fam_opt = series->add_option("--family", family, "stern_a, stern_b, t, m, g3, f3, s, s4 or a pair tag");
    auto* spair_opt = series->add_option("--pair", pair_s, "both series of a pair")->check(pair_check);
    fam_opt->excludes(spair_opt);
    series->add_option("--n", n, "number of coefficients")->required()->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));

    auto* hp = app.add_subcommand("hp", "one Hermite-Pade approximation");
    long k = 0;
    std::optional<std::string> shape;
    hp->add_option("--pair", pair_s)->required()->check(pair_check);
    hp->add_option("--k", k)->required()->check(CLI::Range(1L, 4096L));
    hp->add_option("--shape", shape, "degree rule such as k,k+1,k-1");

    auto* det = app.add_subcommand("detsweep", "bordered determinants over a k range");
    long kmin = 0, kmax = 0;
    std::string mod_s = "0";
    det->add_option("--pair", pair_s)->required()->check(pair_check);
    det->add_option("--kmin", kmin)->required()->check(CLI::Range(1L, 4096L));
    det->add_option("--kmax", kmax)->required()->check(CLI::Range(1L, 4096L));
    det->add_option("--mod", mod_s, "modulus, 0 for exact values")->check(CLI::Number);
    det->add_option("--shape", shape);

    auto* bnd = app.add_subcommand("bound", "exponent bound for a pair");
    std::string lambda_s = "0", chain_s;
    bool allow_outside = false;
    bnd->add_option("--pair", pair_s)->required()->check(pair_check);
    bnd->add_option("--lambda", lambda_s, "p/q")->check(rational_check);
    bnd->add_option("--chain", chain_s, "override chain, comma separated k values");
    bnd->add_flag("--allow-outside", allow_outside, "evaluate beyond the stated lambda range");

    auto* it = app.add_subcommand("iterate", "lift an approximation and check every level");
    long m = 0;
    std::size_t check_len = 0;
    it->add_option("--pair", pair_s)->required()->check(pair_check);
    it->add_option("--k", k)->required()->check(CLI::Range(1L, 4096L));
    it->add_option("--m", m)->required()->check(CLI::Range(0L, 64L));
    it->add_option("--checklen", check_len, "series length for the identity check");
    it->add_option("--shape", shape);

    auto* ev = app.add_subcommand("eval", "integer linear form at a rational point");
    std::string a_s, b_s;
    ev->add_option("--pair", pair_s)->required()->check(pair_check);
    ev->add_option("--k", k)->required()->check(CLI::Range(1L, 4096L));
    ev->add_option("--m", m)->required()->check(CLI::Range(0L, 64L));
    ev->add_option("--a", a_s)->required()->check(CLI::Number);
    ev->add_option("--b", b_s)->required()->check(CLI::Number);
    ev->add_option("--shape", shape);

    auto* ver = app.add_subcommand("verify", "check fixture tables against live computation");
    std::string fixtures;
    ver->add_option("--fixtures", fixtures, "fixture file or directory")->required();

    std::vector<std::string> argv_s;
    argv_s.push_back("mahler");
    argv_s.insert(argv_s.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_s) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (det->parsed() && kmax < kmin) throw CLI::ValidationError("--kmax", "must be at least --kmin");
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string cmd = sub->get_name();
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (cmd == "series") {
            if (family.empty() && pair_s.empty()) throw CLI::ValidationError("--family", "one of --family or --pair is required");
            std::vector<FamilyId> ids;
            if (!pair_s.empty()) {
                const MahlerPair& p = pair_registry(parse_pair(pair_s));
                ids = {p.f, p.g};
            } else if (family == "stern" || family == "tm" || family == "g3f3" || family == "ds") {
                const MahlerPair& p = pair_registry(parse_pair(family));
                ids = {p.f, p.g};
            } else {
                ids = {parse_family(family)};
            }
            json arr = json::array();
            for (FamilyId id : ids) {
                arr.push_back(series_payload(id, n));
                o.human += arr.back()["family"].get<std::string>() + ": " + join(arr.back()["coefficients"]) + "\n";
            }
            o.result = {{"series", arr}};
        } else if (cmd == "hp") {
            const MahlerPair& p = pair_registry(parse_pair(pair_s));
            o.result = hp_payload(compute_hp(p, k, shape, order_cap));
            o.human = human_hp(o.result);
        } else if (cmd == "detsweep") {
            const MahlerPair& p = pair_registry(parse_pair(pair_s));
            Integer mod(mod_s);
            if (mod < 0) throw CLI::ValidationError("--mod", "must be nonnegative");
            o.result = detsweep_payload(p, kmin, kmax, shape, mod, jobs);
            for (const auto& r : o.result["rows"])
                o.human += "k=" + r["k"].dump() + " det=" + r["det"].get<std::string>() + "\n";
            o.human += "values: " + join(o.result["values"], ", ") + "\n";
        } else if (cmd == "bound") {
            PairTag tag = parse_pair(pair_s);
            Rational lambda = parse_rational(lambda_s);
            BoundReport r = chain_s.empty() ? pair_bound(tag, lambda, allow_outside)
                                            : pair_bound(live_chain(tag, parse_ks(chain_s)), lambda, allow_outside);
            o.result = bound_payload(r);
            if (!r.warnings.empty()) o.status = Status::Warn;
            std::ostringstream os;
            os << "pair=" << pair_s << " lambda=" << rational_to_string(lambda) << "\n"
               << "mu <= " << rational_to_string(r.mu_bound) << " (~" << approx(r.mu_bound, 10) << ") attained at j="
               << r.argmax_j << "\n";
            if (r.muL_bound) os << "muL <= " << rational_to_string(*r.muL_bound) << "\n";
            os << "lambda threshold " << rational_to_string(r.lambda_threshold) << ", stated range lambda < "
               << rational_to_string(r.stated_threshold) << "\n";
            for (const auto& w : r.warnings) os << "warning: " << w << "\n";
            o.human = os.str();
        } else if (cmd == "iterate") {
            const MahlerPair& p = pair_registry(parse_pair(pair_s));
            ApproxTriple base = compute_hp(p, k, shape, order_cap);
            if (!base.order.is_exact()) throw OrderExceedsCap("base order not exact", base.order.n);
            Integer dm;
            mpz_ui_pow_ui(dm.get_mpz_t(), static_cast<unsigned long>(p.d), static_cast<unsigned long>(m));
            Integer need = Integer(base.order.n) * dm + 1;
            if (check_len == 0) {
                if (!need.fits_ulong_p()) throw std::invalid_argument("level too large");
                check_len = need.get_ui();
            }
            if (need > Integer(check_len)) {
                long mf = max_feasible_level(p, base.order.n, check_len);
                throw InsufficientSeries("check length " + std::to_string(check_len) + " supports at most m=" +
                                         std::to_string(mf) + " (needs " + need.get_str() + ")");
            }
            IterationResult r = iterate(p, base, m, check_len);
            o.result = iterate_payload(p, r, check_len);
            std::ostringstream os;
            for (const auto& c : r.levels)
                os << "m=" << c.level << " order=" << c.order.to_string() << " max_degree=" << c.max_degree
                   << " checked_len=" << c.checked_len << " ok\n";
            os << "final order " << r.triple.order.to_string() << ", no violations\n";
            o.human = os.str();
        } else if (cmd == "eval") {
            const MahlerPair& p = pair_registry(parse_pair(pair_s));
            ApproxTriple base = compute_hp(p, k, shape, order_cap);
            RationalPoint pt{Integer(a_s), Integer(b_s)};
            LinearFormSample s = eval_forms(p, base, m, pt, precision_bits);
            o.result = eval_payload(s);
            o.result["pair"] = pair_s;
            o.result["a"] = a_s;
            o.result["b"] = b_s;
            std::ostringstream os;
            os << "Q = b^" << rational_to_string(s.q_exponent) << "\n"
               << "h = (" << s.h[0] << ", " << s.h[1] << ", " << s.h[2] << ")\n"
               << "r via h f + h g + h  ~ " << approx(s.r_identity.mid()) << "\n"
               << "r via Q R(a/b)       ~ " << approx(s.r_remainder.mid()) << "\n"
               << "enclosures intersect: " << (s.intersect ? "yes" : "no") << " (N=" << s.truncation << ")\n";
            o.human = os.str();
        } else if (cmd == "verify") {
            std::vector<FixtureSet> sets;
            if (std::filesystem::is_directory(fixtures))
                sets = load_fixture_dir(fixtures);
            else
                sets.push_back(load_fixtures(fixtures));
            json arr = json::array();
            std::size_t total = 0, passed = 0;
            for (const auto& set : sets) {
                auto rows = verify_fixture_set(set, jobs);
                arr.push_back(verify_payload(set, rows));
                for (const auto& r : rows) {
                    ++total;
                    passed += r.pass;
                    o.human += std::string(r.pass ? "PASS " : "FAIL ") + pair_name(set.pair) + " k=" +
                               std::to_string(r.k) + " " + r.message + "\n";
                }
            }
            o.human += std::to_string(passed) + "/" + std::to_string(total) + " rows pass\n";
            o.result = {{"sets", arr}, {"passed", passed}, {"total", total}};
            if (passed != total) o.status = Status::Fail;
        }
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnsupportedPair& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        o.status = Status::Fail;
        std::string type = "error";
        if (dynamic_cast<const OrderExceedsCap*>(&e)) type = "OrderExceedsCap";
        else if (dynamic_cast<const IdentityViolation*>(&e)) type = "IdentityViolation";
        else if (dynamic_cast<const OrderLawViolation*>(&e)) type = "OrderLawViolation";
        else if (dynamic_cast<const DegreeBoundViolation*>(&e)) type = "DegreeBoundViolation";
        else if (dynamic_cast<const InvalidPoint*>(&e)) type = "InvalidPoint";
        else if (dynamic_cast<const NonIntegralForm*>(&e)) type = "NonIntegralForm";
        else if (dynamic_cast<const EnclosureMismatch*>(&e)) type = "EnclosureMismatch";
        else if (dynamic_cast<const BoundDomainError*>(&e)) type = "BoundDomainError";
        else if (dynamic_cast<const FixtureError*>(&e)) type = "FixtureError";
        else if (dynamic_cast<const InsufficientSeries*>(&e)) type = "InsufficientSeries";
        else if (dynamic_cast<const std::invalid_argument*>(&e)) type = "InvalidArgument";
        o.result = {{"error", type}, {"message", e.what()}};
        o.human = type + ": " + e.what() + "\n";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (as_json) {
        json report = {{"command", {{"name", cmd}, {"args", args}}}, {"status", status_name(o.status)}, {"result", o.result}};
        out << report.dump(2) << "\n";
    } else {
        out << o.human;
        if (o.status != Status::Ok) out << "status: " << status_name(o.status) << "\n";
    }
    err << "# " << cmd << " took " << std::fixed << std::setprecision(3) << secs << " s\n";
    return exit_code(o.status);
}

}  // namespace mahler
