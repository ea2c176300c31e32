#include "mahler/cli.hpp"
#include "mahler/errors.hpp"
#include "mahler/parallel.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace mahler;
using nlohmann::json;

namespace {

// payloads cross the boundary as JSON text; the Python side decodes them
std::string hp(const std::string& pair, long k, std::optional<std::string> shape) {
    const MahlerPair& p = pair_registry(parse_pair(pair));
    ApproxTriple t = approx_triple(p, shape ? shape_from_rule(*shape, k) : canonical_shape(p, k));
    t.k = k;
    return hp_payload(t).dump();
}

std::string series(const std::string& family, std::size_t n) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    return series_payload(parse_family(family), n).dump();
}

std::string detsweep(const std::string& pair, long kmin, long kmax, const std::string& modulus, unsigned jobs) {
    return detsweep_payload(pair_registry(parse_pair(pair)), kmin, kmax, std::nullopt, Integer(modulus),
                            jobs == 0 ? default_jobs() : jobs)
        .dump();
}

std::string bound(const std::string& pair, const std::string& lambda, bool allow_outside) {
    return bound_payload(pair_bound(parse_pair(pair), parse_rational(lambda), allow_outside)).dump();
}

std::string iterate_pair(const std::string& pair, long k, long m) {
    const MahlerPair& p = pair_registry(parse_pair(pair));
    ApproxTriple base = approx_triple_k(p, k);
    std::size_t len = base.order.n;
    for (long i = 0; i < m; ++i) len *= static_cast<std::size_t>(p.d);
    return iterate_payload(p, iterate(p, base, m, len + 1), len + 1).dump();
}

std::string eval_pair(const std::string& pair, long k, long m, long a, long b, long bits) {
    const MahlerPair& p = pair_registry(parse_pair(pair));
    return eval_payload(eval_forms(p, approx_triple_k(p, k), m, {Integer(a), Integer(b)}, bits)).dump();
}

std::string verify(const std::string& path, unsigned jobs) {
    json arr = json::array();
    for (const auto& set : load_fixture_dir(path))
        arr.push_back(verify_payload(set, verify_fixture_set(set, jobs == 0 ? default_jobs() : jobs)));
    return arr.dump();
}

py::tuple run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_mahler, m) {
    m.doc() = "Hermite-Pade approximations to pairs of Mahler functions";
    py::register_exception<MahlerError>(m, "MahlerError");
    m.def("series_json", &series, py::arg("family"), py::arg("n"));
    m.def("hp_json", &hp, py::arg("pair"), py::arg("k"), py::arg("shape") = std::nullopt);
    m.def("detsweep_json", &detsweep, py::arg("pair"), py::arg("kmin"), py::arg("kmax"), py::arg("modulus") = "0",
          py::arg("jobs") = 0);
    m.def("bound_json", &bound, py::arg("pair"), py::arg("lam") = "0", py::arg("allow_outside") = false);
    m.def("iterate_json", &iterate_pair, py::arg("pair"), py::arg("k"), py::arg("m"));
    m.def("eval_json", &eval_pair, py::arg("pair"), py::arg("k"), py::arg("m"), py::arg("a"), py::arg("b"),
          py::arg("precision_bits") = 256);
    m.def("verify_json", &verify, py::arg("path"), py::arg("jobs") = 0);
    m.def("run", &run, py::arg("args"), "run a CLI command line; returns (exit_code, stdout, stderr)");
}
