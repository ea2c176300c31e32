#pragma once

#include "mahler/exponent.hpp"
#include "mahler/iteration.hpp"
#include "mahler/numeric_forms.hpp"
#include "mahler/verification.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mahler {

enum class Status { Ok, Fail, Warn };

std::string status_name(Status s);

// Exit codes: 0 ok, 1 fail or library error, 2 usage error, 3 warn.
constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitWarn = 3;

int exit_code(Status s);

// Payload builders shared by the CLI and the Python module. Big integers and
// rationals are emitted as decimal strings.
nlohmann::json poly_json(const BigPoly& p);
nlohmann::json rational_json(const Rational& q);
nlohmann::json interval_json(const Interval& iv);

nlohmann::json series_payload(FamilyId id, std::size_t n);
nlohmann::json hp_payload(const ApproxTriple& t);
nlohmann::json detsweep_payload(const MahlerPair& pair, long kmin, long kmax, const std::optional<std::string>& shape_rule,
                                const Integer& modulus, unsigned jobs);
nlohmann::json bound_payload(const BoundReport& r);
nlohmann::json iterate_payload(const MahlerPair& pair, const IterationResult& r, std::size_t check_len);
nlohmann::json eval_payload(const LinearFormSample& s);
nlohmann::json verify_payload(const FixtureSet& set, const std::vector<VerifyResult>& rows);

// Chain with the given base degrees; orders are computed live.
ChainSpec live_chain(PairTag pair, const std::vector<long>& ks);

// Runs one command line (without the program name). Human output or JSON goes
// to out, diagnostics and timing to err. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mahler
