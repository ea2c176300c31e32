#pragma once

#include "mahler/hermite_pade.hpp"

#include <string>
#include <variant>
#include <vector>

namespace mahler {

struct PolyRow {
    long k;
    long o;
    BigPoly A, B;
    std::size_t line = 0;
};

struct DetRow {
    long k;
    Integer det;
    std::size_t line = 0;
};

struct FixtureSet {
    PairTag pair;
    std::string source;
    bool det_mode = false;
    std::array<long, 3> shape_offsets{};  // polynomial mode
    Integer modulus = 0;                  // det mode
    std::vector<PolyRow> poly_rows;
    std::vector<DetRow> det_rows;

    std::size_t size() const { return det_mode ? det_rows.size() : poly_rows.size(); }
};

// Throws FixtureError with the offending line number.
FixtureSet parse_fixtures(const std::string& text, const std::string& source = "<text>");
FixtureSet load_fixtures(const std::string& path);
// every *.txt file in the directory, sorted by name
std::vector<FixtureSet> load_fixture_dir(const std::string& dir);

struct VerifyResult {
    bool pass = false;
    long k = 0;
    std::string message;
    long live_order = -1;
    long expected_order = -1;
    std::size_t kernel_dim = 0;
    // first mismatching position in the concatenated (A, B) vector, or -1
    long mismatch_index = -1;
};

VerifyResult verify_fixture_row(const FixtureSet& set, const PolyRow& row, const ApproxTriple& live);
VerifyResult verify_fixture_row(const FixtureSet& set, const DetRow& row, const Integer& live_det);

// Computes the live objects for every row; rows are processed on up to `jobs` threads.
std::vector<VerifyResult> verify_fixture_set(const FixtureSet& set, unsigned jobs = 1);

}  // namespace mahler
