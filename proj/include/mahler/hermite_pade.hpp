#pragma once

#include "mahler/families.hpp"
#include "mahler/linalg.hpp"
#include "mahler/polyseries.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mahler {

struct DegreeShape {
    std::vector<long> degs;

    // s = n - 2 + sum of degrees
    long s() const;
    std::size_t columns() const;
    std::string to_string() const;
    friend bool operator==(const DegreeShape&, const DegreeShape&) = default;
};

DegreeShape canonical_shape(const MahlerPair& pair, long k);
// parses "k,k+1,k-1" style rules against k
DegreeShape shape_from_rule(const std::string& rule, long k);
std::string shape_rule_string(const std::array<long, 3>& offsets);

struct HpSystem {
    std::vector<std::vector<Rational>> matrix;  // (s+1) x (s+2)
    DegreeShape shape;
    std::vector<std::string> sources;
};

// Rows 0..rows-1 of the coefficient matrix of sum_j P_j f_j. Row i, column
// (block j, offset c) holds f_j[i - c].
std::vector<std::vector<Rational>> hp_rows(const std::vector<TruncSeries>& series, const DegreeShape& shape,
                                           std::size_t rows);
HpSystem build_system(const std::vector<TruncSeries>& series, const DegreeShape& shape,
                      std::vector<std::string> sources = {});

// Each row scaled to integers (rows are homogeneous equations).
IntMatrix integer_rows(const std::vector<std::vector<Rational>>& rows);

struct KernelVector {
    std::vector<Integer> v;
    std::size_t kernel_dim;
};

// Primitive kernel vector taken from the first free column.
KernelVector kernel_vector(const HpSystem& sys);

std::vector<BigPoly> split_blocks(const std::vector<Integer>& v, const DegreeShape& shape);
std::vector<Integer> join_blocks(const std::vector<BigPoly>& polys, const DegreeShape& shape);

// sum_j polys[j] * series[j], valid to the shortest series length
TruncSeries combine(const std::vector<BigPoly>& polys, const std::vector<TruncSeries>& series);

struct ApproxTriple {
    PairTag pair;
    long k = -1;
    DegreeShape shape;
    std::vector<BigPoly> polys;  // A, B, C
    SeriesOrder order = SeriesOrder::at_least(0);
    long level = 0;
    TruncSeries remainder;  // A f + B g + C
    std::size_t kernel_dim = 1;
    std::size_t admissible_dim = 1;
    bool condition_met = true;

    const BigPoly& A() const { return polys[0]; }
    const BigPoly& B() const { return polys[1]; }
    const BigPoly& C() const { return polys[2]; }
    bool degenerate() const { return admissible_dim > 1; }
};

// (f, g, 1) for the pair, each to n terms
std::vector<TruncSeries> pair_series(const MahlerPair& pair, std::size_t n);

struct Approximation {
    std::vector<BigPoly> polys;
    SeriesOrder order = SeriesOrder::at_least(0);
    TruncSeries remainder;
    std::size_t kernel_dim = 0;
    std::size_t admissible_dim = 0;
    bool condition_met = true;
};

// Generic-order approximation over a kernel subspace. Columns listed in
// forced_zero are constrained to vanish. Among the vectors attaining the
// minimal order over the subspace, prefers one satisfying `condition`.
Approximation approximate(const std::vector<TruncSeries>& series, const DegreeShape& shape,
                          const std::vector<std::size_t>& forced_zero = {},
                          const std::function<bool(const std::vector<BigPoly>&)>& condition = {});

constexpr std::size_t kHardOrderCap = 4096;

// Fixed cap; throws OrderExceedsCap if the remainder vanishes to the cap.
ApproxTriple approx_triple(const MahlerPair& pair, const DegreeShape& shape, std::size_t order_cap);
// Starts at s + 65 and doubles on a vanishing remainder up to kHardOrderCap.
ApproxTriple approx_triple(const MahlerPair& pair, const DegreeShape& shape);
ApproxTriple approx_triple_k(const MahlerPair& pair, long k);

// det [Delta; delta_1], optionally reduced into [0, modulus)
Integer bordered_det(const std::vector<TruncSeries>& series, const DegreeShape& shape,
                     std::optional<Integer> modulus = std::nullopt);
Integer bordered_det(const MahlerPair& pair, const DegreeShape& shape, std::optional<Integer> modulus = std::nullopt);

}  // namespace mahler
