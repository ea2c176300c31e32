#pragma once

#include "mahler/hermite_pade.hpp"

namespace mahler {

struct LiftedTriple : ApproxTriple {
    std::size_t base_order = 0;
};

LiftedTriple as_lifted(const ApproxTriple& t);

LiftedTriple lift_once(const MahlerPair& pair, const LiftedTriple& t);
LiftedTriple lift_once(const MahlerPair& pair, const ApproxTriple& t);

// ebar(k) = dbar(k) - e1, where dbar is the largest shape degree
long ebar(const MahlerPair& pair, const DegreeShape& shape);
// (d-1) times the degree bound (ebar + tau/(d-1)) d^m - tau/(d-1)
Integer scaled_degree_bound(const MahlerPair& pair, long ebar_k, long m);
bool within_degree_bound(const MahlerPair& pair, long ebar_k, long m, long degree);

struct IterationCheck {
    long level;
    std::size_t checked_len;
    SeriesOrder order;
    long max_degree;
};

struct IterationResult {
    LiftedTriple triple;
    std::vector<IterationCheck> levels;
};

// Lifts m times. At every level checks the substitution identity against the
// tracked remainder, the order law base_order * d^m and (for m >= 1) the
// degree bound. check_len must be at least base_order * d^m + 1.
IterationResult iterate(const MahlerPair& pair, const ApproxTriple& t0, long m, std::size_t check_len);

// largest m with base_order * d^m + 1 <= max_len
long max_feasible_level(const MahlerPair& pair, std::size_t base_order, std::size_t max_len);

// Remainder of the base triple recomputed to n terms.
TruncSeries base_remainder(const MahlerPair& pair, const ApproxTriple& t, std::size_t n);

}  // namespace mahler
