#pragma once

#include "mahler/polyseries.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace mahler {

enum class FamilyId { SternA, SternB, ThueMorseT, ThueMorseM, LambertG3, LambertF3, DilcherS, DilcherS4 };

enum class PairTag { Stern, TM, G3F3, DS };

std::string family_name(FamilyId id);
FamilyId parse_family(const std::string& name);
std::string pair_name(PairTag tag);
PairTag parse_pair(const std::string& name);
const std::vector<PairTag>& all_pairs();

// First n coefficients as integers (all registered families are integral).
std::vector<Integer> family_integers(FamilyId id, std::size_t n);
TruncSeries series_coeffs(FamilyId id, std::size_t n);

// phi1(z) f(z) + phi2(z) f(z^d) + phi3(z) = 0
struct ScalarMahlerEq {
    BigPoly phi1, phi2, phi3;
    long d = 2;
};

struct ScalarData {
    ScalarMahlerEq eq_f, eq_g;
    BigPoly phi, phi_hat2, psi_hat2;
    long v = 0;
};

// (f(z^d), g(z^d))^T = M(z) (f(z), g(z))^T
struct CoupledData {
    long d = 4;
    std::array<std::array<BigPoly, 2>, 2> M;
};

enum class PairKind { Scalar, Coupled };

struct MahlerPair {
    PairTag tag;
    FamilyId f, g;
    PairKind kind;
    long d;
    ScalarData scalar;    // valid when kind == Scalar
    CoupledData coupled;  // valid when kind == Coupled
    long v;
    long e1, e2;
    // polynomial factors whose zeros inside the unit disc are excluded for evaluation points
    std::vector<BigPoly> excluded_factors;
    std::string excluded_note;
    // canonical degree shape offsets relative to k, e.g. {0, 1, -1}
    std::array<long, 3> shape_offsets;

    bool is_scalar() const { return kind == PairKind::Scalar; }
    // tau = v - e2
    long tau() const { return v - e2; }
};

// Derives phi = lcm(phi2, psi2) normalized to phi(0) = 1, the cofactors and v.
ScalarData derive_scalar(const ScalarMahlerEq& ef, const ScalarMahlerEq& eg);

const MahlerPair& pair_registry(PairTag tag);
const MahlerPair& pair_registry(FamilyId f, FamilyId g);

// Residual order of phi1 f + phi2 f(z^d) + phi3 computed to n terms.
SeriesOrder scalar_residual_order(const ScalarMahlerEq& eq, const TruncSeries& f);

// One order per stored equation (two for both kinds). Throws EquationMismatch
// unless every residual is AtLeast(n).
std::vector<SeriesOrder> validate_equation(const MahlerPair& pair, std::size_t n);
std::vector<SeriesOrder> equation_residual_orders(const MahlerPair& pair, std::size_t n);

}  // namespace mahler
