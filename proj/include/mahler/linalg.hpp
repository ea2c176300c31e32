#pragma once

#include "mahler/polyseries.hpp"

#include <cstddef>
#include <vector>

namespace mahler {

using IntMatrix = std::vector<std::vector<Integer>>;

// Determinant by fraction-free (Bareiss) elimination. Square input required.
Integer bareiss_det(IntMatrix m);

struct IntKernel {
    // basis[i] has a 1 in column free_cols[i] and 0 in the other free columns,
    // scaled to a primitive integer vector
    std::vector<std::vector<Integer>> basis;
    std::vector<std::size_t> free_cols;
    std::size_t rank = 0;
};

// Integer kernel basis via fraction-free row echelon form. Columns are
// eliminated in the order given by col_order (a permutation of 0..cols-1);
// the basis is returned in the original coordinates, ordered by col_order.
IntKernel integer_kernel(IntMatrix m, const std::vector<std::size_t>& col_order);
IntKernel integer_kernel(IntMatrix m);

// Divide by the gcd of the entries and make the first nonzero entry positive.
void make_primitive(std::vector<Integer>& v);

}  // namespace mahler
