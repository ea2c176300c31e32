#include "mahler/linalg.hpp"

#include <numeric>
#include <stdexcept>

namespace mahler {

Integer bareiss_det(IntMatrix m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("bareiss_det: matrix is not square");
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    Integer t;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(m[p][c]) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            sign = -sign;
        }
        const Integer& piv = m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            const Integer& lead = m[i][c];
            for (std::size_t j = c + 1; j < n; ++j) {
                t = piv * m[i][j];
                mpz_submul(t.get_mpz_t(), lead.get_mpz_t(), m[c][j].get_mpz_t());
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][c] = 0;
        }
        prev = piv;
    }
    return sign > 0 ? m[n - 1][n - 1] : Integer(-m[n - 1][n - 1]);
}

void make_primitive(std::vector<Integer>& v) {
    Integer g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0) return;
    for (const auto& x : v)
        if (sgn(x) != 0) {
            if (sgn(x) < 0) g = -g;
            break;
        }
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

IntKernel integer_kernel(IntMatrix m, const std::vector<std::size_t>& col_order) {
    const std::size_t rows = m.size();
    const std::size_t cols = col_order.size();
    for (auto& row : m) {
        if (row.size() != cols) throw std::invalid_argument("integer_kernel: ragged matrix");
        std::vector<Integer> perm(cols);
        for (std::size_t j = 0; j < cols; ++j) perm[j] = std::move(row[col_order[j]]);
        row = std::move(perm);
    }

    // fraction-free echelon form; entries stay minors of the input
    std::vector<std::size_t> pivot_col;
    std::vector<bool> is_pivot(cols, false);
    Integer prev = 1, t;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && sgn(m[p][c]) == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        const Integer& piv = m[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (sgn(m[i][c]) == 0) {
                // the row still has to be scaled by piv / prev
                for (std::size_t j = c + 1; j < cols; ++j) {
                    if (sgn(m[i][j]) == 0) continue;
                    t = piv * m[i][j];
                    mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                }
                continue;
            }
            const Integer& lead = m[i][c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                t = piv * m[i][j];
                mpz_submul(t.get_mpz_t(), lead.get_mpz_t(), m[r][j].get_mpz_t());
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][c] = 0;
        }
        prev = piv;
        pivot_col.push_back(c);
        is_pivot[c] = true;
        ++r;
    }

    IntKernel out;
    out.rank = r;
    for (std::size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        // x = y / D, starting from x_fc = 1
        std::vector<Integer> y(cols);
        y[fc] = 1;
        Integer D = 1, S, g, scale;
        for (std::size_t i = r; i-- > 0;) {
            std::size_t pc = pivot_col[i];
            S = 0;
            for (std::size_t j = pc + 1; j < cols; ++j)
                if (sgn(y[j]) != 0 && sgn(m[i][j]) != 0) mpz_submul(S.get_mpz_t(), m[i][j].get_mpz_t(), y[j].get_mpz_t());
            const Integer& piv = m[i][pc];
            mpz_gcd(g.get_mpz_t(), S.get_mpz_t(), piv.get_mpz_t());
            mpz_divexact(scale.get_mpz_t(), piv.get_mpz_t(), g.get_mpz_t());
            if (scale != 1) {
                for (auto& yj : y)
                    if (sgn(yj) != 0) yj *= scale;
                D *= scale;
            }
            mpz_divexact(y[pc].get_mpz_t(), S.get_mpz_t(), g.get_mpz_t());
        }
        make_primitive(y);
        std::vector<Integer> orig(cols);
        for (std::size_t j = 0; j < cols; ++j) orig[col_order[j]] = std::move(y[j]);
        out.basis.push_back(std::move(orig));
        out.free_cols.push_back(col_order[fc]);
    }
    return out;
}

IntKernel integer_kernel(IntMatrix m) {
    std::vector<std::size_t> order(m.empty() ? 0 : m[0].size());
    std::iota(order.begin(), order.end(), 0);
    return integer_kernel(std::move(m), order);
}

}  // namespace mahler
