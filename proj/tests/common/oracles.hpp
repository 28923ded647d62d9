#pragma once

// Test-only oracles, kept independent of the library's enumeration path:
// the box search bounds coordinates through the exact inverse of the trace
// form and scans the whole box, evaluating the quadratic value directly.

#include "totreal/qlattice.hpp"

namespace totreal::testing {

/// Exact inverse of a rational matrix by Gauss-Jordan.
inline QMat invert_matrix(QMat m) {
    const std::size_t n = m.size();
    QMat inv(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) throw error("TestOracle", "singular matrix");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Rat p = m[col][col];
        for (std::size_t k = 0; k < n; ++k) {
            m[col][k] /= p;
            inv[col][k] /= p;
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col] == 0) continue;
            Rat f = m[row][col];
            for (std::size_t k = 0; k < n; ++k) {
                m[row][k] -= f * m[col][k];
                inv[row][k] -= f * inv[col][k];
            }
        }
    }
    return inv;
}

/// Does any lattice vector represent alpha?  Full box scan with coordinate
/// bounds x_i^2 <= Tr(alpha) * (T^-1)_ii (Cauchy-Schwarz in the T inner
/// product), direct exact evaluation of the quadratic value.
inline bool box_search_represents(const QuadraticLattice& L, const FieldElement& alpha) {
    if (alpha.is_zero()) return true;
    ZRestriction r = restrict_scalars(L);
    Rat t = trace(alpha);
    const std::size_t dim = static_cast<std::size_t>(r.dim);
    QMat inv = invert_matrix(r.trace_gram);
    std::vector<Int> bound(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        Rat b = t * inv[i][i];
        bound[i] = isqrt(floor_rat(b)) + 1;
    }
    std::vector<Int> x(dim, 0);
    for (std::size_t i = 0; i < dim; ++i) x[i] = -bound[i];
    for (;;) {
        // direct evaluation of the trace form, then the exact field value
        Rat val(0);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                val += Rat(x[i]) * r.trace_gram[i][j] * Rat(x[j]);
        if (val == t) {
            auto v = r.to_field(x);
            if (L.quadratic_value(v) == alpha) return true;
        }
        // odometer step
        std::size_t k = 0;
        while (k < dim) {
            x[k] += 1;
            if (x[k] <= bound[k]) break;
            x[k] = -bound[k];
            ++k;
        }
        if (k == dim) break;
    }
    return false;
}

} // namespace totreal::testing
