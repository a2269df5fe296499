#pragma once

#include "oix/rational.hpp"

#include <vector>

namespace oix {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;  // row-major

inline RatMat zeroMat(size_t rows, size_t cols) { return RatMat(rows, RatVec(cols, Rat(0))); }

inline RatMat identityMat(size_t n) {
    RatMat m = zeroMat(n, n);
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline Rat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Rat s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RatVec matVec(const RatMat& m, const RatVec& v) {
    RatVec r(m.size(), Rat(0));
    for (size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
    return r;
}

inline RatMat matMul(const RatMat& a, const RatMat& b) {
    if (a.empty() || b.empty()) return {};
    size_t n = a.size(), k = b.size(), m = b[0].size();
    RatMat r = zeroMat(n, m);
    for (size_t i = 0; i < n; ++i) {
        if (a[i].size() != k) throw std::invalid_argument("matMul: shape mismatch");
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
        }
    }
    return r;
}

inline RatMat transpose(const RatMat& m) {
    if (m.empty()) return {};
    RatMat r = zeroMat(m[0].size(), m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) r[j][i] = m[i][j];
    return r;
}

/// In-place reduced row echelon form; returns the pivot column of each pivot
/// row in order.
inline std::vector<size_t> rref(RatMat& m) {
    std::vector<size_t> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size(), row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t sel = row;
        while (sel < rows && m[sel][col] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[row]);
        Rat inv = 1 / m[row][col];
        for (size_t j = col; j < cols; ++j) m[row][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rat f = m[i][col];
            for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline size_t rankOf(RatMat m) { return rref(m).size(); }

/// Basis of {x : m x = 0}.
inline std::vector<RatVec> kernelBasis(RatMat m) {
    if (m.empty()) return {};
    size_t cols = m[0].size();
    auto pivots = rref(m);
    std::vector<bool> isPivot(cols, false);
    for (size_t c : pivots) isPivot[c] = true;
    std::vector<RatVec> basis;
    for (size_t freeCol = 0; freeCol < cols; ++freeCol) {
        if (isPivot[freeCol]) continue;
        RatVec v(cols, Rat(0));
        v[freeCol] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][freeCol];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Left inverse L (cols x rows) with L m = I; requires full column rank.
inline RatMat leftInverse(const RatMat& m) {
    if (m.empty()) return {};
    size_t rows = m.size(), cols = m[0].size();
    RatMat aug = zeroMat(rows, cols + rows);
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j) aug[i][j] = m[i][j];
        aug[i][cols + i] = 1;
    }
    auto pivots = rref(aug);
    RatMat L = zeroMat(cols, rows);
    size_t found = 0;
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] < cols) {
            for (size_t j = 0; j < rows; ++j) L[pivots[r]][j] = aug[r][cols + j];
            ++found;
        }
    }
    if (found != cols) throw std::domain_error("leftInverse: matrix not of full column rank");
    return L;
}

/// Inverse of a square nonsingular matrix.
inline RatMat inverse(const RatMat& m) {
    size_t n = m.size();
    RatMat inv = leftInverse(m);
    if (inv.size() != n) throw std::domain_error("inverse: not square");
    return inv;
}

/// Determinant via fraction-free-ish Gaussian elimination on rationals.
inline Rat determinant(RatMat m) {
    size_t n = m.size();
    Rat det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t sel = col;
        while (sel < n && m[sel][col] == 0) ++sel;
        if (sel == n) return Rat(0);
        if (sel != col) {
            std::swap(m[sel], m[col]);
            det = -det;
        }
        det *= m[col][col];
        Rat inv = 1 / m[col][col];
        for (size_t i = col + 1; i < n; ++i) {
            if (m[i][col] == 0) continue;
            Rat f = m[i][col] * inv;
            for (size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
        }
    }
    return det;
}

/// Sylvester test: all leading principal minors positive.
inline bool isPositiveDefinite(const RatMat& m) {
    size_t n = m.size();
    for (size_t k = 1; k <= n; ++k) {
        RatMat sub(k, RatVec(k));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) sub[i][j] = m[i][j];
        if (!(determinant(std::move(sub)) > 0)) return false;
    }
    return true;
}

/// Exact positive semidefiniteness: every principal minor is nonnegative.
inline bool isPositiveSemidefinite(const RatMat& m) {
    size_t n = m.size();
    if (n > 16) throw std::runtime_error("isPositiveSemidefinite: dimension budget");
    for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
        std::vector<size_t> idx;
        for (size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1) idx.push_back(i);
        RatMat sub(idx.size(), RatVec(idx.size()));
        for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = 0; j < idx.size(); ++j) sub[i][j] = m[idx[i]][idx[j]];
        if (determinant(std::move(sub)) < 0) return false;
    }
    return true;
}

}  // namespace oix
