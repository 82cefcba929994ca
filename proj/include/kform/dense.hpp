#pragma once

// Dense matrices over an exact field. Everything here is small (g x g or
// g^2 x g^2), so plain Gauss-Jordan is fine.

#include "fields.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace kf {

template <class K>
using Mat = std::vector<std::vector<K>>;

template <class F>
Mat<typename F::Elem> mat_zero(const F& field, uint32_t r, uint32_t c) {
    return Mat<typename F::Elem>(r, std::vector<typename F::Elem>(c, field.zero()));
}

template <class F>
Mat<typename F::Elem> mat_identity(const F& field, uint32_t n) {
    auto m = mat_zero(field, n, n);
    for (uint32_t i = 0; i < n; ++i) m[i][i] = field.one();
    return m;
}

template <class K>
uint32_t mat_rows(const Mat<K>& a) { return uint32_t(a.size()); }

template <class K>
uint32_t mat_cols(const Mat<K>& a) { return a.empty() ? 0 : uint32_t(a[0].size()); }

template <class K>
Mat<K> mat_mul(const Mat<K>& a, const Mat<K>& b) {
    uint32_t n = mat_rows(a), k = mat_cols(a), m = mat_cols(b);
    if (k != mat_rows(b)) fail("DimensionMismatch", "matrix product shape mismatch");
    Mat<K> c(n, std::vector<K>(m));
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < m; ++j) {
            K s = a[i][0] * b[0][j];
            for (uint32_t t = 1; t < k; ++t) s = s + a[i][t] * b[t][j];
            c[i][j] = s;
        }
    return c;
}

template <class K>
Mat<K> mat_add(const Mat<K>& a, const Mat<K>& b) {
    if (mat_rows(a) != mat_rows(b) || mat_cols(a) != mat_cols(b))
        fail("DimensionMismatch", "matrix sum shape mismatch");
    Mat<K> c = a;
    for (uint32_t i = 0; i < mat_rows(a); ++i)
        for (uint32_t j = 0; j < mat_cols(a); ++j) c[i][j] = c[i][j] + b[i][j];
    return c;
}

template <class K>
Mat<K> mat_sub(const Mat<K>& a, const Mat<K>& b) {
    if (mat_rows(a) != mat_rows(b) || mat_cols(a) != mat_cols(b))
        fail("DimensionMismatch", "matrix difference shape mismatch");
    Mat<K> c = a;
    for (uint32_t i = 0; i < mat_rows(a); ++i)
        for (uint32_t j = 0; j < mat_cols(a); ++j) c[i][j] = c[i][j] - b[i][j];
    return c;
}

template <class K>
Mat<K> mat_scale(const Mat<K>& a, const K& c) {
    Mat<K> r = a;
    for (auto& row : r)
        for (auto& x : row) x = x * c;
    return r;
}

template <class K>
Mat<K> mat_transpose(const Mat<K>& a) {
    Mat<K> t(mat_cols(a), std::vector<K>(mat_rows(a), a.empty() ? K{} : a[0][0]));
    for (uint32_t i = 0; i < mat_rows(a); ++i)
        for (uint32_t j = 0; j < mat_cols(a); ++j) t[j][i] = a[i][j];
    return t;
}

template <class K>
K mat_trace(const Mat<K>& a) {
    if (mat_rows(a) != mat_cols(a)) fail("DimensionMismatch", "trace of non-square matrix");
    K s = a[0][0];
    for (uint32_t i = 1; i < mat_rows(a); ++i) s = s + a[i][i];
    return s;
}

template <class K>
bool mat_equal(const Mat<K>& a, const Mat<K>& b) {
    if (mat_rows(a) != mat_rows(b) || mat_cols(a) != mat_cols(b)) return false;
    for (uint32_t i = 0; i < mat_rows(a); ++i)
        for (uint32_t j = 0; j < mat_cols(a); ++j)
            if (!(is_zero(a[i][j] - b[i][j]))) return false;
    return true;
}

template <class K>
bool mat_is_zero(const Mat<K>& a) {
    for (const auto& row : a)
        for (const auto& x : row)
            if (!is_zero(x)) return false;
    return true;
}

// Gauss-Jordan on [a | id]; nullopt when singular.
template <class F>
std::optional<Mat<typename F::Elem>> mat_inverse(const F& field, const Mat<typename F::Elem>& a) {
    using K = typename F::Elem;
    uint32_t n = mat_rows(a);
    if (n != mat_cols(a)) fail("DimensionMismatch", "inverse of non-square matrix");
    Mat<K> m = a, inv = mat_identity(field, n);
    for (uint32_t col = 0; col < n; ++col) {
        uint32_t piv = col;
        while (piv < n && is_zero(m[piv][col])) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        K d = m[col][col];
        for (uint32_t j = 0; j < n; ++j) { m[col][j] = m[col][j] / d; inv[col][j] = inv[col][j] / d; }
        for (uint32_t i = 0; i < n; ++i) {
            if (i == col || is_zero(m[i][col])) continue;
            K c = m[i][col];
            for (uint32_t j = 0; j < n; ++j) {
                m[i][j] = m[i][j] - c * m[col][j];
                inv[i][j] = inv[i][j] - c * inv[col][j];
            }
        }
    }
    return inv;
}

template <class F>
typename F::Elem mat_det(const F& field, Mat<typename F::Elem> m) {
    using K = typename F::Elem;
    uint32_t n = mat_rows(m);
    if (n != mat_cols(m)) fail("DimensionMismatch", "determinant of non-square matrix");
    K det = field.one();
    for (uint32_t col = 0; col < n; ++col) {
        uint32_t piv = col;
        while (piv < n && is_zero(m[piv][col])) ++piv;
        if (piv == n) return field.zero();
        if (piv != col) { std::swap(m[piv], m[col]); det = -det; }
        det = det * m[col][col];
        K d = m[col][col];
        for (uint32_t i = col + 1; i < n; ++i) {
            if (is_zero(m[i][col])) continue;
            K c = m[i][col] / d;
            for (uint32_t j = col; j < n; ++j) m[i][j] = m[i][j] - c * m[col][j];
        }
    }
    return det;
}

template <class K>
uint32_t mat_rank(Mat<K> m) {
    uint32_t rank = 0;
    for (uint32_t col = 0; col < mat_cols(m) && rank < mat_rows(m); ++col) {
        uint32_t piv = rank;
        while (piv < mat_rows(m) && is_zero(m[piv][col])) ++piv;
        if (piv == mat_rows(m)) continue;
        std::swap(m[piv], m[rank]);
        K d = m[rank][col];
        for (uint32_t i = rank + 1; i < mat_rows(m); ++i) {
            if (is_zero(m[i][col])) continue;
            K c = m[i][col] / d;
            for (uint32_t j = col; j < mat_cols(m); ++j) m[i][j] = m[i][j] - c * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

template <class K>
std::vector<K> mat_apply(const Mat<K>& a, const std::vector<K>& x) {
    if (mat_cols(a) != x.size()) fail("DimensionMismatch", "matrix-vector shape mismatch");
    std::vector<K> y;
    y.reserve(mat_rows(a));
    for (uint32_t i = 0; i < mat_rows(a); ++i) {
        K s = a[i][0] * x[0];
        for (uint32_t j = 1; j < mat_cols(a); ++j) s = s + a[i][j] * x[j];
        y.push_back(s);
    }
    return y;
}

} // namespace kf
