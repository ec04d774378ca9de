#pragma once

#include <vector>

#include "base_function.hpp"
#include "weighted_poly.hpp"

namespace filtra {

template <typename T>
using Matrix = std::vector<std::vector<T>>;

// Exact determinant over the rational-function field.
inline BaseFunction det(Matrix<BaseFunction> m) {
    std::size_t n = m.size();
    if (n == 0)
        throw UnsupportedInput("determinant of empty matrix");
    std::size_t nvars = m[0][0].nvars();
    BaseFunction result = BaseFunction::constant(nvars, 1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero())
            ++pivot;
        if (pivot == n)
            return BaseFunction(nvars);
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            result = -result;
        }
        result *= m[col][col];
        for (std::size_t row = col + 1; row < n; ++row) {
            if (m[row][col].is_zero())
                continue;
            BaseFunction f = m[row][col] / m[col][col];
            for (std::size_t k = col; k < n; ++k)
                m[row][k] -= f * m[col][k];
        }
    }
    return result;
}

// Exact inverse over the rational-function field (Gauss-Jordan).
inline Matrix<BaseFunction> inverse(Matrix<BaseFunction> m) {
    std::size_t n = m.size();
    if (n == 0)
        throw UnsupportedInput("inverse of empty matrix");
    std::size_t nvars = m[0][0].nvars();
    Matrix<BaseFunction> inv(n, std::vector<BaseFunction>(n, BaseFunction(nvars)));
    for (std::size_t i = 0; i < n; ++i)
        inv[i][i] = BaseFunction::constant(nvars, 1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero())
            ++pivot;
        if (pivot == n)
            throw SingularLinearPart("matrix is not invertible");
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            std::swap(inv[pivot], inv[col]);
        }
        BaseFunction p = m[col][col];
        for (std::size_t k = 0; k < n; ++k) {
            m[col][k] /= p;
            inv[col][k] /= p;
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col].is_zero())
                continue;
            BaseFunction f = m[row][col];
            for (std::size_t k = 0; k < n; ++k) {
                m[row][k] -= f * m[col][k];
                inv[row][k] -= f * inv[col][k];
            }
        }
    }
    return inv;
}

// Determinant over the fibre-polynomial ring (division-free Laplace
// expansion; blocks in practice are tiny).
inline WeightedPolynomial det_poly(const Matrix<WeightedPolynomial>& m) {
    std::size_t n = m.size();
    if (n == 0)
        throw UnsupportedInput("determinant of empty matrix");
    if (n == 1)
        return m[0][0];
    const FramePtr& fr = m[0][0].frame();
    WeightedPolynomial result(fr);
    int sign = 1;
    for (std::size_t row = 0; row < n; ++row) {
        if (!m[row][0].is_zero()) {
            Matrix<WeightedPolynomial> minor;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == row)
                    continue;
                std::vector<WeightedPolynomial> line;
                for (std::size_t c = 1; c < n; ++c)
                    line.push_back(m[r][c]);
                minor.push_back(std::move(line));
            }
            WeightedPolynomial term = m[row][0] * det_poly(minor);
            if (sign < 0)
                result -= term;
            else
                result += term;
        }
        sign = -sign;
    }
    return result;
}

} // namespace filtra
