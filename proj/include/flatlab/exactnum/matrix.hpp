#pragma once

#include <cstddef>
#include <cstdint>
#include <type_traits>
#include <utility>
#include <vector>

#include "flatlab/errors.hpp"
#include "flatlab/exactnum/galois_field.hpp"

namespace flatlab {

/// Dense row-major matrix over a field K.
template <class K>
class Matrix {
public:
    using value_type = typename K::value_type;
    using Row = std::vector<value_type>;

    Matrix(K field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

    /// Throws FieldMismatch on ragged input.
    static Matrix from_rows(K field, const std::vector<Row>& rows) {
        const std::size_t cols = rows.empty() ? 0 : rows.front().size();
        Matrix m(std::move(field), rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw FieldMismatch("ragged matrix rows");
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    const K& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    value_type& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const value_type& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Row apply(const Row& v) const {
        if (v.size() != cols_) throw FieldMismatch("vector length does not match matrix");
        Row out(rows_, field_.zero());
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                out[i] = field_.add(out[i], field_.mul(at(i, j), v[j]));
            }
        }
        return out;
    }

private:
    K field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<value_type> data_;
};

/// Reduced row echelon form in place; returns the pivot column of each nonzero row.
/// The pivot of a column is the first row (in order) with a nonzero entry there.
template <class K>
std::vector<std::size_t> rref(Matrix<K>& m) {
    const K& f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t prow = 0;
    for (std::size_t col = 0; col < m.cols() && prow < m.rows(); ++col) {
        std::size_t r = prow;
        while (r < m.rows() && f.is_zero(m.at(r, col))) ++r;
        if (r == m.rows()) continue;
        if (r != prow) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(prow, j));
        }
        const auto inv = f.inv(m.at(prow, col));
        for (std::size_t j = col; j < m.cols(); ++j) m.at(prow, j) = f.mul(m.at(prow, j), inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == prow || f.is_zero(m.at(i, col))) continue;
            const auto factor = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) {
                m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(prow, j)));
            }
        }
        pivots.push_back(col);
        ++prow;
    }
    return pivots;
}

namespace detail {

/// Prime-field specialization of rref on machine integers.
inline std::vector<std::size_t> rref_prime(std::vector<std::uint64_t>& a, std::size_t rows, std::size_t cols,
                                           std::uint64_t p) {
    auto inv_mod = [p](std::uint64_t x) {
        std::uint64_t result = 1, base = x % p, e = p - 2;
        while (e > 0) {
            if (e & 1U) result = result * base % p;
            base = base * base % p;
            e >>= 1U;
        }
        return result;
    };
    std::vector<std::size_t> pivots;
    std::size_t prow = 0;
    for (std::size_t col = 0; col < cols && prow < rows; ++col) {
        std::size_t r = prow;
        while (r < rows && a[r * cols + col] == 0) ++r;
        if (r == rows) continue;
        if (r != prow) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[r * cols + j], a[prow * cols + j]);
        }
        std::uint64_t* pr = &a[prow * cols];
        const std::uint64_t inv = inv_mod(pr[col]);
        for (std::size_t j = col; j < cols; ++j) pr[j] = pr[j] * inv % p;
        for (std::size_t i = 0; i < rows; ++i) {
            std::uint64_t* ri = &a[i * cols];
            if (i == prow || ri[col] == 0) continue;
            const std::uint64_t factor = p - ri[col];
            for (std::size_t j = col; j < cols; ++j) {
                if (pr[j] != 0) ri[j] = (ri[j] + factor * pr[j]) % p;
            }
        }
        pivots.push_back(col);
        ++prow;
    }
    return pivots;
}

}  // namespace detail

/// Basis of the right null space {v : Mv = 0}, one vector per free column,
/// read off the reduced row echelon form (free coordinate set to 1).
template <class K>
std::vector<std::vector<typename K::value_type>> mat_kernel(const Matrix<K>& input) {
    const K& f = input.field();
    const std::size_t cols = input.cols();
    std::vector<std::vector<typename K::value_type>> basis;

    if constexpr (std::is_same_v<K, GaloisField>) {
        if (f.degree() == 1) {
            std::vector<std::uint64_t> a(input.rows() * cols);
            for (std::size_t i = 0; i < input.rows(); ++i) {
                for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = input.at(i, j).c[0];
            }
            const auto pivots = detail::rref_prime(a, input.rows(), cols, f.characteristic());
            std::vector<bool> is_pivot(cols, false);
            for (auto c : pivots) is_pivot[c] = true;
            for (std::size_t free = 0; free < cols; ++free) {
                if (is_pivot[free]) continue;
                std::vector<FqRaw> v(cols, f.zero());
                v[free] = f.one();
                for (std::size_t r = 0; r < pivots.size(); ++r) {
                    v[pivots[r]] = f.neg(f.from_int(static_cast<long long>(a[r * cols + free])));
                }
                basis.push_back(std::move(v));
            }
            return basis;
        }
    }

    Matrix<K> m = input;
    const auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<typename K::value_type> v(cols, f.zero());
        v[free] = f.one();
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(m.at(r, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class K>
std::size_t mat_rank(const Matrix<K>& input) {
    Matrix<K> m = input;
    return rref(m).size();
}

}  // namespace flatlab
