#pragma once

#include <cstddef>
#include <vector>

#include "rur/errors.hpp"

namespace rur {

/// Row-major dense matrix over a field.
template <class K>
class DenseMatrix {
  public:
    DenseMatrix(std::size_t rows, std::size_t cols, const K& fill)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static DenseMatrix identity(std::size_t n, const K& sample) {
        DenseMatrix m(n, n, sample.zero());
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = sample.one();
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    K& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const K& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const DenseMatrix& b) const {
        return rows_ == b.rows_ && cols_ == b.cols_ && a_ == b.a_;
    }
    bool operator!=(const DenseMatrix& b) const { return !(*this == b); }

    std::vector<K> mul_vec(const std::vector<K>& v) const {
        if (v.size() != cols_) throw InternalInvariantViolation("matrix/vector shape mismatch");
        std::vector<K> r;
        r.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            K s = a_.empty() ? v.front().zero() : a_.front().zero();
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!a_[i * cols_ + j].is_zero()) s += a_[i * cols_ + j] * v[j];
            }
            r.push_back(s);
        }
        return r;
    }

    DenseMatrix operator*(const DenseMatrix& b) const {
        if (cols_ != b.rows_) throw InternalInvariantViolation("matrix shape mismatch");
        const K zero = a_.front().zero();
        DenseMatrix r(rows_, b.cols_, zero);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const K& aik = a_[i * cols_ + k];
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b.at(k, j).is_zero()) r.at(i, j) += aik * b.at(k, j);
            }
        return r;
    }

    DenseMatrix& add_scaled(const DenseMatrix& b, const K& c) {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw InternalInvariantViolation("matrix shape mismatch");
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += b.a_[i] * c;
        return *this;
    }

    double sparsity() const {
        if (a_.empty()) return 0.0;
        std::size_t nz = 0;
        for (const auto& x : a_)
            if (!x.is_zero()) ++nz;
        return static_cast<double>(nz) / static_cast<double>(a_.size());
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
    }

  private:
    std::size_t rows_, cols_;
    std::vector<K> a_;
};

}  // namespace rur
