#pragma once

#include "cmdp/rational.hpp"

#include <cstddef>
#include <vector>

namespace cmdp {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RationalVector row(std::size_t r) const;

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

/// Row vector times matrix.
RationalVector operator*(const RationalVector& v, const RationalMatrix& m);

/// Solves A X = B exactly by Gauss-Jordan elimination. A must be square and
/// nonsingular; throws std::domain_error otherwise.
RationalMatrix solve_linear(RationalMatrix a, RationalMatrix b);

} // namespace cmdp
