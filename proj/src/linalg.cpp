#include "cmdp/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace cmdp {

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

RationalVector RationalMatrix::row(std::size_t r) const {
    return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product: shape mismatch");
    RationalMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero())
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (!b(k, j).is_zero())
                    out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

RationalVector operator*(const RationalVector& v, const RationalMatrix& m) {
    if (v.size() != m.rows())
        throw std::invalid_argument("vector-matrix product: shape mismatch");
    RationalVector out(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i].is_zero())
            continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero())
                out[j] += v[i] * m(i, j);
    }
    return out;
}

RationalMatrix solve_linear(RationalMatrix a, RationalMatrix b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.rows() != n)
        throw std::invalid_argument("solve_linear: shape mismatch");
    const std::size_t m = b.cols();

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col).is_zero())
            ++pivot;
        if (pivot == n)
            throw std::domain_error("solve_linear: singular system");
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(pivot, j), a(col, j));
            for (std::size_t j = 0; j < m; ++j)
                std::swap(b(pivot, j), b(col, j));
        }
        const Rational inv = Rational(1) / a(col, col);
        for (std::size_t j = col; j < n; ++j)
            a(col, j) *= inv;
        for (std::size_t j = 0; j < m; ++j)
            b(col, j) *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a(r, col).is_zero())
                continue;
            const Rational factor = a(r, col);
            for (std::size_t j = col; j < n; ++j)
                if (!a(col, j).is_zero())
                    a(r, j) -= factor * a(col, j);
            for (std::size_t j = 0; j < m; ++j)
                if (!b(col, j).is_zero())
                    b(r, j) -= factor * b(col, j);
        }
    }
    return b;
}

} // namespace cmdp
