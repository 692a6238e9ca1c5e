#pragma once

// Exact dense linear algebra over Q(i).
//
// Elimination is fraction-free (Bareiss) over the Gaussian integers: each row
// is cleared of denominators first, then every intermediate entry is a minor of
// the scaled matrix and every division is exact. Pivots are taken as the first
// nonzero entry in row order, so echelon forms and kernel bases are
// reproducible.

#include <cstddef>
#include <optional>
#include <vector>

#include "syzkit/coeffring.hpp"

namespace syzkit::linalg {

using Vector = std::vector<GR>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vector>& rows);
    static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    GR& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const GR& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector column(std::size_t c) const;
    Vector apply(const Vector& x) const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    Matrix scaled(const GR& c) const;
    bool is_zero() const;
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<GR> data_;
};

struct EchelonInfo {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};

EchelonInfo echelon_info(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Basis of {x : m x = 0}; one vector per non-pivot column, with a 1 in that column.
std::vector<Vector> nullspace(const Matrix& m);

/// A solution of m x = b, or nullopt when the system is inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

GR determinant(const Matrix& m);

/// Throws syzkit::Error when singular.
Matrix inverse(const Matrix& m);

/// Leading principal minors det(m[0..k, 0..k]) for k = 1..n.
std::vector<GR> leading_minors(const Matrix& m);

}  // namespace syzkit::linalg
