#include "syzkit/linalg.hpp"

#include <utility>

namespace syzkit::linalg {

namespace {

struct GaussInt {
    mpz_class re{0};
    mpz_class im{0};

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

GaussInt mul(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussInt sub(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }

// a / b, known to be exact in Z[i].
GaussInt divexact(const GaussInt& a, const GaussInt& b) {
    mpz_class n = b.re * b.re + b.im * b.im;
    mpz_class re = a.re * b.re + a.im * b.im;
    mpz_class im = a.im * b.re - a.re * b.im;
    GaussInt q;
    mpz_divexact(q.re.get_mpz_t(), re.get_mpz_t(), n.get_mpz_t());
    mpz_divexact(q.im.get_mpz_t(), im.get_mpz_t(), n.get_mpz_t());
    return q;
}

GR to_gr(const GaussInt& z) { return GR(mpq_class(z.re), mpq_class(z.im)); }

// Integral copy of m with each row scaled by the lcm of its denominators.
struct IntegralRows {
    std::vector<std::vector<GaussInt>> rows;
    std::vector<mpz_class> scale;  // row i of the integral matrix = scale[i] * row i of m
};

IntegralRows integralize(const Matrix& m) {
    IntegralRows out;
    out.rows.resize(m.rows(), std::vector<GaussInt>(m.cols()));
    out.scale.resize(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        mpz_class l = 1;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const GR& v = m(r, c);
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.re().get_den_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.im().get_den_mpz_t());
        }
        out.scale[r] = l;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const GR& v = m(r, c);
            mpq_class re = v.re() * l, im = v.im() * l;
            out.rows[r][c] = GaussInt{re.get_num(), im.get_num()};
        }
    }
    return out;
}

struct Bareiss {
    std::vector<std::vector<GaussInt>> u;  // row echelon form
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> perm;  // row of u -> original row
    int swap_sign = 1;
};

// Fraction-free forward elimination; pivoting restricted to columns < col_limit.
Bareiss bareiss(std::vector<std::vector<GaussInt>> a, std::size_t cols, std::size_t col_limit) {
    Bareiss b;
    const std::size_t rows = a.size();
    b.perm.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) b.perm[i] = i;
    GaussInt prev{1, 0};
    std::size_t r = 0;
    for (std::size_t c = 0; c < col_limit && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        if (p != r) {
            std::swap(a[p], a[r]);
            std::swap(b.perm[p], b.perm[r]);
            b.swap_sign = -b.swap_sign;
        }
        const GaussInt piv = a[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            const GaussInt lead = a[i][c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                GaussInt t = sub(mul(piv, a[i][j]), mul(lead, a[r][j]));
                a[i][j] = divexact(t, prev);
            }
            a[i][c] = GaussInt{};
        }
        prev = piv;
        b.pivots.push_back(c);
        ++r;
    }
    b.u = std::move(a);
    return b;
}

// Back substitution on an echelon form; free variables set from `x` as given.
void back_substitute(const Bareiss& b, Vector& x, std::size_t cols, const Vector* rhs) {
    for (std::size_t k = b.pivots.size(); k-- > 0;) {
        const std::size_t pc = b.pivots[k];
        GR acc = rhs ? (*rhs)[k] : GR(0);
        for (std::size_t j = pc + 1; j < cols; ++j) {
            if (b.u[k][j].is_zero() || x[j].is_zero()) continue;
            acc -= to_gr(b.u[k][j]) * x[j];
        }
        x[pc] = acc / to_gr(b.u[k][pc]);
    }
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = GR(1);
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) throw Error("from_rows: ragged input");
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw Error("from_columns: ragged input");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

Vector Matrix::row(std::size_t r) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Vector Matrix::apply(const Vector& x) const {
    if (x.size() != cols_) throw Error("apply: dimension mismatch");
    Vector y(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (!x[c].is_zero() && !(*this)(r, c).is_zero()) y[r] += (*this)(r, c) * x[c];
    return y;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product: dimension mismatch");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero()) m(i, j) += a(i, k) * b(k, j);
        }
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix difference: dimension mismatch");
    Matrix m = a;
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= b.data_[i];
    return m;
}

Matrix Matrix::scaled(const GR& c) const {
    Matrix m = *this;
    for (auto& v : m.data_) v *= c;
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& v : data_)
        if (!v.is_zero()) return false;
    return true;
}

EchelonInfo echelon_info(const Matrix& m) {
    auto ir = integralize(m);
    auto b = bareiss(std::move(ir.rows), m.cols(), m.cols());
    return {b.pivots.size(), b.pivots};
}

std::size_t rank(const Matrix& m) { return echelon_info(m).rank; }

std::vector<Vector> nullspace(const Matrix& m) {
    auto ir = integralize(m);
    auto b = bareiss(std::move(ir.rows), m.cols(), m.cols());
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : b.pivots) is_pivot[c] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vector x(m.cols());
        x[f] = GR(1);
        back_substitute(b, x, m.cols(), nullptr);
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& rhs) {
    if (rhs.size() != m.rows()) throw Error("solve: dimension mismatch");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = rhs[r];
    }
    auto ir = integralize(aug);
    auto b = bareiss(std::move(ir.rows), aug.cols(), m.cols());
    // consistency: rows beyond the rank must have a zero right-hand side
    for (std::size_t r = b.pivots.size(); r < m.rows(); ++r)
        if (!b.u[r][m.cols()].is_zero()) return std::nullopt;
    Vector rhs_u(b.pivots.size());
    for (std::size_t k = 0; k < b.pivots.size(); ++k) rhs_u[k] = to_gr(b.u[k][m.cols()]);
    Vector x(m.cols());
    back_substitute(b, x, m.cols(), &rhs_u);
    return x;
}

GR determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return GR(1);
    auto ir = integralize(m);
    auto scale = ir.scale;
    auto b = bareiss(std::move(ir.rows), n, n);
    if (b.pivots.size() < n) return GR(0);
    mpz_class total = 1;
    for (const auto& s : scale) total *= s;
    GR det = to_gr(b.u[n - 1][n - 1]) * GR(b.swap_sign);
    return det / GR(mpq_class(total));
}

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error("inverse of non-square matrix");
    const std::size_t n = m.rows();
    Matrix inv(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        Vector e(n);
        e[c] = GR(1);
        auto x = solve(m, e);
        if (!x) throw Error("matrix is singular");
        if (rank(m) < n) throw Error("matrix is singular");
        for (std::size_t r = 0; r < n; ++r) inv(r, c) = (*x)[r];
    }
    return inv;
}

std::vector<GR> leading_minors(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error("leading minors of non-square matrix");
    std::vector<GR> out;
    for (std::size_t k = 1; k <= m.rows(); ++k) {
        Matrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(i, j);
        out.push_back(determinant(sub));
    }
    return out;
}

}  // namespace syzkit::linalg
