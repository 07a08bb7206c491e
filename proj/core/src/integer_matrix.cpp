#include "msch/integer_matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace msch {

Matrix::Matrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        for (long v : r) data_.emplace_back(v);
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vector>& columns) {
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
    return m;
}

Matrix Matrix::from_rows(std::size_t cols, const std::vector<Vector>& rows) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("row length mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Vector Matrix::row(std::size_t r) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void Matrix::set_column(std::size_t c, const Vector& v) {
    if (v.size() != rows_) throw std::invalid_argument("column length mismatch");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("hstack: row mismatch");
    Matrix m(a.rows_, a.cols_ + b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        for (std::size_t c = 0; c < a.cols_; ++c) m(r, c) = a(r, c);
        for (std::size_t c = 0; c < b.cols_; ++c) m(r, a.cols_ + c) = b(r, c);
    }
    return m;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.cols_) throw std::invalid_argument("vstack: column mismatch");
    Matrix m(a.rows_ + b.rows_, a.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
        for (std::size_t c = 0; c < a.cols_; ++c) m(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows_; ++r)
        for (std::size_t c = 0; c < b.cols_; ++c) m(a.rows_ + r, c) = b(r, c);
    return m;
}

Matrix Matrix::block_diagonal(const std::vector<Matrix>& blocks) {
    std::size_t nr = 0, nc = 0;
    for (const auto& b : blocks) {
        nr += b.rows_;
        nc += b.cols_;
    }
    Matrix m(nr, nc);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t r = 0; r < b.rows_; ++r)
            for (std::size_t c = 0; c < b.cols_; ++c) m(r0 + r, c0 + c) = b(r, c);
        r0 += b.rows_;
        c0 += b.cols_;
    }
    return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    Matrix p(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Integer& a = (*this)(i, k);
            if (sgn(a) == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                const Integer& b = rhs(k, j);
                if (sgn(b) == 0) continue;
                mpz_addmul(p(i, j).get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            }
        }
    }
    return p;
}

Vector Matrix::operator*(const Vector& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
    Vector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Integer& a = (*this)(i, k);
            if (sgn(a) == 0 || sgn(v[k]) == 0) continue;
            mpz_addmul(out[i].get_mpz_t(), a.get_mpz_t(), v[k].get_mpz_t());
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
    Matrix s(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] + rhs.data_[i];
    return s;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
    Matrix s(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] - rhs.data_[i];
    return s;
}

bool Matrix::operator==(const Matrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void Matrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void Matrix::add_row_multiple(std::size_t target, std::size_t source, const Integer& factor) {
    if (sgn(factor) == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) {
        const Integer& s = (*this)(source, c);
        if (sgn(s) != 0) mpz_addmul((*this)(target, c).get_mpz_t(), factor.get_mpz_t(), s.get_mpz_t());
    }
}

void Matrix::add_col_multiple(std::size_t target, std::size_t source, const Integer& factor) {
    if (sgn(factor) == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) {
        const Integer& s = (*this)(r, source);
        if (sgn(s) != 0) mpz_addmul((*this)(r, target).get_mpz_t(), factor.get_mpz_t(), s.get_mpz_t());
    }
}

void Matrix::negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void Matrix::negate_col(std::size_t c) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r) os << ", ";
        os << '[';
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c) os << ',';
            os << (*this)(r, c);
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

Integer determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    // Bareiss fraction-free elimination.
    Matrix a = m;
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(a(k, k)) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(a(p, k)) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = v;
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

namespace {

// Working state of a Smith reduction: the matrix being reduced plus the
// accumulated transforms. Every elementary operation is mirrored on the
// transforms so that U * m * V = S holds throughout.
struct SmithState {
    Matrix S, U, U_inv, V, V_inv;
    SmithOptions opt;

    void row_add(std::size_t target, std::size_t source, const Integer& f, std::size_t from_col) {
        if (sgn(f) == 0) return;
        for (std::size_t c = from_col; c < S.cols(); ++c) {
            const Integer& s = S(source, c);
            if (sgn(s) != 0) mpz_addmul(S(target, c).get_mpz_t(), f.get_mpz_t(), s.get_mpz_t());
        }
        if (opt.left) U.add_row_multiple(target, source, f);
        if (opt.left && opt.inverses) {
            Integer neg = -f;
            U_inv.add_col_multiple(source, target, neg);
        }
    }

    void col_add(std::size_t target, std::size_t source, const Integer& f, std::size_t from_row) {
        if (sgn(f) == 0) return;
        for (std::size_t r = from_row; r < S.rows(); ++r) {
            const Integer& s = S(r, source);
            if (sgn(s) != 0) mpz_addmul(S(r, target).get_mpz_t(), f.get_mpz_t(), s.get_mpz_t());
        }
        if (opt.right) V.add_col_multiple(target, source, f);
        if (opt.right && opt.inverses) {
            Integer neg = -f;
            V_inv.add_row_multiple(source, target, neg);
        }
    }

    void row_swap(std::size_t a, std::size_t b) {
        if (a == b) return;
        S.swap_rows(a, b);
        if (opt.left) U.swap_rows(a, b);
        if (opt.left && opt.inverses) U_inv.swap_cols(a, b);
    }

    void col_swap(std::size_t a, std::size_t b) {
        if (a == b) return;
        S.swap_cols(a, b);
        if (opt.right) V.swap_cols(a, b);
        if (opt.right && opt.inverses) V_inv.swap_rows(a, b);
    }

    void row_negate(std::size_t r) {
        S.negate_row(r);
        if (opt.left) U.negate_row(r);
        if (opt.left && opt.inverses) U_inv.negate_col(r);
    }

    // Replace diag(a, b) at positions i < j by diag(gcd, lcm).
    void gcd_fix(std::size_t i, std::size_t j) {
        Integer a = S(i, i), b = S(j, j);
        Integer g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        Integer one = 1;
        row_add(i, j, one, 0);
        // Column transform [c_i, c_j] <- [c_i, c_j] * [[s, -b/g], [t, a/g]].
        Integer bg = b / g, ag = a / g;
        auto apply_cols = [&](Matrix& M) {
            for (std::size_t r = 0; r < M.rows(); ++r) {
                Integer ci = M(r, i), cj = M(r, j);
                M(r, i) = s * ci + t * cj;
                M(r, j) = -bg * ci + ag * cj;
            }
        };
        apply_cols(S);
        if (opt.right) apply_cols(V);
        if (opt.right && opt.inverses)
        for (std::size_t c = 0; c < V_inv.cols(); ++c) {
            Integer ri = V_inv(i, c), rj = V_inv(j, c);
            V_inv(i, c) = ag * ri + bg * rj;
            V_inv(j, c) = -t * ri + s * rj;
        }
        Integer f = -(S(j, i) / S(i, i));
        row_add(j, i, f, 0);
    }
};

std::size_t min_abs_in_column(const Matrix& S, std::size_t col, std::size_t from_row) {
    std::size_t best = S.rows();
    for (std::size_t r = from_row; r < S.rows(); ++r) {
        const Integer& v = S(r, col);
        if (sgn(v) == 0) continue;
        if (best == S.rows() || mpz_cmpabs(v.get_mpz_t(), S(best, col).get_mpz_t()) < 0) best = r;
    }
    return best;
}

std::size_t min_abs_in_row(const Matrix& S, std::size_t row, std::size_t from_col) {
    std::size_t best = S.cols();
    for (std::size_t c = from_col; c < S.cols(); ++c) {
        const Integer& v = S(row, c);
        if (sgn(v) == 0) continue;
        if (best == S.cols() || mpz_cmpabs(v.get_mpz_t(), S(row, best).get_mpz_t()) < 0) best = c;
    }
    return best;
}

} // namespace

Vector SmithForm::diagonal() const {
    const std::size_t n = std::min(S.rows(), S.cols());
    Vector d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = S(i, i);
    return d;
}

SmithForm smith_normal_form(const Matrix& m, SmithOptions opt) {
    const std::size_t nr = m.rows(), nc = m.cols();
    auto ident = [](bool wanted, std::size_t n) { return wanted ? Matrix::identity(n) : Matrix(); };
    SmithState st{m,
                  ident(opt.left, nr),
                  ident(opt.left && opt.inverses, nr),
                  ident(opt.right, nc),
                  ident(opt.right && opt.inverses, nc),
                  opt};
    Matrix& S = st.S;

    std::size_t col_end = nc;
    std::size_t t = 0;
    Integer q;
    while (t < nr && t < col_end) {
        // Zero columns are parked at the end; they never become nonzero again.
        bool found = false;
        while (t < col_end) {
            if (min_abs_in_column(S, t, t) < nr) {
                found = true;
                break;
            }
            --col_end;
            st.col_swap(t, col_end);
        }
        if (!found) break;

        for (;;) {
            st.row_swap(t, min_abs_in_column(S, t, t));
            bool dirty = false;
            for (std::size_t i = t + 1; i < nr; ++i) {
                if (sgn(S(i, t)) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
                st.row_add(i, t, -q, t);
                if (sgn(S(i, t)) != 0) dirty = true;
            }
            if (dirty) continue;
            for (std::size_t j = t + 1; j < nc; ++j) {
                if (sgn(S(t, j)) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
                st.col_add(j, t, -q, t);
                if (sgn(S(t, j)) != 0) dirty = true;
            }
            if (!dirty) break;
            st.col_swap(t, min_abs_in_row(S, t, t));
        }
        if (sgn(S(t, t)) < 0) st.row_negate(t);
        ++t;
    }
    const std::size_t rank = t;

    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = i + 1; j < rank; ++j)
            if (!mpz_divisible_p(S(j, j).get_mpz_t(), S(i, i).get_mpz_t())) st.gcd_fix(i, j);

    return SmithForm{std::move(st.U), std::move(st.S), std::move(st.V), std::move(st.U_inv), std::move(st.V_inv),
                     rank};
}

Matrix integer_kernel(const Matrix& m) {
    SmithForm f = smith_normal_form(m, SmithOptions{false, true, false});
    const std::size_t n = m.cols();
    return f.V.block(0, f.rank, n, n - f.rank);
}

IntegerSolver::IntegerSolver(const Matrix& m) : smith_(smith_normal_form(m, SmithOptions{true, true, false})) {}

std::optional<Vector> IntegerSolver::solve(const Vector& b) const {
    const Matrix& U = smith_.U;
    if (b.size() != U.cols()) throw std::invalid_argument("solve: right-hand side length mismatch");
    Vector y = U * b;
    const std::size_t n = smith_.V.rows();
    Vector z(n);
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < smith_.rank) {
            const Integer& d = smith_.S(i, i);
            if (!mpz_divisible_p(y[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
            mpz_divexact(z[i].get_mpz_t(), y[i].get_mpz_t(), d.get_mpz_t());
        } else if (sgn(y[i]) != 0) {
            return std::nullopt;
        }
    }
    return smith_.V * z;
}

std::optional<Vector> solve_integer(const Matrix& m, const Vector& b) { return IntegerSolver(m).solve(b); }

Vector vector_add(const Vector& a, const Vector& b) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vector vector_sub(const Vector& a, const Vector& b) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vector vector_scale(const Vector& a, const Integer& s) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

bool vector_is_zero(const Vector& a) {
    return std::all_of(a.begin(), a.end(), [](const Integer& x) { return sgn(x) == 0; });
}

Vector unit_vector(std::size_t n, std::size_t i) {
    Vector v(n);
    v[i] = 1;
    return v;
}

std::string vector_to_string(const Vector& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    os << ')';
    return os.str();
}

} // namespace msch
