#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace msch {

using Integer = mpz_class;
using Vector = std::vector<Integer>;

// Dense row-major integer matrix. Zero-sized dimensions are legal.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<long>> rows);

    static Matrix identity(std::size_t n);
    static Matrix from_columns(std::size_t rows, const std::vector<Vector>& columns);
    static Matrix from_rows(std::size_t cols, const std::vector<Vector>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector column(std::size_t c) const;
    Vector row(std::size_t r) const;
    void set_column(std::size_t c, const Vector& v);

    Matrix transpose() const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    bool is_zero() const;

    // [A | B] and [A ; B]
    static Matrix hstack(const Matrix& a, const Matrix& b);
    static Matrix vstack(const Matrix& a, const Matrix& b);
    static Matrix block_diagonal(const std::vector<Matrix>& blocks);

    Matrix operator*(const Matrix& rhs) const;
    Vector operator*(const Vector& v) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    bool operator==(const Matrix& rhs) const;

    // Elementary operations, used by the reductions.
    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);
    void add_col_multiple(std::size_t target, std::size_t source, const Integer& factor);
    void negate_row(std::size_t r);
    void negate_col(std::size_t c);

    std::string to_string() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

Integer determinant(const Matrix& m);

struct SmithForm {
    Matrix U;     // rows x rows, unimodular
    Matrix S;     // rows x cols, diagonal, d_0 | d_1 | ... , nonnegative
    Matrix V;     // cols x cols, unimodular
    Matrix U_inv;
    Matrix V_inv;
    std::size_t rank = 0;

    // Diagonal entries d_0 .. d_{min(rows,cols)-1}.
    Vector diagonal() const;
};

// Which transforms to accumulate. Skipping them saves the dense
// rows x rows / cols x cols work on large inputs; skipped ones are left empty.
struct SmithOptions {
    bool left = true;
    bool right = true;
    bool inverses = true;
};

/// U * m * V = S with S in Smith normal form. Total on integer matrices.
SmithForm smith_normal_form(const Matrix& m, SmithOptions options = {});

/// Basis (as columns) of the integer kernel {x : m x = 0}.
Matrix integer_kernel(const Matrix& m);

// Reusable solver for m x = b over the integers. Factorizes once.
class IntegerSolver {
  public:
    explicit IntegerSolver(const Matrix& m);
    std::optional<Vector> solve(const Vector& b) const;
    const SmithForm& smith() const { return smith_; }

  private:
    SmithForm smith_;
};

std::optional<Vector> solve_integer(const Matrix& m, const Vector& b);

Vector vector_add(const Vector& a, const Vector& b);
Vector vector_sub(const Vector& a, const Vector& b);
Vector vector_scale(const Vector& a, const Integer& s);
bool vector_is_zero(const Vector& a);
Vector unit_vector(std::size_t n, std::size_t i);
std::string vector_to_string(const Vector& v);

} // namespace msch
