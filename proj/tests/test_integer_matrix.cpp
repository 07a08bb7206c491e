#include "helpers.hpp"

#include <doctest.h>

using namespace msch;

namespace {

bool is_smith(const Matrix& s) {
    std::size_t n = std::min(s.rows(), s.cols());
    for (std::size_t r = 0; r < s.rows(); ++r)
        for (std::size_t c = 0; c < s.cols(); ++c)
            if (r != c && s(r, c) != 0) return false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (s(i, i) < 0) return false;
        if (s(i, i) == 0) {
            if (s(i + 1, i + 1) != 0) return false;
        } else if (s(i + 1, i + 1) % s(i, i) != 0) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("smith form of small diagonal matrices") {
    auto f = smith_normal_form(Matrix{{2, 0}, {0, 3}});
    CHECK(f.S == Matrix{{1, 0}, {0, 6}});
    CHECK(f.U * Matrix{{2, 0}, {0, 3}} * f.V == f.S);

    auto g = smith_normal_form(Matrix{{4, 0}, {0, 6}});
    CHECK(g.diagonal() == vec({2, 12}));
}

TEST_CASE("smith form agrees with determinantal divisors on random matrices") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t rows = 1 + rng() % 4;
        std::size_t cols = 1 + rng() % 4;
        auto om = oracle::random_matrix(rng, rows, cols, -6, 6);
        Matrix m = to_matrix(om, cols);
        auto f = smith_normal_form(m);
        CHECK(is_smith(f.S));
        CHECK(f.U * m * f.V == f.S);
        CHECK(f.U * f.U_inv == Matrix::identity(rows));
        CHECK(f.V * f.V_inv == Matrix::identity(cols));
        long prev = 1;
        for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
            long dk = oracle::determinantal_divisor(om, k);
            if (dk == 0) {
                CHECK(f.S(k - 1, k - 1) == 0);
                break;
            }
            CHECK(f.S(k - 1, k - 1) == dk / prev);
            prev = dk;
        }
    }
}

TEST_CASE("smith form handles empty and zero shapes") {
    auto f = smith_normal_form(Matrix(0, 3));
    CHECK(f.rank == 0);
    CHECK(f.V.rows() == 3);
    auto g = smith_normal_form(Matrix(2, 2));
    CHECK(g.rank == 0);
}

TEST_CASE("integer kernel and solver") {
    Matrix m{{1, 2, 3}, {2, 4, 6}};
    Matrix k = integer_kernel(m);
    CHECK(k.cols() == 2);
    CHECK((m * k).is_zero());

    auto x = solve_integer(Matrix{{2, 4}}, vec({6}));
    REQUIRE(x);
    CHECK(Matrix{{2, 4}} * *x == vec({6}));
    CHECK_FALSE(solve_integer(Matrix{{2, 4}}, vec({3})));
}

TEST_CASE("determinant") {
    CHECK(determinant(Matrix{{1, 2}, {3, 4}}) == -2);
    std::mt19937 rng(3);
    for (int t = 0; t < 50; ++t) {
        std::size_t n = 1 + rng() % 4;
        auto om = oracle::random_matrix(rng, n, n, -5, 5);
        CHECK(determinant(to_matrix(om, n)) == oracle::det(om));
    }
}
