#pragma once

#include "oracles.hpp"

#include <msch/integer_matrix.hpp>

inline msch::Matrix to_matrix(const oracle::Mat& m, std::size_t cols) {
    msch::Matrix out(m.size(), cols);
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c) out(r, c) = m[r][c];
    return out;
}

inline msch::Vector vec(std::initializer_list<long> xs) {
    msch::Vector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}
