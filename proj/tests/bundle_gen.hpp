#pragma once

// Seeded monomial cocycles on P^1 and P^1 x P^1 built from line bundles
// O(p) / O(p, q): chart (i, j) carries f = s^(p i) t^(q j) in the generic
// stalk and the line transition is f_i^-1 f_j. Frames are random
// permutations (chart units are trivial on these schemes).

#include <msch/bundle.hpp>
#include <msch/scheme.hpp>

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>

namespace gen {

using msch::BundleCocycle;
using msch::Exponents;
using msch::Scheme;
using msch::Transition;

struct Line {
    long p = 0, q = 0;
};

struct Sample {
    BundleCocycle cocycle;
    std::vector<Line> lines;
};

// chart coordinates (i, j) in {0,1}^2 for a maximal point of P^1 or P^1 x P^1
inline std::pair<int, int> chart_coordinates(const Scheme& x, std::size_t point) {
    if (x.size() == 3) return {point == 2 ? 1 : 0, 0};
    return {point / 3 == 2 ? 1 : 0, point % 3 == 2 ? 1 : 0};
}

// Exponents at `point` whose image in the generic stalk (point 0) is `target`.
// Brute force over the inverted generators.
inline Exponents lift(const Scheme& x, std::size_t point, const Exponents& target, int radius = 6) {
    const auto& stalk = x.stalk(point);
    const auto& generic = x.stalk_monoid(0);
    const auto& hom = x.costalk(point, 0);
    std::vector<std::size_t> free;
    for (std::size_t g = 0; g < stalk.size(); ++g)
        if (stalk.inverted(g)) free.push_back(g);
    Exponents e(stalk.size(), 0);
    std::optional<Exponents> found;
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (found) return;
        if (k == free.size()) {
            if (generic.equal(hom.apply(e), target)) found = e;
            return;
        }
        for (int v = -radius; v <= radius; ++v) {
            e[free[k]] = v;
            self(self, k + 1);
        }
        e[free[k]] = 0;
    };
    rec(rec, 0);
    if (!found) throw std::runtime_error("no lift");
    return *found;
}

inline Exponents line_value(const Scheme& x, const Line& l, std::size_t from, std::size_t to) {
    auto [i0, j0] = chart_coordinates(x, from);
    auto [i1, j1] = chart_coordinates(x, to);
    Exponents e(x.stalk(0).size(), 0);
    e[0] = l.p * (i1 - i0);
    if (e.size() > 1) e[1] = l.q * (j1 - j0);
    return e;
}

/// g_ij = K_i D_ij K_j^-1 with K_i = (1, pi_i).
inline BundleCocycle assemble(const Scheme& x, const std::vector<Line>& lines,
                              const std::vector<std::vector<std::size_t>>& frames) {
    BundleCocycle c;
    c.rank = lines.size();
    c.charts = x.charts();
    for (std::size_t a = 0; a < c.charts.size(); ++a)
        for (std::size_t b = 0; b < c.charts.size(); ++b) {
            if (a == b) continue;
            std::size_t m = *x.space().meet(c.charts[a], c.charts[b]);
            Transition t;
            t.units.resize(c.rank);
            t.perm.resize(c.rank);
            std::vector<std::size_t> inv(c.rank);
            for (std::size_t k = 0; k < c.rank; ++k) inv[frames[b][k]] = k;
            for (std::size_t k = 0; k < c.rank; ++k) {
                t.units[frames[a][k]] = lift(x, m, line_value(x, lines[k], c.charts[a], c.charts[b]));
                t.perm[k] = frames[a][inv[k]];
            }
            c.transitions[{a, b}] = t;
        }
    return c;
}

inline Sample random_sample(const Scheme& x, std::size_t rank, std::mt19937& rng) {
    std::uniform_int_distribution<long> deg(-3, 3);
    Sample s;
    for (std::size_t k = 0; k < rank; ++k) s.lines.push_back({deg(rng), x.size() == 3 ? 0 : deg(rng)});
    std::vector<std::vector<std::size_t>> frames(x.charts().size(), std::vector<std::size_t>(rank));
    for (auto& f : frames) {
        std::iota(f.begin(), f.end(), 0);
        std::shuffle(f.begin(), f.end(), rng);
    }
    s.cocycle = assemble(x, s.lines, frames);
    return s;
}

/// The same bundle with charts listed in the order `order` (a permutation of chart positions).
inline BundleCocycle relabel(const BundleCocycle& c, const std::vector<std::size_t>& order) {
    BundleCocycle out;
    out.rank = c.rank;
    std::vector<std::size_t> pos(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        out.charts.push_back(c.charts[order[k]]);
        pos[order[k]] = k;
    }
    for (const auto& [ij, t] : c.transitions) out.transitions[{pos[ij.first], pos[ij.second]}] = t;
    return out;
}

} // namespace gen
