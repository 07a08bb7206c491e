#pragma once

#include <msch/presentation.hpp>

#include <random>
#include <string>
#include <vector>

namespace corpus {

using msch::Exponents;
using msch::MonoidPresentation;

inline MonoidPresentation make(std::vector<std::string> names, std::vector<std::pair<Exponents, Exponents>> rels,
                               std::vector<bool> inverted = {}) {
    MonoidPresentation p(std::move(names), std::move(inverted));
    for (auto& [l, r] : rels) p.add_relation(l, r);
    return p;
}

// <a, b, e | ab = abe, e^2 = e>
inline MonoidPresentation seven_primes() {
    return make({"a", "b", "e"}, {{{1, 1, 0}, {1, 1, 1}}, {{0, 0, 2}, {0, 0, 1}}});
}

// <u, a, b | u^2 = ab = u^3>
inline MonoidPresentation uab() {
    return make({"u", "a", "b"}, {{{2, 0, 0}, {0, 1, 1}}, {{0, 1, 1}, {3, 0, 0}}});
}

// <a_1..a_n, e | a_1...a_n = a_1...a_n e, e^2 = e>
inline MonoidPresentation m_family(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back("a" + std::to_string(i));
    names.push_back("e");
    Exponents l(n + 1, 1), r(n + 1, 1), e2(n + 1, 0), e1(n + 1, 0);
    l[n] = 0;
    e2[n] = 2;
    e1[n] = 1;
    return make(names, {{l, r}, {e2, e1}});
}

// <a, b, c | ab = ac>
inline MonoidPresentation abac() { return make({"a", "b", "c"}, {{{1, 1, 0}, {1, 0, 1}}}); }

// <p, q | p^3 = q^2>
inline MonoidPresentation cusp() { return make({"p", "q"}, {{{3, 0}, {0, 2}}}); }

// Every presentation with <= 3 generators, <= 2 relations of degree <= 3,
// drawn by seeded enumeration; relations with identical sides are skipped.
inline std::vector<MonoidPresentation> enumerated(std::size_t count, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<MonoidPresentation> out;
    const std::vector<std::string> names{"x", "y", "z"};
    auto word = [&rng](std::size_t n) {
        std::uniform_int_distribution<int> deg(0, 3);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        Exponents e(n, 0);
        int d = deg(rng);
        for (int k = 0; k < d; ++k) e[pick(rng)] += 1;
        return e;
    };
    while (out.size() < count) {
        std::size_t n = 1 + rng() % 3;
        std::size_t r = rng() % 3;
        MonoidPresentation p(std::vector<std::string>(names.begin(), names.begin() + static_cast<long>(n)));
        for (std::size_t k = 0; k < r; ++k) {
            Exponents l = word(n), s = word(n);
            if (l == s) continue;
            p.add_relation(l, s);
        }
        out.push_back(p);
    }
    return out;
}

} // namespace corpus
