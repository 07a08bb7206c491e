#include "helpers.hpp"
#include "sheaf_fuzz.hpp"

#include <doctest.h>
#include <msch/error.hpp>
#include <msch/sheaf.hpp>

using namespace msch;

namespace {

FinitePoset chain2() { return FinitePoset(2, {{0, 1}}, {"0", "t"}); }
FinitePoset diamond() { return FinitePoset(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, {"0", "l", "r", "top"}); }
// generic point 0 below two closed points
FinitePoset p1() { return FinitePoset(3, {{0, 1}, {0, 2}}, {"g", "m1", "m2"}); }
// two maxima over two minima: the down-sets meet in two points
FinitePoset bowtie() { return FinitePoset(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}); }

oracle::Mat to_mat(const Matrix& m) {
    oracle::Mat out(m.rows(), std::vector<long>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c).get_si();
    return out;
}

// Compare every H^i of a complex of free groups with the determinantal oracle.
void check_free_complex(const CochainComplex& c) {
    for (std::size_t i = 0; i < c.length(); ++i) {
        std::size_t dim = c.groups[i].generator_count();
        std::size_t in_dim = i == 0 ? 0 : c.groups[i - 1].generator_count();
        oracle::Mat din = i == 0 ? oracle::Mat(dim, std::vector<long>()) : to_mat(c.differentials[i - 1].matrix());
        oracle::Mat dout = i < c.differentials.size() ? to_mat(c.differentials[i].matrix()) : oracle::Mat();
        auto h = oracle::free_cohomology(din, in_dim, dout, dim);
        AbGroup got = cohomology(c, i);
        CHECK(got.rank() == h.rank);
        std::vector<long> tor;
        for (const auto& t : got.torsion()) tor.push_back(t.get_si());
        CHECK(tor == h.torsion);
    }
}

bool all_free(const AbSheaf& f) {
    for (const auto& s : f.stalks())
        if (!s.relations().empty() && !s.relations().is_zero()) return false;
    return true;
}

} // namespace

TEST_CASE("poset basics") {
    auto c = chain2();
    CHECK(c.down_set(1) == PointSet{0, 1});
    CHECK(c.dimension() == 1);

    auto d = diamond();
    CHECK(d.meet(1, 2) == std::optional<std::size_t>(0));
    CHECK(d.opens().size() == 6);
    CHECK(d.height(3) == 2);
    CHECK(d.is_meet_semilattice());
    CHECK(d.least() == std::optional<std::size_t>(0));

    CHECK(p1().is_meet_semilattice());
    CHECK(p1().maximal() == PointSet{1, 2});
    CHECK(separation_certificate(p1()).separated);

    auto b = bowtie();
    CHECK_FALSE(b.meet(2, 3).has_value());
    CHECK_FALSE(separation_certificate(b).separated);
    CHECK(b.common_lower_maxima(2, 3) == PointSet{0, 1});

    auto prod = product_poset(c, c);
    CHECK(poset_isomorphism(prod, d).has_value());
    CHECK_FALSE(poset_isomorphism(prod, bowtie()).has_value());
    CHECK_THROWS_AS(FinitePoset(2, {{0, 1}, {1, 0}}), Error);
}

TEST_CASE("opens match brute force") {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 30; ++trial) {
        auto p = fuzz::random_poset(rng, 5, 0.4);
        std::size_t count = 0;
        for (std::size_t mask = 0; mask < 32; ++mask) {
            bool open = true;
            for (std::size_t x = 0; x < 5; ++x)
                for (std::size_t y = 0; y < 5; ++y)
                    if ((mask >> y & 1U) && p.leq(x, y) && !(mask >> x & 1U)) open = false;
            count += open;
        }
        CHECK(p.opens().size() == count);
        for (std::size_t x = 0; x < 5; ++x) {
            // height = longest strict chain ending at x
            std::size_t best = 0;
            for (std::size_t y = 0; y < 5; ++y)
                if (p.less(y, x)) best = std::max(best, p.height(y) + 1);
            CHECK(p.height(x) == best);
        }
    }
}

TEST_CASE("cochain complexes") {
    AbGroup z = AbGroup::free(1);
    CochainComplex single{{z}, {}};
    CHECK(cohomology(single, 0).to_string() == "Z^1");
    CHECK(cohomology(single, 1).is_trivial());

    CochainComplex twice{{z, z}, {AbMap(z, z, Matrix{{2}})}};
    CHECK(twice.is_valid());
    CHECK(cohomology(twice, 0).is_trivial());
    CHECK(cohomology(twice, 1).to_string() == "Z/2");

    AbGroup zero = AbGroup::free(0);
    CochainComplex pic{{zero, z}, {AbMap::zero(zero, z)}};
    CHECK(cohomology(pic, 1).to_string() == "Z^1");

    // cone of the identity is exact
    std::mt19937 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 1 + rng() % 4;
        AbGroup g = AbGroup::free(n);
        CochainComplex cone{{g, g}, {AbMap::identity(g)}};
        CHECK(cohomology(cone, 0).is_trivial());
        CHECK(cohomology(cone, 1).is_trivial());
    }

    auto data = cohomology_data(twice, 1);
    CHECK(data.class_of(vec({1})) == vec({1}));
    CHECK(data.class_of(vec({2})) == vec({0}));
    CHECK(data.class_of(data.representative(vec({1}))) == vec({1}));
}

TEST_CASE("sections") {
    auto d = diamond();
    AbSheaf k = constant_sheaf(d, AbGroup::free(1));
    CHECK(sections(k, {0, 1, 2, 3}).group.to_string() == "Z^1");
    CHECK(sections(k, {0}).group.to_string() == "Z^1");
    CHECK_THROWS_AS(sections(k, {3}), Error);

    // units on the projective line: Z at the generic point, trivial at the closed points
    AbSheaf o = skyscraper(p1(), 0, AbGroup::free(1));
    CHECK(sections(o, {0, 1, 2}).group.is_trivial());
    CHECK(sections(o, {0}).group.to_string() == "Z^1");
}

TEST_CASE("cohomology on the projective line") {
    AbSheaf z = skyscraper(p1(), 0, AbGroup::free(1));
    CHECK(sheaf_cohomology(z, 0).is_trivial());
    CHECK(sheaf_cohomology(z, 1).to_string() == "Z^1");
    CHECK(cohomology(reduced_cech(z).complex, 1).to_string() == "Z^1");

    AbSheaf two = skyscraper(p1(), 0, AbGroup::cyclic(2));
    CHECK(sheaf_cohomology(two, 1).to_string() == "Z/2");
    CHECK(cohomology(reduced_cech(two).complex, 1).to_string() == "Z/2");

    auto oc = order_cochain(z);
    CHECK(oc.complex.groups[0].generator_count() == 1);
    CHECK(oc.complex.groups[1].generator_count() == 2);
    check_free_complex(oc.complex);
    CHECK_THROWS_AS(reduced_cech(constant_sheaf(bowtie(), AbGroup::free(1))), Error);
}

TEST_CASE("cohomology of free sheaves matches the determinantal oracle") {
    std::mt19937 rng(17);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto p = fuzz::random_poset(rng, 2 + rng() % 4, 0.5);
        auto f = fuzz::random_sub_sheaf(rng, p, 1 + rng() % 2);
        auto g = fuzz::random_quotient_sheaf(rng, p, 1 + rng() % 2);
        for (const auto* s : {&f, &g}) {
            if (!all_free(*s)) continue;
            check_free_complex(order_cochain(*s).complex);
            ++checked;
        }
    }
    CHECK(checked > 20);
}

TEST_CASE("the two cochain models agree") {
    std::mt19937 rng(23);
    int compared = 0;
    for (int trial = 0; trial < 150; ++trial) {
        auto p = fuzz::random_poset(rng, 2 + rng() % 5, 0.45);
        auto f = fuzz::random_sheaf(rng, p);
        CochainModel cech;
        try {
            cech = reduced_cech(f);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NotSeparated);
            continue;
        }
        auto order = order_cochain(f);
        for (std::size_t i = 0; i <= p.dimension() + 1; ++i)
            CHECK(cohomology(order.complex, i) == cohomology(cech.complex, i));
        ++compared;
    }
    CHECK(compared > 60);
}

TEST_CASE("vanishing theorems on fuzzed sheaves") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 120; ++trial) {
        std::size_t n = 2 + rng() % 5;
        auto p = fuzz::random_poset(rng, n, 0.45);
        auto f = fuzz::random_sheaf(rng, p);
        auto order = order_cochain(f);
        CHECK(order.complex.is_valid());
        for (std::size_t i = p.dimension() + 1; i <= p.dimension() + 2; ++i)
            CHECK(cohomology(order.complex, i).is_trivial());

        // adjoin a greatest point: an affine space
        std::vector<std::pair<std::size_t, std::size_t>> rel;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (p.less(x, y)) rel.emplace_back(x, y);
        for (std::size_t x = 0; x < n; ++x) rel.emplace_back(x, n);
        FinitePoset affine(n + 1, rel);
        auto g = fuzz::random_sheaf(rng, affine);
        for (std::size_t i = 1; i <= affine.dimension(); ++i) CHECK(sheaf_cohomology(g, i).is_trivial());

        if (p.is_connected() && p.is_meet_semilattice() && p.least()) {
            for (const auto& a : {AbGroup::free(1), AbGroup::cyclic(2), AbGroup::free(2)}) {
                auto k = constant_sheaf(p, a);
                for (std::size_t i = 1; i <= p.dimension(); ++i) CHECK(sheaf_cohomology(k, i).is_trivial());
            }
        }
    }
}

TEST_CASE("s-flasque") {
    auto k = is_s_flasque(constant_sheaf(diamond(), AbGroup::free(1)));
    REQUIRE(k.s_flasque);
    CHECK(k.collection[0].to_string() == "Z^1");
    for (std::size_t x = 1; x < 4; ++x) CHECK(k.collection[x].is_trivial());

    auto sky = is_s_flasque(skyscraper(p1(), 0, AbGroup::free(1)));
    CHECK_FALSE(sky.s_flasque);
    CHECK(sky.failed_point.has_value());

    auto a = constant_sheaf(chain2(), AbGroup::free(1));
    auto prod = product_sheaf(a, a);
    CHECK(prod.size() == 4);
    CHECK(is_s_flasque(prod).s_flasque);
}

TEST_CASE("s-flasque sheaves have split restrictions and no cohomology") {
    std::mt19937 rng(31);
    int flasque = 0;
    for (int trial = 0; trial < 150; ++trial) {
        auto p = fuzz::random_poset(rng, 2 + rng() % 4, 0.5);
        auto f = fuzz::random_sheaf(rng, p);
        auto r = is_s_flasque(f);
        if (!r.s_flasque) continue;
        ++flasque;
        auto opens = p.opens();
        for (const auto& v : opens) {
            Sections sv = sections(f, v);
            for (const auto& u : opens) {
                if (!std::includes(v.begin(), v.end(), u.begin(), u.end())) continue;
                CHECK(is_split_epi(section_restriction(f, sv, sections(f, u))).split);
            }
        }
        for (std::size_t i = 1; i <= p.dimension(); ++i) CHECK(sheaf_cohomology(f, i).is_trivial());
        // F_x is the product of the collection below x
        for (std::size_t x = 0; x < p.size(); ++x) {
            std::vector<AbGroup> parts;
            for (auto y : p.down_set(x)) parts.push_back(r.collection[y]);
            CHECK(direct_sum(parts).group == f.stalk(x));
        }
        // local: restricting to each down-set stays s-flasque
        for (std::size_t x = 0; x < p.size(); ++x) CHECK(is_s_flasque(f.restrict_to(p.down_set(x))).s_flasque);
    }
    CHECK(flasque > 10);
}

TEST_CASE("reduced cohomology matches the full computation") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 150; ++trial) {
        auto p = fuzz::random_poset(rng, 2 + rng() % 5, 0.45);
        auto f = fuzz::random_sheaf(rng, p);
        auto c = order_cochain(f).complex;
        for (std::size_t i = 0; i <= c.length(); ++i) CHECK(cohomology(c, i) == cohomology_data(c, i).group);
    }
}

TEST_CASE("sparse order complex matches the dense one") {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 150; ++trial) {
        auto p = fuzz::random_poset(rng, 2 + rng() % 5, 0.45);
        auto f = fuzz::random_sheaf(rng, p);
        auto c = order_cochain(f).complex;
        for (std::size_t i = 0; i <= c.length(); ++i)
            CHECK(sheaf_cohomology(f, i) == cohomology_data(c, i).group);
    }
}
