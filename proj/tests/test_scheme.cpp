#include "corpus.hpp"

#include <doctest.h>
#include <msch/error.hpp>
#include <msch/scheme.hpp>

using namespace msch;

namespace {

std::size_t point(const Scheme& x, const std::string& label) {
    for (std::size_t p = 0; p < x.size(); ++p)
        if (x.space().label(p) == label) return p;
    FAIL("no point " << label);
    return 0;
}

// Units at every point agree along an order isomorphism of the spaces.
void check_same_units(const Scheme& a, const Scheme& b) {
    auto iso = poset_isomorphism(a.space(), b.space());
    REQUIRE(iso.has_value());
    AbSheaf ua = units_sheaf(a), ub = units_sheaf(b);
    for (std::size_t p = 0; p < a.size(); ++p) CHECK(ua.stalk(p) == ub.stalk((*iso)[p]));
}

} // namespace

TEST_CASE("affine schemes") {
    Scheme n = spec(MonoidPresentation::free({"t"}));
    REQUIRE(n.size() == 2);
    CHECK(n.stalk(0).to_string() == "<t^+->");
    CHECK(n.stalk(1).to_string() == "<t>");
    CHECK(n.costalk(1, 0).images[0] == Exponents{1});

    Scheme n2 = spec(MonoidPresentation::free({"s", "t"}));
    REQUIRE(n2.size() == 4);
    CHECK(n2.stalk(0).to_string() == "<s^+-, t^+->");
    CHECK(n2.stalk(1).to_string() == "<s, t^+->");
    CHECK(n2.stalk(2).to_string() == "<s^+-, t>");
    CHECK(n2.stalk(3).to_string() == "<s, t>");
    CHECK(n2.charts() == PointSet{3});

    CHECK(spec(MonoidPresentation(std::vector<std::string>{})).size() == 1);
}

TEST_CASE("units sheaf of the seven-prime example") {
    Scheme x = spec(corpus::seven_primes());
    AbSheaf u = units_sheaf(x);
    std::map<std::string, std::string> expected{{"(a,b,e)", "0"}, {"(b,e)", "Z^1"}, {"(a,b)", "0"},
                                                {"(a,e)", "Z^1"},  {"(b)", "Z^1"},   {"(a)", "Z^1"},
                                                {"()", "Z^2"}};
    for (const auto& [label, group] : expected) CHECK(u.stalk(point(x, label)).to_string() == group);
    // every map is the canonical inclusion
    for (const auto& [lo, hi] : x.space().covers()) CHECK(is_injective(u.restriction(hi, lo)));
    CHECK(is_s_cancellative_scheme(x).holds);
}

TEST_CASE("units sheaf of u^2 = ab = u^3") {
    Scheme x = spec(corpus::uab());
    AbSheaf u = units_sheaf(x);
    CHECK(u.stalk(point(x, "(u,a,b)")).is_trivial());
    CHECK(u.stalk(point(x, "(u,a)")).to_string() == "Z^1");
    CHECK(u.stalk(point(x, "(u,b)")).to_string() == "Z^1");
    CHECK(u.stalk(point(x, "()")).to_string() == "Z^1");
    for (const auto& [lo, hi] : x.space().covers()) CHECK(is_injective(u.restriction(hi, lo)));
}

TEST_CASE("projective spaces") {
    Scheme p1 = projective_space(1);
    REQUIRE(p1.size() == 3);
    CHECK(p1.charts().size() == 2);
    CHECK(p1.separation().separated);
    AbSheaf u1 = units_sheaf(p1);
    std::size_t generic = *p1.space().least();
    CHECK(u1.stalk(generic).to_string() == "Z^1");
    for (auto c : p1.charts()) CHECK(u1.stalk(c).is_trivial());

    Scheme p2 = projective_space(2);
    CHECK(p2.size() == 7);
    CHECK(p2.charts().size() == 3);
    CHECK(p2.dimension() == 2);
    CHECK(p2.is_connected());
    CHECK(units_sheaf(p2).stalk(*p2.space().least()).to_string() == "Z^2");
    std::size_t height_one = 0;
    for (std::size_t p = 0; p < p2.size(); ++p) height_one += p2.space().height(p) == 1;
    CHECK(height_one == 3);
    CHECK(is_smooth_scheme(p2, 4).holds);
    CHECK(is_s_cancellative_scheme(p2).holds);
    CHECK(is_cancellative_scheme(p2, 4).holds);
    CHECK(is_torsion_free_scheme(p2, 4).holds);

    Scheme p3 = projective_space(3);
    CHECK(p3.size() == 15);
    CHECK(p3.dimension() == 3);
}

TEST_CASE("stalks are local") {
    for (const Scheme& x : {spec(corpus::seven_primes()), spec(corpus::uab()), projective_space(2)}) {
        for (std::size_t p = 0; p < x.size(); ++p) {
            Scheme local = spec(x.stalk(p));
            FinitePoset down = x.space().induced(x.space().down_set(p));
            auto iso = poset_isomorphism(local.space(), down);
            REQUIRE(iso.has_value());
            AbSheaf ul = units_sheaf(local);
            AbSheaf ux = units_sheaf(x);
            PointSet pts = x.space().down_set(p);
            for (std::size_t q = 0; q < local.size(); ++q) CHECK(ul.stalk(q) == ux.stalk(pts[(*iso)[q]]));
        }
    }
}

TEST_CASE("products") {
    auto m = corpus::seven_primes();
    auto n = MonoidPresentation::free({"t"});
    Scheme xy = product(spec(m), spec(n));
    CHECK(xy.size() == 14);
    check_same_units(xy, spec(product_monoid(m, n)));
    CHECK(spectrum(product_monoid(m, n)).primes.size() == 14);

    Scheme pp = product(projective_space(1), projective_space(1));
    CHECK(pp.size() == 9);
    CHECK(pp.charts().size() == 4);
    CHECK(pp.separation().separated);

    Scheme one = spec(MonoidPresentation(std::vector<std::string>{}));
    check_same_units(product(projective_space(1), one), projective_space(1));

    // s-cancellative is preserved by products
    Scheme s = product(spec(corpus::seven_primes()), spec(corpus::uab()));
    CHECK(is_s_cancellative_scheme(s).holds);
    CHECK_FALSE(is_s_cancellative_scheme(spec(corpus::abac())).holds);
    CHECK_FALSE(is_s_cancellative_scheme(product(spec(corpus::abac()), projective_space(1))).holds);
}

TEST_CASE("gluing") {
    auto n = MonoidPresentation::free({"t"});
    auto z = MonoidPresentation::free_group({"t"});
    Overlap flip{0, 1, z, MonoidHom{1, 1, {{1}}}, MonoidHom{1, 1, {{-1}}}};
    Scheme p1 = glue({n, n}, {flip});
    CHECK(p1.size() == 3);
    CHECK(poset_isomorphism(p1.space(), projective_space(1).space()).has_value());

    Overlap same{0, 1, z, MonoidHom{1, 1, {{1}}}, MonoidHom{1, 1, {{1}}}};
    Scheme doubled = glue({n, n}, {same});
    CHECK(doubled.size() == 3);
    CHECK(doubled.separation().separated);

    Scheme alone = glue({corpus::seven_primes()}, {});
    CHECK(alone.size() == 7);

    // overlap primes that pull back to a non-open set
    auto n2 = MonoidPresentation::free({"s", "t"});
    auto u = MonoidPresentation::free({"u"});
    Overlap bad{0, 1, u, MonoidHom{2, 1, {{1}, {1}}}, MonoidHom{1, 1, {{1}}}};
    CHECK_THROWS_AS(glue({n2, n}, {bad}), Error);
    try {
        glue({n2, n}, {bad});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InconsistentGluing);
    }
}

TEST_CASE("meet semilattice shape of separated connected schemes") {
    for (const Scheme& x : {projective_space(1), projective_space(2), product(projective_space(1), projective_space(1)),
                            spec(corpus::m_family(3))}) {
        REQUIRE(x.separation().separated);
        CHECK(x.space().is_meet_semilattice());
        CHECK(x.space().least().has_value());
    }
}
