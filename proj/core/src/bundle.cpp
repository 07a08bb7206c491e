#include "msch/bundle.hpp"

#include "msch/error.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace msch {

namespace {

using Perm = std::vector<std::size_t>;

Perm compose(const Perm& s, const Perm& t) {
    Perm out(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) out[k] = s[t[k]];
    return out;
}

Perm invert(const Perm& s) {
    Perm out(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) out[s[k]] = k;
    return out;
}

bool is_perm(const Perm& s, std::size_t n) {
    if (s.size() != n) return false;
    Perm t = s;
    std::sort(t.begin(), t.end());
    for (std::size_t k = 0; k < n; ++k)
        if (t[k] != k) return false;
    return true;
}

Vector add(const Vector& a, const Vector& b) {
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Vector negate(const Vector& a) {
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return out;
}

// (u, s)(v, t) = (u + s.v, s t) with (s.v)_{s(k)} = v_k
MonomialMatrix multiply(const MonomialMatrix& a, const MonomialMatrix& b) {
    MonomialMatrix out{a.units, compose(a.perm, b.perm)};
    for (std::size_t k = 0; k < b.units.size(); ++k) out.units[a.perm[k]] = add(a.units[a.perm[k]], b.units[k]);
    return out;
}

MonomialMatrix inverse_of(const MonomialMatrix& a) {
    Perm s = invert(a.perm);
    MonomialMatrix out{a.units, s};
    for (std::size_t k = 0; k < a.units.size(); ++k) out.units[s[k]] = negate(a.units[k]);
    return out;
}

MonomialMatrix restrict_to(const MonomialMatrix& a, const AbMap& r) {
    MonomialMatrix out{{}, a.perm};
    for (const auto& u : a.units) out.units.push_back(r.apply(u));
    return out;
}

bool same(const MonomialMatrix& a, const MonomialMatrix& b, const AbGroup& g) {
    if (a.perm != b.perm) return false;
    for (std::size_t k = 0; k < a.units.size(); ++k)
        if (!g.same_element(a.units[k], b.units[k])) return false;
    return true;
}

} // namespace

BundleDecomposition decompose_bundle(const Scheme& x, const BundleCocycle& g) {
    const FinitePoset& p = x.space();
    if (!p.is_connected()) throw Error(ErrorCode::NotConnected, "bundle decomposition needs a connected scheme");
    const std::size_t n = g.rank;
    PointSet maxima = p.maximal();
    const std::size_t c = g.charts.size();
    {
        PointSet given = g.charts;
        std::sort(given.begin(), given.end());
        if (given != maxima) throw Error(ErrorCode::CocycleInvalid, "charts must list each maximal point once");
    }
    auto meet = [&](std::size_t i, std::size_t j) {
        auto m = p.meet(g.charts[i], g.charts[j]);
        if (!m) throw Error(ErrorCode::NotSeparated, "charts " + p.label(g.charts[i]) + " and " +
                                                          p.label(g.charts[j]) + " meet without a greatest point");
        return *m;
    };
    UnitsSheaf us = units_sheaf_data(x);
    const AbSheaf& o = us.sheaf;

    // additive transitions on every ordered pair
    std::map<std::pair<std::size_t, std::size_t>, MonomialMatrix> t;
    for (const auto& [ij, tr] : g.transitions) {
        auto [i, j] = ij;
        if (i >= c || j >= c) throw Error(ErrorCode::CocycleInvalid, "transition on an unknown chart");
        if (!is_perm(tr.perm, n) || tr.units.size() != n)
            throw Error(ErrorCode::CocycleInvalid, "transition does not have rank " + std::to_string(n));
        std::size_t m = meet(i, j);
        MonomialMatrix a{{}, tr.perm};
        for (const auto& e : tr.units) {
            if (e.size() != x.stalk(m).size())
                throw Error(ErrorCode::CocycleInvalid, "unit has the wrong number of exponents");
            for (std::size_t v = 0; v < e.size(); ++v)
                if (e[v] != 0 && std::find(us.units[m].generators.begin(), us.units[m].generators.end(), v) ==
                                     us.units[m].generators.end())
                    throw Error(ErrorCode::CocycleInvalid, "transition entry is not a unit at " + p.label(m));
            a.units.push_back(us.units[m].coordinates(e));
        }
        t[ij] = a;
    }
    for (std::size_t i = 0; i < c; ++i) {
        std::size_t gens = o.stalk(g.charts[i]).generator_count();
        t[{i, i}] = MonomialMatrix{std::vector<Vector>(n, Vector(gens)), [&] {
                                       Perm id(n);
                                       std::iota(id.begin(), id.end(), 0);
                                       return id;
                                   }()};
        for (std::size_t j = 0; j < c; ++j) {
            if (i == j) continue;
            bool have_ij = t.count({i, j}), have_ji = t.count({j, i});
            if (!have_ij && have_ji) t[{i, j}] = inverse_of(t[{j, i}]);
            if (!have_ij && !have_ji)
                throw Error(ErrorCode::CocycleInvalid, "no transition between charts " + std::to_string(i) + " and " +
                                                           std::to_string(j));
        }
    }
    // cocycle condition g_ik = g_ij g_jk on every triple (pairs included)
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j)
            for (std::size_t k = 0; k < c; ++k) {
                auto m = p.meet(PointSet{g.charts[i], g.charts[j], g.charts[k]});
                if (!m) throw Error(ErrorCode::NotSeparated, "triple overlap without a greatest point");
                auto res = [&](std::size_t a, std::size_t b) {
                    return restrict_to(t.at({a, b}), o.restriction(meet(a, b), *m));
                };
                if (!same(res(i, k), multiply(res(i, j), res(j, k)), o.stalk(*m)))
                    throw Error(ErrorCode::CocycleInvalid, "cocycle condition fails on charts " + std::to_string(i) +
                                                               ", " + std::to_string(j) + ", " + std::to_string(k));
            }

    // trivialize the permutation part along a spanning tree from chart 0
    std::vector<std::optional<Perm>> tau(c);
    if (c > 0) {
        Perm id(n);
        std::iota(id.begin(), id.end(), 0);
        tau[0] = id;
        std::deque<std::size_t> queue{0};
        while (!queue.empty()) {
            std::size_t i = queue.front();
            queue.pop_front();
            for (std::size_t j = 0; j < c; ++j)
                if (!tau[j]) {
                    tau[j] = compose(invert(t.at({i, j}).perm), *tau[i]);
                    queue.push_back(j);
                }
        }
        for (std::size_t i = 0; i < c; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (compose(*tau[i], invert(*tau[j])) != t.at({i, j}).perm)
                    throw Error(ErrorCode::CocycleInvalid, "permutation part is not a coboundary");
    }
    auto frame = [&](std::size_t i) {
        return MonomialMatrix{std::vector<Vector>(n, Vector(o.stalk(g.charts[i]).generator_count())), *tau[i]};
    };

    CochainModel cech = reduced_cech(o);
    Cohomology h1 = cohomology_data(cech.complex, 1);
    BundleDecomposition out;
    out.pic = h1.group;
    out.charts = maxima;
    std::vector<std::size_t> chart_of(p.size(), c);  // maximal point -> position in g.charts
    for (std::size_t i = 0; i < c; ++i) chart_of[g.charts[i]] = i;

    std::size_t deg1 = cech.cells.size() > 1 ? cech.cells[1].size() : 0;
    std::vector<Vector> cocycles(n, Vector(cech.complex.groups.size() > 1 ? cech.complex.groups[1].generator_count() : 0));
    for (std::size_t e = 0; e < deg1; ++e) {
        std::size_t i = chart_of[cech.cells[1][e][0]], j = chart_of[cech.cells[1][e][1]];
        std::size_t m = meet(i, j);
        MonomialMatrix a = multiply(multiply(inverse_of(restrict_to(frame(i), o.restriction(g.charts[i], m))), t.at({i, j})),
                                    restrict_to(frame(j), o.restriction(g.charts[j], m)));
        std::size_t off = cech.sums[1].offsets[e];
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t v = 0; v < a.units[k].size(); ++v) cocycles[k][off + v] = a.units[k][v];
    }
    for (std::size_t k = 0; k < n; ++k) {
        Vector cls = h1.class_of(cocycles[k]);
        out.representatives.push_back(h1.representative(cls));
        out.classes.push_back(cls);
    }

    // 0-cochains e^k with d e^k = r^k - c^k, then K_i = h_i (e_i, id)
    std::vector<Vector> zero(n);
    for (std::size_t k = 0; k < n; ++k) {
        Vector diff = add(out.representatives[k], negate(cocycles[k]));
        if (cech.complex.differentials.empty()) {
            zero[k] = Vector(cech.complex.groups[0].generator_count());
            continue;
        }
        auto e = preimage(cech.complex.differentials[0], diff);
        if (!e) throw Error(ErrorCode::CocycleInvalid, "line bundle cocycle is not cohomologous to its class");
        zero[k] = *e;
    }
    std::vector<MonomialMatrix> kmat(c);
    for (std::size_t s = 0; s < cech.cells[0].size(); ++s) {
        std::size_t i = chart_of[cech.cells[0][s][0]];
        std::size_t off = cech.sums[0].offsets[s], gens = o.stalk(g.charts[i]).generator_count();
        MonomialMatrix diag{{}, Perm(n)};
        std::iota(diag.perm.begin(), diag.perm.end(), 0);
        for (std::size_t k = 0; k < n; ++k)
            diag.units.emplace_back(zero[k].begin() + static_cast<std::ptrdiff_t>(off),
                                    zero[k].begin() + static_cast<std::ptrdiff_t>(off + gens));
        kmat[i] = multiply(frame(i), diag);
    }

    // verify g_ij = K_i D_ij K_j^-1 on every overlap
    out.verified = true;
    for (std::size_t i = 0; i < c && out.verified; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            std::size_t m = meet(i, j);
            MonomialMatrix d{{}, Perm(n)};
            std::iota(d.perm.begin(), d.perm.end(), 0);
            std::size_t gens = o.stalk(m).generator_count();
            for (std::size_t k = 0; k < n; ++k) {
                Vector u(gens);
                if (i != j) {
                    auto lo = std::min(g.charts[i], g.charts[j]), hi = std::max(g.charts[i], g.charts[j]);
                    auto it = std::find(cech.cells[1].begin(), cech.cells[1].end(), PointSet{lo, hi});
                    std::size_t off = cech.sums[1].offsets[static_cast<std::size_t>(it - cech.cells[1].begin())];
                    u = Vector(out.representatives[k].begin() + static_cast<std::ptrdiff_t>(off),
                               out.representatives[k].begin() + static_cast<std::ptrdiff_t>(off + gens));
                    if (g.charts[i] > g.charts[j]) u = negate(u);
                }
                d.units.push_back(u);
            }
            MonomialMatrix rebuilt =
                multiply(multiply(restrict_to(kmat[i], o.restriction(g.charts[i], m)), d),
                         inverse_of(restrict_to(kmat[j], o.restriction(g.charts[j], m))));
            if (!same(rebuilt, t.at({i, j}), o.stalk(m))) {
                out.verified = false;
                break;
            }
        }
    // report frames in ascending point order
    for (auto mpt : maxima) out.change_of_frame.push_back(kmat[chart_of[mpt]]);
    std::sort(out.classes.begin(), out.classes.end());
    return out;
}

} // namespace msch
