#include "msch/sheaf.hpp"

#include "msch/error.hpp"

#include <algorithm>
#include <functional>

namespace msch {

AbSheaf::AbSheaf(FinitePoset base, std::vector<AbGroup> stalks,
                 const std::map<std::pair<std::size_t, std::size_t>, AbMap>& covers)
    : base_(std::move(base)), stalks_(std::move(stalks)) {
    std::size_t n = base_.size();
    if (stalks_.size() != n) throw Error(ErrorCode::InvalidArgument, "one stalk per point expected");
    table_.assign(n * n, std::nullopt);
    for (std::size_t x = 0; x < n; ++x) table_[x * n + x] = AbMap::identity(stalks_[x]);
    for (const auto& [x, y] : base_.covers()) {
        auto it = covers.find({x, y});
        if (it == covers.end())
            throw Error(ErrorCode::InvalidArgument,
                        "missing restriction " + base_.label(y) + " -> " + base_.label(x));
        const AbMap& m = it->second;
        if (m.source().generator_count() != stalks_[y].generator_count() ||
            m.target().generator_count() != stalks_[x].generator_count())
            throw Error(ErrorCode::InvalidArgument, "restriction has the wrong shape");
        if (!m.is_well_defined()) throw Error(ErrorCode::InvalidArgument, "restriction is not well defined");
        table_[y * n + x] = AbMap(stalks_[y], stalks_[x], m.matrix());
    }
    // res(y, x) = res(z, x) . res(y, z) for every cover z of x below y
    std::function<const AbMap&(std::size_t, std::size_t)> get = [&](std::size_t y, std::size_t x) -> const AbMap& {
        auto& slot = table_[y * n + x];
        if (slot) return *slot;
        std::optional<AbMap> found;
        for (auto z : base_.upper_covers(x)) {
            if (!base_.leq(z, y)) continue;
            AbMap c = compose(*table_[z * n + x], get(y, z));
            if (!found) {
                found = c;
            } else if (!maps_equal(*found, c)) {
                throw Error(ErrorCode::NonCommutingDiagram,
                            "restrictions " + base_.label(y) + " -> " + base_.label(x) + " depend on the path");
            }
        }
        slot = found;
        return *slot;
    };
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x = 0; x < n; ++x)
            if (base_.less(x, y)) get(y, x);
}

const AbMap& AbSheaf::restriction(std::size_t y, std::size_t x) const {
    const auto& slot = table_.at(y * size() + x);
    if (!slot) throw Error(ErrorCode::InvalidArgument, "points are not comparable");
    return *slot;
}

AbSheaf AbSheaf::restrict_to(const PointSet& open) const {
    if (!base_.is_open(open)) throw Error(ErrorCode::NotOpen, "not a down-set");
    FinitePoset sub = base_.induced(open);
    std::vector<AbGroup> st;
    for (auto x : open) st.push_back(stalks_[x]);
    std::map<std::pair<std::size_t, std::size_t>, AbMap> cov;
    for (const auto& [x, y] : sub.covers()) cov.emplace(std::make_pair(x, y), restriction(open[y], open[x]));
    return AbSheaf(sub, st, cov);
}

AbSheaf constant_sheaf(const FinitePoset& p, const AbGroup& a) {
    std::map<std::pair<std::size_t, std::size_t>, AbMap> cov;
    for (const auto& c : p.covers()) cov.emplace(c, AbMap::identity(a));
    return AbSheaf(p, std::vector<AbGroup>(p.size(), a), cov);
}

AbSheaf skyscraper(const FinitePoset& p, std::size_t x, const AbGroup& a) {
    std::vector<AbGroup> st(p.size(), AbGroup::free(0));
    st.at(x) = a;
    std::map<std::pair<std::size_t, std::size_t>, AbMap> cov;
    for (const auto& [lo, hi] : p.covers()) cov.emplace(std::make_pair(lo, hi), AbMap::zero(st[hi], st[lo]));
    return AbSheaf(p, st, cov);
}

AbSheaf product_sheaf(const AbSheaf& f, const AbSheaf& g) {
    FinitePoset base = product_poset(f.base(), g.base());
    std::size_t m = g.size();
    std::vector<AbGroup> st;
    for (std::size_t i = 0; i < base.size(); ++i) st.push_back(direct_sum({f.stalk(i / m), g.stalk(i % m)}).group);
    std::map<std::pair<std::size_t, std::size_t>, AbMap> cov;
    for (const auto& [lo, hi] : base.covers())
        cov.emplace(std::make_pair(lo, hi), direct_sum_map({f.restriction(hi / m, lo / m), g.restriction(hi % m, lo % m)}));
    return AbSheaf(base, st, cov);
}

Sections sections(const AbSheaf& f, const PointSet& open) {
    const FinitePoset& p = f.base();
    if (!p.is_open(open)) throw Error(ErrorCode::NotOpen, "sections requested on a set that is not a down-set");
    Diagram d;
    std::vector<std::size_t> local(p.size(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < open.size(); ++i) {
        local[open[i]] = i;
        d.objects.push_back(f.stalk(open[i]));
    }
    for (const auto& [x, y] : p.covers())
        if (local[y] != static_cast<std::size_t>(-1)) d.arrows.push_back({local[y], local[x], f.restriction(y, x)});
    Limit lim = finite_limit(d);
    return Sections{open, lim.group, lim.projections, lim.inclusion};
}

namespace {

// Stack maps from a common source into the product of their targets.
AbMap stack(const AbGroup& source, const std::vector<AbMap>& parts) {
    std::vector<AbGroup> targets;
    for (const auto& m : parts) targets.push_back(m.target());
    DirectSum prod = direct_sum(targets);
    Matrix mat(prod.group.generator_count(), source.generator_count());
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const Matrix& b = parts[k].matrix();
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) mat(prod.offsets[k] + r, c) = b(r, c);
    }
    return AbMap(source, prod.group, mat);
}

} // namespace

AbMap section_restriction(const AbSheaf& f, const Sections& v, const Sections& u) {
    (void)f;
    std::vector<AbMap> parts;
    for (auto x : u.points) {
        auto it = std::lower_bound(v.points.begin(), v.points.end(), x);
        if (it == v.points.end() || *it != x) throw Error(ErrorCode::InvalidArgument, "open sets are not nested");
        parts.push_back(v.projections[static_cast<std::size_t>(it - v.points.begin())]);
    }
    AbMap into = stack(v.group, parts);
    auto g = factor_through(AbMap(v.group, u.inclusion.target(), into.matrix()), u.inclusion);
    if (!g) throw Error(ErrorCode::InvalidArgument, "sections do not restrict");
    return *g;
}

AbMap boundary_restriction(const AbSheaf& f, std::size_t x) {
    PointSet below = f.base().strict_down_set(x);
    if (below.empty()) return AbMap::zero(f.stalk(x), AbGroup::free(0));
    Sections s = sections(f, below);
    std::vector<AbMap> parts;
    for (auto y : below) parts.push_back(f.restriction(x, y));
    AbMap into = stack(f.stalk(x), parts);
    auto g = factor_through(AbMap(f.stalk(x), s.inclusion.target(), into.matrix()), s.inclusion);
    if (!g) throw Error(ErrorCode::InvalidArgument, "restriction does not land in sections");
    return *g;
}

namespace {

// Assemble a complex from cells; face(cell, i) gives the i-th face and
// the cell's stalk point; restriction from the face's stalk point.
CochainModel assemble(const AbSheaf& f, std::vector<std::vector<PointSet>> cells,
                      std::vector<std::vector<std::size_t>> stalk_of) {
    CochainModel out;
    std::size_t top = cells.size();
    for (std::size_t d = 0; d < top; ++d) {
        std::vector<AbGroup> parts;
        for (auto x : stalk_of[d]) parts.push_back(f.stalk(x));
        out.sums.push_back(direct_sum(parts));
        out.complex.groups.push_back(out.sums.back().group);
    }
    for (std::size_t d = 0; d + 1 < top; ++d) {
        std::map<PointSet, std::size_t> index;
        for (std::size_t k = 0; k < cells[d].size(); ++k) index[cells[d][k]] = k;
        Matrix m(out.complex.groups[d + 1].generator_count(), out.complex.groups[d].generator_count());
        for (std::size_t t = 0; t < cells[d + 1].size(); ++t) {
            const PointSet& tau = cells[d + 1][t];
            std::size_t at = stalk_of[d + 1][t];
            for (std::size_t i = 0; i < tau.size(); ++i) {
                PointSet face = tau;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                auto it = index.find(face);
                if (it == index.end()) continue;
                std::size_t s = it->second;
                const Matrix& r = f.restriction(stalk_of[d][s], at).matrix();
                long sign = i % 2 == 0 ? 1 : -1;
                std::size_t r0 = out.sums[d + 1].offsets[t], c0 = out.sums[d].offsets[s];
                for (std::size_t a = 0; a < r.rows(); ++a)
                    for (std::size_t b = 0; b < r.cols(); ++b) m(r0 + a, c0 + b) += sign * r(a, b);
            }
        }
        out.complex.differentials.emplace_back(out.complex.groups[d], out.complex.groups[d + 1], m);
    }
    out.cells = std::move(cells);
    out.stalk_of = std::move(stalk_of);
    return out;
}

} // namespace

CochainModel order_cochain(const AbSheaf& f) {
    const FinitePoset& p = f.base();
    std::vector<std::vector<PointSet>> cells;
    std::vector<std::vector<std::size_t>> stalk_of;
    std::vector<PointSet> layer;
    for (std::size_t x = 0; x < p.size(); ++x) layer.push_back({x});
    while (!layer.empty()) {
        std::sort(layer.begin(), layer.end());
        std::vector<std::size_t> at;
        for (const auto& c : layer) at.push_back(c.back());
        cells.push_back(layer);
        stalk_of.push_back(at);
        std::vector<PointSet> next;
        for (const auto& c : layer)
            for (auto z : p.strict_down_set(c.back())) {
                PointSet longer = c;
                longer.push_back(z);
                next.push_back(longer);
            }
        layer = std::move(next);
    }
    return assemble(f, std::move(cells), std::move(stalk_of));
}

CochainModel reduced_cech(const AbSheaf& f) {
    const FinitePoset& p = f.base();
    PointSet maxima = p.maximal();
    std::size_t k = maxima.size();
    if (k > 20) throw Error(ErrorCode::InvalidArgument, "too many maximal points for the cover complex");
    std::vector<std::vector<PointSet>> cells(k);
    std::vector<std::vector<std::size_t>> stalk_of(k);
    // subsets in lexicographic order of their index tuples, grouped by size
    std::vector<std::pair<PointSet, std::size_t>> all;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << k); ++mask) {
        PointSet tuple;
        std::vector<char> common(p.size(), 1);
        for (std::size_t i = 0; i < k; ++i) {
            if (!(mask >> i & 1U)) continue;
            tuple.push_back(maxima[i]);
            for (std::size_t z = 0; z < p.size(); ++z)
                if (!p.leq(z, maxima[i])) common[z] = 0;
        }
        PointSet inter;
        for (std::size_t z = 0; z < p.size(); ++z)
            if (common[z]) inter.push_back(z);
        if (inter.empty()) continue;
        std::optional<std::size_t> top;
        for (auto z : inter) {
            bool greatest = true;
            for (auto w : inter)
                if (!p.leq(w, z)) greatest = false;
            if (greatest) top = z;
        }
        if (!top) {
            std::string names;
            for (auto m : tuple) names += (names.empty() ? "" : ", ") + p.label(m);
            throw Error(ErrorCode::NotSeparated, "down-sets of " + names + " meet without a greatest point");
        }
        all.emplace_back(tuple, *top);
    }
    std::sort(all.begin(), all.end());
    for (const auto& [tuple, top] : all) {
        cells[tuple.size() - 1].push_back(tuple);
        stalk_of[tuple.size() - 1].push_back(top);
    }
    while (!cells.empty() && cells.back().empty()) {
        cells.pop_back();
        stalk_of.pop_back();
    }
    return assemble(f, std::move(cells), std::move(stalk_of));
}

SparseComplex sparse_order_cochain(const AbSheaf& f, std::size_t top) {
    const FinitePoset& p = f.base();
    std::size_t n = p.size();
    std::vector<Vector> moduli(n);
    for (std::size_t x = 0; x < n; ++x) {
        const AbGroup& g = f.stalk(x);
        for (std::size_t k = 0; k < g.canonical_dimension(); ++k)
            moduli[x].push_back(k < g.torsion().size() ? g.torsion()[k] : Integer(0));
    }
    std::map<std::pair<std::size_t, std::size_t>, Matrix> cache;
    auto canonical_restriction = [&](std::size_t y, std::size_t x) -> const Matrix& {
        auto [it, fresh] = cache.try_emplace({y, x});
        if (fresh) {
            Matrix m = f.stalk(x).to_canonical() * f.restriction(y, x).matrix() * f.stalk(y).from_canonical_matrix();
            for (std::size_t a = 0; a < m.rows(); ++a)
                if (moduli[x][a] != 0)
                    for (std::size_t b = 0; b < m.cols(); ++b)
                        mpz_fdiv_r(m(a, b).get_mpz_t(), m(a, b).get_mpz_t(), moduli[x][a].get_mpz_t());
            it->second = std::move(m);
        }
        return it->second;
    };

    SparseComplex out;
    std::vector<std::vector<PointSet>> cells;
    std::vector<std::vector<std::size_t>> offsets;
    std::vector<PointSet> layer;
    for (std::size_t x = 0; x < n; ++x) layer.push_back({x});
    while (!layer.empty() && cells.size() <= top) {
        std::sort(layer.begin(), layer.end());
        Vector m;
        std::vector<std::size_t> off;
        for (const auto& c : layer) {
            off.push_back(m.size());
            m.insert(m.end(), moduli[c.back()].begin(), moduli[c.back()].end());
        }
        out.moduli.push_back(std::move(m));
        offsets.push_back(std::move(off));
        std::vector<PointSet> next;
        for (const auto& c : layer)
            for (auto z : p.strict_down_set(c.back())) {
                PointSet longer = c;
                longer.push_back(z);
                next.push_back(longer);
            }
        cells.push_back(std::move(layer));
        layer = std::move(next);
    }
    for (std::size_t d = 0; d + 1 < cells.size(); ++d) {
        std::map<PointSet, std::size_t> index;
        for (std::size_t k = 0; k < cells[d].size(); ++k) index[cells[d][k]] = k;
        std::vector<SparseComplex::Column> cols(out.moduli[d].size());
        for (std::size_t t = 0; t < cells[d + 1].size(); ++t) {
            const PointSet& tau = cells[d + 1][t];
            for (std::size_t i = 0; i < tau.size(); ++i) {
                PointSet face = tau;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                std::size_t s = index.at(face);
                const Matrix& r = canonical_restriction(cells[d][s].back(), tau.back());
                long sign = i % 2 == 0 ? 1 : -1;
                std::size_t r0 = offsets[d + 1][t], c0 = offsets[d][s];
                for (std::size_t a = 0; a < r.rows(); ++a)
                    for (std::size_t b = 0; b < r.cols(); ++b)
                        if (r(a, b) != 0) cols[c0 + b][r0 + a] += sign * r(a, b);
            }
        }
        for (auto& col : cols)
            for (auto it = col.begin(); it != col.end();) {
                const Integer& q = out.moduli[d + 1][it->first];
                if (q != 0) mpz_fdiv_r(it->second.get_mpz_t(), it->second.get_mpz_t(), q.get_mpz_t());
                it = it->second == 0 ? col.erase(it) : std::next(it);
            }
        out.differentials.push_back(std::move(cols));
    }
    return out;
}

AbGroup sheaf_cohomology(const AbSheaf& f, std::size_t degree) {
    return cohomology(sparse_order_cochain(f, degree + 1), degree);
}

SFlasqueResult is_s_flasque(const AbSheaf& f) {
    SFlasqueResult res;
    res.collection.assign(f.size(), AbGroup::free(0));
    for (auto x : f.base().height_order()) {
        AbMap r = boundary_restriction(f, x);
        SplitEpiResult s = is_split_epi(r);
        if (!s.split) {
            res.failed_point = x;
            res.failure = s;
            res.collection.clear();
            return res;
        }
        res.collection[x] = kernel(r).group;
    }
    res.s_flasque = true;
    return res;
}

} // namespace msch
