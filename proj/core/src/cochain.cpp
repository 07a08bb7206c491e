#include "msch/cochain.hpp"

#include "msch/error.hpp"

#include <map>
#include <numeric>
#include <optional>

namespace msch {

bool CochainComplex::is_valid() const {
    if (differentials.size() + 1 != groups.size() && differentials.size() != groups.size()) return false;
    for (std::size_t i = 0; i < differentials.size(); ++i) {
        const AbMap& d = differentials[i];
        if (d.source() != groups[i]) return false;
        if (i + 1 < groups.size() && d.target() != groups[i + 1]) return false;
        if (!d.is_well_defined()) return false;
        if (i + 1 < differentials.size()) {
            AbMap dd = compose(differentials[i + 1], d);
            if (!maps_equal(dd, AbMap::zero(dd.source(), dd.target()))) return false;
        }
    }
    return true;
}

namespace {

AbMap outgoing(const CochainComplex& c, std::size_t i) {
    if (i < c.differentials.size()) return c.differentials[i];
    return AbMap::zero(c.groups[i], AbGroup::free(0));
}

} // namespace

Cohomology cohomology_data(const CochainComplex& c, std::size_t degree) {
    if (degree >= c.groups.size()) {
        AbGroup zero = AbGroup::free(0);
        Subgroup z{zero, AbMap::identity(zero)};
        return Cohomology{zero, z, cokernel(AbMap::zero(zero, zero))};
    }
    Subgroup cycles = kernel(outgoing(c, degree));
    AbMap incoming = degree == 0 ? AbMap::zero(AbGroup::free(0), c.groups[0]) : c.differentials[degree - 1];
    auto lifted = factor_through(incoming, cycles.inclusion);
    if (!lifted) throw Error(ErrorCode::InvalidArgument, "not a cochain complex in degree " + std::to_string(degree));
    Quotient q = cokernel(*lifted);
    return Cohomology{q.group, cycles, q};
}

Vector Cohomology::class_of(const Vector& cocycle) const {
    auto z = preimage(cycles.inclusion, cocycle);
    if (!z) throw Error(ErrorCode::InvalidArgument, "not a cocycle");
    return group.canonical(quotient.projection.apply(*z));
}

Vector Cohomology::representative(const Vector& coordinates) const {
    return cycles.inclusion.apply(quotient.lift * group.from_canonical(coordinates));
}

namespace {

using Column = SparseComplex::Column;

// Canonical coordinates computed one relation-connected block of generators at a time.
struct BlockCanon {
    Vector moduli;
    std::vector<Column> to;    // per original generator: canonical coordinates
    std::vector<Column> from;  // per canonical generator: original coordinates
};

BlockCanon canonical_blocks(const AbGroup& g) {
    std::size_t n = g.generator_count();
    const Matrix& r = g.relations();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<std::optional<std::size_t>> lead(r.rows());
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (r(i, j) == 0) continue;
            if (!lead[i])
                lead[i] = j;
            else
                parent[find(j)] = find(*lead[i]);
        }
    std::map<std::size_t, std::vector<std::size_t>> blocks, rows_of;
    for (std::size_t j = 0; j < n; ++j) blocks[find(j)].push_back(j);
    for (std::size_t i = 0; i < r.rows(); ++i)
        if (lead[i]) rows_of[find(*lead[i])].push_back(i);

    BlockCanon out;
    out.to.resize(n);
    for (const auto& [root, gens] : blocks) {
        auto rows = rows_of.find(root);
        if (rows == rows_of.end()) {
            for (auto j : gens) {
                out.to[j][out.moduli.size()] = 1;
                out.from.push_back({{j, Integer(1)}});
                out.moduli.emplace_back(0);
            }
            continue;
        }
        Matrix sub(rows->second.size(), gens.size());
        for (std::size_t a = 0; a < rows->second.size(); ++a)
            for (std::size_t b = 0; b < gens.size(); ++b) sub(a, b) = r(rows->second[a], gens[b]);
        AbGroup block(gens.size(), sub);
        std::size_t base = out.moduli.size(), dim = block.canonical_dimension();
        const Matrix& to = block.to_canonical();
        const Matrix& from = block.from_canonical_matrix();
        for (std::size_t k = 0; k < dim; ++k) {
            out.moduli.push_back(k < block.torsion().size() ? block.torsion()[k] : Integer(0));
            Column col;
            for (std::size_t b = 0; b < gens.size(); ++b)
                if (from(b, k) != 0) col[gens[b]] = from(b, k);
            out.from.push_back(col);
        }
        for (std::size_t b = 0; b < gens.size(); ++b)
            for (std::size_t k = 0; k < dim; ++k)
                if (to(k, b) != 0) out.to[gens[b]][base + k] = to(k, b);
    }
    return out;
}

void reduce_column(Column& col, const Vector& moduli) {
    for (auto it = col.begin(); it != col.end();) {
        const Integer& d = moduli[it->first];
        if (d != 0) mpz_fdiv_r(it->second.get_mpz_t(), it->second.get_mpz_t(), d.get_mpz_t());
        if (it->second == 0)
            it = col.erase(it);
        else
            ++it;
    }
}

// The matrix of f in canonical block coordinates of source and target.
std::vector<Column> transform(const AbMap& f, const BlockCanon& src, const BlockCanon& dst) {
    const Matrix& m = f.matrix();
    std::vector<Column> out;
    for (const auto& fcol : src.from) {
        Column image;  // in original target generators
        for (const auto& [j, c] : fcol)
            for (std::size_t i = 0; i < m.rows(); ++i)
                if (m(i, j) != 0) image[i] += c * m(i, j);
        Column col;
        for (const auto& [i, c] : image)
            if (c != 0)
                for (const auto& [k, t] : dst.to[i]) col[k] += c * t;
        reduce_column(col, dst.moduli);
        out.push_back(std::move(col));
    }
    return out;
}

// Cancels pairs e -> f joined by a unit coefficient where both generators
// have infinite order: the complex splits off Z e -> Z d(e).
void cancel(std::vector<Column>& cols, std::size_t rows, const Vector& msrc, const Vector& mdst,
            std::vector<char>& alive_src, std::vector<char>& alive_dst) {
    std::vector<std::vector<std::size_t>> row_cols(rows);
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [i, v] : cols[j]) row_cols[i].push_back(j);
    // sparse pivots first keeps fill-in down
    std::vector<std::size_t> order(cols.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cols[a].size() < cols[b].size(); });
    for (auto e : order) {
        if (!alive_src[e] || msrc[e] != 0) continue;
        std::optional<std::size_t> f;
        std::size_t best = 0;
        for (const auto& [i, v] : cols[e])
            if (alive_dst[i] && mdst[i] == 0 && (v == 1 || v == -1) && (!f || row_cols[i].size() < best)) {
                f = i;
                best = row_cols[i].size();
            }
        if (!f) continue;
        Integer piv = cols[e][*f];
        Column pivot = cols[e];
        for (auto a : row_cols[*f]) {
            if (a == e || !alive_src[a]) continue;
            auto it = cols[a].find(*f);
            if (it == cols[a].end()) continue;
            Integer k = it->second * piv;
            for (const auto& [i, v] : pivot) {
                auto [slot, fresh] = cols[a].emplace(i, Integer(0));
                slot->second -= k * v;
                if (mdst[i] != 0) mpz_fdiv_r(slot->second.get_mpz_t(), slot->second.get_mpz_t(), mdst[i].get_mpz_t());
                if (slot->second == 0)
                    cols[a].erase(slot);
                else if (fresh)
                    row_cols[i].push_back(a);
            }
        }
        alive_src[e] = 0;
        alive_dst[*f] = 0;
        cols[e].clear();
    }
}

AbGroup diagonal_group(const Vector& moduli, const std::vector<std::size_t>& keep) {
    std::vector<Vector> rows;
    for (std::size_t k = 0; k < keep.size(); ++k)
        if (moduli[keep[k]] != 0) {
            Vector row(keep.size());
            row[k] = moduli[keep[k]];
            rows.push_back(row);
        }
    return AbGroup(keep.size(), Matrix::from_rows(keep.size(), rows));
}

} // namespace

AbGroup cohomology(const SparseComplex& c, std::size_t degree) {
    if (degree >= c.moduli.size()) return AbGroup::free(0);
    static const Vector none;
    const Vector& mb = c.moduli[degree];
    const Vector& ma = degree == 0 ? none : c.moduli[degree - 1];
    const Vector& mc = degree + 1 < c.moduli.size() ? c.moduli[degree + 1] : none;
    std::vector<Column> sa = degree == 0 ? std::vector<Column>{} : c.differentials[degree - 1];
    std::vector<Column> sb = degree < c.differentials.size() ? c.differentials[degree] : std::vector<Column>(mb.size());
    std::vector<char> alive_a(ma.size(), 1), alive_b(mb.size(), 1), alive_c(mc.size(), 1);
    cancel(sb, mc.size(), mb, mc, alive_b, alive_c);
    cancel(sa, mb.size(), ma, mb, alive_a, alive_b);

    auto kept = [](const std::vector<char>& alive) {
        std::vector<std::size_t> k;
        for (std::size_t i = 0; i < alive.size(); ++i)
            if (alive[i]) k.push_back(i);
        return k;
    };
    std::vector<std::size_t> ka = kept(alive_a), kb = kept(alive_b), kc = kept(alive_c);
    auto dense = [](const std::vector<Column>& s, std::size_t rows, const std::vector<std::size_t>& src,
                    const std::vector<std::size_t>& dst) {
        std::vector<std::size_t> pos(rows, dst.size());
        for (std::size_t i = 0; i < dst.size(); ++i) pos[dst[i]] = i;
        Matrix m(dst.size(), src.size());
        for (std::size_t j = 0; j < src.size(); ++j)
            for (const auto& [i, v] : s[src[j]])
                if (pos[i] < dst.size()) m(pos[i], j) = v;
        return m;
    };
    AbGroup ra = diagonal_group(ma, ka), rb = diagonal_group(mb, kb), rc = diagonal_group(mc, kc);
    CochainComplex small;
    small.groups = {ra, rb, rc};
    small.differentials = {AbMap(ra, rb, dense(sa, mb.size(), ka, kb)), AbMap(rb, rc, dense(sb, mc.size(), kb, kc))};
    return cohomology_data(small, 1).group;
}

AbGroup cohomology(const CochainComplex& c, std::size_t degree) {
    if (degree >= c.groups.size()) return AbGroup::free(0);
    AbGroup zero = AbGroup::free(0);
    const AbGroup& gb = c.groups[degree];
    const AbGroup& ga = degree == 0 ? zero : c.groups[degree - 1];
    const AbGroup& gc = degree + 1 < c.groups.size() ? c.groups[degree + 1] : zero;
    AbMap in = degree == 0 ? AbMap::zero(zero, gb) : c.differentials[degree - 1];
    AbMap out = degree < c.differentials.size() ? c.differentials[degree] : AbMap::zero(gb, gc);
    BlockCanon ca = canonical_blocks(ga), cb = canonical_blocks(gb), cc = canonical_blocks(gc);
    SparseComplex s;
    s.moduli = {ca.moduli, cb.moduli, cc.moduli};
    s.differentials = {transform(in, ca, cb), transform(out, cb, cc)};
    return cohomology(s, 1);
}

} // namespace msch
