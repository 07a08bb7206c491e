#include "msch/scheme.hpp"

#include "msch/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace msch {

bool homs_agree(const Monoid& target, const MonoidHom& f, const MonoidHom& g) {
    if (f.images.size() != g.images.size()) return false;
    for (std::size_t k = 0; k < f.images.size(); ++k)
        if (!target.equal(f.images[k], g.images[k])) return false;
    return true;
}

Scheme::Scheme(FinitePoset space, std::vector<MonoidPresentation> stalks,
               const std::map<std::pair<std::size_t, std::size_t>, MonoidHom>& covers)
    : space_(std::move(space)), stalks_(std::move(stalks)) {
    std::size_t n = space_.size();
    if (stalks_.size() != n) throw Error(ErrorCode::InvalidArgument, "one stalk per point expected");
    for (const auto& s : stalks_) monoids_.push_back(std::make_shared<const Monoid>(s));
    table_.assign(n * n, std::nullopt);
    for (std::size_t x = 0; x < n; ++x) table_[x * n + x] = MonoidHom::identity(stalks_[x].size());
    for (const auto& [x, y] : space_.covers()) {
        auto it = covers.find({x, y});
        if (it == covers.end())
            throw Error(ErrorCode::InvalidArgument, "missing costalk map " + space_.label(y) + " -> " + space_.label(x));
        const MonoidHom& h = it->second;
        if (h.source_size != stalks_[y].size() || h.target_size != stalks_[x].size() ||
            h.images.size() != h.source_size)
            throw Error(ErrorCode::InvalidArgument, "costalk map has the wrong shape");
        for (const auto& r : stalks_[y].relations())
            if (!monoids_[x]->equal(h.apply(r.lhs), h.apply(r.rhs)))
                throw Error(ErrorCode::InconsistentGluing,
                            "costalk map " + space_.label(y) + " -> " + space_.label(x) + " breaks a relation");
        table_[y * n + x] = h;
    }
    std::function<const MonoidHom&(std::size_t, std::size_t)> get = [&](std::size_t y,
                                                                          std::size_t x) -> const MonoidHom& {
        auto& slot = table_[y * n + x];
        if (slot) return *slot;
        std::optional<MonoidHom> found;
        for (auto z : space_.upper_covers(x)) {
            if (!space_.leq(z, y)) continue;
            MonoidHom c = compose(*table_[z * n + x], get(y, z));
            if (!found)
                found = c;
            else if (!homs_agree(*monoids_[x], *found, c))
                throw Error(ErrorCode::InconsistentGluing,
                            "costalk maps " + space_.label(y) + " -> " + space_.label(x) + " depend on the path");
        }
        slot = found;
        return *slot;
    };
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x = 0; x < n; ++x)
            if (space_.less(x, y)) get(y, x);
}

const MonoidHom& Scheme::costalk(std::size_t y, std::size_t x) const {
    const auto& slot = table_.at(y * size() + x);
    if (!slot) throw Error(ErrorCode::InvalidArgument, "points are not comparable");
    return *slot;
}

Scheme spec(const MonoidPresentation& m) {
    Spectrum s = spectrum(m);
    std::vector<Localization> locs;
    std::vector<MonoidPresentation> stalks;
    for (const auto& q : s.primes) {
        locs.push_back(localize(m, q));
        stalks.push_back(locs.back().presentation);
    }
    std::map<std::pair<std::size_t, std::size_t>, MonoidHom> cov;
    for (const auto& [x, y] : s.poset.covers()) cov.emplace(std::make_pair(x, y), compose(locs[x].to, locs[y].from));
    return Scheme(s.poset, stalks, cov);
}

// ------------------------------------------------------------------ gluing

namespace {

std::size_t find_prime(const Spectrum& s, const std::vector<char>& in) {
    for (std::size_t k = 0; k < s.primes.size(); ++k)
        if (s.primes[k].in == in) return k;
    return static_cast<std::size_t>(-1);
}

std::vector<char> pull_back(const MonoidHom& phi, const Prime& q) {
    std::vector<char> in(phi.source_size);
    for (std::size_t g = 0; g < phi.source_size; ++g) in[g] = q.contains(phi.images[g]) ? 1 : 0;
    return in;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

class Gluer {
  public:
    Gluer(const std::vector<MonoidPresentation>& charts, const std::vector<Overlap>& overlaps,
          std::vector<std::string> names)
        : charts_(charts), overlaps_(overlaps), names_(std::move(names)) {
        if (names_.empty())
            for (std::size_t i = 0; i < charts_.size(); ++i) names_.push_back("U" + std::to_string(i));
        if (names_.size() != charts_.size()) throw Error(ErrorCode::InvalidArgument, "one name per chart expected");
        for (const auto& c : charts_) spectra_.push_back(spectrum(c));
        for (const auto& s : spectra_) {
            offsets_.push_back(total_);
            total_ += s.primes.size();
        }
    }

    Scheme run() {
        identify();
        build_points();
        FinitePoset space = build_order();
        std::vector<MonoidPresentation> stalks;
        for (std::size_t x = 0; x < members_.size(); ++x) {
            auto [c, local] = members_[x].front();
            stalks.push_back(local_stalk(c, local).loc.presentation);
        }
        check_cocycles();
        std::map<std::pair<std::size_t, std::size_t>, MonoidHom> cov;
        for (const auto& [x, y] : space.covers()) {
            std::size_t c = members_[y].front().first;
            std::size_t ly = local_of(y, c);
            std::size_t lx = local_of(x, c);
            if (lx == npos)
                throw Error(ErrorCode::InconsistentGluing, "chart " + names_[c] + " is not open in the glued space");
            MonoidHom h = compose(local_stalk(c, lx).loc.to, local_stalk(c, ly).loc.from);
            std::size_t home = members_[x].front().first;
            if (home != c) h = compose(transport(x, c, home), h);
            cov.emplace(std::make_pair(x, y), h);
        }
        return Scheme(space, stalks, cov);
    }

  private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    struct LocalStalk {
        Localization loc;
        std::shared_ptr<Monoid> monoid;
    };

    void identify() {
        UnionFind uf(total_);
        overlap_points_.resize(overlaps_.size());
        for (std::size_t o = 0; o < overlaps_.size(); ++o) {
            const Overlap& ov = overlaps_[o];
            if (ov.i >= charts_.size() || ov.j >= charts_.size() || ov.i == ov.j)
                throw Error(ErrorCode::InvalidArgument, "overlap refers to unknown charts");
            if (ov.from_i.source_size != charts_[ov.i].size() || ov.from_j.source_size != charts_[ov.j].size() ||
                ov.from_i.target_size != ov.monoid.size() || ov.from_j.target_size != ov.monoid.size())
                throw Error(ErrorCode::InvalidArgument, "overlap maps have the wrong shape");
            overlap_spectra_.push_back(spectrum(ov.monoid));
            const Spectrum& so = overlap_spectra_.back();
            std::vector<std::size_t> in_i, in_j;
            for (const auto& q : so.primes) {
                std::size_t a = find_prime(spectra_[ov.i], pull_back(ov.from_i, q));
                std::size_t b = find_prime(spectra_[ov.j], pull_back(ov.from_j, q));
                if (a == npos || b == npos)
                    throw Error(ErrorCode::InconsistentGluing, "overlap prime does not pull back to a prime");
                in_i.push_back(a);
                in_j.push_back(b);
                uf.unite(offsets_[ov.i] + a, offsets_[ov.j] + b);
            }
            check_open(ov.i, in_i);
            check_open(ov.j, in_j);
            overlap_points_[o] = {in_i, in_j};
        }
        rep_.resize(total_);
        for (std::size_t g = 0; g < total_; ++g) rep_[g] = uf.find(g);
    }

    void check_open(std::size_t c, const std::vector<std::size_t>& pts) {
        PointSet s(pts.begin(), pts.end());
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw Error(ErrorCode::InconsistentGluing, "overlap does not embed into chart " + names_[c]);
        if (!spectra_[c].poset.is_open(s))
            throw Error(ErrorCode::InconsistentGluing, "overlap is not an open subset of chart " + names_[c]);
    }

    void build_points() {
        std::map<std::size_t, std::size_t> point_of_rep;
        global_.assign(total_, npos);
        for (std::size_t c = 0; c < charts_.size(); ++c)
            for (std::size_t l = 0; l < spectra_[c].primes.size(); ++l) {
                std::size_t g = offsets_[c] + l;
                auto [it, fresh] = point_of_rep.emplace(rep_[g], members_.size());
                if (fresh) members_.emplace_back();
                auto& mem = members_[it->second];
                for (const auto& [cc, ll] : mem)
                    if (cc == c)
                        throw Error(ErrorCode::InconsistentGluing,
                                    "points " + spectra_[c].poset.label(ll) + " and " + spectra_[c].poset.label(l) +
                                        " of chart " + names_[c] + " are identified");
                mem.emplace_back(c, l);
                global_[g] = it->second;
            }
    }

    FinitePoset build_order() {
        std::vector<std::pair<std::size_t, std::size_t>> rel;
        for (std::size_t c = 0; c < charts_.size(); ++c)
            for (const auto& [a, b] : spectra_[c].poset.covers())
                rel.emplace_back(global_[offsets_[c] + a], global_[offsets_[c] + b]);
        std::vector<std::string> labels;
        for (const auto& mem : members_) {
            auto [c, l] = mem.front();
            labels.push_back(names_[c] + spectra_[c].poset.label(l));
        }
        try {
            return FinitePoset(members_.size(), rel, labels);
        } catch (const Error&) {
            throw Error(ErrorCode::InconsistentGluing, "glued order is not antisymmetric");
        }
    }

    std::size_t local_of(std::size_t x, std::size_t c) const {
        for (const auto& [cc, l] : members_[x])
            if (cc == c) return l;
        return npos;
    }

    LocalStalk& local_stalk(std::size_t c, std::size_t l) {
        auto key = std::make_pair(c, l);
        auto it = stalk_cache_.find(key);
        if (it == stalk_cache_.end()) {
            Localization loc = localize(charts_[c], spectra_[c].primes[l]);
            auto m = std::make_shared<Monoid>(loc.presentation);
            it = stalk_cache_.emplace(key, LocalStalk{std::move(loc), std::move(m)}).first;
        }
        return it->second;
    }

    // Overlap stalk at the overlap prime sitting over point x.
    struct OverlapStalk {
        std::size_t overlap;
        Localization loc;
        std::shared_ptr<Monoid> monoid;
    };

    OverlapStalk overlap_stalk(std::size_t o, std::size_t x) {
        const Overlap& ov = overlaps_[o];
        const auto& [in_i, in_j] = overlap_points_[o];
        std::size_t li = local_of(x, ov.i);
        for (std::size_t k = 0; k < in_i.size(); ++k)
            if (in_i[k] == li) {
                Localization loc = localize(ov.monoid, overlap_spectra_[o].primes[k]);
                auto m = std::make_shared<Monoid>(loc.presentation);
                return OverlapStalk{o, std::move(loc), std::move(m)};
            }
        (void)in_j;
        throw Error(ErrorCode::InconsistentGluing, "point is not in the overlap");
    }

    // Stalk of chart c at x -> overlap stalk.
    MonoidHom alpha(std::size_t c, std::size_t x, const OverlapStalk& os) {
        const Overlap& ov = overlaps_[os.overlap];
        const MonoidHom& phi = c == ov.i ? ov.from_i : ov.from_j;
        const LocalStalk& ls = local_stalk(c, local_of(x, c));
        return compose(os.loc.to, compose(phi, ls.loc.from));
    }

    // Preimage of each overlap-stalk generator under alpha (an isomorphism).
    MonoidHom invert(const MonoidHom& a, const LocalStalk& source, const OverlapStalk& os) {
        const MonoidPresentation& sp = source.loc.presentation;
        Matrix m(a.target_size, a.source_size);
        for (std::size_t s = 0; s < a.source_size; ++s)
            for (std::size_t t = 0; t < a.target_size; ++t) m(t, s) = static_cast<long>(a.images[s][t]);
        IntegerSolver solver(m);
        std::vector<Exponents> ball;
        MonoidHom inv{a.target_size, a.source_size, {}};
        for (std::size_t b = 0; b < a.target_size; ++b) {
            Exponents goal = os.loc.presentation.generator(b);
            std::optional<Exponents> found;
            if (auto sol = solver.solve(to_vector(goal))) {
                Exponents e;
                for (const auto& v : *sol) e.push_back(v.get_si());
                if (sp.is_element(e) && os.monoid->equal(a.apply(e), goal)) found = e;
            }
            if (!found) {
                if (ball.empty()) ball = source.monoid->ball(6);
                for (const auto& e : ball)
                    if (os.monoid->equal(a.apply(e), goal)) {
                        found = e;
                        break;
                    }
            }
            if (!found) throw Error(ErrorCode::InconsistentGluing, "overlap map is not invertible on stalks");
            inv.images.push_back(*found);
        }
        return inv;
    }

    static Vector to_vector(const Exponents& e) {
        Vector v;
        for (auto x : e) v.emplace_back(static_cast<long>(x));
        return v;
    }

    std::optional<std::size_t> overlap_between(std::size_t a, std::size_t b) const {
        for (std::size_t o = 0; o < overlaps_.size(); ++o)
            if ((overlaps_[o].i == a && overlaps_[o].j == b) || (overlaps_[o].i == b && overlaps_[o].j == a)) return o;
        return std::nullopt;
    }

    // Chart `from` stalk at x -> chart `to` stalk at x.
    MonoidHom transport(std::size_t x, std::size_t from, std::size_t to) {
        if (from == to) return MonoidHom::identity(local_stalk(from, local_of(x, from)).loc.presentation.size());
        auto key = std::make_tuple(x, from, to);
        auto it = transport_cache_.find(key);
        if (it != transport_cache_.end()) return it->second;
        auto o = overlap_between(from, to);
        if (!o)
            throw Error(ErrorCode::InconsistentGluing,
                        "charts " + names_[from] + " and " + names_[to] + " share a point but no overlap was given");
        OverlapStalk os = overlap_stalk(*o, x);
        MonoidHom a_from = alpha(from, x, os);
        MonoidHom a_to = alpha(to, x, os);
        MonoidHom t = compose(invert(a_to, local_stalk(to, local_of(x, to)), os), a_from);
        const Monoid& target = *local_stalk(to, local_of(x, to)).monoid;
        for (auto& img : t.images) img = target.nf(img);
        transport_cache_.emplace(key, t);
        return t;
    }

    void check_cocycles() {
        for (std::size_t x = 0; x < members_.size(); ++x) {
            const auto& mem = members_[x];
            for (std::size_t a = 0; a < mem.size(); ++a)
                for (std::size_t b = 0; b < mem.size(); ++b)
                    for (std::size_t c = 0; c < mem.size(); ++c) {
                        std::size_t i = mem[a].first, j = mem[b].first, k = mem[c].first;
                        if (i >= j || j >= k) continue;
                        if (!overlap_between(i, j) || !overlap_between(j, k) || !overlap_between(i, k)) continue;
                        MonoidHom direct = transport(x, k, i);
                        MonoidHom via = compose(transport(x, j, i), transport(x, k, j));
                        if (!homs_agree(*local_stalk(i, mem[a].second).monoid, direct, via))
                            throw Error(ErrorCode::InconsistentGluing,
                                        "transition maps of " + names_[i] + ", " + names_[j] + ", " + names_[k] +
                                            " disagree at " + names_[mem[a].first] +
                                            spectra_[i].poset.label(mem[a].second));
                    }
        }
    }

    const std::vector<MonoidPresentation>& charts_;
    const std::vector<Overlap>& overlaps_;
    std::vector<std::string> names_;
    std::vector<Spectrum> spectra_;
    std::vector<Spectrum> overlap_spectra_;
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> overlap_points_;
    std::vector<std::size_t> offsets_;
    std::size_t total_ = 0;
    std::vector<std::size_t> rep_;
    std::vector<std::size_t> global_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> members_;
    std::map<std::pair<std::size_t, std::size_t>, LocalStalk> stalk_cache_;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, MonoidHom> transport_cache_;
};

} // namespace

Scheme glue(const std::vector<MonoidPresentation>& charts, const std::vector<Overlap>& overlaps,
            std::vector<std::string> chart_names) {
    if (charts.empty()) throw Error(ErrorCode::InvalidArgument, "no charts to glue");
    return Gluer(charts, overlaps, std::move(chart_names)).run();
}

Scheme product(const Scheme& x, const Scheme& y) {
    FinitePoset space = product_poset(x.space(), y.space());
    std::size_t m = y.size();
    std::vector<MonoidPresentation> stalks;
    for (std::size_t p = 0; p < space.size(); ++p) stalks.push_back(product_monoid(x.stalk(p / m), y.stalk(p % m)));
    std::map<std::pair<std::size_t, std::size_t>, MonoidHom> cov;
    for (const auto& [lo, hi] : space.covers())
        cov.emplace(std::make_pair(lo, hi), block_diagonal(x.costalk(hi / m, lo / m), y.costalk(hi % m, lo % m)));
    return Scheme(space, stalks, cov);
}

Scheme projective_space(std::size_t n) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "projective space needs n >= 1");
    auto var = [](std::size_t k, std::size_t i) { return "x" + std::to_string(k) + "/x" + std::to_string(i); };
    // position of x_k/x_i among chart i's generators
    auto slot = [](std::size_t k, std::size_t i) { return k < i ? k : k - 1; };
    std::vector<MonoidPresentation> charts;
    for (std::size_t i = 0; i <= n; ++i) {
        std::vector<std::string> names;
        for (std::size_t k = 0; k <= n; ++k)
            if (k != i) names.push_back(var(k, i));
        charts.push_back(MonoidPresentation::free(names));
    }
    std::vector<Overlap> overlaps;
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) {
            Overlap ov;
            ov.i = i;
            ov.j = j;
            ov.monoid = charts[i];
            ov.monoid.set_inverted(slot(j, i));
            ov.from_i = MonoidHom::identity(n);
            ov.from_j = MonoidHom{n, n, {}};
            for (std::size_t k = 0; k <= n; ++k) {
                if (k == j) continue;
                Exponents e(n, 0);
                e[slot(j, i)] = -1;  // x_k/x_j = (x_k/x_i) (x_j/x_i)^-1
                if (k != i) e[slot(k, i)] += 1;
                ov.from_j.images.push_back(e);
            }
            overlaps.push_back(ov);
        }
    return glue(charts, overlaps);
}

// ------------------------------------------------------------------- units

UnitsSheaf units_sheaf_data(const Scheme& x, std::size_t search_bound) {
    UnitsSheaf out;
    std::vector<AbGroup> st;
    for (std::size_t p = 0; p < x.size(); ++p) {
        out.units.push_back(units(x.stalk_monoid(p), search_bound));
        st.push_back(out.units.back().group);
    }
    std::map<std::pair<std::size_t, std::size_t>, AbMap> cov;
    for (const auto& [lo, hi] : x.space().covers())
        cov.emplace(std::make_pair(lo, hi), unit_map(out.units[hi], out.units[lo], x.costalk(hi, lo)));
    out.sheaf = AbSheaf(x.space(), st, cov);
    return out;
}

AbSheaf units_sheaf(const Scheme& x, std::size_t search_bound) { return units_sheaf_data(x, search_bound).sheaf; }

SchemeVerdict is_cancellative_scheme(const Scheme& x, std::size_t bound) {
    SchemeVerdict v;
    v.bound = bound;
    for (std::size_t p = 0; p < x.size(); ++p) {
        auto r = is_cancellative(x.stalk_monoid(p), bound);
        if (r.verified) continue;
        v.holds = false;
        v.point = p;
        v.detail = r.counterexample ? "stalk at " + x.space().label(p) + " is not cancellative"
                                    : "cancellativity of the stalk at " + x.space().label(p) + " is not verified";
        return v;
    }
    return v;
}

SchemeVerdict is_s_cancellative_scheme(const Scheme& x) {
    SchemeVerdict v;
    AbSheaf u = units_sheaf(x);
    for (const auto& [lo, hi] : x.space().covers()) {
        if (is_injective(u.restriction(hi, lo))) continue;
        v.holds = false;
        v.point = hi;
        v.detail = "units at " + x.space().label(hi) + " do not inject into units at " + x.space().label(lo);
        return v;
    }
    return v;
}

SchemeVerdict is_smooth_scheme(const Scheme& x, std::size_t bound) {
    SchemeVerdict v;
    v.bound = bound;
    for (auto c : x.charts()) {
        auto r = is_smooth_monoid(x.stalk_monoid(c), bound);
        if (r.smooth) continue;
        v.holds = false;
        v.point = c;
        v.detail = "chart at " + x.space().label(c) + ": " + r.reason;
        return v;
    }
    return v;
}

SchemeVerdict is_torsion_free_scheme(const Scheme& x, std::size_t bound) {
    SchemeVerdict v;
    v.bound = bound;
    for (auto c : x.charts()) {
        if (is_torsion_free(x.stalk_monoid(c), bound)) continue;
        v.holds = false;
        v.point = c;
        v.detail = "chart at " + x.space().label(c) + " has torsion in its group of fractions";
        return v;
    }
    return v;
}

} // namespace msch
