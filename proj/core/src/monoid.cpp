#include "msch/monoid.hpp"

#include "msch/error.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace msch {

Monoid::Monoid(MonoidPresentation p, CompletionOptions options)
    : presentation_(std::make_shared<const MonoidPresentation>(std::move(p))),
      rewriting_(std::make_shared<const RewriteSystem>(RewriteSystem::complete(*presentation_, options))) {}

std::vector<Exponents> Monoid::ball(std::size_t degree) const {
    std::vector<Exponents> letters;
    for (std::size_t i = 0; i < size(); ++i) {
        letters.push_back(presentation_->generator(i));
        if (presentation_->inverted(i)) letters.push_back(exp_scale(presentation_->generator(i), -1));
    }
    std::set<Exponents> seen{nf(one())};
    std::vector<Exponents> layer{nf(one())};
    for (std::size_t d = 0; d < degree; ++d) {
        std::vector<Exponents> next;
        for (const auto& w : layer)
            for (const auto& l : letters) {
                Exponents x = nf(exp_add(w, l));
                if (seen.insert(x).second) next.push_back(std::move(x));
            }
        layer = std::move(next);
    }
    std::vector<Exponents> out(seen.begin(), seen.end());
    const RewriteSystem& rs = *rewriting_;
    std::sort(out.begin(), out.end(), [&rs](const Exponents& a, const Exponents& b) {
        return term_compare(rs.extend(a), rs.extend(b)) < 0;
    });
    return out;
}

// ---------------------------------------------------------------- primes

bool Prime::contains(const Exponents& element) const {
    for (std::size_t i = 0; i < in.size(); ++i)
        if (in[i] && element[i] > 0) return true;
    return false;
}

std::size_t Prime::size() const { return static_cast<std::size_t>(std::count(in.begin(), in.end(), 1)); }

bool Prime::subset_of(const Prime& other) const {
    for (std::size_t i = 0; i < in.size(); ++i)
        if (in[i] && !other.in[i]) return false;
    return true;
}

std::string prime_name(const MonoidPresentation& p, const Prime& q) {
    std::string out = "(";
    bool first = true;
    for (std::size_t i = 0; i < q.in.size(); ++i)
        if (q.in[i]) {
            if (!first) out += ",";
            out += p.name(i);
            first = false;
        }
    return out + ")";
}

namespace {

bool respects_relations(const MonoidPresentation& p, const Prime& q) {
    for (const auto& r : p.relations())
        if (q.contains(r.lhs) != q.contains(r.rhs)) return false;
    return true;
}

std::vector<std::size_t> members(const Prime& q) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < q.in.size(); ++i)
        if (q.in[i]) out.push_back(i);
    return out;
}

} // namespace

Spectrum spectrum(const MonoidPresentation& p) {
    std::vector<std::size_t> free_slots;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!p.inverted(i)) free_slots.push_back(i);
    if (free_slots.size() > 24) throw Error(ErrorCode::InvalidArgument, "too many generators for prime enumeration");
    Spectrum s;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_slots.size()); ++mask) {
        Prime q{std::vector<char>(p.size(), 0)};
        for (std::size_t k = 0; k < free_slots.size(); ++k)
            if (mask >> k & 1U) q.in[free_slots[k]] = 1;
        if (respects_relations(p, q)) s.primes.push_back(q);
    }
    std::sort(s.primes.begin(), s.primes.end(), [](const Prime& a, const Prime& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return members(a) < members(b);
    });
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < s.primes.size(); ++i) {
        labels.push_back(prime_name(p, s.primes[i]));
        for (std::size_t j = 0; j < s.primes.size(); ++j)
            if (i != j && s.primes[i].subset_of(s.primes[j])) rel.emplace_back(i, j);
    }
    s.poset = FinitePoset(s.primes.size(), rel, labels);
    return s;
}

Prime maximal_prime(const MonoidPresentation& p) {
    Prime out{std::vector<char>(p.size(), 0)};
    for (const auto& q : spectrum(p).primes)
        for (std::size_t i = 0; i < p.size(); ++i)
            if (q.in[i]) out.in[i] = 1;
    return out;
}

// ------------------------------------------------------------ localization

namespace {

void canonicalize(MonoidRelation& r, const std::vector<char>& inv) {
    for (std::size_t g = 0; g < r.lhs.size(); ++g) {
        if (!inv[g]) continue;
        Exponent d = r.lhs[g] - r.rhs[g];
        r.lhs[g] = d > 0 ? d : 0;
        r.rhs[g] = d > 0 ? 0 : -d;
    }
}

void substitute(Exponents& side, std::size_t j, const Exponents& w) {
    Exponent e = side[j];
    if (e == 0) return;
    for (std::size_t i = 0; i < side.size(); ++i) side[i] += e * w[i];
    side[j] = 0;
}

} // namespace

Localization localize_generators(const MonoidPresentation& p, const std::vector<char>& invert) {
    std::size_t n = p.size();
    std::vector<char> inv(n), alive(n, 1);
    for (std::size_t i = 0; i < n; ++i) inv[i] = p.inverted(i) || invert[i];
    std::vector<MonoidRelation> rels = p.relations();
    std::vector<Exponents> images;
    for (std::size_t i = 0; i < n; ++i) images.push_back(p.generator(i));

    for (;;) {
        std::vector<MonoidRelation> kept;
        for (auto r : rels) {
            canonicalize(r, inv);
            if (r.lhs == r.rhs) continue;
            MonoidRelation swapped{r.rhs, r.lhs};
            if (std::find(kept.begin(), kept.end(), r) != kept.end() ||
                std::find(kept.begin(), kept.end(), swapped) != kept.end())
                continue;
            kept.push_back(std::move(r));
        }
        rels = std::move(kept);

        bool eliminated = false;
        for (std::size_t k = 0; k < rels.size() && !eliminated; ++k) {
            Exponents v = exp_sub(rels[k].lhs, rels[k].rhs);
            bool pure = true;
            for (std::size_t i = 0; i < n; ++i)
                if ((rels[k].lhs[i] != 0 || rels[k].rhs[i] != 0) && !inv[i]) pure = false;
            if (!pure) continue;
            for (std::size_t j = n; j-- > 0;) {
                if (v[j] != 1 && v[j] != -1) continue;
                Exponents w = exp_scale(v, -v[j]);
                w[j] += 1;
                for (std::size_t r = 0; r < rels.size(); ++r) {
                    if (r == k) continue;
                    substitute(rels[r].lhs, j, w);
                    substitute(rels[r].rhs, j, w);
                }
                for (auto& img : images) substitute(img, j, w);
                rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(k));
                alive[j] = 0;
                eliminated = true;
                break;
            }
        }
        if (!eliminated) break;
    }

    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i)
        if (alive[i]) keep.push_back(i);
    auto compress = [&keep](const Exponents& e) {
        Exponents out;
        for (auto i : keep) out.push_back(e[i]);
        return out;
    };
    std::vector<std::string> names;
    std::vector<bool> flags;
    for (auto i : keep) {
        names.push_back(p.name(i));
        flags.push_back(inv[i] != 0);
    }
    Localization loc;
    loc.presentation = MonoidPresentation(names, flags);
    for (const auto& r : rels) loc.presentation.add_relation(compress(r.lhs), compress(r.rhs));
    loc.to = MonoidHom{n, keep.size(), {}};
    for (const auto& img : images) loc.to.images.push_back(compress(img));
    loc.from = MonoidHom{keep.size(), n, {}};
    for (auto i : keep) loc.from.images.push_back(p.generator(i));
    return loc;
}

Localization localize(const MonoidPresentation& p, const Prime& at) {
    std::vector<char> invert(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) invert[i] = !at.in[i];
    return localize_generators(p, invert);
}

// ------------------------------------------------------------------- units

Vector UnitGroup::coordinates(const Exponents& element) const {
    Vector out(generators.size());
    std::vector<char> is_unit(element.size(), 0);
    for (std::size_t k = 0; k < generators.size(); ++k) {
        out[k] = static_cast<long>(element[generators[k]]);
        is_unit[generators[k]] = 1;
    }
    for (std::size_t i = 0; i < element.size(); ++i)
        if (!is_unit[i] && element[i] != 0)
            throw Error(ErrorCode::InvalidArgument, "element involves a non-unit generator");
    return out;
}

namespace {

// Words over the given generators (and their inverse letters when inverted), normalized.
std::vector<Exponents> sub_ball(const Monoid& m, const std::vector<std::size_t>& gens, std::size_t degree) {
    const auto& p = m.presentation();
    std::vector<Exponents> letters;
    for (auto i : gens) {
        letters.push_back(p.generator(i));
        if (p.inverted(i)) letters.push_back(exp_scale(p.generator(i), -1));
    }
    std::set<Exponents> seen{m.one()};
    std::vector<Exponents> layer{m.one()};
    for (std::size_t d = 0; d < degree; ++d) {
        std::vector<Exponents> next;
        for (const auto& w : layer)
            for (const auto& l : letters) {
                Exponents x = m.nf(exp_add(w, l));
                if (seen.insert(x).second) next.push_back(std::move(x));
            }
        layer = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

std::optional<Exponents> realize(const UnitGroup& u, std::size_t n, const Vector& coords) {
    Exponents e(n, 0);
    for (std::size_t k = 0; k < u.generators.size(); ++k) {
        long c = coords[k].get_si();
        if (c >= 0) {
            e[u.generators[k]] += c;
        } else if (u.inverses[k]) {
            for (std::size_t i = 0; i < n; ++i) e[i] += (-c) * (*u.inverses[k])[i];
        } else {
            return std::nullopt;
        }
    }
    return e;
}

} // namespace

UnitGroup units(const Monoid& m, std::size_t search_bound) {
    const auto& p = m.presentation();
    Prime maxp = maximal_prime(p);
    UnitGroup out;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!maxp.in[i]) out.generators.push_back(i);

    MonoidPresentation q = p;
    bool changed = false;
    for (auto i : out.generators)
        if (!q.inverted(i)) {
            q.set_inverted(i);
            changed = true;
        }
    std::shared_ptr<const Monoid> completed;
    try {
        completed = changed ? std::make_shared<const Monoid>(q) : std::make_shared<const Monoid>(m);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::CompletionExceededBound) throw;
        throw Error(ErrorCode::UnitsInconclusive, e.what());
    }
    const RewriteSystem& rs = completed->rewriting();
    std::vector<char> unit_letter(rs.alphabet_size(), 0);
    for (auto i : out.generators) {
        unit_letter[i] = 1;
        if (rs.inverse_letter(i) != RewriteSystem::npos) unit_letter[rs.inverse_letter(i)] = 1;
    }
    std::vector<Vector> rows;
    for (const auto& rule : rs.rules()) {
        bool inside = true;
        for (std::size_t l = 0; l < rule.lhs.size(); ++l)
            if (rule.lhs[l] > 0 && !unit_letter[l]) inside = false;
        if (!inside) continue;
        Exponents d = exp_sub(rs.net(rule.lhs), rs.net(rule.rhs));
        Vector row;
        for (auto i : out.generators) row.emplace_back(static_cast<long>(d[i]));
        if (!vector_is_zero(row)) rows.push_back(row);
    }
    out.group = AbGroup(out.generators.size(), Matrix::from_rows(out.generators.size(), rows));

    std::vector<Exponents> candidates;
    bool searched = false;
    for (auto i : out.generators) {
        if (p.inverted(i)) {
            out.inverses.push_back(exp_scale(p.generator(i), -1));
            continue;
        }
        if (!searched) {
            candidates = sub_ball(m, out.generators, search_bound);
            searched = true;
        }
        std::optional<Exponents> found;
        for (const auto& w : candidates)
            if (m.nf(exp_add(p.generator(i), w)) == m.one()) {
                found = w;
                break;
            }
        out.inverses.push_back(found);
    }

    std::size_t dim = out.group.canonical_dimension();
    for (std::size_t c = 0; c < dim; ++c) {
        Vector coords = out.group.from_canonical(unit_vector(dim, c));
        auto u = realize(out, p.size(), coords);
        auto v = realize(out, p.size(), vector_scale(coords, -1));
        if (u && v && m.nf(exp_add(*u, *v)) == m.one())
            out.certificates.emplace_back(std::make_pair(m.nf(*u), m.nf(*v)));
        else
            out.certificates.emplace_back(std::nullopt);
    }
    return out;
}

Vector GrothendieckGroup::image(const Exponents& e) const {
    Vector v;
    for (auto x : e) v.emplace_back(static_cast<long>(x));
    return v;
}

GrothendieckGroup grothendieck_group(const MonoidPresentation& p) {
    std::vector<Vector> rows;
    for (const auto& r : p.relations()) {
        Vector row;
        for (std::size_t i = 0; i < p.size(); ++i) row.emplace_back(static_cast<long>(r.lhs[i] - r.rhs[i]));
        if (!vector_is_zero(row)) rows.push_back(row);
    }
    return GrothendieckGroup{AbGroup(p.size(), Matrix::from_rows(p.size(), rows))};
}

AbMap unit_map(const UnitGroup& source, const UnitGroup& target, const MonoidHom& h) {
    Matrix m(target.generators.size(), source.generators.size());
    for (std::size_t k = 0; k < source.generators.size(); ++k) {
        Vector col = target.coordinates(h.images[source.generators[k]]);
        m.set_column(k, col);
    }
    return AbMap(source.group, target.group, m);
}

// -------------------------------------------------------------- predicates

std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

std::vector<char> support(const Exponents& x, const Exponents& y) {
    std::vector<char> s(x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = (x[i] != 0 || y[i] != 0);
    return s;
}

// Memoized completions of M with extra generators inverted.
class LocalizedCache {
  public:
    explicit LocalizedCache(const MonoidPresentation& p) : p_(p) {}

    const Monoid& get(const std::vector<char>& invert) {
        auto it = cache_.find(invert);
        if (it != cache_.end()) return *it->second;
        MonoidPresentation q = p_;
        for (std::size_t i = 0; i < q.size(); ++i)
            if (invert[i]) q.set_inverted(i);
        auto ins = cache_.emplace(invert, std::make_unique<Monoid>(q));
        return *ins.first->second;
    }

  private:
    const MonoidPresentation& p_;
    std::map<std::vector<char>, std::unique_ptr<Monoid>> cache_;
};

// Calls visit(a, x, y) for each a in the ball and each pair x < y of ball
// elements with a x = a y, in ball order. visit returns false to stop.
template <class Visit>
void for_each_collision(const Monoid& m, const std::vector<Exponents>& ball, Visit visit) {
    for (const auto& a : ball) {
        std::map<Exponents, std::vector<std::size_t>> images;
        for (std::size_t i = 0; i < ball.size(); ++i) {
            auto& bucket = images[m.nf(exp_add(a, ball[i]))];
            for (auto j : bucket)
                if (!visit(a, ball[j], ball[i])) return;
            bucket.push_back(i);
        }
    }
}

std::optional<std::size_t> find_power(const Monoid& m, const Exponents& x, const Exponents& y, std::size_t bound) {
    Exponents xy = exp_add(x, y);
    for (std::size_t n = 0; n <= bound; ++n) {
        Exponents t = exp_scale(xy, static_cast<Exponent>(n));
        if (m.nf(exp_add(t, x)) == m.nf(exp_add(t, y))) return n;
    }
    return std::nullopt;
}

} // namespace

bool equal_after_inverting(const MonoidPresentation& p, const std::vector<char>& invert, const Exponents& x,
                           const Exponents& y) {
    MonoidPresentation q = p;
    for (std::size_t i = 0; i < q.size(); ++i)
        if (invert[i]) q.set_inverted(i);
    Monoid m(q);
    return m.equal(x, y);
}

CancellativeResult is_cancellative(const Monoid& m, std::size_t bound) {
    CancellativeResult res;
    res.bound = bound;
    auto ball = m.ball(bound);
    const auto& p = m.presentation();
    for (std::size_t g = 0; g < p.size(); ++g) {
        Exponents a = p.generator(g);
        std::map<Exponents, std::size_t> first;
        for (std::size_t i = 0; i < ball.size(); ++i) {
            auto [it, inserted] = first.emplace(m.nf(exp_add(a, ball[i])), i);
            if (!inserted) {
                res.counterexample = std::array<Exponents, 3>{ball[it->second], ball[i], a};
                return res;
            }
        }
    }
    auto g = grothendieck_group(p);
    std::map<Vector, std::size_t> classes;
    for (std::size_t i = 0; i < ball.size(); ++i) {
        auto [it, inserted] = classes.emplace(g.group.canonical(g.image(ball[i])), i);
        if (inserted) continue;
        // x and y agree in G, so some a has a x = a y; look for it further out.
        const Exponents& x = ball[it->second];
        const Exponents& y = ball[i];
        for (const auto& a : m.ball(2 * bound))
            if (m.equal(exp_add(a, x), exp_add(a, y))) {
                res.counterexample = std::array<Exponents, 3>{x, y, a};
                break;
            }
        return res;
    }
    res.verified = true;
    return res;
}

namespace {

struct LocalStalk {
    Prime prime;
    Localization loc;
    std::unique_ptr<Monoid> monoid;
    UnitGroup units;
};

std::vector<LocalStalk> local_stalks(const Spectrum& s, const MonoidPresentation& p, std::size_t search_bound) {
    std::vector<LocalStalk> out;
    for (const auto& q : s.primes) {
        LocalStalk st{q, localize(p, q), nullptr, {}};
        try {
            st.monoid = std::make_unique<Monoid>(st.loc.presentation);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::CompletionExceededBound) throw;
            throw Error(ErrorCode::UnitsInconclusive, e.what());
        }
        st.units = units(*st.monoid, search_bound);
        out.push_back(std::move(st));
    }
    return out;
}

} // namespace

SCancellativeResult is_s_cancellative(const Monoid& m, std::size_t search_bound) {
    const auto& p = m.presentation();
    Spectrum s = spectrum(p);
    auto stalks = local_stalks(s, p, search_bound);
    SCancellativeResult res;
    for (auto [qi, pi] : s.poset.covers()) {
        const auto& sp = stalks[pi];
        const auto& sq = stalks[qi];
        MonoidHom h = compose(sq.loc.to, sp.loc.from);
        AbMap f = unit_map(sp.units, sq.units, h);
        Subgroup k = kernel(f);
        if (k.group.is_trivial()) continue;
        res.s_cancellative = false;
        res.pair = std::make_pair(sq.prime, sp.prime);
        Vector v = k.inclusion.matrix().column(0);
        Exponents e(sp.loc.presentation.size(), 0);
        for (std::size_t j = 0; j < sp.units.generators.size(); ++j) e[sp.units.generators[j]] = v[j].get_si();
        res.kernel_element = e;
        res.detail = "unit map from " + prime_name(p, sp.prime) + " to " + prime_name(p, sq.prime) +
                     " kills " + render_word(sp.loc.presentation, e);
        return res;
    }
    return res;
}

TripleVerdict s_cancellative_by_definition(const Monoid& m, std::size_t bound) {
    TripleVerdict res;
    res.bound = bound;
    LocalizedCache cache(m.presentation());
    auto ball = m.ball(bound);
    try {
        for_each_collision(m, ball, [&](const Exponents& a, const Exponents& x, const Exponents& y) {
            if (auto n = find_power(m, x, y, bound)) {
                res.exponent = std::max(res.exponent.value_or(0), *n);
                return true;
            }
            if (cache.get(support(x, y)).equal(x, y)) return true;
            res.verdict = Verdict::False;
            res.triple = std::array<Exponents, 3>{a, x, y};
            return false;
        });
    } catch (const Error& e) {
        if (e.code() != ErrorCode::CompletionExceededBound) throw;
        res.verdict = Verdict::Inconclusive;
    }
    return res;
}

TripleVerdict s_cancellative_by_pxy(const Monoid& m, std::size_t bound) {
    TripleVerdict res;
    res.bound = bound;
    const auto& p = m.presentation();
    Spectrum s = spectrum(p);
    LocalizedCache cache(p);
    auto ball = m.ball(bound);
    try {
        for_each_collision(m, ball, [&](const Exponents& a, const Exponents& x, const Exponents& y) {
            Exponents c = exp_add(x, y);
            std::vector<char> pxy(p.size(), 0);
            for (const auto& q : s.primes)
                if (!q.contains(c))
                    for (std::size_t i = 0; i < p.size(); ++i) pxy[i] = pxy[i] || q.in[i];
            std::vector<char> invert(p.size());
            for (std::size_t i = 0; i < p.size(); ++i) invert[i] = !pxy[i];
            if (cache.get(invert).equal(x, y)) return true;
            res.verdict = Verdict::False;
            res.triple = std::array<Exponents, 3>{a, x, y};
            return false;
        });
    } catch (const Error& e) {
        if (e.code() != ErrorCode::CompletionExceededBound) throw;
        res.verdict = Verdict::Inconclusive;
    }
    return res;
}

SRegularResult is_s_regular(const Monoid& m, const Exponents& a, std::size_t bound) {
    SRegularResult res;
    res.bound = bound;
    LocalizedCache cache(m.presentation());
    auto ball = m.ball(bound);
    try {
        for (std::size_t k = 1; k <= bound; ++k) {
            Exponents ak = exp_scale(a, static_cast<Exponent>(k));
            std::map<Exponents, std::vector<std::size_t>> images;
            for (std::size_t i = 0; i < ball.size(); ++i) {
                auto& bucket = images[m.nf(exp_add(ak, ball[i]))];
                for (auto j : bucket) {
                    const Exponents& u = ball[j];
                    const Exponents& v = ball[i];
                    if (find_power(m, u, v, bound)) continue;
                    if (cache.get(support(u, v)).equal(u, v)) continue;
                    res.verdict = Verdict::False;
                    res.u = u;
                    res.v = v;
                    res.m = k;
                    res.note = "u and v stay distinct after inverting u v";
                    return res;
                }
                bucket.push_back(i);
            }
        }
    } catch (const Error& e) {
        if (e.code() != ErrorCode::CompletionExceededBound) throw;
        res.verdict = Verdict::Inconclusive;
        res.note = e.what();
    }
    return res;
}

PcResult p_c(const Monoid& m, const Exponents& c, std::size_t bound) {
    const auto& p = m.presentation();
    Spectrum s = spectrum(p);
    PcResult res;
    res.prime.in.assign(p.size(), 0);
    for (const auto& q : s.primes)
        if (!q.contains(c))
            for (std::size_t i = 0; i < p.size(); ++i) res.prime.in[i] = res.prime.in[i] || q.in[i];
    std::map<Exponents, std::size_t> powers;
    for (std::size_t n = 1; n <= bound; ++n) powers.emplace(m.power(c, static_cast<Exponent>(n)), n);
    auto ball = m.ball(bound);
    for (std::size_t b = 0; b < p.size(); ++b) {
        if (res.prime.in[b]) continue;
        bool found = false;
        for (const auto& t : ball) {
            auto it = powers.find(m.nf(exp_add(p.generator(b), t)));
            if (it == powers.end()) continue;
            res.certificates.emplace_back(b, it->second, t);
            found = true;
            break;
        }
        if (!found) res.unverified.push_back(b);
    }
    return res;
}

bool is_torsion_free(const Monoid& m, std::size_t bound) {
    if (!is_cancellative(m, bound).verified)
        throw Error(ErrorCode::RequiresCancellative, "torsion-freeness is decided through the group of fractions");
    return grothendieck_group(m.presentation()).group.is_free();
}

SmoothResult is_smooth_monoid(const Monoid& m, std::size_t bound) {
    SmoothResult res;
    const auto& p = m.presentation();
    if (!is_cancellative(m, bound).verified) {
        res.reason = "not cancellative";
        return res;
    }
    auto g = grothendieck_group(p);
    if (!g.group.is_free()) {
        res.reason = "group of fractions has torsion";
        return res;
    }
    auto u = units(m, bound);
    Matrix incl(p.size(), u.generators.size());
    for (std::size_t k = 0; k < u.generators.size(); ++k) incl(u.generators[k], k) = 1;
    Quotient q = cokernel(AbMap(u.group, g.group, incl));
    if (!q.group.is_free()) {
        res.reason = "units do not split off";
        return res;
    }
    std::vector<char> is_unit(p.size(), 0);
    for (auto i : u.generators) is_unit[i] = 1;
    auto image_q = [&](const Exponents& e) { return q.group.canonical(q.projection.apply(g.image(e))); };

    std::vector<Vector> atoms;
    std::set<Vector> seen;
    std::set<Vector> nonunit_images;
    for (const auto& x : m.ball(bound)) {
        bool unit = true;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (x[i] > 0 && !is_unit[i]) unit = false;
        if (!unit) nonunit_images.insert(image_q(x));
    }
    std::vector<Vector> candidates;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!is_unit[i]) {
            Vector v = image_q(p.generator(i));
            if (seen.insert(v).second) candidates.push_back(v);
        }
    for (const auto& v : candidates) {
        bool decomposable = false;
        for (const auto& h : candidates) {
            if (h == v) continue;
            Vector rest = q.group.canonical(vector_sub(v, h));
            if (nonunit_images.count(rest)) decomposable = true;
        }
        if (!decomposable) atoms.push_back(v);
    }
    std::size_t dim = q.group.canonical_dimension();
    Matrix a = Matrix::from_columns(dim, atoms);
    std::size_t rank = atoms.empty() ? 0 : smith_normal_form(a, SmithOptions{false, false, false}).rank;
    if (rank != atoms.size() || atoms.size() != q.group.rank()) {
        res.reason = "irreducible non-units are not a basis of M/M*";
        return res;
    }
    res.smooth = true;
    res.free_rank = atoms.size();
    res.unit_rank = u.group.rank();
    return res;
}

SeminormalResult is_seminormal(const Monoid& m, std::size_t bound) {
    if (!is_cancellative(m, bound).verified)
        throw Error(ErrorCode::RequiresCancellative, "seminormality is tested inside the group of fractions");
    SeminormalResult res;
    res.bound = bound;
    auto g = grothendieck_group(m.presentation());
    auto ball = m.ball(bound);
    auto wide = m.ball(2 * bound);
    if (wide.size() > 200000)
        throw Error(ErrorCode::MembershipBoundExceeded, "membership ball too large at bound " + std::to_string(bound));
    std::set<Vector> members;
    for (const auto& x : wide) members.insert(g.group.canonical(g.image(x)));
    std::vector<Vector> img;
    for (const auto& x : ball) img.push_back(g.image(x));
    for (std::size_t i = 0; i < ball.size(); ++i)
        for (std::size_t j = 0; j < ball.size(); ++j) {
            // x = m3 - m2 satisfies 2x = m2 and 3x = m3 exactly when 3 m2 = 2 m3
            if (!g.group.is_zero_element(vector_sub(vector_scale(img[i], 3), vector_scale(img[j], 2)))) continue;
            Vector x = vector_sub(img[j], img[i]);
            if (members.count(g.group.canonical(x))) continue;
            res.seminormal = false;
            res.witness = x;
            res.squares = std::make_pair(ball[i], ball[j]);
            return res;
        }
    return res;
}

} // namespace msch
