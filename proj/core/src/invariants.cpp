#include "msch/invariants.hpp"

#include "msch/error.hpp"

#include <sstream>

namespace msch {

AbGroup pic(const Scheme& x) { return unit_cohomology(x, 1); }

// The cover complex is far smaller than the order complex on products.
AbGroup unit_cohomology(const Scheme& x, std::size_t degree) {
    AbSheaf u = units_sheaf(x);
    if (x.separation().separated) return cohomology(reduced_cech(u).complex, degree);
    return sheaf_cohomology(u, degree);
}

QuotientSheaf s_quotient_sheaf_data(const Scheme& x) {
    QuotientSheaf q;
    q.units = units_sheaf_data(x);
    const AbSheaf& u = q.units.sheaf;
    const FinitePoset& p = x.space();
    for (const auto& [lo, hi] : p.covers())
        if (!is_injective(u.restriction(hi, lo)))
            throw Error(ErrorCode::NotSCancellative, "units at " + p.label(hi) + " do not inject into units at " +
                                                         p.label(lo));
    q.component_of.assign(p.size(), 0);
    auto comps = p.components();
    for (std::size_t c = 0; c < comps.size(); ++c) {
        std::optional<std::size_t> least;
        for (auto z : comps[c]) {
            bool below_all = true;
            for (auto w : comps[c])
                if (!p.leq(z, w)) below_all = false;
            if (below_all) least = z;
        }
        if (!least) throw Error(ErrorCode::NotSeparated, "a connected component has no generic point");
        q.generic_points.push_back(*least);
        for (auto z : comps[c]) q.component_of[z] = c;
    }
    std::vector<AbGroup> st;
    std::vector<Matrix> lifts;
    for (std::size_t z = 0; z < p.size(); ++z) {
        std::size_t g = q.generic_points[q.component_of[z]];
        Quotient c = cokernel(u.restriction(z, g));
        st.push_back(c.group);
        q.projections.push_back(c.projection);
        lifts.push_back(c.lift);
    }
    std::map<std::pair<std::size_t, std::size_t>, AbMap> cov;
    for (const auto& [lo, hi] : p.covers())
        cov.emplace(std::make_pair(lo, hi), AbMap(st[hi], st[lo], q.projections[lo].matrix() * lifts[hi]));
    q.sheaf = AbSheaf(p, st, cov);
    return q;
}

AbSheaf s_quotient_sheaf(const Scheme& x) { return s_quotient_sheaf_data(x).sheaf; }

ClassGroup s_class_group(const Scheme& x) {
    if (!x.separation().separated) throw Error(ErrorCode::NotSeparated, "class groups need a separated scheme");
    QuotientSheaf q = s_quotient_sheaf_data(x);
    PointSet all(x.size());
    for (std::size_t z = 0; z < x.size(); ++z) all[z] = z;
    Sections div = sections(q.sheaf, all);

    std::vector<AbGroup> gs;
    for (auto g : q.generic_points) gs.push_back(q.units.sheaf.stalk(g));
    DirectSum gsum = direct_sum(gs);
    // G -> product of Q_x, one block per point
    const Matrix& inc = div.inclusion.matrix();
    Matrix into(inc.rows(), gsum.group.generator_count());
    std::size_t row = 0;
    for (std::size_t z = 0; z < x.size(); ++z) {
        const Matrix& pr = q.projections[z].matrix();
        std::size_t col0 = gsum.offsets[q.component_of[z]];
        for (std::size_t r = 0; r < pr.rows(); ++r)
            for (std::size_t c = 0; c < pr.cols(); ++c) into(row + r, col0 + c) = pr(r, c);
        row += pr.rows();
    }
    auto principal = factor_through(AbMap(gsum.group, div.inclusion.target(), into), div.inclusion);
    if (!principal) throw Error(ErrorCode::InvalidArgument, "principal divisors are not sections");
    Quotient cl = cokernel(*principal);
    ClassGroup out{cl.group, div.group, *principal, pic(x), false};
    out.matches_pic = out.group == out.pic;
    return out;
}

CartierClassGroup cartier_class_group(const Scheme& x, std::size_t bound) {
    SchemeVerdict c = is_cancellative_scheme(x, bound);
    if (!c.holds) throw Error(ErrorCode::RequiresCancellative, c.detail + " (bound " + std::to_string(bound) + ")");
    return CartierClassGroup{s_class_group(x), bound};
}

SSmoothResult is_s_smooth(const Scheme& x) {
    SSmoothResult r;
    r.flasque = is_s_flasque(s_quotient_sheaf(x));
    r.s_smooth = r.flasque.s_flasque;
    return r;
}

VanishingReport vanishing_check(const Scheme& x) {
    VanishingReport r;
    for (std::size_t i = 2; i <= x.dimension(); ++i) r.degrees.emplace_back(i, unit_cohomology(x, i));
    try {
        r.s_smooth = is_s_smooth(x).s_smooth;
        r.s_smooth_known = true;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotSCancellative && e.code() != ErrorCode::NotSeparated) throw;
    }
    if (r.s_smooth)
        for (const auto& [i, g] : r.degrees)
            if (!g.is_trivial()) r.violated = true;
    return r;
}

namespace {

std::string monomial(const std::vector<std::string>& vars, const MonoidPresentation& m, const Exponents& e) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        // negative exponents go to the inverse variable
        std::size_t v = i;
        Exponent k = e[i];
        if (k < 0) {
            v = m.size() + i;
            k = -k;
        }
        if (!out.empty()) out += "*";
        out += vars[v];
        if (k != 1) out += "^" + std::to_string(k);
    }
    return out.empty() ? "1" : out;
}

} // namespace

std::string export_algebra(const MonoidPresentation& m) {
    std::vector<std::string> vars = m.names();
    vars.resize(2 * m.size());
    std::vector<std::string> header = m.names();
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m.inverted(i)) {
            vars[m.size() + i] = m.name(i) + "_inv";
            header.push_back(vars[m.size() + i]);
        }
    std::ostringstream out;
    out << "ring k[";
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? ", " : "") << header[i];
    out << "]\n";
    for (const auto& r : m.relations()) out << monomial(vars, m, r.lhs) << " - " << monomial(vars, m, r.rhs) << "\n";
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m.inverted(i)) out << m.name(i) << "*" << vars[m.size() + i] << " - 1\n";
    return out.str();
}

} // namespace msch
