#include "msch/abelian.hpp"

#include "msch/error.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace msch {

struct AbGroup::Canonical {
    std::once_flag once;
    std::size_t rank = 0;
    Vector torsion;
    Vector moduli;  // per canonical coordinate: d_i for torsion, 0 for free
    Matrix to;
    Matrix from;
};

AbGroup::AbGroup() : AbGroup(0, Matrix(0, 0)) {}

AbGroup::AbGroup(std::size_t generators, Matrix relations, std::vector<std::string> labels)
    : generators_(generators),
      relations_(std::move(relations)),
      labels_(std::move(labels)),
      canon_(std::make_shared<Canonical>()) {
    if (relations_.rows() == 0 && relations_.cols() != generators_) relations_ = Matrix(0, generators_);
    if (relations_.cols() != generators_)
        throw Error(ErrorCode::InvalidArgument, "relation matrix width does not match generator count");
}

AbGroup AbGroup::free(std::size_t rank) { return AbGroup(rank, Matrix(0, rank)); }

AbGroup AbGroup::cyclic(const Integer& order) {
    Matrix r(1, 1);
    r(0, 0) = order;
    return AbGroup(1, r);
}

AbGroup AbGroup::from_invariants(std::size_t rank, const Vector& torsion) {
    std::size_t t = torsion.size();
    Matrix r(t, t + rank);
    for (std::size_t i = 0; i < t; ++i) r(i, i) = torsion[i];
    return AbGroup(t + rank, r);
}

const AbGroup::Canonical& AbGroup::canon() const {
    Canonical& c = *canon_;
    std::call_once(c.once, [this, &c] {
        std::size_t n = generators_;
        SmithForm snf = smith_normal_form(relations_.transpose(), SmithOptions{true, false, true});
        Vector diag = snf.diagonal();
        std::vector<std::size_t> torsion_idx;
        std::vector<std::size_t> free_idx;
        for (std::size_t i = 0; i < n; ++i) {
            Integer d = i < diag.size() ? diag[i] : Integer(0);
            if (d == 1) continue;
            if (d == 0)
                free_idx.push_back(i);
            else
                torsion_idx.push_back(i);
        }
        std::vector<std::size_t> kept = torsion_idx;
        kept.insert(kept.end(), free_idx.begin(), free_idx.end());
        c.rank = free_idx.size();
        for (auto i : torsion_idx) c.torsion.push_back(diag[i]);
        c.moduli = c.torsion;
        c.moduli.resize(kept.size(), Integer(0));
        c.to = Matrix(kept.size(), n);
        c.from = Matrix(n, kept.size());
        for (std::size_t k = 0; k < kept.size(); ++k)
            for (std::size_t j = 0; j < n; ++j) {
                c.to(k, j) = snf.U(kept[k], j);
                c.from(j, k) = snf.U_inv(j, kept[k]);
            }
    });
    return c;
}

std::size_t AbGroup::rank() const { return canon().rank; }
const Vector& AbGroup::torsion() const { return canon().torsion; }
bool AbGroup::is_trivial() const { return canonical_dimension() == 0; }
std::size_t AbGroup::canonical_dimension() const { return canon().moduli.size(); }
const Matrix& AbGroup::to_canonical() const { return canon().to; }
const Matrix& AbGroup::from_canonical_matrix() const { return canon().from; }

std::string AbGroup::to_string() const {
    const auto& c = canon();
    if (c.moduli.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    if (c.rank > 0) {
        out << "Z^" << c.rank;
        first = false;
    }
    for (const auto& d : c.torsion) {
        if (!first) out << " + ";
        out << "Z/" << d.get_str();
        first = false;
    }
    return out.str();
}

Vector AbGroup::canonical(const Vector& element) const {
    const auto& c = canon();
    if (element.size() != generators_) throw Error(ErrorCode::InvalidArgument, "element has wrong length");
    Vector y = c.to * element;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (c.moduli[i] == 0) continue;
        Integer r;
        mpz_fdiv_r(r.get_mpz_t(), y[i].get_mpz_t(), c.moduli[i].get_mpz_t());
        y[i] = r;
    }
    return y;
}

Vector AbGroup::from_canonical(const Vector& coordinates) const { return canon().from * coordinates; }

bool AbGroup::is_zero_element(const Vector& element) const { return vector_is_zero(canonical(element)); }

bool AbGroup::same_element(const Vector& a, const Vector& b) const { return is_zero_element(vector_sub(a, b)); }

bool AbGroup::operator==(const AbGroup& other) const {
    return rank() == other.rank() && torsion() == other.torsion();
}

AbGroup group_of(const Matrix& m) { return simplify(AbGroup(m.cols(), m)).group; }

AbMap::AbMap(AbGroup source, AbGroup target, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.generator_count() || matrix_.cols() != source_.generator_count()) {
        if (matrix_.empty() && matrix_.rows() * matrix_.cols() == 0)
            matrix_ = Matrix(target_.generator_count(), source_.generator_count());
        else
            throw Error(ErrorCode::InvalidArgument, "map matrix shape does not match groups");
    }
}

AbMap AbMap::identity(const AbGroup& g) { return AbMap(g, g, Matrix::identity(g.generator_count())); }

AbMap AbMap::zero(const AbGroup& source, const AbGroup& target) {
    return AbMap(source, target, Matrix(target.generator_count(), source.generator_count()));
}

bool AbMap::is_well_defined() const {
    const Matrix& r = source_.relations();
    for (std::size_t i = 0; i < r.rows(); ++i)
        if (!target_.is_zero_element(matrix_ * r.row(i))) return false;
    return true;
}

AbMap compose(const AbMap& g, const AbMap& f) {
    if (f.target().generator_count() != g.source().generator_count())
        throw Error(ErrorCode::InvalidArgument, "composition of incompatible maps");
    return AbMap(f.source(), g.target(), g.matrix() * f.matrix());
}

bool maps_equal(const AbMap& f, const AbMap& g) {
    if (f.source().generator_count() != g.source().generator_count() ||
        f.target().generator_count() != g.target().generator_count())
        return false;
    Matrix d = f.matrix() - g.matrix();
    for (std::size_t c = 0; c < d.cols(); ++c)
        if (!f.target().is_zero_element(d.column(c))) return false;
    return true;
}

Simplified simplify(const AbGroup& g) {
    AbGroup canonical = AbGroup::from_invariants(g.rank(), g.torsion());
    return Simplified{canonical, AbMap(g, canonical, g.to_canonical()),
                      AbMap(canonical, g, g.from_canonical_matrix())};
}

namespace {

// Generators (columns) of {x : F x in colspace(R_B^T)}.
Matrix preimage_lattice(const AbMap& f) {
    std::size_t n = f.source().generator_count();
    Matrix big = Matrix::hstack(f.matrix(), f.target().relations().transpose());
    Matrix k = integer_kernel(big);
    return k.block(0, 0, n, k.cols());
}

} // namespace

Subgroup kernel(const AbMap& f) {
    Matrix lgen = preimage_lattice(f);
    std::size_t t = lgen.cols();
    Matrix k = integer_kernel(Matrix::hstack(lgen, f.source().relations().transpose()));
    Matrix rel = k.block(0, 0, t, k.cols()).transpose();
    AbGroup sub(t, rel);
    Simplified s = simplify(sub);
    AbMap incl(sub, f.source(), lgen);
    return Subgroup{s.group, compose(incl, s.from)};
}

Subgroup image(const AbMap& f) {
    std::size_t n = f.source().generator_count();
    Matrix lgen = preimage_lattice(f);
    AbGroup im(n, lgen.transpose());
    Simplified s = simplify(im);
    AbMap incl(im, f.target(), f.matrix());
    return Subgroup{s.group, compose(incl, s.from)};
}

Quotient cokernel(const AbMap& f) {
    std::size_t m = f.target().generator_count();
    Matrix rel = Matrix::vstack(f.target().relations(), f.matrix().transpose());
    AbGroup q(m, rel);
    Simplified s = simplify(q);
    AbMap proj(f.target(), s.group, s.to.matrix());
    return Quotient{s.group, proj, s.from.matrix()};
}

std::optional<AbMap> factor_through(const AbMap& f, const AbMap& mono) {
    std::size_t p = mono.source().generator_count();
    IntegerSolver solver(Matrix::hstack(mono.matrix(), mono.target().relations().transpose()));
    Matrix g(p, f.source().generator_count());
    for (std::size_t j = 0; j < g.cols(); ++j) {
        auto sol = solver.solve(f.matrix().column(j));
        if (!sol) return std::nullopt;
        for (std::size_t i = 0; i < p; ++i) g(i, j) = (*sol)[i];
    }
    return AbMap(f.source(), mono.source(), g);
}

std::optional<Vector> preimage(const AbMap& f, const Vector& y) {
    std::size_t n = f.source().generator_count();
    auto sol = solve_integer(Matrix::hstack(f.matrix(), f.target().relations().transpose()), y);
    if (!sol) return std::nullopt;
    return Vector(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(n));
}

bool is_injective(const AbMap& f) { return kernel(f).group.is_trivial(); }
bool is_surjective(const AbMap& f) { return cokernel(f).group.is_trivial(); }
bool is_isomorphism(const AbMap& f) { return is_injective(f) && is_surjective(f); }

AbMap inverse(const AbMap& iso) {
    if (!is_isomorphism(iso)) throw Error(ErrorCode::InvalidArgument, "map is not an isomorphism");
    auto g = factor_through(AbMap::identity(iso.target()), iso);
    return *g;
}

SplitEpiResult is_split_epi(const AbMap& f) {
    SplitEpiResult res;
    if (!is_surjective(f)) {
        res.reason = "not surjective";
        return res;
    }
    const AbGroup& a = f.source();
    const AbGroup& b = f.target();
    std::size_t n = a.generator_count();
    std::size_t m = b.generator_count();
    Matrix ra_t = a.relations().transpose();
    Matrix rb_t = b.relations().transpose();
    std::size_t kb = rb_t.cols();
    std::size_t ka = ra_t.cols();
    std::size_t dim = b.canonical_dimension();
    std::size_t t = b.torsion().size();
    Matrix section(n, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        Integer d = i < t ? b.torsion()[i] : Integer(0);
        // unknowns (a, y, z):  F a - R_B^T y = b_i,  d a - R_A^T z = 0
        Matrix sys(m + n, n + kb + ka);
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < n; ++c) sys(r, c) = f.matrix()(r, c);
            for (std::size_t c = 0; c < kb; ++c) sys(r, n + c) = -rb_t(r, c);
        }
        for (std::size_t r = 0; r < n; ++r) {
            sys(m + r, r) = d;
            for (std::size_t c = 0; c < ka; ++c) sys(m + r, n + kb + c) = -ra_t(r, c);
        }
        Vector rhs(m + n);
        Vector bi = b.from_canonical(unit_vector(dim, i));
        for (std::size_t r = 0; r < m; ++r) rhs[r] = bi[r];
        auto sol = solve_integer(sys, rhs);
        if (!sol) {
            res.witness = bi;
            res.reason = "generator of order " + d.get_str() + " admits no compatible lift";
            return res;
        }
        for (std::size_t r = 0; r < n; ++r) section(r, i) = (*sol)[r];
    }
    res.split = true;
    res.section = AbMap(b, a, section * b.to_canonical());
    return res;
}

DirectSum direct_sum(const std::vector<AbGroup>& summands) {
    std::vector<Matrix> blocks;
    std::vector<std::size_t> offsets;
    std::size_t gens = 0;
    for (const auto& g : summands) {
        offsets.push_back(gens);
        gens += g.generator_count();
        blocks.push_back(g.relations());
    }
    Matrix rel = Matrix::block_diagonal(blocks);
    if (rel.cols() != gens) rel = Matrix(0, gens);
    return DirectSum{AbGroup(gens, rel), offsets};
}

AbMap direct_sum_map(const std::vector<AbMap>& maps) {
    std::vector<AbGroup> src;
    std::vector<AbGroup> tgt;
    std::vector<Matrix> blocks;
    for (const auto& f : maps) {
        src.push_back(f.source());
        tgt.push_back(f.target());
        blocks.push_back(f.matrix());
    }
    AbGroup s = direct_sum(src).group;
    AbGroup t = direct_sum(tgt).group;
    Matrix m = Matrix::block_diagonal(blocks);
    if (m.rows() != t.generator_count() || m.cols() != s.generator_count())
        m = Matrix(t.generator_count(), s.generator_count());
    return AbMap(s, t, m);
}

namespace {

void check_commutes(const Diagram& d) {
    std::size_t n = d.objects.size();
    std::vector<std::vector<std::size_t>> out(n);
    std::vector<std::size_t> indeg(n, 0);
    for (std::size_t a = 0; a < d.arrows.size(); ++a) {
        out[d.arrows[a].from].push_back(a);
        ++indeg[d.arrows[a].to];
    }
    std::vector<std::size_t> order;
    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i)
        if (indeg[i] == 0) queue.push_back(i);
    while (!queue.empty()) {
        std::size_t v = queue.back();
        queue.pop_back();
        order.push_back(v);
        for (auto a : out[v])
            if (--indeg[d.arrows[a].to] == 0) queue.push_back(d.arrows[a].to);
    }
    if (order.size() != n) throw Error(ErrorCode::InvalidArgument, "diagram has a directed cycle");
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;

    for (std::size_t s = 0; s < n; ++s) {
        std::map<std::size_t, AbMap> composite;
        composite.emplace(s, AbMap::identity(d.objects[s]));
        for (std::size_t k = pos[s]; k < n; ++k) {
            std::size_t v = order[k];
            auto it = composite.find(v);
            if (it == composite.end()) continue;
            for (auto a : out[v]) {
                const auto& arrow = d.arrows[a];
                AbMap c = compose(arrow.map, it->second);
                auto [jt, inserted] = composite.emplace(arrow.to, c);
                if (!inserted && !maps_equal(jt->second, c))
                    throw Error(ErrorCode::NonCommutingDiagram,
                                "two paths from object " + std::to_string(s) + " to object " +
                                    std::to_string(arrow.to) + " disagree");
            }
        }
    }
}

} // namespace

Limit finite_limit(const Diagram& d) {
    check_commutes(d);
    DirectSum prod = direct_sum(d.objects);
    std::vector<AbGroup> arrow_targets;
    for (const auto& a : d.arrows) arrow_targets.push_back(d.objects[a.to]);
    DirectSum codomain = direct_sum(arrow_targets);
    Matrix diff(codomain.group.generator_count(), prod.group.generator_count());
    for (std::size_t k = 0; k < d.arrows.size(); ++k) {
        const auto& a = d.arrows[k];
        std::size_t row0 = codomain.offsets[k];
        const Matrix& m = a.map.matrix();
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 0; c < m.cols(); ++c) diff(row0 + r, prod.offsets[a.from] + c) += m(r, c);
            diff(row0 + r, prod.offsets[a.to] + r) -= 1;
        }
    }
    Subgroup ker = kernel(AbMap(prod.group, codomain.group, diff));
    std::vector<AbMap> projections;
    for (std::size_t i = 0; i < d.objects.size(); ++i) {
        std::size_t g = d.objects[i].generator_count();
        Matrix p(g, prod.group.generator_count());
        for (std::size_t r = 0; r < g; ++r) p(r, prod.offsets[i] + r) = 1;
        projections.push_back(compose(AbMap(prod.group, d.objects[i], p), ker.inclusion));
    }
    return Limit{ker.group, ker.inclusion, projections, prod};
}

} // namespace msch
