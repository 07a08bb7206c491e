#include "msch/presentation.hpp"

#include "msch/error.hpp"

#include <set>
#include <sstream>

namespace msch {

MonoidPresentation::MonoidPresentation(std::vector<std::string> generators, std::vector<bool> inverted,
                                       std::vector<MonoidRelation> relations)
    : names_(std::move(generators)), inverted_(std::move(inverted)) {
    if (inverted_.empty()) inverted_.assign(names_.size(), false);
    if (inverted_.size() != names_.size())
        throw Error(ErrorCode::InvalidArgument, "inverted flags do not match generators");
    std::set<std::string> seen;
    for (const auto& n : names_)
        if (!seen.insert(n).second) throw Error(ErrorCode::InvalidArgument, "duplicate generator name '" + n + "'");
    for (auto& r : relations) add_relation(std::move(r.lhs), std::move(r.rhs));
}

MonoidPresentation MonoidPresentation::free(const std::vector<std::string>& generators) {
    return MonoidPresentation(generators);
}

MonoidPresentation MonoidPresentation::free_group(const std::vector<std::string>& generators) {
    return MonoidPresentation(generators, std::vector<bool>(generators.size(), true));
}

std::optional<std::size_t> MonoidPresentation::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

bool MonoidPresentation::is_element(const Exponents& e) const {
    if (e.size() != size()) return false;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] < 0 && !inverted_[i]) return false;
    return true;
}

void MonoidPresentation::add_relation(Exponents lhs, Exponents rhs) {
    if (!is_element(lhs) || !is_element(rhs))
        throw Error(ErrorCode::InvalidArgument, "relation uses a negative exponent on a non-inverted generator");
    relations_.push_back({std::move(lhs), std::move(rhs)});
}

Exponents MonoidPresentation::generator(std::size_t i) const {
    Exponents e(size(), 0);
    e[i] = 1;
    return e;
}

std::string MonoidPresentation::to_string() const {
    std::ostringstream out;
    out << "<";
    for (std::size_t i = 0; i < size(); ++i) {
        if (i) out << ", ";
        out << names_[i] << (inverted_[i] ? "^+-" : "");
    }
    if (!relations_.empty()) {
        out << " | ";
        for (std::size_t r = 0; r < relations_.size(); ++r) {
            if (r) out << ", ";
            out << render_word(*this, relations_[r].lhs) << " = " << render_word(*this, relations_[r].rhs);
        }
    }
    out << ">";
    return out.str();
}

std::string render_word(const MonoidPresentation& p, const Exponents& e) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first) out << " ";
        first = false;
        out << p.name(i);
        if (e[i] != 1) out << "^" << e[i];
    }
    return first ? "1" : out.str();
}

MonoidHom MonoidHom::identity(std::size_t n) {
    MonoidHom h{n, n, {}};
    for (std::size_t i = 0; i < n; ++i) {
        Exponents e(n, 0);
        e[i] = 1;
        h.images.push_back(e);
    }
    return h;
}

Exponents MonoidHom::apply(const Exponents& e) const {
    if (e.size() != source_size) throw Error(ErrorCode::InvalidArgument, "homomorphism applied to wrong length");
    Exponents out(target_size, 0);
    for (std::size_t i = 0; i < source_size; ++i) {
        if (e[i] == 0) continue;
        for (std::size_t j = 0; j < target_size; ++j) out[j] += e[i] * images[i][j];
    }
    return out;
}

MonoidHom compose(const MonoidHom& g, const MonoidHom& f) {
    if (f.target_size != g.source_size) throw Error(ErrorCode::InvalidArgument, "incompatible homomorphisms");
    MonoidHom h{f.source_size, g.target_size, {}};
    for (const auto& img : f.images) h.images.push_back(g.apply(img));
    return h;
}

MonoidHom block_diagonal(const MonoidHom& f, const MonoidHom& g) {
    MonoidHom h{f.source_size + g.source_size, f.target_size + g.target_size, {}};
    for (const auto& img : f.images) {
        Exponents e(h.target_size, 0);
        for (std::size_t j = 0; j < f.target_size; ++j) e[j] = img[j];
        h.images.push_back(e);
    }
    for (const auto& img : g.images) {
        Exponents e(h.target_size, 0);
        for (std::size_t j = 0; j < g.target_size; ++j) e[f.target_size + j] = img[j];
        h.images.push_back(e);
    }
    return h;
}

MonoidPresentation product_monoid(const MonoidPresentation& p, const MonoidPresentation& q) {
    std::vector<std::string> names = p.names();
    std::set<std::string> taken(names.begin(), names.end());
    for (const auto& n : q.names()) {
        std::string candidate = n;
        while (taken.count(candidate)) candidate += "_2";
        taken.insert(candidate);
        names.push_back(candidate);
    }
    std::vector<bool> inv = p.inverted_flags();
    inv.insert(inv.end(), q.inverted_flags().begin(), q.inverted_flags().end());
    MonoidPresentation out(names, inv);
    std::size_t n = p.size(), m = q.size();
    for (const auto& r : p.relations()) {
        Exponents l(n + m, 0), s(n + m, 0);
        std::copy(r.lhs.begin(), r.lhs.end(), l.begin());
        std::copy(r.rhs.begin(), r.rhs.end(), s.begin());
        out.add_relation(l, s);
    }
    for (const auto& r : q.relations()) {
        Exponents l(n + m, 0), s(n + m, 0);
        std::copy(r.lhs.begin(), r.lhs.end(), l.begin() + static_cast<std::ptrdiff_t>(n));
        std::copy(r.rhs.begin(), r.rhs.end(), s.begin() + static_cast<std::ptrdiff_t>(n));
        out.add_relation(l, s);
    }
    return out;
}

Exponents exp_add(const Exponents& a, const Exponents& b) {
    Exponents c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

Exponents exp_sub(const Exponents& a, const Exponents& b) {
    Exponents c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

Exponents exp_scale(const Exponents& a, Exponent k) {
    Exponents c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * k;
    return c;
}

Exponent exp_degree(const Exponents& a) {
    Exponent d = 0;
    for (auto x : a) d += x;
    return d;
}

} // namespace msch
