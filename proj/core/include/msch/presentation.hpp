#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace msch {

using Exponent = std::int64_t;
using Exponents = std::vector<Exponent>;

struct MonoidRelation {
    Exponents lhs;
    Exponents rhs;
    bool operator==(const MonoidRelation&) const = default;
};

/// Finitely presented commutative monoid. Elements are exponent vectors
/// over the generators; negative exponents are allowed only on generators
/// flagged as inverted.
class MonoidPresentation {
  public:
    MonoidPresentation() = default;
    MonoidPresentation(std::vector<std::string> generators, std::vector<bool> inverted = {},
                       std::vector<MonoidRelation> relations = {});

    static MonoidPresentation free(const std::vector<std::string>& generators);
    static MonoidPresentation free_group(const std::vector<std::string>& generators);

    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::string& name(std::size_t i) const { return names_[i]; }
    bool inverted(std::size_t i) const { return inverted_[i]; }
    const std::vector<bool>& inverted_flags() const noexcept { return inverted_; }
    const std::vector<MonoidRelation>& relations() const noexcept { return relations_; }
    std::optional<std::size_t> index_of(const std::string& name) const;

    void add_relation(Exponents lhs, Exponents rhs);
    void set_inverted(std::size_t i, bool value = true) { inverted_[i] = value; }

    /// Validates an element: right length, negative entries only on inverted generators.
    bool is_element(const Exponents& e) const;

    Exponents one() const { return Exponents(size(), 0); }
    Exponents generator(std::size_t i) const;

    bool operator==(const MonoidPresentation&) const = default;

    /// "<a, b, e | a b = a b e, e^2 = e>" with inverted generators written "t^+-".
    std::string to_string() const;

  private:
    std::vector<std::string> names_;
    std::vector<bool> inverted_;
    std::vector<MonoidRelation> relations_;
};

/// Sorted generator-power word, "1" for the identity.
std::string render_word(const MonoidPresentation& p, const Exponents& e);

/// Monoid homomorphism given by the images of the source generators
/// (exponent vectors over the target generators). Acts linearly on exponents.
struct MonoidHom {
    std::size_t source_size = 0;
    std::size_t target_size = 0;
    std::vector<Exponents> images;

    static MonoidHom identity(std::size_t n);
    Exponents apply(const Exponents& e) const;
};

/// g . f
MonoidHom compose(const MonoidHom& g, const MonoidHom& f);
MonoidHom block_diagonal(const MonoidHom& f, const MonoidHom& g);

/// Disjoint union of generators and relations. Clashing names of `q` get a "_2" suffix.
MonoidPresentation product_monoid(const MonoidPresentation& p, const MonoidPresentation& q);

Exponents exp_add(const Exponents& a, const Exponents& b);
Exponents exp_sub(const Exponents& a, const Exponents& b);
Exponents exp_scale(const Exponents& a, Exponent k);
Exponent exp_degree(const Exponents& a);

} // namespace msch
