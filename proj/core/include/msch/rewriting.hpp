#pragma once

#include "msch/presentation.hpp"

#include <cstddef>
#include <vector>

namespace msch {

/// Work limits for completion. Exceeding either raises CompletionExceededBound.
struct CompletionOptions {
    std::size_t max_rules = 4000;
    std::size_t max_pairs = 400000;
};

/// Rule lhs -> rhs over the extended alphabet (nonnegative exponents).
struct Rule {
    Exponents lhs;
    Exponents rhs;
};

/// Term order on nonnegative exponent vectors: higher total degree is
/// bigger; at equal degree the first differing index decides and the
/// vector with the smaller exponent there is bigger.
/// Returns <0, 0, >0 like strcmp.
int term_compare(const Exponents& a, const Exponents& b);

/// Confluent, terminating commutative rewriting system for a presentation.
///
/// Inverted generators get a formal inverse letter in an extended alphabet
/// (index size() + k for the k-th inverted generator) together with the
/// rule g g' -> 1. Net exponent vectors convert to and from that alphabet.
class RewriteSystem {
  public:
    static RewriteSystem complete(const MonoidPresentation& p, CompletionOptions options = {});

    std::size_t generator_count() const noexcept { return n_; }
    std::size_t alphabet_size() const noexcept { return n_ + inverse_of_.size(); }
    const std::vector<Rule>& rules() const noexcept { return rules_; }
    std::size_t pairs_examined() const noexcept { return pairs_examined_; }

    // Extended letter of the formal inverse of generator i, or npos.
    std::size_t inverse_letter(std::size_t i) const { return letter_of_inverse_[i]; }
    // Generator whose inverse is extended letter n_ + k.
    std::size_t inverted_generator(std::size_t k) const { return inverse_of_[k]; }

    Exponents extend(const Exponents& net) const;
    Exponents net(const Exponents& extended) const;

    Exponents reduce(Exponents extended) const;
    Exponents normal_form(const Exponents& net_element) const;
    bool equal(const Exponents& a, const Exponents& b) const;

    /// Re-checks every overlapping critical pair.
    bool verify_confluence() const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  private:
    std::size_t n_ = 0;
    std::vector<std::size_t> inverse_of_;
    std::vector<std::size_t> letter_of_inverse_;
    std::vector<Rule> rules_;
    std::size_t pairs_examined_ = 0;
};

} // namespace msch
