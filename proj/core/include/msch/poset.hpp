#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace msch {

using PointSet = std::vector<std::size_t>;  // sorted point indices

/// Finite partial order on points 0..n-1, stored as a full relation matrix.
/// Open sets are down-sets: with x <= y and y in U, x is in U.
class FinitePoset {
  public:
    FinitePoset() = default;

    /// `le_pairs` lists generating relations x <= y; the reflexive-transitive
    /// closure is taken. Throws InvalidArgument when the closure is not antisymmetric.
    FinitePoset(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& le_pairs,
                std::vector<std::string> labels = {});

    std::size_t size() const noexcept { return n_; }
    bool leq(std::size_t x, std::size_t y) const { return le_[x * n_ + y] != 0; }
    bool less(std::size_t x, std::size_t y) const { return x != y && leq(x, y); }

    const std::string& label(std::size_t x) const { return labels_[x]; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    // (x, y) with x covered by y, sorted.
    const std::vector<std::pair<std::size_t, std::size_t>>& covers() const noexcept { return covers_; }
    std::vector<std::size_t> lower_covers(std::size_t y) const;
    std::vector<std::size_t> upper_covers(std::size_t x) const;

    PointSet maximal() const;
    PointSet minimal() const;
    std::size_t height(std::size_t x) const { return height_[x]; }
    std::size_t dimension() const;

    // Points in ascending height, ties by index.
    std::vector<std::size_t> height_order() const;

    PointSet down_set(std::size_t x) const;
    PointSet strict_down_set(std::size_t x) const;
    PointSet up_set(std::size_t x) const;
    bool is_open(const PointSet& u) const;
    std::vector<PointSet> opens() const;

    /// Greatest lower bound, if it exists.
    std::optional<std::size_t> meet(std::size_t x, std::size_t y) const;
    std::optional<std::size_t> meet(const PointSet& xs) const;
    bool is_meet_semilattice() const;
    std::optional<std::size_t> least() const;
    std::optional<std::size_t> greatest() const;

    /// Maximal elements of L(x) intersected with L(y).
    PointSet common_lower_maxima(std::size_t x, std::size_t y) const;

    std::vector<PointSet> components() const;
    bool is_connected() const { return components().size() <= 1; }

    /// Subposet on `points` (sorted); point i of the result is points[i].
    FinitePoset induced(const PointSet& points) const;

    bool operator==(const FinitePoset& other) const;

    std::string to_string() const;

  private:
    std::size_t n_ = 0;
    std::vector<char> le_;
    std::vector<std::string> labels_;
    std::vector<std::pair<std::size_t, std::size_t>> covers_;
    std::vector<std::size_t> height_;
};

/// Product order; point (x, y) has index x * |Q| + y.
FinitePoset product_poset(const FinitePoset& p, const FinitePoset& q);

/// Order isomorphism p -> q if one exists (backtracking; small posets only).
std::optional<std::vector<std::size_t>> poset_isomorphism(const FinitePoset& p, const FinitePoset& q);

/// Every pair of maximal points has a down-set intersection that is empty
/// or principal. On failure `witness` holds the offending pair.
struct SeparationCertificate {
    bool separated = true;
    std::optional<std::pair<std::size_t, std::size_t>> witness;
};
SeparationCertificate separation_certificate(const FinitePoset& p);

} // namespace msch
