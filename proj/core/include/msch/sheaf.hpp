#pragma once

#include "msch/abelian.hpp"
#include "msch/cochain.hpp"
#include "msch/poset.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace msch {

/// Abelian sheaf on a finite poset, i.e. a contravariant functor:
/// for x <= y a restriction F_y -> F_x.
class AbSheaf {
  public:
    AbSheaf() = default;

    /// `covers` maps each covering pair (x, y), x below y, to F_y -> F_x.
    /// Restrictions along longer chains are composed and checked for
    /// path independence (NonCommutingDiagram otherwise).
    AbSheaf(FinitePoset base, std::vector<AbGroup> stalks,
            const std::map<std::pair<std::size_t, std::size_t>, AbMap>& covers);

    const FinitePoset& base() const noexcept { return base_; }
    std::size_t size() const noexcept { return base_.size(); }
    const AbGroup& stalk(std::size_t x) const { return stalks_[x]; }
    const std::vector<AbGroup>& stalks() const noexcept { return stalks_; }

    /// F_y -> F_x for x <= y.
    const AbMap& restriction(std::size_t y, std::size_t x) const;

    /// Restriction of the sheaf to an open subset (as a sheaf on the induced poset).
    AbSheaf restrict_to(const PointSet& open) const;

  private:
    FinitePoset base_;
    std::vector<AbGroup> stalks_;
    std::vector<std::optional<AbMap>> table_;  // y * n + x
};

AbSheaf constant_sheaf(const FinitePoset& p, const AbGroup& a);
AbSheaf skyscraper(const FinitePoset& p, std::size_t x, const AbGroup& a);
AbSheaf product_sheaf(const AbSheaf& f, const AbSheaf& g);

struct Sections {
    PointSet points;
    AbGroup group;
    std::vector<AbMap> projections;  // F(U) -> F_x, one per point of U
    AbMap inclusion;                 // F(U) -> product of the stalks over U
};

/// F(U) as the limit of the stalks over U. Throws NotOpen.
Sections sections(const AbSheaf& f, const PointSet& open);

/// F(V) -> F(U) for opens U inside V.
AbMap section_restriction(const AbSheaf& f, const Sections& v, const Sections& u);

/// Normalized cochains on strictly descending chains x_0 > ... > x_n,
/// valued in the stalk of the last point.
struct CochainModel {
    CochainComplex complex;
    std::vector<std::vector<PointSet>> cells;   // per degree, the indexing chains/tuples
    std::vector<std::vector<std::size_t>> stalk_of;  // per degree, the point whose stalk each cell carries
    std::vector<DirectSum> sums;
};

CochainModel order_cochain(const AbSheaf& f);

/// Cech complex of the cover by down-sets of maximal points, with tuples
/// i_0 < ... < i_p of maximal points carrying the stalk at their meet.
/// Tuples with empty intersection are dropped. Throws NotSeparated when an
/// intersection is non-empty but has no greatest element.
CochainModel reduced_cech(const AbSheaf& f);

/// The order complex in canonical stalk coordinates, degrees 0..top only.
SparseComplex sparse_order_cochain(const AbSheaf& f, std::size_t top);

/// H^i on the order complex.
AbGroup sheaf_cohomology(const AbSheaf& f, std::size_t degree);

struct SFlasqueResult {
    bool s_flasque = false;
    std::vector<AbGroup> collection;        // A^e_x, filled for every point when s-flasque
    std::optional<std::size_t> failed_point;
    SplitEpiResult failure;
};

/// Ascending in height: F_x -> F(strictly below x) must be a split epimorphism;
/// its kernel is A^e_x.
SFlasqueResult is_s_flasque(const AbSheaf& f);

/// F_x -> F(L(x) minus x).
AbMap boundary_restriction(const AbSheaf& f, std::size_t x);

} // namespace msch
