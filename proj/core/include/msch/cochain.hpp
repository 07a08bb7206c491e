#pragma once

#include "msch/abelian.hpp"

#include <map>
#include <vector>

namespace msch {

/// Cochain complex C^0 -> C^1 -> ... ; differentials[i] : C^i -> C^{i+1}.
/// Groups outside 0..groups.size()-1 are zero.
struct CochainComplex {
    std::vector<AbGroup> groups;
    std::vector<AbMap> differentials;

    std::size_t length() const { return groups.size(); }
    /// Shapes match, maps are well defined and d . d = 0.
    bool is_valid() const;
};

/// H^i together with the data needed to name classes of cocycles.
struct Cohomology {
    AbGroup group;       // canonical
    Subgroup cycles;     // Z^i inside C^i
    Quotient quotient;   // Z^i -> H^i

    /// Canonical coordinates of the class of a cocycle. Throws InvalidArgument on non-cocycles.
    Vector class_of(const Vector& cocycle) const;
    /// A cocycle representing the given canonical coordinates.
    Vector representative(const Vector& coordinates) const;
};

Cohomology cohomology_data(const CochainComplex& c, std::size_t degree);

/// Group only. Cancels unit pivots between free generators before the exact
/// computation, so it is much faster than cohomology_data on large complexes.
AbGroup cohomology(const CochainComplex& c, std::size_t degree);

/// Cochains on diagonal presentations: generator g in degree i has order
/// moduli[i][g] (0 for infinite order); differentials[i][g] is d(g) as a
/// sparse column in degree i + 1.
struct SparseComplex {
    using Column = std::map<std::size_t, Integer>;
    std::vector<Vector> moduli;
    std::vector<std::vector<Column>> differentials;
};

AbGroup cohomology(const SparseComplex& c, std::size_t degree);

} // namespace msch
