#pragma once

#include "msch/scheme.hpp"
#include "msch/sheaf.hpp"

#include <string>
#include <vector>

namespace msch {

/// H^1 of the units sheaf.
AbGroup pic(const Scheme& x);
AbGroup unit_cohomology(const Scheme& x, std::size_t degree);

/// sM*_X / O*_X. Each connected component needs a least point whose unit
/// group G plays the role of the constant sheaf sM*_X on that component.
struct QuotientSheaf {
    AbSheaf sheaf;
    UnitsSheaf units;
    std::vector<std::size_t> component_of;   // point -> component index
    std::vector<std::size_t> generic_points; // least point of each component
    std::vector<AbMap> projections;          // per point: G -> Q_x
};

/// Throws NotSCancellative when some unit map is not injective and
/// NotSeparated when a component has no least point.
QuotientSheaf s_quotient_sheaf_data(const Scheme& x);
AbSheaf s_quotient_sheaf(const Scheme& x);

struct ClassGroup {
    AbGroup group;       // Div / principal
    AbGroup divisors;    // global sections of the quotient sheaf
    AbMap principal;     // sum of the G's -> Div
    AbGroup pic;
    bool matches_pic = false;  // invariant factors agree
};

/// Requires a separated s-cancellative scheme.
ClassGroup s_class_group(const Scheme& x);

struct CartierClassGroup {
    ClassGroup classes;
    std::size_t bound = 0;  // cancellativity was verified up to this bound
};

/// Throws RequiresCancellative unless every stalk passes the bounded test.
CartierClassGroup cartier_class_group(const Scheme& x, std::size_t bound);

struct SSmoothResult {
    bool s_smooth = false;
    SFlasqueResult flasque;
};
SSmoothResult is_s_smooth(const Scheme& x);

struct VanishingReport {
    std::vector<std::pair<std::size_t, AbGroup>> degrees;  // (i, H^i(X, O*)) for 2 <= i <= dim
    bool s_smooth = false;
    bool s_smooth_known = false;  // false when the scheme is not s-cancellative
    bool violated = false;        // s-smooth but some listed group is nonzero
};
VanishingReport vanishing_check(const Scheme& x);

/// "ring k[a, b, e]" followed by one binomial "lhs - rhs" per line.
std::string export_algebra(const MonoidPresentation& m);

} // namespace msch
