#pragma once

#include "msch/scheme.hpp"
#include "msch/sheaf.hpp"

#include <map>
#include <vector>

namespace msch {

/// An element of (O*)^n x| S_n: the monomial matrix sending e_k to units[perm[k]] e_perm[k].
struct Transition {
    std::vector<Exponents> units;    // n unit elements of the overlap stalk
    std::vector<std::size_t> perm;   // perm[k] = sigma(k)
};

/// Transition functions of a rank-n bundle on the chart cover. `charts`
/// names the maximal points of the scheme in the order the cocycle uses;
/// transitions[(i, j)] lives on the overlap of charts[i] and charts[j].
/// Missing (j, i) entries are taken as inverses of (i, j).
struct BundleCocycle {
    std::size_t rank = 0;
    std::vector<std::size_t> charts;
    std::map<std::pair<std::size_t, std::size_t>, Transition> transitions;
};

/// Additive form: unit coordinates in the units sheaf at some point.
struct MonomialMatrix {
    std::vector<Vector> units;
    std::vector<std::size_t> perm;
};

struct BundleDecomposition {
    AbGroup pic;                   // H^1 of the cover complex of O*
    std::vector<Vector> classes;   // sorted canonical coordinates, one per line bundle
    // Certificate: per maximal point m (ascending), K_m with
    // g_ij = K_i D_ij K_j^-1 where D is the diagonal cocycle of `representatives`.
    std::vector<std::size_t> charts;
    std::vector<MonomialMatrix> change_of_frame;
    std::vector<Vector> representatives;  // cover 1-cocycles, ordered like `classes` before sorting
    bool verified = false;
};

/// Splits a monomial cocycle into line bundles. Throws NotConnected,
/// NotSeparated, CocycleInvalid.
BundleDecomposition decompose_bundle(const Scheme& x, const BundleCocycle& g);

} // namespace msch
