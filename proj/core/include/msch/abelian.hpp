#pragma once

#include "msch/integer_matrix.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace msch {

/// Finitely generated abelian group Z^n / (row space of `relations`).
///
/// `relations` is k x n: each row is one relation among the n generators.
/// The canonical invariants (rank, invariant factors d_1 | d_2 | ... with
/// every d_i >= 2) are computed once by Smith reduction and shared between
/// copies. Two groups compare equal iff their canonical invariants agree,
/// i.e. iff they are isomorphic.
class AbGroup {
  public:
    AbGroup();
    AbGroup(std::size_t generators, Matrix relations, std::vector<std::string> labels = {});

    static AbGroup free(std::size_t rank);
    static AbGroup cyclic(const Integer& order);
    static AbGroup from_invariants(std::size_t rank, const Vector& torsion);

    std::size_t generator_count() const noexcept { return generators_; }
    const Matrix& relations() const noexcept { return relations_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    std::size_t rank() const;
    const Vector& torsion() const;
    bool is_trivial() const;
    bool is_free() const { return torsion().empty(); }

    /// "Z^r + Z/d1 + ... + Z/dk"; the trivial group renders as "0".
    std::string to_string() const;

    // Canonical coordinates of an element given on the generators:
    // torsion coordinates first (reduced into [0, d_i)), then free ones.
    std::size_t canonical_dimension() const;
    Vector canonical(const Vector& element) const;
    Vector from_canonical(const Vector& coordinates) const;
    bool is_zero_element(const Vector& element) const;
    bool same_element(const Vector& a, const Vector& b) const;

    // Isomorphism with the canonical presentation Z^r + Z/d_i on
    // canonical_dimension() generators: rows of `to` send generators to
    // canonical coordinates, columns of `from` are representatives.
    const Matrix& to_canonical() const;
    const Matrix& from_canonical_matrix() const;

    bool operator==(const AbGroup& other) const;
    bool operator!=(const AbGroup& other) const { return !(*this == other); }

  private:
    struct Canonical;
    const Canonical& canon() const;

    std::size_t generators_ = 0;
    Matrix relations_;
    std::vector<std::string> labels_;
    std::shared_ptr<Canonical> canon_;
};

/// Canonical AbGroup of coker(m), with m read as a relation matrix.
AbGroup group_of(const Matrix& m);

/// Homomorphism given by an integer matrix (target gens x source gens)
/// acting on generator coordinates.
class AbMap {
  public:
    AbMap(AbGroup source, AbGroup target, Matrix matrix);

    static AbMap identity(const AbGroup& g);
    static AbMap zero(const AbGroup& source, const AbGroup& target);

    const AbGroup& source() const noexcept { return source_; }
    const AbGroup& target() const noexcept { return target_; }
    const Matrix& matrix() const noexcept { return matrix_; }

    Vector apply(const Vector& x) const { return matrix_ * x; }

    /// Every source relation lands in the target relation lattice.
    bool is_well_defined() const;

  private:
    AbGroup source_;
    AbGroup target_;
    Matrix matrix_;
};

AbMap compose(const AbMap& g, const AbMap& f);
bool maps_equal(const AbMap& f, const AbMap& g);

struct Subgroup {
    AbGroup group;
    AbMap inclusion;
};

struct Quotient {
    AbGroup group;
    AbMap projection;
    // Columns: representatives in the ambient generators of each generator of `group`.
    Matrix lift;
};

// Results are returned on canonical (Smith) generators.
Subgroup kernel(const AbMap& f);
Subgroup image(const AbMap& f);
Quotient cokernel(const AbMap& f);

/// Re-present a group on its canonical generators.
struct Simplified {
    AbGroup group;
    AbMap to;    // original -> canonical
    AbMap from;  // canonical -> original
};
Simplified simplify(const AbGroup& g);

/// Solve mono . g = f for g. Returns nullopt when f does not land in the image.
std::optional<AbMap> factor_through(const AbMap& f, const AbMap& mono);

/// Preimage of one target element under f, if it exists.
std::optional<Vector> preimage(const AbMap& f, const Vector& y);

bool is_injective(const AbMap& f);
bool is_surjective(const AbMap& f);
bool is_isomorphism(const AbMap& f);
AbMap inverse(const AbMap& iso);

struct SplitEpiResult {
    bool split = false;
    std::optional<AbMap> section;     // f . section = id when split
    std::optional<Vector> witness;    // target element that cannot be lifted compatibly
    std::string reason;
};
SplitEpiResult is_split_epi(const AbMap& f);

struct DirectSum {
    AbGroup group;
    std::vector<std::size_t> offsets;  // generator offset of each summand
};
DirectSum direct_sum(const std::vector<AbGroup>& summands);
AbMap direct_sum_map(const std::vector<AbMap>& maps);

/// Diagram of abelian groups indexed by a finite poset (or any DAG).
struct Diagram {
    struct Arrow {
        std::size_t from;
        std::size_t to;
        AbMap map;
    };
    std::vector<AbGroup> objects;
    std::vector<Arrow> arrows;
};

struct Limit {
    AbGroup group;
    AbMap inclusion;                  // into the product of all objects
    std::vector<AbMap> projections;   // one per object
    DirectSum product;
};

/// Limit as the kernel of the stacked difference map over all arrows.
/// Throws Error(NonCommutingDiagram) if two paths between the same
/// objects give different composites.
Limit finite_limit(const Diagram& diagram);

} // namespace msch
