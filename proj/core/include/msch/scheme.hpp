#pragma once

#include "msch/monoid.hpp"
#include "msch/poset.hpp"
#include "msch/sheaf.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace msch {

/// Monoid scheme of finite type, stored point by point: the underlying
/// finite poset, the stalk presentation at every point and, for x <= y,
/// the map O_y -> O_x of stalks.
class Scheme {
  public:
    Scheme() = default;

    /// `covers` maps each covering pair (x, y), x below y, to O_y -> O_x.
    /// Composites along different chains must agree (InconsistentGluing otherwise).
    Scheme(FinitePoset space, std::vector<MonoidPresentation> stalks,
           const std::map<std::pair<std::size_t, std::size_t>, MonoidHom>& covers);

    const FinitePoset& space() const noexcept { return space_; }
    std::size_t size() const noexcept { return space_.size(); }
    const MonoidPresentation& stalk(std::size_t x) const { return stalks_.at(x); }
    const Monoid& stalk_monoid(std::size_t x) const { return *monoids_.at(x); }

    /// O_y -> O_x for x <= y.
    const MonoidHom& costalk(std::size_t y, std::size_t x) const;

    /// Affine charts: the down-sets of the maximal points.
    PointSet charts() const { return space_.maximal(); }

    std::size_t dimension() const { return space_.dimension(); }
    bool is_connected() const { return space_.is_connected(); }
    SeparationCertificate separation() const { return separation_certificate(space_); }

  private:
    FinitePoset space_;
    std::vector<MonoidPresentation> stalks_;
    std::vector<std::shared_ptr<const Monoid>> monoids_;
    std::vector<std::optional<MonoidHom>> table_;  // y * n + x
};

/// Generators of `target` agree on normal forms.
bool homs_agree(const Monoid& target, const MonoidHom& f, const MonoidHom& g);

Scheme spec(const MonoidPresentation& m);

/// Overlap of charts i and j: an affine monoid with maps from both chart
/// monoids, each a localization onto an open subset of the chart.
struct Overlap {
    std::size_t i = 0;
    std::size_t j = 0;
    MonoidPresentation monoid;
    MonoidHom from_i;  // chart i generators -> overlap elements
    MonoidHom from_j;
};

/// Glue affine charts along overlaps. Points are identified through the
/// primes of each overlap pulled back along both maps. Throws
/// InconsistentGluing when identifications collapse a chart, the order is
/// not antisymmetric, an overlap is not open in its chart, or transition
/// maps fail the cocycle condition on triple overlaps.
Scheme glue(const std::vector<MonoidPresentation>& charts, const std::vector<Overlap>& overlaps,
            std::vector<std::string> chart_names = {});

Scheme product(const Scheme& x, const Scheme& y);

/// n+1 charts, chart i free on the generators "x<k>/x<i>", k != i.
Scheme projective_space(std::size_t n);

struct UnitsSheaf {
    AbSheaf sheaf;
    std::vector<UnitGroup> units;
};
UnitsSheaf units_sheaf_data(const Scheme& x, std::size_t search_bound = 8);
AbSheaf units_sheaf(const Scheme& x, std::size_t search_bound = 8);

struct SchemeVerdict {
    bool holds = true;
    std::optional<std::size_t> point;  // first failing point
    std::string detail;
    std::size_t bound = 0;             // 0 when the verdict is exact
};

SchemeVerdict is_cancellative_scheme(const Scheme& x, std::size_t bound);
SchemeVerdict is_s_cancellative_scheme(const Scheme& x);
SchemeVerdict is_smooth_scheme(const Scheme& x, std::size_t bound);
SchemeVerdict is_torsion_free_scheme(const Scheme& x, std::size_t bound);

} // namespace msch
