#pragma once

#include "msch/abelian.hpp"
#include "msch/poset.hpp"
#include "msch/presentation.hpp"
#include "msch/rewriting.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace msch {

/// A presentation together with its completed rewriting system.
/// Construction runs completion and may throw CompletionExceededBound.
class Monoid {
  public:
    explicit Monoid(MonoidPresentation p, CompletionOptions options = {});

    const MonoidPresentation& presentation() const noexcept { return *presentation_; }
    const RewriteSystem& rewriting() const noexcept { return *rewriting_; }
    std::size_t size() const noexcept { return presentation_->size(); }

    Exponents nf(const Exponents& e) const { return rewriting_->normal_form(e); }
    bool equal(const Exponents& a, const Exponents& b) const { return nf(a) == nf(b); }
    Exponents multiply(const Exponents& a, const Exponents& b) const { return nf(exp_add(a, b)); }
    Exponents power(const Exponents& a, Exponent k) const { return nf(exp_scale(a, k)); }
    Exponents one() const { return presentation_->one(); }

    std::string render(const Exponents& e) const { return render_word(*presentation_, e); }

    /// Distinct normal forms of all words of length <= degree over the
    /// generators and the inverse letters, ascending in the term order.
    std::vector<Exponents> ball(std::size_t degree) const;

  private:
    std::shared_ptr<const MonoidPresentation> presentation_;
    std::shared_ptr<const RewriteSystem> rewriting_;
};

// ---------------------------------------------------------------- primes

/// Prime ideal as a {0,1} character: in[i] = 1 iff generator i lies in the ideal.
struct Prime {
    std::vector<char> in;

    bool contains_generator(std::size_t i) const { return in[i] != 0; }
    bool contains(const Exponents& element) const;
    std::size_t size() const;
    bool subset_of(const Prime& other) const;
    bool operator==(const Prime&) const = default;
};

/// "(a,b)"; the empty ideal renders as "()".
std::string prime_name(const MonoidPresentation& p, const Prime& q);

struct Spectrum {
    std::vector<Prime> primes;  // sorted by (size, generator indices)
    FinitePoset poset;          // inclusion order, labels = prime names
};

Spectrum spectrum(const MonoidPresentation& p);

/// Union of all primes: the ideal of non-units.
Prime maximal_prime(const MonoidPresentation& p);

// ------------------------------------------------------------ localization

struct Localization {
    MonoidPresentation presentation;  // simplified
    MonoidHom to;    // original generators -> simplified
    MonoidHom from;  // simplified generators -> original generators (net exponents)
};

/// Invert the given generators, then simplify: cancel inverted factors,
/// drop trivial relations and eliminate inverted generators that a
/// relation among inverted generators expresses through the others.
Localization localize_generators(const MonoidPresentation& p, const std::vector<char>& invert);

/// Localization at a prime: every generator outside the prime is inverted.
Localization localize(const MonoidPresentation& p, const Prime& at);

// ------------------------------------------------------------------- units

struct UnitGroup {
    AbGroup group;                          // on the unit generators below
    std::vector<std::size_t> generators;    // indices of generators that are units
    std::vector<std::optional<Exponents>> inverses;  // per unit generator, w with g w = 1
    // per canonical generator of `group`: (u, u^-1) as normal forms, when inverses were found
    std::vector<std::optional<std::pair<Exponents, Exponents>>> certificates;

    /// Unit group coordinates of a unit element (net exponents on the unit generators).
    Vector coordinates(const Exponents& element) const;
};

/// Exact unit group. Throws UnitsInconclusive if the completion needed for
/// the computation fails.
UnitGroup units(const Monoid& m, std::size_t search_bound = 8);

struct GrothendieckGroup {
    AbGroup group;  // generators = monoid generators
    Vector image(const Exponents& e) const;
};

GrothendieckGroup grothendieck_group(const MonoidPresentation& p);

/// Homomorphism of unit groups induced by a monoid homomorphism that sends
/// units to units.
AbMap unit_map(const UnitGroup& source, const UnitGroup& target, const MonoidHom& h);

// -------------------------------------------------------------- predicates

enum class Verdict { True, False, Inconclusive };
std::string verdict_name(Verdict v);

struct CancellativeResult {
    bool verified = false;  // no counterexample up to `bound` and injective into G on the ball
    std::size_t bound = 0;
    std::optional<std::array<Exponents, 3>> counterexample;  // (x, y, a) with a x = a y, x != y
};
CancellativeResult is_cancellative(const Monoid& m, std::size_t bound);

struct SCancellativeResult {
    bool s_cancellative = true;
    std::optional<std::pair<Prime, Prime>> pair;  // (q, p) with q below p and a non-injective unit map
    std::optional<Exponents> kernel_element;      // element of the stalk at p, trivial at q
    std::string detail;
};
/// Exact: injectivity of (M_p)* -> (M_q)* for every covering pair q < p.
SCancellativeResult is_s_cancellative(const Monoid& m, std::size_t search_bound = 8);

struct TripleVerdict {
    Verdict verdict = Verdict::True;
    std::size_t bound = 0;
    std::optional<std::array<Exponents, 3>> triple;  // (a, x, y)
    std::optional<std::size_t> exponent;             // n used, when found by search
};

/// Condition "(xy)^n x = (xy)^n y whenever ax = ay", searched over the ball
/// of the given degree. A failing triple is certified by x != y after
/// inverting the support of x and y.
TripleVerdict s_cancellative_by_definition(const Monoid& m, std::size_t bound);

/// Condition "ax = ay implies xb = yb for some b outside p_xy", decided per
/// triple in the localization at p_xy computed from characters.
TripleVerdict s_cancellative_by_pxy(const Monoid& m, std::size_t bound);

struct SRegularResult {
    Verdict verdict = Verdict::True;
    std::size_t bound = 0;
    std::optional<Exponents> u;
    std::optional<Exponents> v;
    std::optional<std::size_t> m;
    std::string note;
};
SRegularResult is_s_regular(const Monoid& m, const Exponents& a, std::size_t bound);

struct PcResult {
    Prime prime;
    // For each generator b outside the prime: (b, n, t) with c^n = b t, if found.
    std::vector<std::tuple<std::size_t, std::size_t, Exponents>> certificates;
    std::vector<std::size_t> unverified;
};
PcResult p_c(const Monoid& m, const Exponents& c, std::size_t bound);

bool is_torsion_free(const Monoid& m, std::size_t bound);

struct SmoothResult {
    bool smooth = false;
    std::size_t free_rank = 0;   // r in N^r x Z^s
    std::size_t unit_rank = 0;   // s
    std::string reason;
};
SmoothResult is_smooth_monoid(const Monoid& m, std::size_t bound);

struct SeminormalResult {
    bool seminormal = true;
    std::size_t bound = 0;
    std::optional<Vector> witness;  // x in G with 2x, 3x in M but x not found in M
    std::optional<std::pair<Exponents, Exponents>> squares;  // (m2, m3)
};
SeminormalResult is_seminormal(const Monoid& m, std::size_t bound);

/// x = y after inverting the generators in `invert`.
bool equal_after_inverting(const MonoidPresentation& p, const std::vector<char>& invert, const Exponents& x,
                           const Exponents& y);

} // namespace msch
