#pragma once

#include "affchar/orbit_char.hpp"

#include <memory>
#include <mutex>
#include <optional>

namespace affchar {

inline constexpr long kDefaultClosureCap = 100000;

/// A finite group of unimodular matrices acting on the weight lattice,
/// given by generators. The closure is computed once (breadth-first, in a
/// deterministic order) behind a once-flag shared across copies, so it is
/// safe to request and read from concurrent contexts.
class WeylGroup {
public:
    WeylGroup() : WeylGroup(0, {}) {}
    WeylGroup(int rank, std::vector<IntMat> generators);

    int rank() const { return rank_; }
    const std::vector<IntMat>& generators() const { return generators_; }

    /// Full element list (identity first, then by breadth-first discovery).
    /// The cap bounds the computation the first time; a closure that was
    /// already computed is simply returned.
    /// Errors: ClosureCapExceeded if more than cap elements appear.
    const std::vector<IntMat>& closure(long cap = kDefaultClosureCap) const;

    Int order(long cap = kDefaultClosureCap) const { return Int(static_cast<long>(closure(cap).size())); }

    bool same_group(const WeylGroup& rhs, long cap = kDefaultClosureCap) const;

private:
    struct ClosureCache {
        std::once_flag once;
        std::vector<IntMat> elements;
    };

    int rank_;
    std::vector<IntMat> generators_;
    std::shared_ptr<ClosureCache> cache_;
};

/// A compact connected group with torsion-free pi_1, reduced to the data the
/// computations consume: the level on a maximal torus, the Weyl action on
/// weights, and optionally rho (half the sum of the positive roots).
/// Construction checks that the level is W-equivariant (w K w^t = K).
struct CompactGroupData {
    int rank = 0;
    Level level;
    WeylGroup weyl;
    std::optional<Vec> rho;

    CompactGroupData() = default;
    CompactGroupData(Level lv, WeylGroup w, std::optional<Vec> r = std::nullopt);
};

/// A W-orbit of regular classes: the full set of torus-orbit representatives
/// (sorted; members.front() is the canonical handle).
struct RegularOrbit {
    std::vector<Vec> members;
    const Vec& rep() const { return members.front(); }
};

/// Element of char(G, tau): finitely supported integer map on regular
/// orbits, keyed by canonical orbit handles, sorted.
class GroupCharElement {
public:
    const std::vector<std::pair<Vec, Int>>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    void add(const Vec& orbit_rep, const Int& c);
    bool operator==(const GroupCharElement& rhs) const { return terms_ == rhs.terms_; }
    bool operator!=(const GroupCharElement& rhs) const { return !(*this == rhs); }
    std::string to_string() const;

private:
    std::vector<std::pair<Vec, Int>> terms_;
};

/// True iff the extended-affine-Weyl stabilizer of lambda is trivial, i.e.
/// the W-orbit of lambda's class mod K*Pi has |W| elements (the affine part
/// never stabilizes because kappa is injective for positive levels).
bool is_regular(const Vec& lambda, const CompactGroupData& g, long cap = kDefaultClosureCap);

/// Canonical orbit handle (lexicographically least member class) of the
/// W-orbit through a weight.
Vec group_orbit_handle(const CompactGroupData& g, const Vec& weight, long cap = kDefaultClosureCap);

/// The basis element of char(G, tau) at the orbit through a weight.
/// Errors: NotRegular.
GroupCharElement group_basis_orbit(const CompactGroupData& g, const Vec& weight,
                                   long cap = kDefaultClosureCap);

/// All regular orbits of Lambda/K*Pi under W, sorted by canonical handle.
/// The extended affine Weyl group acts through K on the translation part, so
/// the quotient by the group and the quotient by its K-image are the same
/// set; both notations name what this computes.
std::vector<RegularOrbit> char_group(const CompactGroupData& g, long cap = kDefaultClosureCap);

/// char(i) for the maximal torus inclusion: [lambda]_G -> sum of the |W|
/// torus orbits in the W-orbit of lambda. Errors: NotRegular.
CharElement char_max_torus(const CompactGroupData& g, const GroupCharElement& x,
                           long cap = kDefaultClosureCap);

/// Morphism data between two compact groups: the restriction of f to the
/// maximal tori plus the images of the source Weyl generators. Construction
/// checks that f_star extends to an injective homomorphism of the closures.
struct GroupMorphismData {
    CompactGroupData source;  // H
    CompactGroupData target;  // G
    TorusMorphism torus_map;  // df restricted to the maximal torus of H
    std::vector<IntMat> f_star;

    GroupMorphismData() = default;
    GroupMorphismData(CompactGroupData src, CompactGroupData tgt, TorusMorphism t,
                      std::vector<IntMat> fs, long cap = kDefaultClosureCap);
};

/// Lattice-level proxies of the decomposable condition. Condition (2)
/// (torsion-free pi_1 of H/ker f) cannot be decided from this data and is
/// reported as user-asserted.
struct DecomposableReport {
    bool pullback_positive = false;
    bool weight_equivariant = false;   // tdf . f_star(w) = w . tdf per generator
    bool perp_action_trivial = false;  // f_star(w) fixes the perp lattice pointwise
    int equivariance_witness = -1;     // generator index, when violated
    int perp_witness = -1;
    bool passed() const { return pullback_positive && weight_equivariant && perp_action_trivial; }
    static constexpr const char* kPi1Note =
        "condition (2), torsion-free pi_1 of H/ker(f): USER-ASSERTED, not checked";
};

DecomposableReport check_decomposable(const GroupMorphismData& m, const Level& tau);

/// char(f) for a decomposable homomorphism: reduce to the maximal torus,
/// apply the torus-level induced map, and regroup the resulting multiset of
/// torus orbits into W(H)-orbit blocks of uniform multiplicity.
/// Errors: GroupingFailure when the multiset is not such a union (a violated
/// decomposable condition or a non-regular image); NotRegular on irregular
/// input orbits.
GroupCharElement char_general(const GroupMorphismData& m, const Level& tau,
                              const GroupCharElement& x, long cap = kDefaultClosureCap);

/// Verified orbit correspondence [lambda] -> [lambda + rho] from all orbits
/// at the low level onto the regular orbits at the high level. The table is
/// built on canonical orbit representatives and checked exhaustively:
/// every image must be regular, images must be pairwise distinct, and every
/// regular orbit must be hit. Errors: NotBijective, naming the offending
/// orbit (inconsistent (K_low, K_high, rho) input).
struct RhoShiftTable {
    std::vector<std::pair<Vec, Vec>> pairs;  // (low orbit rep, high regular orbit handle)
};

RhoShiftTable rho_shift(const CompactGroupData& g_low, const CompactGroupData& g_high,
                        long cap = kDefaultClosureCap);

}  // namespace affchar
