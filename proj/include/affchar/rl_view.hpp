#pragma once

#include "affchar/k_view.hpp"

namespace affchar {

/// An element of the representation group at a positive level, in its
/// lowest-weight form: a finitely supported integer map on the orbit space,
/// the irreducible V_[lambda] being the basis term at [lambda]. Negative
/// coefficients are allowed (Grothendieck completion). Carries no
/// Hilbert-space data; the induced operations below are determined by the
/// lowest-weight index alone.
///
/// There is deliberately no plain pull-back along a product inclusion here:
/// restricting an irreducible along i_1 is never finitely reducible, which
/// is exactly why i1_bang exists instead.
class PosEnergyRep {
public:
    PosEnergyRep() = default;
    explicit PosEnergyRep(OrbitSpace space) : space_(std::move(space)) {}

    static PosEnergyRep irreducible(const OrbitSpace& space, const Vec& lowest_weight);

    /// Bulk constructor from raw weight/coefficient pairs.
    static PosEnergyRep from_weights(const OrbitSpace& space,
                                     std::vector<std::pair<Vec, Int>>&& raw);

    const OrbitSpace& space() const { return space_; }
    const std::vector<std::pair<Vec, Int>>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    void add(const Vec& weight, const Int& c);

    bool operator==(const PosEnergyRep& rhs) const {
        return space_ == rhs.space_ && terms_ == rhs.terms_;
    }
    bool operator!=(const PosEnergyRep& rhs) const { return !(*this == rhs); }

    std::string to_string() const;

private:
    OrbitSpace space_;
    std::vector<std::pair<Vec, Int>> terms_;
};

/// The lowest-weight isomorphism onto char: basis-preserving.
CharElement lw(const PosEnergyRep& v);
PosEnergyRep lw_inv(const CharElement& x);

/// q^! = q^* on representations; on irreducibles
///   V_[lambda] -> sum over m in Pi/dq(Pi') of V_[tdq(lambda + K m)].
/// Errors: NotCovering.
PosEnergyRep q_bang(const TorusMorphism& q, const Level& tau, const PosEnergyRep& v);

/// i_1^!: the intertwiner-space construction collapses to
///   V_[lambda] -> V_[first block of lambda].
/// Errors: NotBlockDiagonal.
PosEnergyRep i1_bang(const Level& tau1, const Level& tau2, const PosEnergyRep& v);

/// f^! = q^! . i_1^! . (f j)^! through the canonical decomposition.
/// Satisfies lw . f_bang = char(f) . lw. Errors: NotLocalInjection; NotPositive.
PosEnergyRep f_bang(const TorusMorphism& f, const Level& tau, const PosEnergyRep& v);

/// The FHT isomorphism in the finite model: md_iso^{-1} . lw, so the
/// triangle lw = md_iso . fht commutes exactly.
TeKClass fht(const Level& tau, const PosEnergyRep& v);

struct FhtNaturalityWitness {
    Vec orbit;
    TeKClass via_bang;   // fht(f^!(V))
    TeKClass via_sharp;  // f^#(fht(V))
};

struct FhtNaturalityReport {
    bool commutes = true;
    std::vector<FhtNaturalityWitness> mismatches;
    Int irreducibles_checked = 0;
};

/// Checks FHT_{T'} . f^! = f^# . FHT_T on every irreducible at level tau.
FhtNaturalityReport verify_fht_naturality(const TorusMorphism& f, const Level& tau);

}  // namespace affchar
