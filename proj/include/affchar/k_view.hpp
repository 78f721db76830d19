#pragma once

#include "affchar/orbit_char.hpp"

namespace affchar {

enum class Parity { even, odd };

/// A twisted equivariant K-class in its finite, post-Mackey form: an element
/// of the free Z-module on an orbit space, together with a degree parity.
/// "even" is the degree congruent to the dimension, where the group is
/// nonzero; odd classes vanish, so a nonzero odd class cannot be built.
/// The standard orientation (the ordered coordinate basis) is fixed globally.
class TeKClass {
public:
    TeKClass() = default;
    explicit TeKClass(OrbitSpace space, Parity parity = Parity::even)
        : space_(std::move(space)), parity_(parity) {}

    static TeKClass basis(const OrbitSpace& space, const Vec& weight);

    /// Bulk constructor from raw weight/coefficient pairs (even parity).
    static TeKClass from_weights(const OrbitSpace& space,
                                 std::vector<std::pair<Vec, Int>>&& raw);

    const OrbitSpace& space() const { return space_; }
    Parity parity() const { return parity_; }
    const std::vector<std::pair<Vec, Int>>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    /// Errors: ParityMismatch when adding a nonzero term to an odd class.
    void add(const Vec& weight, const Int& c);

    bool operator==(const TeKClass& rhs) const {
        return space_ == rhs.space_ && parity_ == rhs.parity_ && terms_ == rhs.terms_;
    }
    bool operator!=(const TeKClass& rhs) const { return !(*this == rhs); }

    std::string to_string() const;

private:
    OrbitSpace space_;
    Parity parity_ = Parity::even;
    std::vector<std::pair<Vec, Int>> terms_;
};

/// The Mackey-decomposition isomorphism, the identity on the shared orbit
/// basis. The underlying identification depends on a homotopy class of
/// twisting isomorphisms; the canonical splitting is fixed here, and any
/// alternative choice twists the identification by a line bundle.
/// Errors: ParityMismatch on odd classes.
CharElement md_iso(const TeKClass& x);
TeKClass md_iso_inv(const CharElement& x);

/// Push-forward along a map of finite orbit sets with discrete fibers: the
/// coefficient at a target orbit is the sum over its fiber.
TeKClass pushforward_finite(const std::function<Vec(const Vec&)>& map, const OrbitSpace& target,
                            const TeKClass& x);

/// Induced map of a finite covering: push forward along tdq into the
/// intermediate quotient Lambda' / tdq(K Pi), then pull back along the
/// surjection r from Lambda'/K'Pi' (copying each coefficient to every
/// preimage class). Errors: NotCovering.
TeKClass q_sharp(const TorusMorphism& q, const Level& tau, const TeKClass& x);

/// Induced map of the first-factor inclusion: realize the product splitting
/// of the orbit set (checked to be a bijection), then push forward along the
/// projection onto the first factor.
/// Errors: NotBlockDiagonal; SplitFailure.
TeKClass i1_sharp(const Level& tau1, const Level& tau2, const TeKClass& x);

/// Induced map of a local injection, composed through the canonical
/// decomposition. Satisfies md_iso . f_sharp = char(f) . md_iso.
///
/// This composite is the right notion of wrong-way map here: the classical
/// pull-back composed with the twisting change is identically zero whenever
/// the rank difference is odd (the nonvanishing degrees of source and target
/// then have opposite parity), so no naturality statement could go through
/// it.
/// Errors: NotLocalInjection; NotPositive.
TeKClass f_sharp(const TorusMorphism& f, const Level& tau, const TeKClass& x);

}  // namespace affchar
