#pragma once

#include "affchar/torus.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace affchar {

/// A finite orbit space: the weight lattice of some torus modulo a full-rank
/// sublattice. For a level tau the sublattice is K * Pi; intermediate
/// quotients (e.g. Lambda' mod tdq(K Pi)) carry their own sublattice.
/// Structural equality compares the lattice, not the matrix that named it.
class OrbitSpace {
public:
    OrbitSpace() = default;
    OrbitSpace(QuotientStructure q, std::string label)
        : q_(std::move(q)), label_(std::move(label)) {}

    int rank() const { return q_.ambient_rank(); }
    const Int& size() const { return q_.size(); }
    const QuotientStructure& structure() const { return q_; }
    const std::string& label() const { return label_; }

    Vec reduce(const Vec& weight) const { return q_.reduce(weight); }
    std::vector<Vec> orbits() const { return q_.enumerate(); }

    bool operator==(const OrbitSpace& rhs) const { return q_ == rhs.q_; }
    bool operator!=(const OrbitSpace& rhs) const { return !(*this == rhs); }

private:
    QuotientStructure q_;
    std::string label_;
};

/// Orbit space Lambda^tau / kappa^tau(Pi) of a positive level.
/// Errors: NotPositive.
OrbitSpace orbit_space_of(const Level& tau);

/// Intermediate quotient of Z^rank by an arbitrary full-rank sublattice.
OrbitSpace orbit_space_mod(const IntMat& sublattice, int rank, std::string label);

/// Element of the free Z-module on an orbit space: finitely supported
/// integer-valued map, stored sparse with canonical representatives as keys,
/// sorted, zero coefficients dropped. Equality is structural.
/// Reduces raw (weight, coefficient) pairs into canonical representatives,
/// sorts, merges duplicates and drops zeros: the shared bulk constructor
/// behind every induced-map formula. Linear-logarithmic, where repeated
/// add() calls would be quadratic on large images.
std::vector<std::pair<Vec, Int>> reduce_and_merge(const OrbitSpace& space,
                                                  std::vector<std::pair<Vec, Int>>&& raw);

class CharElement {
public:
    CharElement() = default;
    explicit CharElement(OrbitSpace space) : space_(std::move(space)) {}

    static CharElement basis(const OrbitSpace& space, const Vec& weight);

    /// Bulk constructor from raw weight/coefficient pairs.
    static CharElement from_weights(const OrbitSpace& space,
                                    std::vector<std::pair<Vec, Int>>&& raw);

    const OrbitSpace& space() const { return space_; }
    const std::vector<std::pair<Vec, Int>>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    const Int& coeff(const Vec& canonical_rep) const;
    void add(const Vec& weight, const Int& c);  // reduces, accumulates, prunes zeros

    CharElement operator+(const CharElement& rhs) const;
    CharElement operator*(const Int& c) const;
    bool operator==(const CharElement& rhs) const {
        return space_ == rhs.space_ && terms_ == rhs.terms_;
    }
    bool operator!=(const CharElement& rhs) const { return !(*this == rhs); }

    std::string to_string() const;

private:
    OrbitSpace space_;
    std::vector<std::pair<Vec, Int>> terms_;
};

/// All orbits of a positive level, canonical representatives in sorted order.
/// Exactly |det K| of them. Errors: NotPositive.
std::vector<Vec> orbit_space(const Level& tau);

/// Weight-independent data of char(f) for one (f, tau): the image lattice,
/// its coset shifts and the target space are computed once, so applying the
/// map to many orbits costs only the per-orbit sums.
class PreparedLocalInjection {
public:
    PreparedLocalInjection(const TorusMorphism& f, const Level& tau);

    const OrbitSpace& target() const { return target_; }
    CharElement apply_basis(const Vec& weight) const;

private:
    IntMat tdf_;
    OrbitSpace target_;
    std::vector<Vec> shifts_;  // representatives of (image lattice)/(K' Pi')
};

/// Weight-independent data of char(q) for a finite covering: the coset
/// representatives of Pi/dq(Pi'), their images tdq(K m), and the target
/// space. Per weight, the whole image costs one matrix-vector product plus
/// one vector addition per representative.
class PreparedCovering {
public:
    PreparedCovering(const TorusMorphism& q, const Level& tau);

    const OrbitSpace& target() const { return target_; }
    const std::vector<Vec>& coset_reps() const { return reps_; }
    const std::vector<Vec>& shifts() const { return shifts_; }  // tdq(K m) per rep
    CharElement apply_basis(const Vec& weight) const;
    Vec base_image(const Vec& weight) const { return tdq_.apply(weight); }

private:
    IntMat tdq_;
    OrbitSpace target_;
    std::vector<Vec> reps_;
    std::vector<Vec> shifts_;
};

/// Induced map of the inclusion into the first factor of a product with a
/// block-diagonal level: basis orbit [lambda] -> [first block of lambda].
CharElement char_i1(const Level& tau1, const Level& tau2, const CharElement& x);

/// Induced map of a finite covering q:
///   [lambda] -> sum over coset representatives m of Pi / dq(Pi') of
///               [tdq(lambda + K m)].
/// Errors: NotCovering.
CharElement char_covering(const TorusMorphism& q, const Level& tau, const CharElement& x);

/// Induced map of a local injection, computed directly: the image of the
/// orbit of lambda under tdf is the coset tdf(lambda) + L with
/// L = tdf(K Pi), which splits into [L : K' Pi'] orbits at the pulled-back
/// level. Errors: NotLocalInjection; NotPositive.
CharElement char_local_injection(const TorusMorphism& f, const Level& tau, const CharElement& x);

/// Image of a single basis orbit under char(f); the workhorse behind
/// char_local_injection.
CharElement char_local_injection_basis(const TorusMorphism& f, const Level& tau, const Vec& weight);

struct FunctorialityWitness {
    Vec orbit;
    CharElement direct;
    CharElement composite;
};

/// Checks char(f) = char(q) . char(i1) . char(fj) on every basis orbit.
struct FunctorialityReport {
    bool equal = true;
    std::vector<FunctorialityWitness> mismatches;
    Int orbits_checked = 0;
};

FunctorialityReport verify_partial_functoriality(const TorusMorphism& f, const Level& tau);

/// The built-in counterexample: maps f(z) = (z, z^-1), g(z1,z2) = (z1 z2,
/// z1 z2^-1), h(z) = (1, z^2) with K = diag(-1,-1) on the target, for which
/// char(f) . char(g) = 2 char(h) although h = g . f.
struct NonfunctorialityReport {
    CharElement char_h;          // char(h)[(0,0)]
    CharElement char_g;          // char(g)[(0,0)]
    CharElement composite;       // char(f)(char(g)[(0,0)])
    bool factor_two = false;     // composite == 2 * char_h
    TorusMorphism f, g, h;
    Level tau, g_star_tau, h_star_tau;
};

NonfunctorialityReport demo_nonfunctoriality();

}  // namespace affchar
