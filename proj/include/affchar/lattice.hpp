#pragma once

#include "affchar/int_mat.hpp"

#include <optional>

namespace affchar {

/// Smith normal form with both transforms and their inverses:
///    u * a * v = d,   |det u| = |det v| = 1,
/// d diagonal, nonnegative, with d_1 | d_2 | ... on the nonzero entries.
struct SnfResult {
    IntMat d;
    IntMat u, u_inv;
    IntMat v, v_inv;
    int rank = 0;  // number of nonzero diagonal entries
};

SnfResult snf(const IntMat& a);

/// Unique column Hermite basis of the column lattice of a: column echelon
/// with positive pivots and entries left of each pivot reduced into [0, pivot).
/// Zero columns are dropped, so the result has rank(a) columns. Two matrices
/// spanning the same lattice produce identical output.
IntMat column_hermite_basis(const IntMat& a);

/// Basis of { x in Z^cols : a*x = 0 }. The basis is saturated (the quotient
/// of Z^cols by its span is torsion-free) and Hermite-canonical.
IntMat kernel_saturated(const IntMat& a);

/// Does b lie in the column lattice of a? On success optionally yields one
/// integer solution of a*x = b.
bool in_column_lattice(const IntMat& a, const Vec& b, Vec* solution = nullptr);

/// Repeated membership tests against one column lattice; the normal form is
/// computed once.
class LatticeMembership {
public:
    explicit LatticeMembership(const IntMat& a) : rows_(a.rows()), cols_(a.cols()), s_(snf(a)) {}
    bool contains(const Vec& b, Vec* solution = nullptr) const;

private:
    int rows_, cols_;
    SnfResult s_;
};

/// Finite quotient Z^n / (sublattice spanned by the columns of B), B square
/// full-rank. Coordinates and representatives are canonical: the sublattice
/// basis is Hermite-canonicalized before the SNF transforms are taken, so two
/// bases of the same lattice give identical reduce() and enumerate().
class QuotientStructure {
public:
    QuotientStructure() = default;

    int ambient_rank() const { return ambient_rank_; }
    const IntMat& sublattice_basis() const { return sublattice_; }
    const Vec& cyclic_factors() const { return factors_; }
    const IntMat& to_normal_coords() const { return to_normal_; }
    const IntMat& from_normal_coords() const { return from_normal_; }
    const Int& size() const { return size_; }

    /// Canonical representative of v's coset: normal coordinates reduced
    /// componentwise into [0, d_i), mapped back. Idempotent; constant on
    /// cosets; reduce(v) == reduce(w) iff v - w lies in the sublattice.
    Vec reduce(const Vec& v) const;

    /// All canonical representatives, sorted lexicographically.
    std::vector<Vec> enumerate() const;

    bool operator==(const QuotientStructure& rhs) const {
        return ambient_rank_ == rhs.ambient_rank_ && sublattice_ == rhs.sublattice_;
    }

    friend QuotientStructure quotient(const IntMat&, int);

private:
    int ambient_rank_ = 0;
    IntMat sublattice_;  // Hermite-canonical basis
    Vec factors_;
    IntMat to_normal_, from_normal_;
    Int size_ = 1;
};

/// Errors: SingularSublattice if det(B) = 0.
QuotientStructure quotient(const IntMat& sublattice_basis, int ambient_rank);

/// Representatives of (outer lattice)/(inner lattice), both given by square
/// full-rank column bases in the same ambient Z^n. Exactly
/// |det inner| / |det outer| representatives, pairwise inequivalent, sorted.
/// Errors: NotSublattice if some inner column is outside the outer lattice.
std::vector<Vec> coset_reps_of_inclusion(const IntMat& inner, const IntMat& outer);

/// The lattice F^{-1}(Z^n) = { x in Q^{n'} : F*x integral } for injective F,
/// returned exactly as (1/denom) * (columns of numerator). Contains Z^{n'};
/// the index [(1/denom)N : Z^{n'}] equals the order of the kernel of the
/// corresponding torus homomorphism. The numerator is Hermite-canonical.
/// Errors: NotInjective if F does not have full column rank.
struct PreimageLattice {
    IntMat numerator;
    Int denom = 1;
    Int index = 1;
};

PreimageLattice preimage_lattice(const IntMat& f);

}  // namespace affchar
