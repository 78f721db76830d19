#pragma once

#include "affchar/lattice.hpp"

namespace affchar {

/// A torus carries nothing but its rank: the integral lattice and the weight
/// lattice are both identified with Z^rank through the standard pairing, and
/// twisted weights become plain integer vectors after the fixed splitting.
struct Torus {
    int rank = 0;
    bool operator==(const Torus& rhs) const { return rank == rhs.rank; }
};

/// A level is the matrix K of the homomorphism the central extension induces
/// from the integral lattice to the weight lattice. K is symmetric, and the
/// level is positive when -K is positive definite; the paper's examples (all
/// with negative diagonal K) fix this sign convention.
class Level {
public:
    Level() = default;
    Level(Torus torus, IntMat k);

    const Torus& torus() const { return torus_; }
    int rank() const { return torus_.rank; }
    const IntMat& k() const { return k_; }

    bool operator==(const Level& rhs) const { return torus_ == rhs.torus_ && k_ == rhs.k_; }

private:
    Torus torus_;
    IntMat k_;
};

/// Exact positivity test: -K positive definite, decided by the signs of the
/// leading principal minors. Errors: NotSymmetric.
bool is_positive(const Level& tau);
void require_positive(const Level& tau, const char* what);

enum class MorphismKind {
    local_injection,
    finite_covering,
    product_inclusion_first_factor,
    general,
};

const char* to_string(MorphismKind k);

/// A torus homomorphism, stored as the matrix of its tangent map
/// (target.rank x source.rank columns = images of the source basis).
/// The declared kind is validated against the matrix on construction.
class TorusMorphism {
public:
    TorusMorphism() = default;
    TorusMorphism(Torus source, Torus target, IntMat f, MorphismKind kind);

    const Torus& source() const { return source_; }
    const Torus& target() const { return target_; }
    const IntMat& f() const { return f_; }
    IntMat transposed_df() const { return f_.transpose(); }
    MorphismKind kind() const { return kind_; }

    bool is_finite_covering_matrix() const;
    bool is_local_injection_matrix() const;

    static TorusMorphism identity(Torus t);

private:
    Torus source_, target_;
    IntMat f_;
    MorphismKind kind_ = MorphismKind::general;
};

/// K' = F^t K F on the source. Errors: NotPositive when -K' is not positive
/// definite (the map was not a local injection, or the input degenerate).
Level pullback_level(const TorusMorphism& f, const Level& tau);

/// Block-diagonal level diag(K1, K2) on the product torus.
Level product_level(const Level& tau1, const Level& tau2);

/// Split a block-diagonal level into its two factors.
/// Errors: NotBlockDiagonal if the off-diagonal blocks are nonzero.
void split_level(const Level& tau, int first_rank, Level* tau1, Level* tau2);

/// Basis of ker(F^t K) inside the target's integral lattice: the lattice of
/// the orthogonal completion torus. Saturated; rank = n - n'.
/// Errors: NotLocalInjection.
IntMat orthogonal_complement_lattice(const TorusMorphism& f, const Level& tau);

/// Canonical decomposition of a local injection through the orthogonal
/// completion torus:
///     source --q--> source/ker --i1--> source/ker x perp --fj--> target
/// with q, fj finite coverings and fj pulling tau back to diag(K1, K2).
struct MorphismDecomposition {
    TorusMorphism q;
    TorusMorphism i1;
    TorusMorphism fj;
    int perp_rank = 0;
    IntMat perp_basis;
    Level split_first, split_second;
    Int degree_q = 1, degree_fj = 1;
};

/// The perp basis is fixed to the Hermite basis of the saturated kernel, so
/// the stage matrices are reproducible across runs. Any other basis of the
/// perp lattice gives different raw matrices but identical induced maps
/// downstream; only the latter is canonical.
/// Errors: NotLocalInjection; NotPositive.
MorphismDecomposition decompose(const TorusMorphism& f, const Level& tau);

/// Same decomposition with a caller-chosen basis of the perp lattice (must
/// span the same lattice). Exists so invariance of downstream outputs under
/// re-basing the perp can be exercised directly.
MorphismDecomposition decompose_with_perp(const TorusMorphism& f, const Level& tau,
                                          const IntMat& perp_basis);

}  // namespace affchar
