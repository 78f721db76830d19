#include "affchar/torus.hpp"

#include "affchar/errors.hpp"

namespace affchar {

Level::Level(Torus torus, IntMat k) : torus_(torus), k_(std::move(k)) {
    require(k_.rows() == torus_.rank && k_.cols() == torus_.rank, "ShapeMismatch",
            "level matrix must be rank x rank");
    require(k_.is_symmetric(), "NotSymmetric", "level matrix must be symmetric");
}

bool is_positive(const Level& tau) {
    require(tau.k().is_symmetric(), "NotSymmetric", "level matrix must be symmetric");
    const IntMat neg = -tau.k();
    for (int k = 1; k <= tau.rank(); ++k)
        if (neg.block(0, 0, k, k).det() <= 0) return false;
    return true;
}

void require_positive(const Level& tau, const char* what) {
    require(is_positive(tau), "NotPositive", std::string(what) + " must be a positive level");
}

const char* to_string(MorphismKind k) {
    switch (k) {
        case MorphismKind::local_injection: return "local_injection";
        case MorphismKind::finite_covering: return "finite_covering";
        case MorphismKind::product_inclusion_first_factor: return "product_inclusion_first_factor";
        case MorphismKind::general: return "general";
    }
    return "general";
}

TorusMorphism::TorusMorphism(Torus source, Torus target, IntMat f, MorphismKind kind)
    : source_(source), target_(target), f_(std::move(f)), kind_(kind) {
    require(f_.rows() == target_.rank && f_.cols() == source_.rank, "ShapeMismatch",
            "morphism matrix must be target.rank x source.rank");
    if (kind_ == MorphismKind::finite_covering)
        require(is_finite_covering_matrix(), "NotCovering",
                "finite covering requires a square matrix with nonzero determinant");
    if (kind_ == MorphismKind::local_injection || kind_ == MorphismKind::product_inclusion_first_factor)
        require(is_local_injection_matrix(), "NotLocalInjection",
                "local injection requires full column rank");
}

bool TorusMorphism::is_finite_covering_matrix() const {
    return f_.is_square() && f_.det() != 0;
}

bool TorusMorphism::is_local_injection_matrix() const {
    return snf(f_).rank == f_.cols();
}

TorusMorphism TorusMorphism::identity(Torus t) {
    return TorusMorphism(t, t, IntMat::identity(t.rank), MorphismKind::finite_covering);
}

Level pullback_level(const TorusMorphism& f, const Level& tau) {
    require(f.target() == tau.torus(), "ShapeMismatch", "level must live on the morphism target");
    IntMat k = f.transposed_df() * tau.k() * f.f();
    Level out(f.source(), std::move(k));
    require_positive(out, "pulled-back level");
    return out;
}

Level product_level(const Level& tau1, const Level& tau2) {
    const int n1 = tau1.rank(), n2 = tau2.rank();
    IntMat k(n1 + n2, n1 + n2);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) k.at(i, j) = tau1.k().at(i, j);
    for (int i = 0; i < n2; ++i)
        for (int j = 0; j < n2; ++j) k.at(n1 + i, n1 + j) = tau2.k().at(i, j);
    return Level(Torus{n1 + n2}, std::move(k));
}

void split_level(const Level& tau, int first_rank, Level* tau1, Level* tau2) {
    const int n = tau.rank(), n1 = first_rank, n2 = n - first_rank;
    require(n1 >= 0 && n2 >= 0, "ShapeMismatch", "invalid split rank");
    require(tau.k().block(0, n1, n1, n2).is_zero() && tau.k().block(n1, 0, n2, n1).is_zero(),
            "NotBlockDiagonal", "level does not split along the requested factors");
    if (tau1) *tau1 = Level(Torus{n1}, tau.k().block(0, 0, n1, n1));
    if (tau2) *tau2 = Level(Torus{n2}, tau.k().block(n1, n1, n2, n2));
}

IntMat orthogonal_complement_lattice(const TorusMorphism& f, const Level& tau) {
    require(f.is_local_injection_matrix(), "NotLocalInjection",
            "orthogonal complement needs a local injection");
    require(f.target() == tau.torus(), "ShapeMismatch", "level must live on the morphism target");
    return kernel_saturated(f.transposed_df() * tau.k());
}

namespace {

MorphismDecomposition decompose_impl(const TorusMorphism& f, const Level& tau,
                                     const IntMat* forced_perp) {
    require(f.is_local_injection_matrix(), "NotLocalInjection", "decompose needs a local injection");
    require_positive(tau, "level");
    const int n = f.target().rank, ns = f.source().rank;

    // Covering stage: the lattice of source/ker(f) is the full preimage
    // P = F^{-1}(Z^n) = (1/denom) N Z^{ns}; in the Hermite basis of P the
    // covering matrix is Q = B_P^{-1}, integral because Z^{ns} lies inside P.
    PreimageLattice p = preimage_lattice(f.f());
    IntMat q_mat(ns, ns);
    {
        // Q = denom * N^{-1}; solve N * (column) = denom * e_j exactly.
        for (int j = 0; j < ns; ++j) {
            Vec rhs(ns, Int(0));
            rhs[j] = p.denom;
            Vec x;
            bool ok = in_column_lattice(p.numerator, rhs, &x);
            require(ok, "InternalError", "preimage numerator must divide denom * identity");
            for (int i = 0; i < ns; ++i) q_mat.at(i, j) = x[i];
        }
    }

    // Injection stage: G = F * B_P maps the quotient torus into the target.
    // G = F * numerator / denom, entrywise exact.
    IntMat g(n, ns);
    {
        IntMat fn = f.f() * p.numerator;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < ns; ++j) {
                mpz_divexact(g.at(i, j).get_mpz_t(), fn.at(i, j).get_mpz_t(),
                             p.denom.get_mpz_t());
            }
    }

    IntMat perp = forced_perp ? *forced_perp : kernel_saturated(f.transposed_df() * tau.k());
    const int perp_rank = perp.cols();
    require(perp.rows() == n && perp_rank == n - ns, "NotLocalInjection",
            "perp lattice must have rank n - n'");
    if (forced_perp)
        require(column_hermite_basis(perp) ==
                    column_hermite_basis(kernel_saturated(f.transposed_df() * tau.k())),
                "ShapeMismatch", "supplied perp basis must span the orthogonal complement lattice");

    MorphismDecomposition out;
    Torus mid{ns};
    Torus prod{n};
    out.q = TorusMorphism(f.source(), mid, q_mat, MorphismKind::finite_covering);
    IntMat i1(n, ns);
    for (int i = 0; i < ns; ++i) i1.at(i, i) = 1;
    out.i1 = TorusMorphism(mid, prod, std::move(i1), MorphismKind::product_inclusion_first_factor);
    IntMat fj = g.hstack(perp);
    require(fj.det() != 0, "NotLocalInjection", "covering matrix [G | perp] must be invertible");
    out.fj = TorusMorphism(prod, f.target(), fj, MorphismKind::finite_covering);
    out.perp_rank = perp_rank;
    out.perp_basis = perp;
    out.degree_q = abs(q_mat.det());
    out.degree_fj = abs(out.fj.f().det());

    // fj pulls tau back to diag(K1, K2); the cross blocks vanish because the
    // perp basis spans the kernel of F^t K.
    Level pulled = pullback_level(out.fj, tau);
    split_level(pulled, ns, &out.split_first, &out.split_second);
    require_positive(out.split_first, "first split level");
    require_positive(out.split_second, "second split level");

    // Two identities kept as internal consistency checks: the composite
    // matrix reproduces F, and q pulls the first split level back to f^* tau.
    require(out.fj.f() * out.i1.f() * out.q.f() == f.f(), "InternalError",
            "fj * i1 * q must equal F");
    Level back = pullback_level(out.q, out.split_first);
    require(back.k() == f.transposed_df() * tau.k() * f.f(), "InternalError",
            "q^* K1 must equal F^t K F");
    return out;
}

}  // namespace

MorphismDecomposition decompose(const TorusMorphism& f, const Level& tau) {
    return decompose_impl(f, tau, nullptr);
}

MorphismDecomposition decompose_with_perp(const TorusMorphism& f, const Level& tau,
                                          const IntMat& perp_basis) {
    return decompose_impl(f, tau, &perp_basis);
}

}  // namespace affchar
