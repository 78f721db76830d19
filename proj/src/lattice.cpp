#include "affchar/lattice.hpp"

#include "affchar/errors.hpp"

#include <algorithm>

namespace affchar {

namespace {

// Floor quotient, exact at any magnitude.
Int fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int fmod(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

}  // namespace

SnfResult snf(const IntMat& a) {
    const int m = a.rows(), n = a.cols();
    SnfResult res;
    res.d = a;
    res.u = IntMat::identity(m);
    res.u_inv = IntMat::identity(m);
    res.v = IntMat::identity(n);
    res.v_inv = IntMat::identity(n);
    IntMat& d = res.d;

    auto row_sub = [&](int dst, int src, const Int& q) {
        // row dst -= q * row src; u <- E u, u_inv <- u_inv E^{-1}
        d.add_row_multiple(dst, src, -q);
        res.u.add_row_multiple(dst, src, -q);
        res.u_inv.add_col_multiple(src, dst, q);
    };
    auto col_sub = [&](int dst, int src, const Int& q) {
        d.add_col_multiple(dst, src, -q);
        res.v.add_col_multiple(dst, src, -q);
        res.v_inv.add_row_multiple(src, dst, q);
    };
    auto row_swap = [&](int i, int j) {
        d.swap_rows(i, j);
        res.u.swap_rows(i, j);
        res.u_inv.swap_cols(i, j);
    };
    auto col_swap = [&](int i, int j) {
        d.swap_cols(i, j);
        res.v.swap_cols(i, j);
        res.v_inv.swap_rows(i, j);
    };

    int t = 0;
    const int bound = std::min(m, n);
    while (t < bound) {
        // Pivot: nonzero entry of the trailing submatrix minimizing
        // (|value|, row, col). Already-diagonal inputs keep their pivots.
        int pi = -1, pj = -1;
        Int best;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j) {
                if (d.at(i, j) == 0) continue;
                Int v = abs(d.at(i, j));
                if (pi < 0 || v < best) { best = v; pi = i; pj = j; }
            }
        if (pi < 0) break;
        row_swap(t, pi);
        col_swap(t, pj);

        for (;;) {
            bool clean = true;
            for (int i = t + 1; i < m; ++i) {
                if (d.at(i, t) == 0) continue;
                Int q = fdiv(d.at(i, t), d.at(t, t));
                row_sub(i, t, q);
                if (d.at(i, t) != 0) { row_swap(t, i); clean = false; }
            }
            for (int j = t + 1; j < n; ++j) {
                if (d.at(t, j) == 0) continue;
                Int q = fdiv(d.at(t, j), d.at(t, t));
                col_sub(j, t, q);
                if (d.at(t, j) != 0) { col_swap(t, j); clean = false; }
            }
            if (!clean) continue;

            // Divisibility: the pivot must divide every remaining entry.
            bool fixed = false;
            for (int i = t + 1; i < m && !fixed; ++i)
                for (int j = t + 1; j < n && !fixed; ++j)
                    if (fmod(d.at(i, j), d.at(t, t)) != 0) {
                        row_sub(t, i, Int(-1));  // row t += row i
                        fixed = true;
                    }
            if (!fixed) break;
        }
        ++t;
    }
    res.rank = t;

    for (int i = 0; i < bound; ++i)
        if (d.at(i, i) < 0) {
            d.negate_col(i);
            res.v.negate_col(i);
            res.v_inv.negate_row(i);
        }
    return res;
}

IntMat column_hermite_basis(const IntMat& a) {
    const int m = a.rows(), n = a.cols();
    IntMat h = a;
    int r = 0;
    for (int i = 0; i < m && r < n; ++i) {
        // Euclid across columns >= r on row i until a single nonzero remains.
        for (;;) {
            int p = -1;
            Int best;
            for (int j = r; j < n; ++j) {
                if (h.at(i, j) == 0) continue;
                Int v = abs(h.at(i, j));
                if (p < 0 || v < best) { best = v; p = j; }
            }
            if (p < 0) break;
            bool others = false;
            for (int j = r; j < n; ++j) {
                if (j == p || h.at(i, j) == 0) continue;
                h.add_col_multiple(j, p, -fdiv(h.at(i, j), h.at(i, p)));
                if (h.at(i, j) != 0) others = true;
            }
            if (!others) {
                h.swap_cols(r, p);
                break;
            }
        }
        if (h.at(i, r) == 0) continue;
        if (h.at(i, r) < 0) h.negate_col(r);
        for (int j = 0; j < r; ++j) {
            Int q = fdiv(h.at(i, j), h.at(i, r));
            h.add_col_multiple(j, r, -q);
        }
        ++r;
    }
    return h.col_range(0, r);
}

IntMat kernel_saturated(const IntMat& a) {
    SnfResult s = snf(a);
    return column_hermite_basis(s.v.col_range(s.rank, a.cols()));
}

bool LatticeMembership::contains(const Vec& b, Vec* solution) const {
    require(static_cast<int>(b.size()) == rows_, "ShapeMismatch", "vector length mismatch");
    Vec ub = s_.u.apply(b);
    Vec y(cols_, Int(0));
    for (int i = 0; i < rows_; ++i) {
        if (i < s_.rank) {
            if (fmod(ub[i], s_.d.at(i, i)) != 0) return false;
            y[i] = ub[i] / s_.d.at(i, i);
        } else if (ub[i] != 0) {
            return false;
        }
    }
    if (solution) *solution = s_.v.apply(y);
    return true;
}

bool in_column_lattice(const IntMat& a, const Vec& b, Vec* solution) {
    return LatticeMembership(a).contains(b, solution);
}

Vec QuotientStructure::reduce(const Vec& v) const {
    require(static_cast<int>(v.size()) == ambient_rank_, "ShapeMismatch", "vector length mismatch");
    Vec y = to_normal_.apply(v);
    for (int i = 0; i < ambient_rank_; ++i) {
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), y[i].get_mpz_t(), factors_[i].get_mpz_t());
        y[i] = r;
    }
    return from_normal_.apply(y);
}

std::vector<Vec> QuotientStructure::enumerate() const {
    std::vector<Vec> out;
    Vec y(ambient_rank_, Int(0));
    for (;;) {
        out.push_back(from_normal_.apply(y));
        int i = ambient_rank_ - 1;
        while (i >= 0) {
            y[i] += 1;
            if (y[i] < factors_[i]) break;
            y[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
    std::sort(out.begin(), out.end(), [](const Vec& a, const Vec& b) { return vec_cmp(a, b) < 0; });
    return out;
}

QuotientStructure quotient(const IntMat& sublattice_basis, int ambient_rank) {
    require(sublattice_basis.rows() == ambient_rank && sublattice_basis.cols() == ambient_rank,
            "ShapeMismatch", "sublattice basis must be square of the ambient rank");
    IntMat canon = column_hermite_basis(sublattice_basis);
    require(canon.cols() == ambient_rank, "SingularSublattice",
            "sublattice basis has determinant zero");
    SnfResult s = snf(canon);
    QuotientStructure q;
    q.ambient_rank_ = ambient_rank;
    q.sublattice_ = canon;
    q.to_normal_ = s.u;
    q.from_normal_ = s.u_inv;
    q.factors_.resize(ambient_rank);
    for (int i = 0; i < ambient_rank; ++i) {
        q.factors_[i] = s.d.at(i, i);
        q.size_ *= q.factors_[i];
    }
    return q;
}

std::vector<Vec> coset_reps_of_inclusion(const IntMat& inner, const IntMat& outer) {
    const int n = outer.rows();
    require(inner.rows() == n && inner.is_square() && outer.is_square(),
            "ShapeMismatch", "coset_reps_of_inclusion expects square bases of equal ambient rank");
    require(outer.det() != 0 && inner.det() != 0, "SingularSublattice", "lattice bases must be full rank");

    // Express inner columns in the outer basis; integrality is the containment test.
    LatticeMembership outer_members(outer);
    IntMat m(n, n);
    for (int j = 0; j < n; ++j) {
        Vec x;
        require(outer_members.contains(inner.col(j), &x), "NotSublattice",
                "inner lattice is not contained in the outer lattice");
        for (int i = 0; i < n; ++i) m.at(i, j) = x[i];
    }
    QuotientStructure q = quotient(m, n);
    std::vector<Vec> reps;
    reps.reserve(static_cast<size_t>(q.size().get_ui()));
    for (const Vec& y : q.enumerate()) reps.push_back(outer.apply(y));
    std::sort(reps.begin(), reps.end(), [](const Vec& a, const Vec& b) { return vec_cmp(a, b) < 0; });
    return reps;
}

PreimageLattice preimage_lattice(const IntMat& f) {
    const int nc = f.cols();
    SnfResult s = snf(f);
    require(s.rank == nc, "NotInjective", "matrix does not have full column rank");

    // U f V = D with d_i > 0; f x integral iff (V^{-1} x)_i in (1/d_i) Z,
    // so the preimage lattice is V diag(1/d_i) Z^{nc}.
    PreimageLattice p;
    p.denom = nc > 0 ? s.d.at(nc - 1, nc - 1) : Int(1);
    IntMat scaled(nc, nc);
    for (int j = 0; j < nc; ++j) {
        Int c = p.denom / s.d.at(j, j);
        for (int i = 0; i < nc; ++i) scaled.at(i, j) = s.v.at(i, j) * c;
    }
    p.numerator = column_hermite_basis(scaled);
    for (int i = 0; i < nc; ++i) p.index *= s.d.at(i, i);
    return p;
}

}  // namespace affchar
