#ifndef HOCHKIT_TENSORHOM_HPP
#define HOCHKIT_TENSORHOM_HPP

#include "hochkit/complex.hpp"

namespace hochkit {

/// Complex of (A,B)-bimodules: terms are modules over A (x) B^op.
struct BimoduleComplex {
    AlgebraPtr left_algebra, right_algebra;
    ChainComplex cx;
};

inline BimoduleComplex bimodule_complex_from(const Bimodule& x, int degree = 0) {
    return BimoduleComplex{x.left_algebra, x.right_algebra, complex_from_module(x.mod, degree)};
}

/// Retag a complex whose terms live over a content-equal algebra (e.g.
/// B vs B (x) k); the action tables are reused unchanged.
inline ChainComplex retag_complex(const ChainComplex& C, const AlgebraPtr& E) {
    if (C.algebra->dim != E->dim || C.algebra->c != E->c || C.algebra->unit != E->unit)
        throw std::invalid_argument("retag_complex: algebras are not content-equal");
    ChainComplex R = C;
    R.algebra = E;
    for (FDModule& t : R.terms) t.algebra = E;
    return R;
}

/// A complex of left B-modules as a (B,k)-bimodule complex.
inline BimoduleComplex as_left_bimodule_complex(const ChainComplex& C) {
    AlgebraPtr B = C.algebra;
    AlgebraPtr k = base_field(B->F);
    return BimoduleComplex{B, k, retag_complex(C, bimodule_algebra(B, k))};
}

/// A complex over B^op (right B-modules) as a (k,B)-bimodule complex.
inline BimoduleComplex as_right_bimodule_complex(const AlgebraPtr& B, const ChainComplex& C) {
    AlgebraPtr k = base_field(B->F);
    return BimoduleComplex{k, B, retag_complex(C, bimodule_algebra(k, B))};
}

// ---------------------------------------------------------------------------
// Tensor product over the middle algebra
// ---------------------------------------------------------------------------

/// x (x)_B y for x in A#B, y in B#C: the quotient of x (x)_k y by the span
/// of (u.b (x) v - u (x) b.v), with the outer (A,C)-actions retained.
struct TensorMid {
    Bimodule result;        // over A (x) C^op
    QuotientSpace space;    // quotient of k^{dim x * dim y}
};

inline TensorMid tensor_mid(const Bimodule& x, const Bimodule& y, const Budget& budget = {}) {
    if (!same_algebra(x.right_algebra, y.left_algebra))
        throw std::invalid_argument("tensor_mid: middle algebras differ");
    const AlgebraPtr& A = x.left_algebra;
    const AlgebraPtr& B = x.right_algebra;
    const AlgebraPtr& C = y.right_algebra;
    const PrimeField& F = A->F;
    int dx = x.dim(), dy = y.dim();
    std::size_t amb = std::size_t(dx) * dy;
    budget.check(dx, dy, "tensor_mid");
    std::vector<Vec> rels;
    for (int b = 0; b < B->dim; ++b) {
        Matrix Rb = x.right_act_basis(b);
        Matrix Lb = y.left_act_basis(b);
        for (int u = 0; u < dx; ++u)
            for (int v = 0; v < dy; ++v) {
                Vec w(amb, 0);
                for (int r = 0; r < dx; ++r)
                    w[std::size_t(r) * dy + v] = F.add(w[std::size_t(r) * dy + v], Rb(r, u));
                for (int s = 0; s < dy; ++s)
                    w[std::size_t(u) * dy + s] = F.sub(w[std::size_t(u) * dy + s], Lb(s, v));
                rels.push_back(std::move(w));
            }
    }
    // ambient module x (x)_k y over A (x) C^op
    AlgebraPtr E = bimodule_algebra(A, C);
    FDModule ambient;
    ambient.algebra = E;
    ambient.dim = int(amb);
    for (int i = 0; i < A->dim; ++i) {
        Matrix La = x.left_act_basis(i);
        for (int k = 0; k < C->dim; ++k) ambient.action.push_back(La.kron(y.right_act_basis(k)));
    }
    ModuleQuotient q = quotient_module(ambient, rels);
    return TensorMid{Bimodule{A, C, std::move(q.module)}, std::move(q.space)};
}

/// One (i,j)-summand of a total tensor term.
struct TensorBlock {
    int i, j;          // X-degree, Y-degree
    int offset, dim;   // position inside the total term
    QuotientSpace space;
};

struct TensorComplex {
    BimoduleComplex cx;
    std::map<int, std::vector<TensorBlock>> blocks;
};

/// Total complex of X (x)_B Y with the Koszul sign (-1)^i on the second
/// differential.
inline TensorComplex tensor_mid_complex(const BimoduleComplex& X, const BimoduleComplex& Y,
                                        const Budget& budget = {}) {
    if (!same_algebra(X.right_algebra, Y.left_algebra))
        throw std::invalid_argument("tensor_mid_complex: middle algebras differ");
    const AlgebraPtr& A = X.left_algebra;
    const AlgebraPtr& C = Y.right_algebra;
    AlgebraPtr E = bimodule_algebra(A, C);
    const PrimeField& F = A->F;
    TensorComplex out;
    out.cx.left_algebra = A;
    out.cx.right_algebra = C;
    if (X.cx.lo > X.cx.hi || Y.cx.lo > Y.cx.hi) {
        out.cx.cx = zero_complex(E);
        return out;
    }
    int nlo = X.cx.lo + Y.cx.lo, nhi = X.cx.hi + Y.cx.hi;
    out.cx.cx.algebra = E;
    out.cx.cx.lo = nlo;
    out.cx.cx.hi = nhi;

    // cache of degreewise quotients
    std::map<std::pair<int, int>, TensorMid> parts;
    auto part = [&](int i, int j) -> const TensorMid& {
        auto key = std::make_pair(i, j);
        auto it = parts.find(key);
        if (it == parts.end()) {
            Bimodule xi{X.left_algebra, X.right_algebra, X.cx.term(i)};
            Bimodule yj{Y.left_algebra, Y.right_algebra, Y.cx.term(j)};
            it = parts.emplace(key, tensor_mid(xi, yj, budget)).first;
        }
        return it->second;
    };

    for (int n = nlo; n <= nhi; ++n) {
        std::vector<TensorBlock> blks;
        FDModule term = zero_module(E);
        for (int i = X.cx.lo; i <= X.cx.hi; ++i) {
            int j = n - i;
            if (!Y.cx.in_window(j)) continue;
            const TensorMid& tm = part(i, j);
            blks.push_back(TensorBlock{i, j, term.dim, tm.result.dim(), tm.space});
            term = direct_sum(term, tm.result.mod);
        }
        out.cx.cx.terms.push_back(std::move(term));
        out.blocks[n] = std::move(blks);
    }
    for (int n = nlo; n < nhi; ++n) {
        Matrix d(F, out.cx.cx.term_dim(n + 1), out.cx.cx.term_dim(n));
        for (const TensorBlock& src : out.blocks[n]) {
            for (const TensorBlock& dst : out.blocks[n + 1]) {
                Matrix piece(F, 0, 0);
                if (dst.i == src.i + 1 && dst.j == src.j) {
                    // d_X (x) 1 on representatives
                    Matrix dx = X.cx.diff(src.i);
                    Matrix step = dx.kron(Matrix::identity(F, Y.cx.term_dim(src.j)));
                    piece = dst.space.projection * (step * src.space.section);
                } else if (dst.i == src.i && dst.j == src.j + 1) {
                    Matrix dy = Y.cx.diff(src.j);
                    Matrix step = Matrix::identity(F, X.cx.term_dim(src.i)).kron(dy);
                    piece = dst.space.projection * (step * src.space.section);
                    if (src.i % 2 != 0) piece = piece.negated();
                } else {
                    continue;
                }
                for (int r = 0; r < piece.rows(); ++r)
                    for (int c = 0; c < piece.cols(); ++c)
                        d(dst.offset + r, src.offset + c) = piece(r, c);
            }
        }
        out.cx.cx.diffs.push_back(std::move(d));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hom over the right-acting algebra
// ---------------------------------------------------------------------------

/// Hom_C(y, z) for y in B#C, z in A#C: right-C-linear maps with the
/// (A,B)-actions (a.T.b)(v) = a T(b v).
struct HomRight {
    Bimodule result;              // over A (x) B^op
    std::vector<Matrix> basis;    // maps z.dim x y.dim
};

inline HomRight hom_right(const Bimodule& y, const Bimodule& z, const Budget& budget = {}) {
    if (!same_algebra(y.right_algebra, z.right_algebra))
        throw std::invalid_argument("hom_right: right algebras differ");
    const AlgebraPtr& A = z.left_algebra;
    const AlgebraPtr& B = y.left_algebra;
    const AlgebraPtr& C = y.right_algebra;
    const PrimeField& F = A->F;
    std::vector<Matrix> on_y, on_z;
    for (int c = 0; c < C->dim; ++c) {
        on_y.push_back(y.right_act_basis(c));
        on_z.push_back(z.right_act_basis(c));
    }
    std::vector<Matrix> basis = intertwiner_basis(F, y.dim(), z.dim(), on_y, on_z, budget);
    AlgebraPtr E = bimodule_algebra(A, B);
    FDModule M;
    M.algebra = E;
    M.dim = int(basis.size());
    for (int i = 0; i < A->dim; ++i) {
        Matrix La = z.left_act_basis(i);
        for (int j = 0; j < B->dim; ++j) {
            Matrix Lb = y.left_act_basis(j);
            Matrix act(F, M.dim, M.dim);
            for (int l = 0; l < M.dim; ++l) {
                Matrix img = La * (basis[l] * Lb);
                auto co = coords_in_matrix_basis(basis, img);
                if (!co) throw std::logic_error("hom_right: action leaves the hom space");
                act.set_col(l, *co);
            }
            M.action.push_back(std::move(act));
        }
    }
    return HomRight{Bimodule{A, B, std::move(M)}, std::move(basis)};
}

struct HomRightComplex {
    BimoduleComplex cx;                         // over A (x) B^op
    std::map<int, std::vector<Matrix>> bases;   // degree -> hom basis for Hom(Y^{-n}, z)
};

/// Hom_C(Y, z) for a complex Y of (B,C)-bimodules and a single (A,C)-
/// bimodule z: degree-n term Hom_C(Y^{-n}, z), differential
/// d(f) = -(-1)^n f o d_Y (matching the hom_complex convention).
inline HomRightComplex hom_right_complex(const BimoduleComplex& Y, const Bimodule& z,
                                         const Budget& budget = {}) {
    const AlgebraPtr& A = z.left_algebra;
    const AlgebraPtr& B = Y.left_algebra;
    AlgebraPtr E = bimodule_algebra(A, B);
    const PrimeField& F = A->F;
    HomRightComplex out;
    out.cx.left_algebra = A;
    out.cx.right_algebra = B;
    if (Y.cx.lo > Y.cx.hi) {
        out.cx.cx = zero_complex(E);
        return out;
    }
    int nlo = -Y.cx.hi, nhi = -Y.cx.lo;
    out.cx.cx.algebra = E;
    out.cx.cx.lo = nlo;
    out.cx.cx.hi = nhi;
    for (int n = nlo; n <= nhi; ++n) {
        Bimodule yn{Y.left_algebra, Y.right_algebra, Y.cx.term(-n)};
        HomRight h = hom_right(yn, z, budget);
        out.bases[n] = std::move(h.basis);
        out.cx.cx.terms.push_back(std::move(h.result.mod));
    }
    for (int n = nlo; n < nhi; ++n) {
        const auto& from = out.bases[n];
        const auto& to = out.bases[n + 1];
        Matrix d(F, int(to.size()), int(from.size()));
        Matrix dy = Y.cx.diff(-n - 1);  // Y^{-n-1} -> Y^{-n}
        for (std::size_t l = 0; l < from.size(); ++l) {
            Matrix img = from[l] * dy;
            if (n % 2 == 0) img = img.negated();  // -(-1)^n
            auto co = coords_in_matrix_basis(to, img);
            if (!co) throw std::logic_error("hom_right_complex: image outside hom space");
            d.set_col(int(l), *co);
        }
        out.cx.cx.diffs.push_back(std::move(d));
    }
    return out;
}

}  // namespace hochkit

#endif
