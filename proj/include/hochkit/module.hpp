#ifndef HOCHKIT_MODULE_HPP
#define HOCHKIT_MODULE_HPP

#include <memory>
#include <string>
#include <vector>

#include "hochkit/algebra.hpp"

namespace hochkit {

/// Finite-dimensional left module: one action matrix per algebra basis vector.
struct FDModule {
    AlgebraPtr algebra;
    int dim = 0;
    std::vector<Matrix> action;  // action[i] = rho(e_i), dim x dim

    const PrimeField& field() const { return algebra->F; }

    Matrix act(const Vec& a) const {
        Matrix m(field(), dim, dim);
        for (int i = 0; i < algebra->dim; ++i)
            if (a[i] != 0) m = m + action[i].scaled(a[i]);
        return m;
    }
    Matrix act_unit() const { return act(algebra->unit); }
};

inline Validation validate_module(const FDModule& M) {
    if (!M.algebra) return Validation::fail("module has no algebra");
    if (M.dim < 0) return Validation::fail("negative dimension");
    if (int(M.action.size()) != M.algebra->dim)
        return Validation::fail("action table has wrong length");
    for (const Matrix& m : M.action)
        if (m.rows() != M.dim || m.cols() != M.dim)
            return Validation::fail("action matrix has wrong shape");
    if (M.act_unit() != Matrix::identity(M.field(), M.dim))
        return Validation::fail("rho(unit) != identity");
    const FinAlgebra& A = *M.algebra;
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) {
            Matrix lhs = M.action[i] * M.action[j];
            Matrix rhs(M.field(), M.dim, M.dim);
            for (int k = 0; k < A.dim; ++k) {
                u32 cv = A.cval(i, j, k);
                if (cv != 0) rhs = rhs + M.action[k].scaled(cv);
            }
            if (lhs != rhs)
                return Validation::fail("rho(" + A.basis_name(i) + ")rho(" + A.basis_name(j) +
                                        ") != rho(" + A.basis_name(i) + "*" + A.basis_name(j) + ")");
        }
    return Validation::pass();
}

inline FDModule checked_module(FDModule m) {
    Validation v = validate_module(m);
    if (!v.ok) throw std::invalid_argument("checked_module: " + v.message);
    return m;
}

/// B as a left module over itself.
inline FDModule regular_module(const AlgebraPtr& B) {
    FDModule M;
    M.algebra = B;
    M.dim = B->dim;
    for (int i = 0; i < B->dim; ++i) M.action.push_back(B->left_mult_basis(i));
    return M;
}

/// Zero module.
inline FDModule zero_module(const AlgebraPtr& B) {
    FDModule M;
    M.algebra = B;
    M.dim = 0;
    M.action.assign(B->dim, Matrix(B->F, 0, 0));
    return M;
}

/// The residue module "k" of an augmented algebra: 1-dimensional, e_i acts
/// by aug(e_i).
inline FDModule residue_module(const AlgebraPtr& B) {
    if (B->aug.empty())
        throw std::invalid_argument("residue_module: algebra carries no augmentation");
    FDModule M;
    M.algebra = B;
    M.dim = 1;
    for (int i = 0; i < B->dim; ++i) {
        Matrix m(B->F, 1, 1);
        m(0, 0) = B->aug[i];
        M.action.push_back(std::move(m));
    }
    return M;
}

inline FDModule direct_sum(const FDModule& M, const FDModule& N) {
    FDModule R;
    R.algebra = M.algebra;
    R.dim = M.dim + N.dim;
    for (int i = 0; i < M.algebra->dim; ++i) {
        Matrix m(M.field(), R.dim, R.dim);
        for (int r = 0; r < M.dim; ++r)
            for (int c = 0; c < M.dim; ++c) m(r, c) = M.action[i](r, c);
        for (int r = 0; r < N.dim; ++r)
            for (int c = 0; c < N.dim; ++c) m(M.dim + r, M.dim + c) = N.action[i](r, c);
        R.action.push_back(std::move(m));
    }
    return R;
}

/// Restrict a module along an algebra map f: A -> B (B-module becomes an
/// A-module via f).
inline FDModule restrict_along(const AlgebraMap& f, const FDModule& M) {
    if (!same_algebra(f.target, M.algebra))
        throw std::invalid_argument("restrict_along: module is not over the map's target");
    FDModule R;
    R.algebra = f.source;
    R.dim = M.dim;
    for (int i = 0; i < f.source->dim; ++i) R.action.push_back(M.act(f.apply(f.source->basis_vec(i))));
    return R;
}

// ---------------------------------------------------------------------------
// Subspace / quotient machinery
// ---------------------------------------------------------------------------

/// A subspace of k^n presented by an RREF row basis, with deterministic
/// complement coordinates for quotient bookkeeping.
struct Subspace {
    Matrix rref_rows;          // s x n, reduced row echelon
    std::vector<int> pivots;   // pivot columns
    std::vector<int> free_cols;

    int ambient() const { return rref_rows.cols(); }
    int dim() const { return rref_rows.rows(); }

    /// Reduce v modulo the subspace: returns the canonical coset
    /// representative supported away from pivot leading coefficients.
    Vec reduce(const Vec& v) const {
        const PrimeField& f = rref_rows.field();
        Vec r = v;
        for (std::size_t t = 0; t < pivots.size(); ++t) {
            u32 c = r[pivots[t]];
            if (c == 0) continue;
            for (int j = 0; j < ambient(); ++j)
                r[j] = f.sub(r[j], f.mul(c, rref_rows(int(t), j)));
        }
        return r;
    }
    bool contains(const Vec& v) const {
        Vec r = reduce(v);
        return std::all_of(r.begin(), r.end(), [](u32 x) { return x == 0; });
    }
};

inline Subspace make_subspace(PrimeField f, int ambient, const std::vector<Vec>& spanning) {
    Matrix m(f, int(spanning.size()), ambient);
    for (std::size_t i = 0; i < spanning.size(); ++i)
        for (int j = 0; j < ambient; ++j) m(int(i), j) = spanning[i][j] % f.p();
    std::vector<int> pivots = m.rref();
    Matrix rows(f, int(pivots.size()), ambient);
    for (std::size_t t = 0; t < pivots.size(); ++t)
        for (int j = 0; j < ambient; ++j) rows(int(t), j) = m(int(t), j);
    std::vector<bool> isp(ambient, false);
    for (int c : pivots) isp[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < ambient; ++c)
        if (!isp[c]) free_cols.push_back(c);
    return Subspace{std::move(rows), std::move(pivots), std::move(free_cols)};
}

/// Quotient of k^n by a subspace: projection (q x n) onto the free
/// coordinates of canonical representatives and section (n x q) picking the
/// free standard basis vectors.
struct QuotientSpace {
    Subspace sub;
    Matrix projection;  // q x n
    Matrix section;     // n x q

    int dim() const { return projection.rows(); }
};

inline QuotientSpace make_quotient(PrimeField f, int ambient, const std::vector<Vec>& spanning) {
    Subspace s = make_subspace(f, ambient, spanning);
    int q = int(s.free_cols.size());
    Matrix proj(f, q, ambient);
    for (int j = 0; j < ambient; ++j) {
        Vec e(ambient, 0);
        e[j] = 1;
        Vec r = s.reduce(e);
        for (int t = 0; t < q; ++t) proj(t, j) = r[s.free_cols[t]];
    }
    Matrix sec(f, ambient, q);
    for (int t = 0; t < q; ++t) sec(s.free_cols[t], t) = 1;
    QuotientSpace out{std::move(s), std::move(proj), std::move(sec)};
    return out;
}

/// Quotient module M / W for an action-invariant subspace W, with the
/// projection/section retained.
struct ModuleQuotient {
    FDModule module;
    QuotientSpace space;
};

inline ModuleQuotient quotient_module(const FDModule& M, const std::vector<Vec>& spanning) {
    QuotientSpace q = make_quotient(M.field(), M.dim, spanning);
    FDModule Q;
    Q.algebra = M.algebra;
    Q.dim = q.dim();
    for (int i = 0; i < M.algebra->dim; ++i) {
        Matrix induced = q.projection * (M.action[i] * q.section);
        // well-definedness: rho(e_i) must preserve W
        Matrix check = q.projection * M.action[i] - induced * q.projection;
        if (!check.is_zero())
            throw std::invalid_argument("quotient_module: subspace is not action-invariant");
        Q.action.push_back(std::move(induced));
    }
    return ModuleQuotient{std::move(Q), std::move(q)};
}

/// Smallest action-invariant subspace containing the given vectors,
/// returned as a deterministic basis.
inline std::vector<Vec> module_closure(const FDModule& M, std::vector<Vec> gens) {
    Subspace span = make_subspace(M.field(), M.dim, gens);
    std::vector<Vec> basis;
    for (int t = 0; t < span.dim(); ++t) basis.push_back(span.rref_rows.row(t));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Vec> next = basis;
        for (const Vec& v : basis)
            for (int i = 0; i < M.algebra->dim; ++i) {
                Vec w = M.action[i].apply(v);
                if (!span.contains(w)) {
                    next.push_back(w);
                    grew = true;
                }
            }
        if (grew) {
            span = make_subspace(M.field(), M.dim, next);
            basis.clear();
            for (int t = 0; t < span.dim(); ++t) basis.push_back(span.rref_rows.row(t));
        }
    }
    return basis;
}

/// Submodule spanned by an invariant subspace basis, with inclusion matrix.
struct SubmoduleView {
    FDModule module;
    Matrix inclusion;  // ambient_dim x sub_dim
};

inline SubmoduleView submodule_from_invariant_basis(const FDModule& M,
                                                    const std::vector<Vec>& basis) {
    Matrix incl = columns_matrix(M.field(), M.dim, basis);
    FDModule S;
    S.algebra = M.algebra;
    S.dim = int(basis.size());
    for (int i = 0; i < M.algebra->dim; ++i) {
        auto x = solve_matrix(incl, M.action[i] * incl);
        if (!x) throw std::invalid_argument("submodule: basis span is not action-invariant");
        S.action.push_back(std::move(*x));
    }
    return SubmoduleView{std::move(S), std::move(incl)};
}

// ---------------------------------------------------------------------------
// Hom spaces
// ---------------------------------------------------------------------------

/// Basis of { T : dim_to x dim_from | T * on_from[i] = on_to[i] * T for all i },
/// computed as one kernel and reshaped; deterministic.
inline std::vector<Matrix> intertwiner_basis(PrimeField f, int dim_from, int dim_to,
                                             const std::vector<Matrix>& on_from,
                                             const std::vector<Matrix>& on_to,
                                             const Budget& budget = {}) {
    std::size_t unknowns = std::size_t(dim_from) * dim_to;
    budget.check(on_from.size() * unknowns, unknowns == 0 ? 1 : unknowns, "intertwiner_basis");
    Matrix cons(f, int(on_from.size() * unknowns), int(unknowns));
    // T index (r, c) -> r*dim_from + c
    for (std::size_t s = 0; s < on_from.size(); ++s) {
        const Matrix& A = on_from[s];
        const Matrix& B = on_to[s];
        // (T A - B T)(r, c) = sum_j T(r,j) A(j,c) - sum_j B(r,j) T(j,c)
        for (int r = 0; r < dim_to; ++r)
            for (int c = 0; c < dim_from; ++c) {
                int row = int(s * unknowns) + r * dim_from + c;
                for (int j = 0; j < dim_from; ++j) {
                    u32& slot = cons(row, r * dim_from + j);
                    slot = f.add(slot, A(j, c));
                }
                for (int j = 0; j < dim_to; ++j) {
                    u32& slot = cons(row, j * dim_from + c);
                    slot = f.sub(slot, B(r, j));
                }
            }
    }
    std::vector<Matrix> out;
    for (const Vec& v : kernel_basis(cons)) {
        Matrix T(f, dim_to, dim_from);
        for (int r = 0; r < dim_to; ++r)
            for (int c = 0; c < dim_from; ++c) T(r, c) = v[std::size_t(r) * dim_from + c];
        out.push_back(std::move(T));
    }
    return out;
}

/// Basis of Hom_B(M, N) for left B-modules (as matrices N.dim x M.dim).
inline std::vector<Matrix> hom_module_basis(const FDModule& M, const FDModule& N,
                                            const Budget& budget = {}) {
    if (!same_algebra(M.algebra, N.algebra))
        throw std::invalid_argument("hom_module_basis: different algebras");
    return intertwiner_basis(M.field(), M.dim, N.dim, M.action, N.action, budget);
}

/// Express a matrix in a given matrix-space basis; nullopt if outside span.
inline std::optional<Vec> coords_in_matrix_basis(const std::vector<Matrix>& basis,
                                                 const Matrix& T) {
    PrimeField f = T.field();
    int rows = T.rows(), cols = T.cols();
    Matrix bm(f, rows * cols, int(basis.size()));
    for (std::size_t l = 0; l < basis.size(); ++l)
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) bm(r * cols + c, int(l)) = basis[l](r, c);
    Vec t(std::size_t(rows) * cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) t[std::size_t(r) * cols + c] = T(r, c);
    return solve_linear(bm, t);
}

// ---------------------------------------------------------------------------
// Bimodules
// ---------------------------------------------------------------------------

/// (A,B)-bimodule stored as a module over A (x) B^op, basis (i,j) ->
/// i*dim(B)+j.
struct Bimodule {
    AlgebraPtr left_algebra, right_algebra;
    FDModule mod;  // over tensor_algebras(left, opposite(right))

    int dim() const { return mod.dim; }

    Matrix left_act(const Vec& a) const {
        return mod.act(tensor_coords(*left_algebra, *opposite_of_right(), a, right_algebra->unit));
    }
    Matrix right_act(const Vec& b) const {
        return mod.act(tensor_coords(*left_algebra, *opposite_of_right(), left_algebra->unit, b));
    }
    Matrix left_act_basis(int i) const { return left_act(left_algebra->basis_vec(i)); }
    Matrix right_act_basis(int j) const { return right_act(right_algebra->basis_vec(j)); }

  private:
    // B^op has the same underlying space; coordinates coincide.
    const FinAlgebra* opposite_of_right() const { return right_algebra.get(); }
};

inline AlgebraPtr bimodule_algebra(const AlgebraPtr& A, const AlgebraPtr& B) {
    return tensor_algebras(A, opposite_algebra(B));
}

/// Assemble a bimodule from commuting left/right actions; the violation
/// report names the first offending basis pair.
inline Bimodule as_bimodule_module(const AlgebraPtr& A, const AlgebraPtr& B, int dim,
                                   const std::vector<Matrix>& left_action,
                                   const std::vector<Matrix>& right_action) {
    if (int(left_action.size()) != A->dim || int(right_action.size()) != B->dim)
        throw std::invalid_argument("as_bimodule_module: action list lengths");
    for (int i = 0; i < A->dim; ++i)
        for (int j = 0; j < B->dim; ++j)
            if (!(left_action[i] * right_action[j] == right_action[j] * left_action[i]))
                throw std::invalid_argument("as_bimodule_module: actions do not commute at (" +
                                            A->basis_name(i) + ", " + B->basis_name(j) + ")");
    AlgebraPtr E = bimodule_algebra(A, B);
    FDModule M;
    M.algebra = E;
    M.dim = dim;
    for (int i = 0; i < A->dim; ++i)
        for (int j = 0; j < B->dim; ++j) M.action.push_back(left_action[i] * right_action[j]);
    Validation v = validate_module(M);
    if (!v.ok) throw std::invalid_argument("as_bimodule_module: " + v.message);
    return Bimodule{A, B, std::move(M)};
}

/// Inverse view: recover the left/right action families.
inline std::pair<std::vector<Matrix>, std::vector<Matrix>> bimodule_actions(const Bimodule& x) {
    std::vector<Matrix> left, right;
    for (int i = 0; i < x.left_algebra->dim; ++i) left.push_back(x.left_act_basis(i));
    for (int j = 0; j < x.right_algebra->dim; ++j) right.push_back(x.right_act_basis(j));
    return {left, right};
}

/// A left B-module viewed as a (B,k)-bimodule.
inline Bimodule bimodule_from_left(const AlgebraPtr& B, const FDModule& M) {
    std::vector<Matrix> right = {Matrix::identity(M.field(), M.dim)};
    return as_bimodule_module(B, base_field(B->F), M.dim, M.action, right);
}

/// A right B-module (given by right-action matrices) viewed as a
/// (k,B)-bimodule.
inline Bimodule bimodule_from_right(const AlgebraPtr& B, int dim,
                                    const std::vector<Matrix>& right_action, PrimeField F) {
    std::vector<Matrix> left = {Matrix::identity(F, dim)};
    return as_bimodule_module(base_field(F), B, dim, left, right_action);
}

/// A module over a commutative algebra as a symmetric bimodule.
inline Bimodule symmetric_bimodule(const FDModule& M) {
    if (!M.algebra->commutative)
        throw std::invalid_argument("symmetric_bimodule: algebra must be commutative");
    return as_bimodule_module(M.algebra, M.algebra, M.dim, M.action, M.action);
}

/// S as an S-S-bimodule via multiplication.
inline Bimodule regular_bimodule(const AlgebraPtr& B) {
    std::vector<Matrix> left, right;
    for (int i = 0; i < B->dim; ++i) {
        left.push_back(B->left_mult_basis(i));
        right.push_back(B->right_mult_basis(i));
    }
    return as_bimodule_module(B, B, B->dim, left, right);
}

}  // namespace hochkit

#endif
