#ifndef HOCHKIT_ALGEBRA_HPP
#define HOCHKIT_ALGEBRA_HPP

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "hochkit/matrix.hpp"

namespace hochkit {

/// Validation outcome carrying the first violated law, if any.
struct Validation {
    bool ok = true;
    std::string message;
    static Validation pass() { return {}; }
    static Validation fail(std::string m) { return {false, std::move(m)}; }
};

/// Finite-dimensional associative unital algebra over F_p, given by
/// structure constants c[i][j][k]: e_i * e_j = sum_k c[i][j][k] e_k.
struct FinAlgebra {
    PrimeField F;
    int dim = 0;
    std::vector<u32> c;    // flattened (i*dim + j)*dim + k
    Vec unit;              // coordinates of 1
    bool commutative = false;
    std::vector<std::string> names;
    // Optional augmentation (k-algebra map to F_p) used for the residue
    // module "k"; presets define it, derived constructions propagate it.
    Vec aug;

    u32 cval(int i, int j, int k) const { return c[(std::size_t(i) * dim + j) * dim + k]; }
    u32& cref(int i, int j, int k) { return c[(std::size_t(i) * dim + j) * dim + k]; }

    Vec mul(const Vec& a, const Vec& b) const {
        Vec r(dim, 0);
        const u64 p = F.p();
        for (int i = 0; i < dim; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < dim; ++j) {
                if (b[j] == 0) continue;
                u64 ab = u64(a[i]) * b[j] % p;
                for (int k = 0; k < dim; ++k)
                    r[k] = u32((r[k] + ab * cval(i, j, k)) % p);
            }
        }
        return r;
    }

    Vec basis_vec(int i) const {
        Vec v(dim, 0);
        v[i] = 1;
        return v;
    }

    /// Matrix of x -> e_i * x.
    Matrix left_mult_basis(int i) const {
        Matrix m(F, dim, dim);
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) m(k, j) = cval(i, j, k);
        return m;
    }
    /// Matrix of x -> x * e_i.
    Matrix right_mult_basis(int i) const {
        Matrix m(F, dim, dim);
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) m(k, j) = cval(j, i, k);
        return m;
    }
    Matrix left_mult(const Vec& a) const {
        Matrix m(F, dim, dim);
        for (int i = 0; i < dim; ++i)
            if (a[i] != 0) m = m + left_mult_basis(i).scaled(a[i]);
        return m;
    }
    Matrix right_mult(const Vec& a) const {
        Matrix m(F, dim, dim);
        for (int i = 0; i < dim; ++i)
            if (a[i] != 0) m = m + right_mult_basis(i).scaled(a[i]);
        return m;
    }

    bool is_trivial() const { return dim == 1; }

    std::string basis_name(int i) const {
        if (i < int(names.size())) return names[i];
        return "e" + std::to_string(i);
    }
};

using AlgebraPtr = std::shared_ptr<const FinAlgebra>;

inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    if (a == b) return true;
    return a->dim == b->dim && a->F == b->F && a->c == b->c && a->unit == b->unit;
}

/// Checks associativity on all basis triples, the two-sided unit law and
/// (when flagged) commutativity.  Reports the first failing law.
inline Validation validate_algebra(const FinAlgebra& A) {
    if (A.dim <= 0) return Validation::fail("dim must be positive");
    if (int(A.unit.size()) != A.dim) return Validation::fail("unit has wrong length");
    if (A.c.size() != std::size_t(A.dim) * A.dim * A.dim)
        return Validation::fail("structure constant table has wrong size");
    for (int i = 0; i < A.dim; ++i) {
        Vec ei = A.basis_vec(i);
        if (A.mul(A.unit, ei) != ei)
            return Validation::fail("unit law fails at (unit, " + A.basis_name(i) + ")");
        if (A.mul(ei, A.unit) != ei)
            return Validation::fail("unit law fails at (" + A.basis_name(i) + ", unit)");
    }
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) {
            Vec eij = A.mul(A.basis_vec(i), A.basis_vec(j));
            for (int l = 0; l < A.dim; ++l) {
                Vec lhs = A.mul(eij, A.basis_vec(l));
                Vec rhs = A.mul(A.basis_vec(i), A.mul(A.basis_vec(j), A.basis_vec(l)));
                if (lhs != rhs) {
                    std::ostringstream os;
                    os << "associativity fails at (" << A.basis_name(i) << ", " << A.basis_name(j)
                       << ", " << A.basis_name(l) << ")";
                    return Validation::fail(os.str());
                }
            }
        }
    if (A.commutative)
        for (int i = 0; i < A.dim; ++i)
            for (int j = 0; j < A.dim; ++j)
                for (int k = 0; k < A.dim; ++k)
                    if (A.cval(i, j, k) != A.cval(j, i, k))
                        return Validation::fail("commutativity flag set but " + A.basis_name(i) +
                                                "*" + A.basis_name(j) + " != " + A.basis_name(j) +
                                                "*" + A.basis_name(i));
    if (!A.aug.empty()) {
        if (int(A.aug.size()) != A.dim) return Validation::fail("augmentation has wrong length");
        const PrimeField& F = A.F;
        auto ev = [&](const Vec& v) {
            u32 s = 0;
            for (int i = 0; i < A.dim; ++i) s = F.add(s, F.mul(A.aug[i], v[i]));
            return s;
        };
        if (ev(A.unit) != 1) return Validation::fail("augmentation does not send unit to 1");
        for (int i = 0; i < A.dim; ++i)
            for (int j = 0; j < A.dim; ++j)
                if (ev(A.mul(A.basis_vec(i), A.basis_vec(j))) !=
                    F.mul(A.aug[i], A.aug[j]))
                    return Validation::fail("augmentation not multiplicative at (" +
                                            A.basis_name(i) + ", " + A.basis_name(j) + ")");
    }
    return Validation::pass();
}

inline AlgebraPtr make_algebra(FinAlgebra a) {
    Validation v = validate_algebra(a);
    if (!v.ok) throw std::invalid_argument("make_algebra: " + v.message);
    return std::make_shared<const FinAlgebra>(std::move(a));
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

/// k[x]/(x^n) with basis 1, x, ..., x^{n-1}; truncated_poly(1) is the base
/// field itself.
inline AlgebraPtr truncated_poly(PrimeField F, int n, const std::string& var = "x") {
    if (n < 1) throw std::invalid_argument("truncated_poly: n must be >= 1");
    FinAlgebra A;
    A.F = F;
    A.dim = n;
    A.c.assign(std::size_t(n) * n * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i + j < n) A.cref(i, j, i + j) = 1;
    A.unit = A.basis_vec(0);
    A.commutative = true;
    A.aug.assign(n, 0);
    A.aug[0] = 1;
    for (int i = 0; i < n; ++i) {
        if (i == 0)
            A.names.push_back("1");
        else if (i == 1)
            A.names.push_back(var);
        else
            A.names.push_back(var + "^" + std::to_string(i));
    }
    return make_algebra(std::move(A));
}

inline AlgebraPtr base_field(PrimeField F) { return truncated_poly(F, 1); }

/// k^n with idempotent basis e_1, ..., e_n.
inline AlgebraPtr split_algebra(PrimeField F, int n) {
    if (n < 1) throw std::invalid_argument("split: n must be >= 1");
    FinAlgebra A;
    A.F = F;
    A.dim = n;
    A.c.assign(std::size_t(n) * n * n, 0);
    for (int i = 0; i < n; ++i) A.cref(i, i, i) = 1;
    A.unit.assign(n, 1);
    A.commutative = true;
    A.aug.assign(n, 0);
    A.aug[0] = 1;  // residue at the first idempotent
    for (int i = 0; i < n; ++i) A.names.push_back("e" + std::to_string(i + 1));
    return make_algebra(std::move(A));
}

/// Upper-triangular 2x2 matrices, basis E11, E22, E12 (noncommutative).
inline AlgebraPtr triangular2(PrimeField F) {
    FinAlgebra A;
    A.F = F;
    A.dim = 3;
    A.c.assign(27, 0);
    // E11*E11 = E11, E22*E22 = E22, E11*E12 = E12, E12*E22 = E12
    A.cref(0, 0, 0) = 1;
    A.cref(1, 1, 1) = 1;
    A.cref(0, 2, 2) = 1;
    A.cref(2, 1, 2) = 1;
    A.unit = {1, 1, 0};
    A.commutative = false;
    A.aug = {1, 0, 0};  // kill E22 and E12
    A.names = {"E11", "E22", "E12"};
    return make_algebra(std::move(A));
}

/// Tensor product A (x) B over the common base field; basis index
/// (i,j) -> i*dim(B)+j (left factor major).
inline AlgebraPtr tensor_algebras(const AlgebraPtr& A, const AlgebraPtr& B) {
    if (A->F != B->F) throw std::invalid_argument("tensor_algebras: different base fields");
    FinAlgebra T;
    T.F = A->F;
    T.dim = A->dim * B->dim;
    T.c.assign(std::size_t(T.dim) * T.dim * T.dim, 0);
    const PrimeField& F = T.F;
    for (int i1 = 0; i1 < A->dim; ++i1)
        for (int j1 = 0; j1 < B->dim; ++j1)
            for (int i2 = 0; i2 < A->dim; ++i2)
                for (int j2 = 0; j2 < B->dim; ++j2)
                    for (int k1 = 0; k1 < A->dim; ++k1) {
                        u32 ca = A->cval(i1, i2, k1);
                        if (ca == 0) continue;
                        for (int k2 = 0; k2 < B->dim; ++k2) {
                            u32 cb = B->cval(j1, j2, k2);
                            if (cb == 0) continue;
                            T.cref(i1 * B->dim + j1, i2 * B->dim + j2, k1 * B->dim + k2) =
                                F.mul(ca, cb);
                        }
                    }
    T.unit.assign(T.dim, 0);
    for (int i = 0; i < A->dim; ++i)
        for (int j = 0; j < B->dim; ++j)
            T.unit[i * B->dim + j] = F.mul(A->unit[i], B->unit[j]);
    T.commutative = A->commutative && B->commutative;
    if (!A->aug.empty() && !B->aug.empty()) {
        T.aug.assign(T.dim, 0);
        for (int i = 0; i < A->dim; ++i)
            for (int j = 0; j < B->dim; ++j) T.aug[i * B->dim + j] = F.mul(A->aug[i], B->aug[j]);
    }
    for (int i = 0; i < A->dim; ++i)
        for (int j = 0; j < B->dim; ++j)
            T.names.push_back(A->basis_name(i) + "(x)" + B->basis_name(j));
    return make_algebra(std::move(T));
}

/// Opposite algebra: c_op[i][j][k] = c[j][i][k].
inline AlgebraPtr opposite_algebra(const AlgebraPtr& A) {
    FinAlgebra O = *A;
    for (int i = 0; i < A->dim; ++i)
        for (int j = 0; j < A->dim; ++j)
            for (int k = 0; k < A->dim; ++k) O.cref(i, j, k) = A->cval(j, i, k);
    return make_algebra(std::move(O));
}

/// Tensor coordinates a (x) b inside tensor_algebras(A, B).
inline Vec tensor_coords(const FinAlgebra& A, const FinAlgebra& B, const Vec& a, const Vec& b) {
    Vec r(std::size_t(A.dim) * B.dim, 0);
    for (int i = 0; i < A.dim; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < B.dim; ++j) r[i * B.dim + j] = A.F.mul(a[i], b[j]);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Algebra maps and freeness certificates
// ---------------------------------------------------------------------------

/// Unit- and multiplication-preserving linear map between algebras.
struct AlgebraMap {
    AlgebraPtr source, target;
    Matrix matrix;  // target.dim x source.dim

    Vec apply(const Vec& v) const { return matrix.apply(v); }
};

inline Validation validate_algebra_map(const AlgebraMap& f) {
    if (f.matrix.rows() != f.target->dim || f.matrix.cols() != f.source->dim)
        return Validation::fail("algebra map has wrong shape");
    if (f.apply(f.source->unit) != f.target->unit)
        return Validation::fail("algebra map does not preserve the unit");
    for (int i = 0; i < f.source->dim; ++i)
        for (int j = 0; j < f.source->dim; ++j) {
            Vec lhs = f.apply(f.source->mul(f.source->basis_vec(i), f.source->basis_vec(j)));
            Vec rhs = f.target->mul(f.apply(f.source->basis_vec(i)), f.apply(f.source->basis_vec(j)));
            if (lhs != rhs)
                return Validation::fail("algebra map not multiplicative at (" +
                                        f.source->basis_name(i) + ", " + f.source->basis_name(j) +
                                        ")");
        }
    return Validation::pass();
}

inline AlgebraMap identity_map(const AlgebraPtr& A) {
    return {A, A, Matrix::identity(A->F, A->dim)};
}

/// Witness that S is a free R-module on an explicit basis, through
/// sigma: R -> S.  "Flat" is operationalized as this certificate.
struct FreeBasisCert {
    AlgebraMap sigma;                 // R -> S
    std::vector<Vec> basis;           // elements of S
    // Evaluation matrix of R^n -> S, (r_1..r_n) |-> sum sigma(r_j) * t_j;
    // columns indexed (j, R-basis element), left factor major.
    Matrix ev;
    Matrix ev_inv;

    const FinAlgebra& R() const { return *sigma.source; }
    const FinAlgebra& S() const { return *sigma.target; }

    /// R-coordinates of s in S: list of n elements of R.
    std::vector<Vec> r_coords(const Vec& s) const {
        Vec x = ev_inv.apply(s);
        std::vector<Vec> out(basis.size(), Vec(R().dim, 0));
        for (std::size_t j = 0; j < basis.size(); ++j)
            for (int t = 0; t < R().dim; ++t) out[j][t] = x[j * R().dim + t];
        return out;
    }
};

inline FreeBasisCert make_free_cert(AlgebraMap sigma, std::vector<Vec> basis) {
    Validation v = validate_algebra_map(sigma);
    if (!v.ok) throw std::invalid_argument("make_free_cert: " + v.message);
    const FinAlgebra& R = *sigma.source;
    const FinAlgebra& S = *sigma.target;
    if (int(basis.size()) * R.dim != S.dim)
        throw std::invalid_argument("make_free_cert: rank * dim(R) != dim(S)");
    Matrix ev(S.F, S.dim, S.dim);
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (int t = 0; t < R.dim; ++t) {
            Vec col = S.mul(sigma.apply(R.basis_vec(t)), basis[j]);
            ev.set_col(int(j) * R.dim + t, col);
        }
    auto inv = inverse(ev);
    if (!inv)
        throw std::invalid_argument(
            "make_free_cert: evaluation map is not bijective, basis is not an R-basis");
    return FreeBasisCert{std::move(sigma), std::move(basis), std::move(ev), std::move(*inv)};
}

/// sigma = id_k -> S with basis = the k-basis of S (every algebra is free
/// over the base field).
inline FreeBasisCert cert_over_k(const AlgebraPtr& S) {
    AlgebraPtr k = base_field(S->F);
    Matrix m(S->F, S->dim, 1);
    m.set_col(0, S->unit);
    AlgebraMap sigma{k, S, m};
    std::vector<Vec> basis;
    for (int i = 0; i < S->dim; ++i) basis.push_back(S->basis_vec(i));
    return make_free_cert(std::move(sigma), std::move(basis));
}

/// The enveloping algebra S^e = S (x)_R S of a certified free extension,
/// with k-basis { s_a (x) t_j } (s_a a k-basis element of S, t_j a free
/// R-basis element); index (a,j) -> a*n + j.  S must be commutative so the
/// multiplication map mu is an algebra map.
struct EnvelopingAlgebra {
    FreeBasisCert cert;
    AlgebraPtr Se;
    AlgebraMap incl_left;   // S -> S^e, s |-> s (x) 1
    AlgebraMap incl_right;  // S -> S^e, s |-> 1 (x) s
    AlgebraMap mu;          // S^e -> S, s (x) s' |-> s s'
};

inline EnvelopingAlgebra enveloping_algebra(FreeBasisCert cert) {
    const FinAlgebra& S = cert.S();
    if (!S.commutative)
        throw std::invalid_argument(
            "enveloping_algebra: S must be commutative for mu to be an algebra map");
    const PrimeField& F = S.F;
    int n = int(cert.basis.size());
    int dS = S.dim;
    FinAlgebra E;
    E.F = F;
    E.dim = dS * n;
    E.c.assign(std::size_t(E.dim) * E.dim * E.dim, 0);
    // (s_a (x) t_j)(s_b (x) t_l) = (s_a s_b) (x) t_j t_l, with
    // t_j t_l = sum_m sigma(r_m) t_m rewritten through the free basis and
    // sigma(r_m) moved across the tensor.
    std::vector<std::vector<std::vector<Vec>>> prod_coords(n);
    for (int j = 0; j < n; ++j) {
        prod_coords[j].resize(n);
        for (int l = 0; l < n; ++l)
            prod_coords[j][l] = cert.r_coords(S.mul(cert.basis[j], cert.basis[l]));
    }
    for (int a = 0; a < dS; ++a)
        for (int j = 0; j < n; ++j)
            for (int b = 0; b < dS; ++b)
                for (int l = 0; l < n; ++l) {
                    Vec sab = S.mul(S.basis_vec(a), S.basis_vec(b));
                    for (int m = 0; m < n; ++m) {
                        Vec coeff = S.mul(sab, cert.sigma.apply(prod_coords[j][l][m]));
                        for (int k = 0; k < dS; ++k) {
                            if (coeff[k] == 0) continue;
                            u32& slot = E.cref(a * n + j, b * n + l, k * n + m);
                            slot = F.add(slot, coeff[k]);
                        }
                    }
                }
    // unit = 1 (x) 1: expand 1_S over the free basis.
    E.unit.assign(E.dim, 0);
    {
        std::vector<Vec> one = cert.r_coords(S.unit);
        for (int j = 0; j < n; ++j) {
            Vec coeff = cert.sigma.apply(one[j]);
            for (int k = 0; k < dS; ++k)
                E.unit[k * n + j] = F.add(E.unit[k * n + j], coeff[k]);
        }
    }
    E.commutative = true;
    for (int a = 0; a < dS; ++a)
        for (int j = 0; j < n; ++j)
            E.names.push_back(S.basis_name(a) + "(x)t" + std::to_string(j));
    if (!S.aug.empty()) {
        E.aug.assign(E.dim, 0);
        auto ev_aug = [&](const Vec& v) {
            u32 s = 0;
            for (int i = 0; i < dS; ++i) s = F.add(s, F.mul(S.aug[i], v[i]));
            return s;
        };
        for (int a = 0; a < dS; ++a)
            for (int j = 0; j < n; ++j)
                E.aug[a * n + j] =
                    F.mul(ev_aug(S.basis_vec(a)), ev_aug(cert.basis[j]));
    }
    AlgebraPtr Se = make_algebra(std::move(E));

    Matrix mleft(F, Se->dim, dS);
    {
        std::vector<Vec> one = cert.r_coords(S.unit);
        for (int a = 0; a < dS; ++a) {
            Vec col(Se->dim, 0);
            for (int j = 0; j < n; ++j) {
                Vec coeff = S.mul(S.basis_vec(a), cert.sigma.apply(one[j]));
                for (int k = 0; k < dS; ++k)
                    col[k * n + j] = F.add(col[k * n + j], coeff[k]);
            }
            mleft.set_col(a, col);
        }
    }
    Matrix mright(F, Se->dim, dS);
    for (int a = 0; a < dS; ++a) {
        Vec col(Se->dim, 0);
        std::vector<Vec> rc = cert.r_coords(S.basis_vec(a));
        for (int j = 0; j < n; ++j) {
            Vec coeff = cert.sigma.apply(rc[j]);
            for (int k = 0; k < dS; ++k) col[k * n + j] = F.add(col[k * n + j], coeff[k]);
        }
        mright.set_col(a, col);
    }
    Matrix mmu(F, dS, Se->dim);
    for (int a = 0; a < dS; ++a)
        for (int j = 0; j < n; ++j)
            mmu.set_col(a * n + j, S.mul(S.basis_vec(a), cert.basis[j]));

    AlgebraPtr Sptr = cert.sigma.target;
    EnvelopingAlgebra env{std::move(cert), Se, AlgebraMap{Sptr, Se, std::move(mleft)},
                          AlgebraMap{Sptr, Se, std::move(mright)}, AlgebraMap{Se, Sptr, std::move(mmu)}};
    for (const AlgebraMap* f : {&env.incl_left, &env.incl_right, &env.mu}) {
        Validation v = validate_algebra_map(*f);
        if (!v.ok) throw std::logic_error("enveloping_algebra: " + v.message);
    }
    return env;
}

}  // namespace hochkit

#endif
