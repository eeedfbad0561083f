#ifndef HOCHKIT_COMPLEX_HPP
#define HOCHKIT_COMPLEX_HPP

#include <map>
#include <optional>
#include <vector>

#include "hochkit/module.hpp"

namespace hochkit {

/// Bounded cohomologically-indexed complex of finite-dimensional modules.
/// Terms outside [lo, hi] are zero.
struct ChainComplex {
    AlgebraPtr algebra;
    int lo = 0, hi = -1;              // empty when lo > hi
    std::vector<FDModule> terms;      // terms[n - lo]
    std::vector<Matrix> diffs;        // diffs[n - lo] : term(n) -> term(n+1)

    bool in_window(int n) const { return n >= lo && n <= hi; }
    int term_dim(int n) const { return in_window(n) ? terms[n - lo].dim : 0; }
    const FDModule& term(int n) const { return terms[n - lo]; }
    /// Differential out of degree n (zero matrix when either end is empty).
    Matrix diff(int n) const {
        if (n >= lo && n < hi) return diffs[n - lo];
        return Matrix(algebra->F, term_dim(n + 1), term_dim(n));
    }
};

inline ChainComplex zero_complex(const AlgebraPtr& B) { return ChainComplex{B, 0, -1, {}, {}}; }

inline ChainComplex complex_from_module(FDModule M, int degree = 0) {
    ChainComplex C;
    C.algebra = M.algebra;
    C.lo = C.hi = degree;
    C.terms.push_back(std::move(M));
    return C;
}

inline Validation validate_complex(const ChainComplex& C) {
    if (C.lo > C.hi) return Validation::pass();
    if (int(C.terms.size()) != C.hi - C.lo + 1) return Validation::fail("terms length mismatch");
    if (int(C.diffs.size()) != C.hi - C.lo && C.hi > C.lo)
        return Validation::fail("diffs length mismatch");
    for (const FDModule& t : C.terms) {
        if (!same_algebra(t.algebra, C.algebra)) return Validation::fail("term over wrong algebra");
        Validation v = validate_module(t);
        if (!v.ok) return v;
    }
    for (int n = C.lo; n < C.hi; ++n) {
        const Matrix& d = C.diffs[n - C.lo];
        if (d.rows() != C.term_dim(n + 1) || d.cols() != C.term_dim(n))
            return Validation::fail("differential at degree " + std::to_string(n) +
                                    " has wrong shape");
        // module linearity
        for (int i = 0; i < C.algebra->dim; ++i)
            if (!(d * C.term(n).action[i] == C.term(n + 1).action[i] * d))
                return Validation::fail("differential at degree " + std::to_string(n) +
                                        " is not module-linear");
        if (n + 1 < C.hi && !(C.diffs[n + 1 - C.lo] * d).is_zero())
            return Validation::fail("d^2 != 0 at degree " + std::to_string(n));
    }
    return Validation::pass();
}

/// C[s]: degree n term is C^{n+s}; differentials pick up (-1)^s.
inline ChainComplex shift(const ChainComplex& C, int s) {
    ChainComplex R = C;
    R.lo = C.lo - s;
    R.hi = C.hi - s;
    if (s % 2 != 0)
        for (Matrix& d : R.diffs) d = d.negated();
    return R;
}

inline ChainComplex direct_sum(const ChainComplex& X, const ChainComplex& Y) {
    if (X.lo > X.hi) return Y;
    if (Y.lo > Y.hi) return X;
    ChainComplex R;
    R.algebra = X.algebra;
    R.lo = std::min(X.lo, Y.lo);
    R.hi = std::max(X.hi, Y.hi);
    for (int n = R.lo; n <= R.hi; ++n) {
        FDModule t = X.in_window(n) ? X.term(n) : zero_module(R.algebra);
        FDModule u = Y.in_window(n) ? Y.term(n) : zero_module(R.algebra);
        R.terms.push_back(direct_sum(t, u));
    }
    for (int n = R.lo; n < R.hi; ++n) {
        Matrix dx = X.diff(n), dy = Y.diff(n);
        Matrix d(R.algebra->F, dx.rows() + dy.rows(), dx.cols() + dy.cols());
        for (int i = 0; i < dx.rows(); ++i)
            for (int j = 0; j < dx.cols(); ++j) d(i, j) = dx(i, j);
        for (int i = 0; i < dy.rows(); ++i)
            for (int j = 0; j < dy.cols(); ++j) d(dx.rows() + i, dx.cols() + j) = dy(i, j);
        R.diffs.push_back(std::move(d));
    }
    return R;
}

/// Graded dimension vector on a window.
struct GradedDims {
    int lo = 0, hi = -1;
    std::vector<int> dims;

    int at(int n) const { return (n >= lo && n <= hi) ? dims[n - lo] : 0; }
    bool operator==(const GradedDims& o) const {
        int a = std::min(lo, o.lo), b = std::max(hi, o.hi);
        for (int n = a; n <= b; ++n)
            if (at(n) != o.at(n)) return false;
        return true;
    }
    bool all_zero_except(int degree) const {
        for (int n = lo; n <= hi; ++n)
            if (n != degree && dims[n - lo] != 0) return false;
        return true;
    }
    std::string str() const {
        std::string s = "[";
        for (int n = lo; n <= hi; ++n) {
            if (n > lo) s += ",";
            s += std::to_string(n) + ":" + std::to_string(at(n));
        }
        return s + "]";
    }
};

/// dim H^n = dim ker d^n - rank d^{n-1}, exact over F_p.  Degrees outside
/// the complex window are zero by convention.
inline GradedDims homology_dims(const ChainComplex& C, int a, int b) {
    GradedDims g{a, b, std::vector<int>(std::size_t(b - a + 1), 0)};
    for (int n = a; n <= b; ++n) {
        if (C.term_dim(n) == 0) continue;
        Matrix dn = C.diff(n);
        int ker = C.term_dim(n) - dn.rank();
        int im = C.diff(n - 1).rank();
        g.dims[n - a] = ker - im;
    }
    return g;
}

// ---------------------------------------------------------------------------
// Chain maps
// ---------------------------------------------------------------------------

struct ChainMap {
    ChainComplex source, target;
    std::map<int, Matrix> comps;  // degree -> matrix term_target(n) x term_source(n)

    Matrix comp(int n) const {
        auto it = comps.find(n);
        if (it != comps.end()) return it->second;
        return Matrix(source.algebra->F, target.term_dim(n), source.term_dim(n));
    }
};

inline Validation validate_chain_map(const ChainMap& f) {
    if (!same_algebra(f.source.algebra, f.target.algebra))
        return Validation::fail("chain map between complexes over different algebras");
    int a = std::min(f.source.lo, f.target.lo), b = std::max(f.source.hi, f.target.hi);
    for (int n = a; n <= b; ++n) {
        Matrix fn = f.comp(n);
        if (fn.rows() != f.target.term_dim(n) || fn.cols() != f.source.term_dim(n))
            return Validation::fail("component at degree " + std::to_string(n) +
                                    " has wrong shape");
        for (int i = 0; i < f.source.algebra->dim; ++i) {
            if (f.source.term_dim(n) == 0 || f.target.term_dim(n) == 0) break;
            if (!(fn * f.source.term(n).action[i] == f.target.term(n).action[i] * fn))
                return Validation::fail("component at degree " + std::to_string(n) +
                                        " is not module-linear");
        }
        if (!(f.comp(n + 1) * f.source.diff(n) == f.target.diff(n) * fn))
            return Validation::fail("does not commute with differentials at degree " +
                                    std::to_string(n));
    }
    return Validation::pass();
}

/// Mapping cone: Z^n = X^{n+1} (+) Y^n with d(x,y) = (-dx, f x + dy).
inline ChainComplex cone(const ChainMap& f) {
    const ChainComplex& X = f.source;
    const ChainComplex& Y = f.target;
    ChainComplex Z;
    Z.algebra = X.algebra;
    Z.lo = std::min(X.lo - 1, Y.lo);
    Z.hi = std::max(X.hi - 1, Y.hi);
    if (X.lo > X.hi) {
        Z.lo = Y.lo;
        Z.hi = Y.hi;
    }
    for (int n = Z.lo; n <= Z.hi; ++n) {
        FDModule xm = X.in_window(n + 1) ? X.term(n + 1) : zero_module(Z.algebra);
        FDModule ym = Y.in_window(n) ? Y.term(n) : zero_module(Z.algebra);
        Z.terms.push_back(direct_sum(xm, ym));
    }
    for (int n = Z.lo; n < Z.hi; ++n) {
        int xr = X.term_dim(n + 2), xc = X.term_dim(n + 1);
        int yr = Y.term_dim(n + 1), yc = Y.term_dim(n);
        Matrix d(Z.algebra->F, xr + yr, xc + yc);
        Matrix dx = X.diff(n + 1);
        for (int i = 0; i < xr; ++i)
            for (int j = 0; j < xc; ++j) d(i, j) = Z.algebra->F.neg(dx(i, j));
        Matrix fn = f.comp(n + 1);
        for (int i = 0; i < yr; ++i)
            for (int j = 0; j < xc; ++j) d(xr + i, j) = fn(i, j);
        Matrix dy = Y.diff(n);
        for (int i = 0; i < yr; ++i)
            for (int j = 0; j < yc; ++j) d(xr + i, xc + j) = dy(i, j);
        Z.diffs.push_back(std::move(d));
    }
    return Z;
}

// ---------------------------------------------------------------------------
// Hom complexes
// ---------------------------------------------------------------------------

/// One summand Hom_B(X^i, Y^{i+n}) of a hom-complex term.
struct HomBlock {
    int i;                        // source degree
    std::vector<Matrix> basis;    // basis of Hom_B(X^i, Y^{i+n})
};

/// Hom complex of X, Y over B: degree-n term (+)_i Hom_B(X^i, Y^{i+n}),
/// d(f) = d_Y o f - (-1)^n f o d_X (Koszul convention).  The underlying
/// complex lives over the base field; block bases are retained so elements
/// can be realized as actual component maps.
struct HomComplex {
    ChainComplex cx;                          // over k
    std::map<int, std::vector<HomBlock>> blocks;  // degree -> blocks

    int term_dim(int n) const { return cx.term_dim(n); }

    /// Component maps X^i -> Y^{i+n} of an element given by coefficients.
    std::map<int, Matrix> realize(int n, const Vec& coeffs) const {
        std::map<int, Matrix> out;
        auto it = blocks.find(n);
        if (it == blocks.end()) return out;
        std::size_t off = 0;
        for (const HomBlock& blk : it->second) {
            if (blk.basis.empty()) continue;
            Matrix m(blk.basis[0].field(), blk.basis[0].rows(), blk.basis[0].cols());
            for (const Matrix& b : blk.basis) m = m + b.scaled(coeffs[off++]);
            out[blk.i] = std::move(m);
        }
        return out;
    }

    /// Coefficients of a componentwise map; nullopt if outside the span.
    std::optional<Vec> coords(int n, const std::map<int, Matrix>& comps) const {
        Vec out;
        auto it = blocks.find(n);
        if (it == blocks.end()) return comps.empty() ? std::optional<Vec>(out) : std::nullopt;
        for (const HomBlock& blk : it->second) {
            auto cit = comps.find(blk.i);
            if (cit == comps.end()) {
                out.insert(out.end(), blk.basis.size(), 0);
                continue;
            }
            auto c = coords_in_matrix_basis(blk.basis, cit->second);
            if (!c) return std::nullopt;
            out.insert(out.end(), c->begin(), c->end());
        }
        return out;
    }
};

inline HomComplex hom_complex(const ChainComplex& X, const ChainComplex& Y,
                              const Budget& budget = {}) {
    if (!same_algebra(X.algebra, Y.algebra))
        throw std::invalid_argument("hom_complex: different algebras");
    const PrimeField& F = X.algebra->F;
    AlgebraPtr k = base_field(F);
    HomComplex H;
    if (X.lo > X.hi || Y.lo > Y.hi) {
        H.cx = zero_complex(k);
        return H;
    }
    int nlo = Y.lo - X.hi, nhi = Y.hi - X.lo;
    H.cx.algebra = k;
    H.cx.lo = nlo;
    H.cx.hi = nhi;
    for (int n = nlo; n <= nhi; ++n) {
        std::vector<HomBlock> blks;
        int total = 0;
        for (int i = X.lo; i <= X.hi; ++i) {
            if (!Y.in_window(i + n)) continue;
            HomBlock b{i, hom_module_basis(X.term(i), Y.term(i + n), budget)};
            total += int(b.basis.size());
            blks.push_back(std::move(b));
        }
        FDModule t;
        t.algebra = k;
        t.dim = total;
        t.action = {Matrix::identity(F, total)};
        H.cx.terms.push_back(std::move(t));
        H.blocks[n] = std::move(blks);
    }
    for (int n = nlo; n < nhi; ++n) {
        const auto& from = H.blocks[n];
        const auto& to = H.blocks[n + 1];
        Matrix d(F, H.cx.term_dim(n + 1), H.cx.term_dim(n));
        std::size_t coff = 0;
        for (const HomBlock& fb : from) {
            for (const Matrix& u : fb.basis) {
                // d(u) has components d_Y o u at source degree i and
                // -(-1)^n u o d_X at source degree i-1.
                std::map<int, Matrix> img;
                if (Y.in_window(fb.i + n) && Y.in_window(fb.i + n + 1))
                    img[fb.i] = Y.diff(fb.i + n) * u;
                if (X.in_window(fb.i - 1) && Y.in_window(fb.i + n)) {
                    Matrix m = u * X.diff(fb.i - 1);
                    if (n % 2 == 0) m = m.negated();  // -(-1)^n
                    auto it = img.find(fb.i - 1);
                    if (it == img.end())
                        img[fb.i - 1] = std::move(m);
                    else
                        it->second = it->second + m;
                }
                std::size_t roff = 0;
                for (const HomBlock& tb : to) {
                    auto it = img.find(tb.i);
                    if (it != img.end()) {
                        auto c = coords_in_matrix_basis(tb.basis, it->second);
                        if (!c) throw std::logic_error("hom_complex: image outside hom space");
                        for (std::size_t l = 0; l < c->size(); ++l)
                            d(int(roff + l), int(coff)) = (*c)[l];
                    }
                    roff += tb.basis.size();
                }
                ++coff;
            }
        }
        H.cx.diffs.push_back(std::move(d));
    }
    return H;
}

/// Basis of the space of chain maps X -> Y (degree-0 cycles of the hom
/// complex), as per-degree component maps.
inline std::vector<std::map<int, Matrix>> chain_map_basis(const ChainComplex& X,
                                                          const ChainComplex& Y,
                                                          const Budget& budget = {}) {
    HomComplex H = hom_complex(X, Y, budget);
    std::vector<std::map<int, Matrix>> out;
    if (!H.cx.in_window(0)) return out;
    for (const Vec& v : kernel_basis(H.cx.diff(0))) out.push_back(H.realize(0, v));
    return out;
}

inline ChainMap make_chain_map(const ChainComplex& X, const ChainComplex& Y,
                               std::map<int, Matrix> comps) {
    ChainMap f{X, Y, std::move(comps)};
    Validation v = validate_chain_map(f);
    if (!v.ok) throw std::invalid_argument("make_chain_map: " + v.message);
    return f;
}

/// Witness of a chain homotopy: per-degree maps h^n : X^n -> Y^{n-1}.
struct HomotopyWitness {
    std::map<int, Matrix> comps;
};

/// Decide whether f ~ g via module-linear h with f - g = d_Y h + h d_X;
/// one linear solve in the degree -1 part of the hom complex.
inline std::optional<HomotopyWitness> chain_homotopic(const ChainMap& f, const ChainMap& g,
                                                      const Budget& budget = {}) {
    if (!same_algebra(f.source.algebra, g.source.algebra) || f.source.lo != g.source.lo ||
        f.source.hi != g.source.hi || f.target.lo != g.target.lo || f.target.hi != g.target.hi)
        throw std::invalid_argument("chain_homotopic: mismatched complexes");
    HomComplex H = hom_complex(f.source, f.target, budget);
    std::map<int, Matrix> delta;
    for (int n = f.source.lo; n <= f.source.hi; ++n) {
        if (f.source.term_dim(n) == 0 || f.target.term_dim(n) == 0) continue;
        delta[n] = f.comp(n) - g.comp(n);
    }
    auto rhs = H.coords(0, delta);
    if (!rhs) throw std::logic_error("chain_homotopic: difference not module-linear");
    if (!H.cx.in_window(-1)) {
        bool zero = std::all_of(rhs->begin(), rhs->end(), [](u32 x) { return x == 0; });
        if (zero) return HomotopyWitness{};
        return std::nullopt;
    }
    auto sol = solve_linear(H.cx.diff(-1), *rhs);
    if (!sol) return std::nullopt;
    return HomotopyWitness{H.realize(-1, *sol)};
}

}  // namespace hochkit

#endif
