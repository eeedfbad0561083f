#ifndef HOCHKIT_RESOLUTION_HPP
#define HOCHKIT_RESOLUTION_HPP

#include "hochkit/tensorhom.hpp"

namespace hochkit {

/// Map of free left-B-modules given by a matrix of algebra elements:
/// T(g_j) = sum_l e[l][j] . g_l.  Kept small; expansion to k-matrices is
/// explicit and local.
struct BMat {
    int rows = 0, cols = 0;
    std::vector<Vec> e;  // e[r*cols + c], each an element of B

    const Vec& at(int r, int c) const { return e[std::size_t(r) * cols + c]; }
    Vec& at(int r, int c) { return e[std::size_t(r) * cols + c]; }
};

inline BMat zero_bmat(const FinAlgebra& B, int rows, int cols) {
    return BMat{rows, cols, std::vector<Vec>(std::size_t(rows) * cols, Vec(B.dim, 0))};
}

/// Free module B^r as an FDModule (block-diagonal left regular action).
inline FDModule free_module(const AlgebraPtr& B, int rank) {
    FDModule M;
    M.algebra = B;
    M.dim = rank * B->dim;
    for (int i = 0; i < B->dim; ++i) {
        Matrix L = B->left_mult_basis(i);
        Matrix m(B->F, M.dim, M.dim);
        for (int blk = 0; blk < rank; ++blk)
            for (int r = 0; r < B->dim; ++r)
                for (int c = 0; c < B->dim; ++c)
                    m(blk * B->dim + r, blk * B->dim + c) = L(r, c);
        M.action.push_back(std::move(m));
    }
    return M;
}

/// Expand a free-module map to the underlying k-matrix: block (l,j) is the
/// right-multiplication matrix of e[l][j] (an element x = sum b_j g_j maps
/// to sum_j b_j e[l][j] in block l).
inline Matrix expand_bmat(const FinAlgebra& B, const BMat& m) {
    Matrix out(B.F, m.rows * B.dim, m.cols * B.dim);
    for (int l = 0; l < m.rows; ++l)
        for (int j = 0; j < m.cols; ++j) {
            const Vec& c = m.at(l, j);
            bool nz = false;
            for (u32 v : c)
                if (v) {
                    nz = true;
                    break;
                }
            if (!nz) continue;
            Matrix R = B.right_mult(c);
            for (int r = 0; r < B.dim; ++r)
                for (int s = 0; s < B.dim; ++s) out(l * B.dim + r, j * B.dim + s) = R(r, s);
        }
    return out;
}

/// Complex of free left-B-modules with an augmentation quasi-isomorphism
/// onto a target complex; the backbone of every resolution here.
struct FreeComplex {
    AlgebraPtr B;
    int lo = 0, hi = -1;
    std::vector<int> ranks;        // ranks[n - lo]
    std::vector<BMat> bdiffs;      // bdiffs[n - lo] : F^n -> F^{n+1}
    ChainComplex target;
    std::map<int, Matrix> aug;     // expanded aug^n : F^n -> target^n

    int rank(int n) const { return (n >= lo && n <= hi) ? ranks[n - lo] : 0; }
    int term_dim(int n) const { return rank(n) * B->dim; }
    BMat bdiff(int n) const {
        if (n >= lo && n < hi) return bdiffs[n - lo];
        return zero_bmat(*B, rank(n + 1), rank(n));
    }
    Matrix aug_at(int n) const {
        auto it = aug.find(n);
        if (it != aug.end()) return it->second;
        return Matrix(B->F, target.term_dim(n), term_dim(n));
    }

    ChainComplex expand() const {
        ChainComplex C;
        C.algebra = B;
        C.lo = lo;
        C.hi = hi;
        for (int n = lo; n <= hi; ++n) C.terms.push_back(free_module(B, rank(n)));
        for (int n = lo; n < hi; ++n) C.diffs.push_back(expand_bmat(*B, bdiffs[n - lo]));
        return C;
    }

    ChainMap augmentation_map() const {
        ChainMap f;
        f.source = expand();
        f.target = target;
        for (int n = lo; n <= hi; ++n)
            if (target.in_window(n)) f.comps[n] = aug_at(n);
        return f;
    }
};

/// Exactness / quasi-isomorphism report for tests: the cone of the
/// augmentation must be acyclic in degrees > lo.
inline Validation verify_free_complex(const FreeComplex& F) {
    ChainComplex E = F.expand();
    Validation v = validate_complex(E);
    if (!v.ok) return v;
    ChainMap am = F.augmentation_map();
    v = validate_chain_map(am);
    if (!v.ok) return v;
    ChainComplex cn = cone(am);
    GradedDims h = homology_dims(cn, F.lo + 1, cn.hi);
    for (int n = h.lo; n <= h.hi; ++n)
        if (h.at(n) != 0)
            return Validation::fail("augmentation cone has homology in degree " +
                                    std::to_string(n));
    return Validation::pass();
}

// ---------------------------------------------------------------------------
// Kernel-cover resolution of a module
// ---------------------------------------------------------------------------

/// Deterministic generating set: coset representatives of M modulo the span
/// of all non-unit basis actions (a radical stand-in, minimal for local
/// algebras), greedily extended whenever that quotient fails to generate.
inline std::vector<Vec> generating_set(const FDModule& M) {
    if (M.dim == 0) return {};
    std::vector<Vec> images;
    for (int i = 0; i < M.algebra->dim; ++i) {
        if (M.algebra->basis_vec(i) == M.algebra->unit) continue;
        for (int c = 0; c < M.dim; ++c) images.push_back(M.action[i].col(c));
    }
    QuotientSpace q = make_quotient(M.field(), M.dim, images);
    std::vector<Vec> gens;
    for (int t = 0; t < q.dim(); ++t) gens.push_back(q.section.col(t));
    // verify generation; extend if the radical stand-in was too coarse
    while (true) {
        std::vector<Vec> closed = gens.empty() ? std::vector<Vec>{} : module_closure(M, gens);
        if (int(closed.size()) == M.dim) break;
        Subspace span = make_subspace(M.field(), M.dim, closed);
        int add = -1;
        for (int c = 0; c < M.dim; ++c) {
            Vec e(M.dim, 0);
            e[c] = 1;
            if (!span.contains(e)) {
                add = c;
                break;
            }
        }
        if (add < 0) throw std::logic_error("generating_set: closure did not reach M");
        Vec e(M.dim, 0);
        e[add] = 1;
        gens.push_back(std::move(e));
    }
    return gens;
}

/// Free resolution of a module by iterated kernel covers.  F^0 covers M,
/// F^{-i-1} covers ker(F^{-i} -> F^{-i+1}); stops early when a kernel
/// vanishes.  The target sits in degree `at_degree`.
inline FreeComplex free_resolution_module(const FDModule& M, int length, int at_degree = 0,
                                          const Budget& budget = {}) {
    if (length < 0) throw std::invalid_argument("free_resolution_module: negative length");
    const AlgebraPtr& B = M.algebra;
    FreeComplex F;
    F.B = B;
    F.target = complex_from_module(M, at_degree);

    std::vector<int> ranks;
    std::vector<BMat> diffs_down;  // diffs_down[i] : F^{-(i+1)} -> F^{-i}
    Matrix aug0(B->F, 0, 0);

    FDModule cur = M;
    std::vector<Vec> gens = generating_set(cur);
    for (int step = 0; step <= length; ++step) {
        int r = int(gens.size());
        budget.check(std::size_t(r) * B->dim, std::size_t(std::max(r, 1)) * B->dim,
                     "free_resolution");
        Matrix cover(B->F, cur.dim, r * B->dim);
        for (int j = 0; j < r; ++j)
            for (int b = 0; b < B->dim; ++b)
                cover.set_col(j * B->dim + b, cur.action[b].apply(gens[j]));
        if (step == 0) aug0 = cover;
        ranks.push_back(r);
        if (step == length) break;
        std::vector<Vec> ker = kernel_basis(cover);
        if (ker.empty()) break;
        // kernel as a submodule of the free module B^r
        FDModule Fr = free_module(B, r);
        SubmoduleView K = submodule_from_invariant_basis(Fr, ker);
        std::vector<Vec> next_gens = generating_set(K.module);
        BMat d = zero_bmat(*B, r, int(next_gens.size()));
        for (std::size_t j = 0; j < next_gens.size(); ++j) {
            Vec col = K.inclusion.apply(next_gens[j]);
            for (int l = 0; l < r; ++l)
                for (int t = 0; t < B->dim; ++t) d.at(l, int(j))[t] = col[l * B->dim + t];
        }
        diffs_down.push_back(std::move(d));
        cur = std::move(K.module);
        gens = std::move(next_gens);
    }
    int m = int(ranks.size()) - 1;
    F.lo = at_degree - m;
    F.hi = at_degree;
    F.ranks.assign(ranks.rbegin(), ranks.rend());
    for (int i = m - 1; i >= 0; --i) F.bdiffs.push_back(diffs_down[i]);
    F.aug[at_degree] = aug0;
    return F;
}

// ---------------------------------------------------------------------------
// Resolution of a bounded complex (horseshoe gluing)
// ---------------------------------------------------------------------------

namespace detail {

/// Glue resolutions along 0 -> Bc -> C -> C^{lo}[-lo] -> 0 with a lifted
/// correction map theta : F_A -> F_B[1].
inline FreeComplex glue_resolutions(const ChainComplex& C, FreeComplex FB, FreeComplex FA) {
    const AlgebraPtr& B = FA.B;
    const FinAlgebra& Balg = *B;
    int lo = C.lo;
    // delta0 = d_C^{lo} o eps_A : F_A^{lo} -> C^{lo+1}
    Matrix delta0 = C.diff(lo) * FA.aug_at(lo);

    // expanded differentials and augmentations of FB, cached per degree
    std::map<int, Matrix> dB_exp;
    for (int n = FB.lo; n < FB.hi; ++n) dB_exp[n] = expand_bmat(Balg, FB.bdiffs[n - FB.lo]);

    // theta^n : F_A^n -> F_B^{n+1}, built top-down
    std::map<int, BMat> theta;
    std::map<int, Matrix> theta_exp;
    for (int n = lo; n >= FA.lo; --n) {
        int ra = FA.rank(n);
        int rb_next = FB.rank(n + 1);
        BMat th = zero_bmat(Balg, rb_next, ra);
        Matrix th_exp(Balg.F, rb_next * Balg.dim, ra * Balg.dim);
        if (ra > 0 && rb_next > 0) {
            // constraints: eps_B^{n+1} u = delta^n(g), d_B^{n+1} u = -theta^{n+1}(d_A^n g)
            Matrix eps = FB.aug_at(n + 1);
            Matrix dB = (n + 1 < FB.hi) ? dB_exp[n + 1]
                                        : Matrix(Balg.F, FB.term_dim(n + 2), FB.term_dim(n + 1));
            Matrix sys = vstack(eps, dB);
            Matrix dA_exp = (n < FA.hi) ? expand_bmat(Balg, FA.bdiffs[n - FA.lo])
                                        : Matrix(Balg.F, 0, FA.term_dim(n));
            for (int j = 0; j < ra; ++j) {
                Vec gcol(std::size_t(ra) * Balg.dim, 0);
                for (int t = 0; t < Balg.dim; ++t)
                    gcol[std::size_t(j) * Balg.dim + t] = Balg.unit[t];
                Vec rhs_top(eps.rows(), 0);
                if (n == lo) rhs_top = delta0.apply(gcol);
                Vec rhs_bot(dB.rows(), 0);
                if (n < FA.hi && theta_exp.count(n + 1)) {
                    Vec da = dA_exp.apply(gcol);
                    Vec v = theta_exp[n + 1].apply(da);
                    for (auto& x : v) x = Balg.F.neg(x);
                    rhs_bot = v;
                }
                Vec rhs = rhs_top;
                rhs.insert(rhs.end(), rhs_bot.begin(), rhs_bot.end());
                auto sol = solve_linear(sys, rhs);
                if (!sol) throw std::logic_error("glue_resolutions: correction lift failed");
                for (int l = 0; l < rb_next; ++l)
                    for (int t = 0; t < Balg.dim; ++t) th.at(l, j)[t] = (*sol)[l * Balg.dim + t];
            }
            th_exp = expand_bmat(Balg, th);
        }
        theta_exp[n] = std::move(th_exp);
        theta[n] = std::move(th);
    }

    FreeComplex F;
    F.B = B;
    F.target = C;
    F.lo = std::min(FB.lo, FA.lo);
    F.hi = FB.hi;
    for (int n = F.lo; n <= F.hi; ++n) F.ranks.push_back(FB.rank(n) + FA.rank(n));
    for (int n = F.lo; n < F.hi; ++n) {
        int rb = FB.rank(n), ra = FA.rank(n);
        int rb1 = FB.rank(n + 1), ra1 = FA.rank(n + 1);
        BMat d = zero_bmat(Balg, rb1 + ra1, rb + ra);
        BMat db = FB.bdiff(n);
        for (int l = 0; l < rb1; ++l)
            for (int j = 0; j < rb; ++j) d.at(l, j) = db.at(l, j);
        if (theta.count(n)) {
            const BMat& th = theta[n];
            for (int l = 0; l < rb1; ++l)
                for (int j = 0; j < ra; ++j) d.at(l, rb + j) = th.at(l, j);
        }
        BMat da = FA.bdiff(n);
        for (int l = 0; l < ra1; ++l)
            for (int j = 0; j < ra; ++j) d.at(rb1 + l, rb + j) = da.at(l, j);
        F.bdiffs.push_back(std::move(d));
    }
    for (int n = F.lo; n <= F.hi; ++n) {
        if (!C.in_window(n)) continue;
        int rb = FB.rank(n), ra = FA.rank(n);
        Matrix a(Balg.F, C.term_dim(n), (rb + ra) * Balg.dim);
        if (n > lo) {
            Matrix eb = FB.aug_at(n);  // target of FB at degree n is C^n for n > lo
            for (int r = 0; r < eb.rows(); ++r)
                for (int c = 0; c < eb.cols(); ++c) a(r, c) = eb(r, c);
        }
        if (n == lo) {
            Matrix ea = FA.aug_at(lo);
            for (int r = 0; r < ea.rows(); ++r)
                for (int c = 0; c < ea.cols(); ++c) a(r, rb * Balg.dim + c) = ea(r, c);
        }
        F.aug[n] = std::move(a);
    }
    return F;
}

inline FreeComplex truncate_floor(FreeComplex F, int floor) {
    if (F.lo >= floor) return F;
    int cut = floor - F.lo;
    F.ranks.erase(F.ranks.begin(), F.ranks.begin() + cut);
    F.bdiffs.erase(F.bdiffs.begin(), F.bdiffs.begin() + cut);
    for (auto it = F.aug.begin(); it != F.aug.end();)
        it = (it->first < floor) ? F.aug.erase(it) : std::next(it);
    F.lo = floor;
    return F;
}

}  // namespace detail

/// Free resolution of a bounded complex: degreewise kernel-cover
/// resolutions of the terms, glued bottom-up with correction differentials
/// so the total complex is quasi-isomorphic to the input (exact above
/// `floor`).
inline FreeComplex free_resolution_complex(const ChainComplex& C, int floor,
                                           const Budget& budget = {}) {
    if (C.lo > C.hi) {
        FreeComplex F;
        F.B = C.algebra;
        F.target = C;
        return F;
    }
    int slack_floor = floor - 2;
    FreeComplex acc =
        free_resolution_module(C.term(C.hi), C.hi - slack_floor, C.hi, budget);
    acc.target = ChainComplex{C.algebra, C.hi, C.hi, {C.term(C.hi)}, {}};
    for (int lo = C.hi - 1; lo >= C.lo; --lo) {
        // current target: the truncation C^{lo..hi}
        ChainComplex cur;
        cur.algebra = C.algebra;
        cur.lo = lo;
        cur.hi = C.hi;
        for (int n = lo; n <= C.hi; ++n) cur.terms.push_back(C.term(n));
        for (int n = lo; n < C.hi; ++n) cur.diffs.push_back(C.diff(n));
        FreeComplex FA = free_resolution_module(C.term(lo), lo - slack_floor, lo, budget);
        acc = detail::glue_resolutions(cur, std::move(acc), std::move(FA));
    }
    return detail::truncate_floor(std::move(acc), floor);
}

/// Resolution of either a module (placed in degree 0) or a complex, down to
/// the requested floor; the module path stops early at projectives.
inline FreeComplex free_resolution(const ChainComplex& X, int floor, const Budget& budget = {}) {
    if (X.lo == X.hi) return free_resolution_module(X.term(X.lo), X.lo - floor, X.lo, budget);
    return free_resolution_complex(X, floor, budget);
}

// ---------------------------------------------------------------------------
// Bar resolution
// ---------------------------------------------------------------------------

/// R-module data on a B-module: an explicit R-basis with invertible
/// evaluation, so elements can be rewritten with R-coefficients.
struct RModuleStructure {
    std::vector<Vec> basis;  // elements of the module
    Matrix ev_inv;           // inverse of (r, e) -> rho(sigma(r)) basis_e

    /// R-coordinates of v (one element of R per basis element).
    std::vector<Vec> r_coords(const Vec& v, int dimR) const {
        Vec x = ev_inv.apply(v);
        std::vector<Vec> out(basis.size(), Vec(dimR, 0));
        for (std::size_t e = 0; e < basis.size(); ++e)
            for (int t = 0; t < dimR; ++t) out[e][t] = x[e * dimR + t];
        return out;
    }
};

inline RModuleStructure make_r_structure(const AlgebraMap& sigma_into_B, const FDModule& M,
                                         std::vector<Vec> basis) {
    const FinAlgebra& R = *sigma_into_B.source;
    Matrix ev(M.field(), M.dim, int(basis.size()) * R.dim);
    for (std::size_t e = 0; e < basis.size(); ++e)
        for (int t = 0; t < R.dim; ++t)
            ev.set_col(int(e) * R.dim + t,
                       M.act(sigma_into_B.apply(R.basis_vec(t))).apply(basis[e]));
    auto inv = inverse(ev);
    if (!inv) throw std::invalid_argument("make_r_structure: module is not free on this basis");
    return RModuleStructure{std::move(basis), std::move(*inv)};
}

/// Two-sided bar resolution relative to R: F_n = B (x)_R B^{(x)_R n} (x)_R M
/// with the alternating-sum differential and augmentation b (x) m -> b m.
/// Requires B free over R (certificate) and M free over R; sigma(R) must be
/// central in B so coefficients can migrate to the left slot.
inline FreeComplex bar_resolution(const FreeBasisCert& certB, const FDModule& M,
                                  const RModuleStructure& m_str, int length,
                                  const Budget& budget = {}) {
    const AlgebraPtr& Bptr = certB.sigma.target;
    const FinAlgebra& B = *Bptr;
    const FinAlgebra& R = certB.R();
    if (!same_algebra(M.algebra, Bptr)) throw std::invalid_argument("bar_resolution: wrong module");
    for (int t = 0; t < R.dim; ++t) {
        Vec s = certB.sigma.apply(R.basis_vec(t));
        for (int b = 0; b < B.dim; ++b)
            if (B.mul(s, B.basis_vec(b)) != B.mul(B.basis_vec(b), s))
                throw std::invalid_argument("bar_resolution: sigma(R) is not central in B");
    }
    const PrimeField& F = B.F;
    int nB = int(certB.basis.size());
    int nM = int(m_str.basis.size());

    // sigma(R)-coefficient expansions of u_a * u_b over the R-basis of B
    std::vector<std::vector<std::vector<Vec>>> PB(nB);
    for (int a = 0; a < nB; ++a) {
        PB[a].resize(nB);
        for (int b = 0; b < nB; ++b) {
            auto rc = certB.r_coords(B.mul(certB.basis[a], certB.basis[b]));
            PB[a][b].resize(nB);
            for (int m = 0; m < nB; ++m) PB[a][b][m] = certB.sigma.apply(rc[m]);
        }
    }
    // sigma(R)-coefficient expansions of u_a . m_c over the R-basis of M
    std::vector<std::vector<std::vector<Vec>>> PM(nB);
    for (int a = 0; a < nB; ++a) {
        PM[a].resize(nM);
        for (int c = 0; c < nM; ++c) {
            Vec w = M.act(certB.basis[a]).apply(m_str.basis[c]);
            auto rc = m_str.r_coords(w, R.dim);
            PM[a][c].resize(nM);
            for (int e = 0; e < nM; ++e) PM[a][c][e] = certB.sigma.apply(rc[e]);
        }
    }

    FreeComplex out;
    out.B = Bptr;
    out.lo = -length;
    out.hi = 0;
    out.target = complex_from_module(M, 0);
    std::vector<std::size_t> rk(length + 1);
    for (int n = 0; n <= length; ++n) {
        std::size_t r = nM;
        for (int i = 0; i < n; ++i) r *= nB;
        budget.check_count(r * B.dim, "bar_resolution");
        rk[n] = r;
        out.ranks.push_back(int(r));
    }
    std::reverse(out.ranks.begin(), out.ranks.end());

    // generator index of (a_1..a_n, c): mixed radix, a-major
    auto decode = [&](int n, std::size_t idx, std::vector<int>& a, int& c) {
        c = int(idx % nM);
        idx /= nM;
        a.assign(n, 0);
        for (int i = n - 1; i >= 0; --i) {
            a[i] = int(idx % nB);
            idx /= nB;
        }
    };
    auto encode = [&](const std::vector<int>& a, int c) {
        std::size_t idx = 0;
        for (int ai : a) idx = idx * nB + ai;
        return idx * nM + c;
    };

    for (int n = length; n >= 1; --n) {
        BMat d = zero_bmat(B, int(rk[n - 1]), int(rk[n]));
        std::vector<int> a;
        int c;
        for (std::size_t j = 0; j < rk[n]; ++j) {
            decode(n, j, a, c);
            // face 0: coefficient u_{a_1} on (a_2..a_n, c)
            {
                std::vector<int> a2(a.begin() + 1, a.end());
                Vec& slot = d.at(int(encode(a2, c)), int(j));
                const Vec& u = certB.basis[a[0]];
                for (int t = 0; t < B.dim; ++t) slot[t] = F.add(slot[t], u[t]);
            }
            // faces 1..n-1: merge slots i, i+1
            for (int i = 1; i < n; ++i) {
                bool neg = (i % 2) != 0;
                for (int m = 0; m < nB; ++m) {
                    const Vec& coeff = PB[a[i - 1]][a[i]][m];
                    std::vector<int> a2;
                    a2.reserve(n - 1);
                    for (int t = 0; t < i - 1; ++t) a2.push_back(a[t]);
                    a2.push_back(m);
                    for (int t = i + 1; t < n; ++t) a2.push_back(a[t]);
                    Vec& slot = d.at(int(encode(a2, c)), int(j));
                    for (int t = 0; t < B.dim; ++t)
                        slot[t] = neg ? F.sub(slot[t], coeff[t]) : F.add(slot[t], coeff[t]);
                }
            }
            // face n: act on m
            {
                bool neg = (n % 2) != 0;
                std::vector<int> a2(a.begin(), a.end() - 1);
                for (int e = 0; e < nM; ++e) {
                    const Vec& coeff = PM[a[n - 1]][c][e];
                    Vec& slot = d.at(int(encode(a2, e)), int(j));
                    for (int t = 0; t < B.dim; ++t)
                        slot[t] = neg ? F.sub(slot[t], coeff[t]) : F.add(slot[t], coeff[t]);
                }
            }
        }
        out.bdiffs.push_back(std::move(d));
    }
    // augmentation: (c) generator goes to m_c
    Matrix aug(F, M.dim, int(rk[0]) * B.dim);
    for (int c = 0; c < nM; ++c)
        for (int b = 0; b < B.dim; ++b)
            aug.set_col(c * B.dim + b, M.action[b].apply(m_str.basis[c]));
    out.aug[0] = std::move(aug);
    return out;
}

/// Bar resolution over the base field (every algebra and module is k-free).
inline FreeComplex bar_resolution_over_k(const FDModule& M, int length,
                                         const Budget& budget = {}) {
    FreeBasisCert cert = cert_over_k(M.algebra);
    std::vector<Vec> mbasis;
    for (int i = 0; i < M.dim; ++i) {
        Vec e(M.dim, 0);
        e[i] = 1;
        mbasis.push_back(std::move(e));
    }
    RModuleStructure ms = make_r_structure(cert.sigma, M, std::move(mbasis));
    return bar_resolution(cert, M, ms, length, budget);
}

// ---------------------------------------------------------------------------
// Fast Hom / tensor against a free complex
// ---------------------------------------------------------------------------

/// Hom_B(F, N) totalized, using Hom_B(B^r, N^j) = (N^j)^r.  Degrees are
/// capped at `max_degree`.  When B is commutative the result carries the
/// B-action (s.f)(x) = s.f(x); otherwise it lives over the base field.
inline ChainComplex hom_into(const FreeComplex& F, const ChainComplex& N, int max_degree,
                             const Budget& budget = {}) {
    const FinAlgebra& B = *F.B;
    if (!same_algebra(N.algebra, F.B)) throw std::invalid_argument("hom_into: wrong algebra");
    AlgebraPtr out_alg = B.commutative ? F.B : base_field(B.F);
    ChainComplex H;
    H.algebra = out_alg;
    if (F.lo > F.hi || N.lo > N.hi) {
        H.lo = 0;
        H.hi = -1;
        return H;
    }
    H.lo = N.lo - F.hi;
    H.hi = std::min(N.hi - F.lo, max_degree);
    if (H.lo > H.hi) {
        H.hi = H.lo - 1;
        return H;
    }
    struct Blk {
        int i;       // F-degree; N-degree is i + n
        int offset;  // start inside the term
        int copies;  // rank of F^i
        int ndim;    // dim N^{i+n}
    };
    std::map<int, std::vector<Blk>> blocks;
    for (int n = H.lo; n <= H.hi; ++n) {
        std::vector<Blk> bl;
        int off = 0;
        for (int i = F.lo; i <= F.hi; ++i) {
            if (!N.in_window(i + n)) continue;
            int r = F.rank(i), nd = N.term_dim(i + n);
            if (r == 0 || nd == 0) continue;
            bl.push_back(Blk{i, off, r, nd});
            off += r * nd;
        }
        budget.check_count(std::size_t(off), "hom_into");
        FDModule t;
        t.algebra = out_alg;
        t.dim = off;
        if (B.commutative) {
            for (int s = 0; s < B.dim; ++s) {
                Matrix act(B.F, off, off);
                for (const Blk& b : bl) {
                    Matrix a = N.term(b.i + n).action[s];
                    for (int cp = 0; cp < b.copies; ++cp)
                        for (int r2 = 0; r2 < b.ndim; ++r2)
                            for (int c2 = 0; c2 < b.ndim; ++c2)
                                act(b.offset + cp * b.ndim + r2, b.offset + cp * b.ndim + c2) =
                                    a(r2, c2);
                }
                t.action.push_back(std::move(act));
            }
        } else {
            t.action = {Matrix::identity(B.F, off)};
        }
        H.terms.push_back(std::move(t));
        blocks[n] = std::move(bl);
    }
    for (int n = H.lo; n < H.hi; ++n) {
        const auto& from = blocks[n];
        const auto& to = blocks[n + 1];
        budget.check(std::size_t(H.term_dim(n + 1)), std::size_t(std::max(H.term_dim(n), 1)),
                     "hom_into");
        Matrix d(B.F, H.term_dim(n + 1), H.term_dim(n));
        for (const Blk& src : from) {
            for (const Blk& dst : to) {
                if (dst.i == src.i) {
                    // post-compose with d_N
                    Matrix dn = N.diff(src.i + n);
                    for (int cp = 0; cp < src.copies; ++cp)
                        for (int r2 = 0; r2 < dst.ndim; ++r2)
                            for (int c2 = 0; c2 < src.ndim; ++c2)
                                d(dst.offset + cp * dst.ndim + r2, src.offset + cp * src.ndim + c2) =
                                    dn(r2, c2);
                } else if (dst.i == src.i - 1) {
                    // pre-compose with d_F, sign -(-1)^n; entry (j,l) block
                    // rho_{N}(e[l][j]) applied to the copy-l values
                    BMat bd = F.bdiff(src.i - 1);
                    const FDModule& Nm = N.term(src.i + n);
                    for (int j = 0; j < dst.copies; ++j)
                        for (int l = 0; l < src.copies; ++l) {
                            Matrix rho = Nm.act(bd.at(l, j));
                            if (n % 2 == 0) rho = rho.negated();
                            for (int r2 = 0; r2 < dst.ndim; ++r2)
                                for (int c2 = 0; c2 < src.ndim; ++c2) {
                                    u32& slot = d(dst.offset + j * dst.ndim + r2,
                                                  src.offset + l * src.ndim + c2);
                                    slot = B.F.add(slot, rho(r2, c2));
                                }
                        }
                }
            }
        }
        H.diffs.push_back(std::move(d));
    }
    return H;
}

/// F (x)_B N totalized for a free complex over B^op (a resolution of a
/// right module) and a complex N of left B-modules, using B^r (x)_B N = N^r.
/// Degrees are capped below at `min_degree`.  Sign (-1)^i on the N-part.
inline ChainComplex tensor_with(const FreeComplex& F, const AlgebraPtr& Bleft,
                                const ChainComplex& N, int min_degree,
                                const Budget& budget = {}) {
    // F lives over B^op (content-equal check), N over Bleft.
    const FinAlgebra& Bop = *F.B;
    if (!same_algebra(N.algebra, Bleft)) throw std::invalid_argument("tensor_with: wrong algebra");
    const FinAlgebra& B = *Bleft;
    if (Bop.dim != B.dim) throw std::invalid_argument("tensor_with: algebra mismatch");
    AlgebraPtr out_alg = B.commutative ? Bleft : base_field(B.F);
    ChainComplex T;
    T.algebra = out_alg;
    if (F.lo > F.hi || N.lo > N.hi) {
        T.lo = 0;
        T.hi = -1;
        return T;
    }
    T.lo = std::max(F.lo + N.lo, min_degree);
    T.hi = F.hi + N.hi;
    if (T.lo > T.hi) {
        T.hi = T.lo - 1;
        return T;
    }
    struct Blk {
        int i;  // F-degree; N-degree is n - i
        int offset, copies, ndim;
    };
    std::map<int, std::vector<Blk>> blocks;
    for (int n = T.lo; n <= T.hi; ++n) {
        std::vector<Blk> bl;
        int off = 0;
        for (int i = F.lo; i <= F.hi; ++i) {
            int j = n - i;
            if (!N.in_window(j)) continue;
            int r = F.rank(i), nd = N.term_dim(j);
            if (r == 0 || nd == 0) continue;
            bl.push_back(Blk{i, off, r, nd});
            off += r * nd;
        }
        FDModule t;
        t.algebra = out_alg;
        t.dim = off;
        if (B.commutative) {
            for (int s = 0; s < B.dim; ++s) {
                Matrix act(B.F, off, off);
                for (const Blk& b : bl) {
                    Matrix a = N.term(n - b.i).action[s];
                    for (int cp = 0; cp < b.copies; ++cp)
                        for (int r2 = 0; r2 < b.ndim; ++r2)
                            for (int c2 = 0; c2 < b.ndim; ++c2)
                                act(b.offset + cp * b.ndim + r2, b.offset + cp * b.ndim + c2) =
                                    a(r2, c2);
                }
                t.action.push_back(std::move(act));
            }
        } else {
            t.action = {Matrix::identity(B.F, off)};
        }
        budget.check_count(std::size_t(off), "tensor_with");
        T.terms.push_back(std::move(t));
        blocks[n] = std::move(bl);
    }
    for (int n = T.lo; n < T.hi; ++n) {
        const auto& from = blocks[n];
        const auto& to = blocks[n + 1];
        Matrix d(B.F, T.term_dim(n + 1), T.term_dim(n));
        for (const Blk& src : from) {
            for (const Blk& dst : to) {
                if (dst.i == src.i + 1) {
                    // d_F (x) 1: g_l (x) v -> sum_j g_j (x) e[j...]; with
                    // right-module reading the entry acts on v from the left
                    BMat bd = F.bdiff(src.i);
                    const FDModule& Nm = N.term(n - src.i);
                    for (int l = 0; l < dst.copies; ++l)
                        for (int c = 0; c < src.copies; ++c) {
                            Matrix rho = Nm.act(bd.at(l, c));
                            for (int r2 = 0; r2 < dst.ndim; ++r2)
                                for (int c2 = 0; c2 < src.ndim; ++c2) {
                                    u32& slot = d(dst.offset + l * dst.ndim + r2,
                                                  src.offset + c * src.ndim + c2);
                                    slot = B.F.add(slot, rho(r2, c2));
                                }
                        }
                } else if (dst.i == src.i) {
                    Matrix dn = N.diff(n - src.i);
                    if (src.i % 2 != 0) dn = dn.negated();
                    for (int cp = 0; cp < src.copies; ++cp)
                        for (int r2 = 0; r2 < dst.ndim; ++r2)
                            for (int c2 = 0; c2 < src.ndim; ++c2)
                                d(dst.offset + cp * dst.ndim + r2, src.offset + cp * src.ndim + c2) =
                                    dn(r2, c2);
                }
            }
        }
        T.diffs.push_back(std::move(d));
    }
    return T;
}

}  // namespace hochkit

#endif
