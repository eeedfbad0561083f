#ifndef HOCHKIT_DERIVED_HPP
#define HOCHKIT_DERIVED_HPP

#include "hochkit/resolution.hpp"

namespace hochkit {

/// Thrown when a theorem hypothesis cannot be machine-verified from the
/// supplied data (e.g. missing R-freeness certificate for the first
/// reduction argument over a non-field base).
struct PreconditionUnverified : std::runtime_error {
    explicit PreconditionUnverified(const std::string& w) : std::runtime_error(w) {}
};

enum class ResolveEngine { kernel_cover, bar };

struct DerivedOptions {
    int L = 0;  // resolution length; 0 derives it from the window
    ResolveEngine engine = ResolveEngine::kernel_cover;
    Budget budget;
};

inline int default_length(int wlo, int whi) { return std::max(whi, -wlo) + 2; }

namespace detail {

inline FreeComplex resolve_first(const ChainComplex& X, int floor, ResolveEngine engine,
                                 const Budget& budget) {
    if (engine == ResolveEngine::bar) {
        if (X.lo != X.hi)
            throw std::invalid_argument("bar engine resolves modules, not complexes");
        FreeComplex F = bar_resolution_over_k(X.term(X.lo), X.lo - floor, budget);
        // bar_resolution places the module in degree 0; reposition
        F.lo += X.lo;
        F.hi += X.lo;
        std::map<int, Matrix> aug;
        for (auto& [n, m] : F.aug) aug[n + X.lo] = m;
        F.aug = std::move(aug);
        F.target = X;
        return F;
    }
    return free_resolution(X, floor, budget);
}

}  // namespace detail

/// Ext_B(X, N) as graded dimensions on [wlo, whi]: homology of
/// Hom_B(resolution(X), N).  X and N are bounded complexes (modules appear
/// as one-term complexes).
inline ChainComplex rhom_complex(const AlgebraPtr& B, const ChainComplex& X,
                                 const ChainComplex& N, int hi_cap,
                                 const DerivedOptions& opt = {}) {
    if (!same_algebra(X.algebra, B) || !same_algebra(N.algebra, B))
        throw std::invalid_argument("rhom: complexes must live over B");
    int floor = opt.L > 0 ? X.lo - opt.L : std::min(X.lo, N.lo - hi_cap) - 2;
    FreeComplex F = detail::resolve_first(X, floor, opt.engine, opt.budget);
    return hom_into(F, N, hi_cap, opt.budget);
}

inline GradedDims rhom(const AlgebraPtr& B, const ChainComplex& X, const ChainComplex& N,
                       int wlo, int whi, const DerivedOptions& opt = {}) {
    ChainComplex H = rhom_complex(B, X, N, whi + 1, opt);
    return homology_dims(H, wlo, whi);
}

/// Tor^B(X, N) on [wlo, whi], Tor_i in cohomological degree -i.  X is a
/// complex of right B-modules (over B^op; for commutative B the tables
/// coincide), N of left B-modules.
inline ChainComplex ltensor_complex(const AlgebraPtr& B, const ChainComplex& X,
                                    const ChainComplex& N, int lo_cap,
                                    const DerivedOptions& opt = {}) {
    if (!same_algebra(N.algebra, B))
        throw std::invalid_argument("ltensor: second argument must live over B");
    int floor = opt.L > 0 ? X.lo - opt.L : std::min(X.lo, lo_cap - N.hi) - 2;
    FreeComplex F = detail::resolve_first(X, floor, opt.engine, opt.budget);
    return tensor_with(F, B, N, lo_cap, opt.budget);
}

inline GradedDims ltensor(const AlgebraPtr& B, const ChainComplex& X, const ChainComplex& N,
                          int wlo, int whi, const DerivedOptions& opt = {}) {
    DerivedOptions o = opt;
    if (o.L == 0) o.L = default_length(wlo, whi) + std::max(0, N.hi - X.lo);
    ChainComplex T = ltensor_complex(B, X, N, wlo - 1, o);
    return homology_dims(T, wlo, whi);
}

// ---------------------------------------------------------------------------
// Hochschild (co)homology of a certified flat map
// ---------------------------------------------------------------------------

/// sigma: R -> S with its enveloping algebra and S as an S^e-module via mu.
struct SetupSigma {
    FreeBasisCert cert;
    EnvelopingAlgebra env;
    FDModule S_module;  // S over S^e
    bool base_is_field = true;

    const AlgebraPtr& S() const { return cert.sigma.target; }
    const AlgebraPtr& R() const { return cert.sigma.source; }
    const AlgebraPtr& Se() const { return env.Se; }
};

inline SetupSigma make_setup(FreeBasisCert cert) {
    EnvelopingAlgebra env = enveloping_algebra(cert);
    const AlgebraPtr& S = env.mu.target;
    FDModule M;
    M.algebra = env.Se;
    M.dim = S->dim;
    for (int i = 0; i < env.Se->dim; ++i)
        M.action.push_back(S->left_mult(env.mu.apply(env.Se->basis_vec(i))));
    Validation v = validate_module(M);
    if (!v.ok) throw std::logic_error("make_setup: " + v.message);
    bool field = env.cert.R().dim == 1;
    return SetupSigma{std::move(env.cert), std::move(env), std::move(M), field};
}

inline SetupSigma setup_over_k(const AlgebraPtr& S) { return make_setup(cert_over_k(S)); }

/// M (x)_R N as an S^e-module, (s (x) s')(m (x) n) = s m (x) s' n.
inline FDModule tensor_over_R(const SetupSigma& st, const FDModule& M, const FDModule& N,
                              const Budget& budget = {}) {
    const AlgebraPtr& S = st.S();
    if (!same_algebra(M.algebra, S) || !same_algebra(N.algebra, S))
        throw std::invalid_argument("tensor_over_R: modules must be over S");
    const FinAlgebra& R = *st.R();
    const PrimeField& F = S->F;
    budget.check(M.dim, std::size_t(N.dim), "tensor_over_R");
    std::size_t amb = std::size_t(M.dim) * N.dim;
    std::vector<Vec> rels;
    for (int t = 0; t < R.dim; ++t) {
        Vec s = st.cert.sigma.apply(R.basis_vec(t));
        Matrix ml = M.act(s), nl = N.act(s);
        for (int u = 0; u < M.dim; ++u)
            for (int v = 0; v < N.dim; ++v) {
                Vec w(amb, 0);
                for (int r = 0; r < M.dim; ++r)
                    w[std::size_t(r) * N.dim + v] = F.add(w[std::size_t(r) * N.dim + v], ml(r, u));
                for (int c = 0; c < N.dim; ++c)
                    w[std::size_t(u) * N.dim + c] = F.sub(w[std::size_t(u) * N.dim + c], nl(c, v));
                rels.push_back(std::move(w));
            }
    }
    FDModule ambient;
    ambient.algebra = st.Se();
    ambient.dim = int(amb);
    int nb = int(st.cert.basis.size());
    for (int a = 0; a < S->dim; ++a)
        for (int j = 0; j < nb; ++j)
            ambient.action.push_back(M.act(S->basis_vec(a)).kron(N.act(st.cert.basis[j])));
    return quotient_module(ambient, rels).module;
}

/// Hom_R(M, N) as an S^e-module, ((s (x) s') f)(m) = s f(s' m).
struct HomOverR {
    FDModule module;              // over S^e
    std::vector<Matrix> basis;    // underlying R-linear maps
};

inline HomOverR hom_over_R(const SetupSigma& st, const FDModule& M, const FDModule& N,
                           const Budget& budget = {}) {
    const AlgebraPtr& S = st.S();
    const FinAlgebra& R = *st.R();
    const PrimeField& F = S->F;
    std::vector<Matrix> on_m, on_n;
    for (int t = 0; t < R.dim; ++t) {
        Vec s = st.cert.sigma.apply(R.basis_vec(t));
        on_m.push_back(M.act(s));
        on_n.push_back(N.act(s));
    }
    std::vector<Matrix> basis = intertwiner_basis(F, M.dim, N.dim, on_m, on_n, budget);
    FDModule H;
    H.algebra = st.Se();
    H.dim = int(basis.size());
    int nb = int(st.cert.basis.size());
    for (int a = 0; a < S->dim; ++a) {
        Matrix ln = N.act(S->basis_vec(a));
        for (int j = 0; j < nb; ++j) {
            Matrix rm = M.act(st.cert.basis[j]);
            Matrix act(F, H.dim, H.dim);
            for (int l = 0; l < H.dim; ++l) {
                auto co = coords_in_matrix_basis(basis, ln * (basis[l] * rm));
                if (!co) throw std::logic_error("hom_over_R: action leaves the hom space");
                act.set_col(l, *co);
            }
            H.action.push_back(std::move(act));
        }
    }
    Validation v = validate_module(H);
    if (!v.ok) throw std::logic_error("hom_over_R: " + v.message);
    return HomOverR{std::move(H), std::move(basis)};
}

/// Hochschild cohomology dims of sigma with coefficients in the
/// S^e-(module or complex) X: Ext_{S^e}(S, X).
inline GradedDims hochschild_cohomology(const SetupSigma& st, const ChainComplex& X, int wlo,
                                        int whi, const DerivedOptions& opt = {}) {
    return rhom(st.Se(), complex_from_module(st.S_module), X, wlo, whi, opt);
}

/// Hochschild homology dims: Tor^{S^e}(S, X), Tor_i in degree -i.
inline GradedDims hochschild_homology(const SetupSigma& st, const ChainComplex& X, int wlo,
                                      int whi, const DerivedOptions& opt = {}) {
    return ltensor(st.Se(), complex_from_module(st.S_module), X, wlo, whi, opt);
}

// ---------------------------------------------------------------------------
// Relative dualizing module
// ---------------------------------------------------------------------------

/// Deterministic search for an invertible element of a matrix-space span.
inline std::optional<Matrix> find_invertible_combination(const std::vector<Matrix>& basis,
                                                         std::size_t enumeration_cap = 1u << 20) {
    if (basis.empty()) return std::nullopt;
    const PrimeField& f = basis[0].field();
    std::size_t m = basis.size();
    double total = 1;
    for (std::size_t i = 0; i < m; ++i) total *= f.p();
    if (total <= double(enumeration_cap)) {
        std::vector<u32> coeff(m, 0);
        while (true) {
            std::size_t i = 0;
            while (i < m && coeff[i] == f.p() - 1) coeff[i++] = 0;
            if (i == m) break;
            ++coeff[i];
            Matrix cand = basis[0].scaled(coeff[0]);
            for (std::size_t l = 1; l < m; ++l) cand = cand + basis[l].scaled(coeff[l]);
            if (inverse(cand)) return cand;
        }
        return std::nullopt;
    }
    for (const Matrix& b : basis)
        if (inverse(b)) return b;
    Matrix sum = basis[0];
    for (std::size_t l = 1; l < m; ++l) sum = sum + basis[l];
    if (inverse(sum)) return sum;
    return std::nullopt;
}

struct DualizingResult {
    FDModule D;                      // Hom_R(S, R) as an S-module, degree 0
    GradedDims oracle;               // homology of S (x)^L_{S^e} Hom_R(S, S)
    bool oracle_concentrated = false;
    std::optional<Matrix> iso_to_S;  // explicit S-module isomorphism D -> S
};

/// D^sigma := Hom_R(S, R) with (s.f)(t) = f(st), plus the independent
/// tensor-expression oracle and an explicit isomorphism search.
inline DualizingResult dualizing_complex(const SetupSigma& st, int wlo = -4, int whi = 4,
                                         const DerivedOptions& opt = {}) {
    const AlgebraPtr& S = st.S();
    const FinAlgebra& R = *st.R();
    const PrimeField& F = S->F;
    // basis of Hom_R(S, R)
    std::vector<Matrix> on_s, on_r;
    for (int t = 0; t < R.dim; ++t) {
        on_s.push_back(S->left_mult(st.cert.sigma.apply(R.basis_vec(t))));
        on_r.push_back(R.left_mult_basis(t));
    }
    std::vector<Matrix> basis = intertwiner_basis(F, S->dim, R.dim, on_s, on_r, opt.budget);
    FDModule D;
    D.algebra = S;
    D.dim = int(basis.size());
    for (int a = 0; a < S->dim; ++a) {
        Matrix ls = S->left_mult_basis(a);
        Matrix act(F, D.dim, D.dim);
        for (int l = 0; l < D.dim; ++l) {
            auto co = coords_in_matrix_basis(basis, basis[l] * ls);
            if (!co) throw std::logic_error("dualizing: action leaves the hom space");
            act.set_col(l, *co);
        }
        D.action.push_back(std::move(act));
    }
    Validation v = validate_module(D);
    if (!v.ok) throw std::logic_error("dualizing: " + v.message);

    // oracle: S (x)^L_{S^e} RHom_R(S, S); the inner hom is concentrated
    // because S is R-free by certificate
    FDModule W0 = hom_over_R(st, regular_module(S), regular_module(S), opt.budget).module;
    GradedDims oracle =
        ltensor(st.Se(), complex_from_module(st.S_module), complex_from_module(W0), wlo, whi, opt);
    bool conc = oracle.all_zero_except(0) && oracle.at(0) == D.dim;

    // explicit S-module isomorphism D -> S when one exists
    std::vector<Matrix> homDS =
        intertwiner_basis(F, D.dim, S->dim, D.action, regular_module(S).action, opt.budget);
    std::optional<Matrix> iso;
    if (D.dim == S->dim) iso = find_invertible_combination(homDS);
    return DualizingResult{std::move(D), std::move(oracle), conc, std::move(iso)};
}

// ---------------------------------------------------------------------------
// Reduction theorem checks
// ---------------------------------------------------------------------------

enum class ReductionMode { cohomology, homology };

struct ReductionReport {
    GradedDims lhs, rhs;
    bool equal = false;
};

/// Verify the reduction isomorphism as a graded-dimension equality on the
/// window.  Mode cohomology:
///   RHom_{S^e}(S, M (x)_R N)  vs  RHom_S(RHom_S(M, D), N);
/// mode homology:
///   S (x)^L_{S^e} Hom_R(M, N)  vs  RHom_S(M, D) (x)^L_S N.
/// Over a non-field base the first argument must be certified R-free
/// (sigma-perfection); the regular module S certifies itself.
inline ReductionReport reduction_check(ReductionMode mode, const SetupSigma& st, const FDModule& M,
                                       const FDModule& N, int wlo, int whi,
                                       const DerivedOptions& opt = {},
                                       const std::optional<std::vector<Vec>>& m_r_basis = {}) {
    const AlgebraPtr& S = st.S();
    if (!same_algebra(M.algebra, S) || !same_algebra(N.algebra, S))
        throw std::invalid_argument("reduction_check: M, N must be S-modules");
    if (!st.base_is_field) {
        std::vector<Vec> rb;
        if (m_r_basis) {
            rb = *m_r_basis;
        } else if (M.dim == S->dim && M.action == regular_module(S).action) {
            rb = st.cert.basis;  // S itself is R-free via the certificate
        } else {
            throw PreconditionUnverified(
                "reduction_check: non-field base and no R-freeness certificate for M");
        }
        make_r_structure(st.cert.sigma, M, rb);  // throws unless genuinely free
    }
    DerivedOptions o = opt;
    if (o.L == 0) o.L = default_length(wlo, whi);
    DerivedOptions inner = o;
    inner.engine = ResolveEngine::kernel_cover;

    DualizingResult dual = dualizing_complex(st, wlo, whi, inner);
    // W = RHom_S(M, D), a complex over S in degrees [0, L]
    DerivedOptions wopts = inner;
    ChainComplex W =
        rhom_complex(S, complex_from_module(M), complex_from_module(dual.D), o.L, wopts);

    ReductionReport rep;
    if (mode == ReductionMode::cohomology) {
        FDModule X = tensor_over_R(st, M, N, o.budget);
        rep.lhs = hochschild_cohomology(st, complex_from_module(X), wlo, whi, o);
        DerivedOptions outer = inner;
        outer.L = 0;  // depth from window and W's layout
        rep.rhs = rhom(S, W, complex_from_module(N), wlo, whi, outer);
    } else {
        FDModule X = hom_over_R(st, M, N, o.budget).module;
        rep.lhs = hochschild_homology(st, complex_from_module(X), wlo, whi, o);
        DerivedOptions outer = inner;
        outer.L = 0;
        rep.rhs = ltensor(S, W, complex_from_module(N), wlo, whi, outer);
    }
    rep.equal = rep.lhs == rep.rhs;
    return rep;
}

// ---------------------------------------------------------------------------
// Adjoint associativity, classical (3.1)
// ---------------------------------------------------------------------------

struct AdjointAssocReport {
    int lhs_dim = 0, rhs_dim = 0;
    Matrix matrix;  // coordinates of a(x,y,z) from LHS basis to RHS basis
    bool bijective = false;
    bool bilinear = false;
    bool natural_in_z = false;
    bool natural_in_x = false;
    bool ok() const { return bijective && bilinear && natural_in_z && natural_in_x; }
};

/// Build a(x,y,z): Hom_C(x (x)_B y, z) -> Hom_B(x, Hom_C(y, z)) explicitly
/// and verify it is a (D,A)-bimodule isomorphism, natural in x and z (on
/// the full endomorphism hom-space bases).
inline AdjointAssocReport adjoint_assoc_classical(const Bimodule& x, const Bimodule& y,
                                                  const Bimodule& z, const Budget& budget = {}) {
    const PrimeField& F = x.left_algebra->F;
    TensorMid t = tensor_mid(x, y, budget);           // x (x)_B y in A#C
    HomRight lhs = hom_right(t.result, z, budget);    // in D#A
    HomRight inner = hom_right(y, z, budget);         // in D#B
    HomRight rhs = hom_right(x, inner.result, budget);  // in D#A

    int dx = x.dim(), dy = y.dim(), dz = z.dim();
    AdjointAssocReport rep;
    rep.lhs_dim = lhs.result.dim();
    rep.rhs_dim = rhs.result.dim();
    rep.matrix = Matrix(F, rep.rhs_dim, rep.lhs_dim);

    for (int l = 0; l < rep.lhs_dim; ++l) {
        const Matrix& Fl = lhs.basis[l];  // z x T
        // a(Fl): x -> Hom_C(y, z), xi |-> (eta |-> Fl(proj(xi (x) eta)))
        Matrix ax(F, inner.result.dim(), dx);
        for (int xi = 0; xi < dx; ++xi) {
            Matrix Mxi(F, dz, dy);
            for (int eta = 0; eta < dy; ++eta) {
                Vec amb(std::size_t(dx) * dy, 0);
                amb[std::size_t(xi) * dy + eta] = 1;
                Vec rep_t = t.space.projection.apply(amb);
                Mxi.set_col(eta, Fl.apply(rep_t));
            }
            auto co = coords_in_matrix_basis(inner.basis, Mxi);
            if (!co) throw std::logic_error("adjoint_assoc: image not right-C-linear");
            ax.set_col(xi, *co);
        }
        auto co = coords_in_matrix_basis(rhs.basis, ax);
        if (!co) throw std::logic_error("adjoint_assoc: image not right-B-linear");
        rep.matrix.set_col(l, *co);
    }
    rep.bijective = rep.lhs_dim == rep.rhs_dim && inverse(rep.matrix).has_value();

    // (D,A)-bilinearity: intertwines the module structures over D (x) A^op
    rep.bilinear = true;
    const FDModule& LM = lhs.result.mod;
    const FDModule& RM = rhs.result.mod;
    for (int i = 0; i < LM.algebra->dim; ++i)
        if (!(rep.matrix * LM.action[i] == RM.action[i] * rep.matrix)) rep.bilinear = false;

    // naturality in z: for every bimodule endomap phi of z,
    // a . (phi o -) = (Hom(x, Hom(y, phi))) . a
    rep.natural_in_z = true;
    for (const Matrix& phi : hom_module_basis(z.mod, z.mod, budget)) {
        Matrix Lphi(F, rep.lhs_dim, rep.lhs_dim);
        for (int l = 0; l < rep.lhs_dim; ++l) {
            auto co = coords_in_matrix_basis(lhs.basis, phi * lhs.basis[l]);
            if (!co) throw std::logic_error("adjoint_assoc: naturality map escapes");
            Lphi.set_col(l, *co);
        }
        Matrix Iphi(F, inner.result.dim(), inner.result.dim());
        for (int l = 0; l < inner.result.dim(); ++l) {
            auto co = coords_in_matrix_basis(inner.basis, phi * inner.basis[l]);
            if (!co) throw std::logic_error("adjoint_assoc: naturality map escapes");
            Iphi.set_col(l, *co);
        }
        Matrix Rphi(F, rep.rhs_dim, rep.rhs_dim);
        for (int l = 0; l < rep.rhs_dim; ++l) {
            auto co = coords_in_matrix_basis(rhs.basis, Iphi * rhs.basis[l]);
            if (!co) throw std::logic_error("adjoint_assoc: naturality map escapes");
            Rphi.set_col(l, *co);
        }
        if (!(rep.matrix * Lphi == Rphi * rep.matrix)) rep.natural_in_z = false;
    }

    // naturality in x: for every bimodule endomap psi of x, pre-composition
    // with psi (x) id on the tensor and with psi on the right-hand side
    rep.natural_in_x = true;
    for (const Matrix& psi : hom_module_basis(x.mod, x.mod, budget)) {
        Matrix tpsi =
            t.space.projection * (psi.kron(Matrix::identity(F, dy)) * t.space.section);
        Matrix Lpsi(F, rep.lhs_dim, rep.lhs_dim);
        for (int l = 0; l < rep.lhs_dim; ++l) {
            auto co = coords_in_matrix_basis(lhs.basis, lhs.basis[l] * tpsi);
            if (!co) throw std::logic_error("adjoint_assoc: naturality map escapes");
            Lpsi.set_col(l, *co);
        }
        Matrix Rpsi(F, rep.rhs_dim, rep.rhs_dim);
        for (int l = 0; l < rep.rhs_dim; ++l) {
            auto co = coords_in_matrix_basis(rhs.basis, rhs.basis[l] * psi);
            if (!co) throw std::logic_error("adjoint_assoc: naturality map escapes");
            Rpsi.set_col(l, *co);
        }
        if (!(rep.matrix * Lpsi == Rpsi * rep.matrix)) rep.natural_in_x = false;
    }
    return rep;
}

struct AssociatorReport {
    int lhs_dim = 0, rhs_dim = 0;
    Matrix matrix;  // (w (x) x) (x) y -> w (x) (x (x) y) on representatives
    bool bijective = false;
    bool bilinear = false;
    bool inverse_roundtrip = false;
    bool ok() const { return bijective && bilinear && inverse_roundtrip; }
};

/// Canonical associator of w in D#A, x in A#B, y in B#C on coequalizer
/// representatives.
inline AssociatorReport tensor_associator(const Bimodule& w, const Bimodule& x, const Bimodule& y,
                                          const Budget& budget = {}) {
    const PrimeField& F = w.left_algebra->F;
    int dw = w.dim(), dx = x.dim(), dy = y.dim();
    TensorMid wx = tensor_mid(w, x, budget);
    TensorMid wx_y = tensor_mid(wx.result, y, budget);
    TensorMid xy = tensor_mid(x, y, budget);
    TensorMid w_xy = tensor_mid(w, xy.result, budget);

    // ambient rewiring (w (x) x) (x) y -> w (x) (x (x) y) on representatives
    Matrix V(F, dw * xy.result.dim(), wx.result.dim() * dy);
    for (int pidx = 0; pidx < wx.result.dim(); ++pidx) {
        Vec u = wx.space.section.col(pidx);  // in w (x) x coordinates
        for (int eta = 0; eta < dy; ++eta) {
            Vec out(std::size_t(dw) * xy.result.dim(), 0);
            for (int om = 0; om < dw; ++om)
                for (int xi = 0; xi < dx; ++xi) {
                    u32 cuv = u[std::size_t(om) * dx + xi];
                    if (cuv == 0) continue;
                    Vec amb_xy(std::size_t(dx) * dy, 0);
                    amb_xy[std::size_t(xi) * dy + eta] = 1;
                    Vec q = xy.space.projection.apply(amb_xy);
                    for (int tq = 0; tq < xy.result.dim(); ++tq)
                        out[std::size_t(om) * xy.result.dim() + tq] = F.add(
                            out[std::size_t(om) * xy.result.dim() + tq], F.mul(cuv, q[tq]));
                }
            V.set_col(pidx * dy + eta, out);
        }
    }
    AssociatorReport rep;
    rep.lhs_dim = wx_y.result.dim();
    rep.rhs_dim = w_xy.result.dim();
    rep.matrix = w_xy.space.projection * (V * wx_y.space.section);
    auto inv = inverse(rep.matrix);
    rep.bijective = rep.lhs_dim == rep.rhs_dim && inv.has_value();
    rep.bilinear = true;
    for (int i = 0; i < wx_y.result.mod.algebra->dim; ++i)
        if (!(rep.matrix * wx_y.result.mod.action[i] == w_xy.result.mod.action[i] * rep.matrix))
            rep.bilinear = false;
    if (inv) {
        // mirror construction w (x) (x (x) y) -> (w (x) x) (x) y
        Matrix Vr(F, wx.result.dim() * dy, dw * xy.result.dim());
        for (int om = 0; om < dw; ++om)
            for (int tq = 0; tq < xy.result.dim(); ++tq) {
                Vec q = xy.space.section.col(tq);  // in x (x) y coordinates
                Vec out(std::size_t(wx.result.dim()) * dy, 0);
                for (int xi = 0; xi < dx; ++xi)
                    for (int eta = 0; eta < dy; ++eta) {
                        u32 c = q[std::size_t(xi) * dy + eta];
                        if (c == 0) continue;
                        Vec amb_wx(std::size_t(dw) * dx, 0);
                        amb_wx[std::size_t(om) * dx + xi] = 1;
                        Vec p = wx.space.projection.apply(amb_wx);
                        for (int pp = 0; pp < wx.result.dim(); ++pp)
                            out[std::size_t(pp) * dy + eta] =
                                F.add(out[std::size_t(pp) * dy + eta], F.mul(c, p[pp]));
                    }
                Vr.set_col(om * xy.result.dim() + tq, out);
            }
        Matrix back = wx_y.space.projection * (Vr * w_xy.space.section);
        rep.inverse_roundtrip = (back * rep.matrix == Matrix::identity(F, rep.lhs_dim)) &&
                                (rep.matrix * back == Matrix::identity(F, rep.rhs_dim));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Ext-level adjoint associativity
// ---------------------------------------------------------------------------

struct ExtAdjointReport {
    GradedDims lhs, rhs;
    bool equal = false;
};

/// Graded dims of Ext_{A(x)C^op}(x (x)^L_B y, z) vs
/// Ext_{A(x)B^op}(x, RHom_C(y, z)) on [0, whi].
inline ExtAdjointReport ext_adjoint_assoc_check(const Bimodule& x, const Bimodule& y,
                                                const Bimodule& z, int whi,
                                                const DerivedOptions& opt = {}) {
    if (!same_algebra(x.right_algebra, y.left_algebra) ||
        !same_algebra(x.left_algebra, z.left_algebra) ||
        !same_algebra(y.right_algebra, z.right_algebra))
        throw std::invalid_argument("ext_adjoint_assoc_check: algebra mismatch");
    DerivedOptions o = opt;
    if (o.L == 0) o.L = whi + 2;

    // LHS: x (x)^L_B y as a complex over A (x) C^op, then Ext against z
    FreeComplex Fx = free_resolution_module(x.mod, o.L, 0, o.budget);
    BimoduleComplex X{x.left_algebra, x.right_algebra, Fx.expand()};
    TensorComplex T = tensor_mid_complex(X, bimodule_complex_from(y), o.budget);
    ExtAdjointReport rep;
    {
        FreeComplex FT =
            free_resolution_complex(T.cx.cx, std::min(T.cx.cx.lo, -whi) - 2, o.budget);
        ChainComplex H = hom_into(FT, complex_from_module(z.mod), whi + 1, o.budget);
        rep.lhs = homology_dims(H, 0, whi);
    }

    // RHS: RHom_C(y, z) as a complex over A (x) B^op, then Ext from x
    FreeComplex Fy = free_resolution_module(y.mod, o.L, 0, o.budget);
    BimoduleComplex Y{y.left_algebra, y.right_algebra, Fy.expand()};
    HomRightComplex W = hom_right_complex(Y, z, o.budget);
    {
        ChainComplex H = hom_into(Fx, W.cx.cx, whi + 1, o.budget);
        rep.rhs = homology_dims(H, 0, whi);
    }
    rep.equal = rep.lhs == rep.rhs;
    return rep;
}

}  // namespace hochkit

#endif
