#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "hochkit/algebra.hpp"

using namespace hochkit;

namespace {

const PrimeField F5(5);

// sigma: k[y]/(y^2) -> k[x]/(x^4), y -> x^2, with free basis {1, x}.
FreeBasisCert tp2_in_tp4() {
    AlgebraPtr R = truncated_poly(F5, 2, "y");
    AlgebraPtr S = truncated_poly(F5, 4, "x");
    Matrix m(F5, 4, 2);
    m.set_col(0, S->unit);
    m.set_col(1, Vec{0, 0, 1, 0});  // y -> x^2
    AlgebraMap sigma{R, S, m};
    return make_free_cert(sigma, {S->basis_vec(0), S->basis_vec(1)});
}

// Oracle for "isomorphic up to basis relabeling": search all permutations.
bool tables_equal_up_to_permutation(const FinAlgebra& A, const FinAlgebra& B) {
    if (A.dim != B.dim) return false;
    std::vector<int> perm(A.dim);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int i = 0; i < A.dim && ok; ++i)
            if (B.unit[perm[i]] != A.unit[i]) ok = false;
        for (int i = 0; i < A.dim && ok; ++i)
            for (int j = 0; j < A.dim && ok; ++j)
                for (int k = 0; k < A.dim && ok; ++k)
                    if (A.cval(i, j, k) != B.cval(perm[i], perm[j], perm[k])) ok = false;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace

TEST_CASE("preset algebras validate") {
    for (const AlgebraPtr& A : {truncated_poly(F5, 2), truncated_poly(F5, 3), split_algebra(F5, 2),
                                split_algebra(F5, 4), triangular2(F5), base_field(F5)})
        CHECK(validate_algebra(*A).ok);
    CHECK_THROWS_AS(truncated_poly(F5, 0), std::invalid_argument);
}

TEST_CASE("truncated_poly multiplication") {
    AlgebraPtr A = truncated_poly(F5, 3);
    CHECK(A->dim == 3);
    CHECK(A->mul(A->basis_vec(1), A->basis_vec(1)) == A->basis_vec(2));  // x*x = x^2
    CHECK(A->mul(A->basis_vec(2), A->basis_vec(1)) == Vec{0, 0, 0});     // x^2*x = 0
}

TEST_CASE("split algebra idempotents") {
    AlgebraPtr A = split_algebra(F5, 2);
    CHECK(A->mul(A->basis_vec(0), A->basis_vec(0)) == A->basis_vec(0));
    CHECK(A->mul(A->basis_vec(0), A->basis_vec(1)) == Vec{0, 0});
    CHECK(A->unit == Vec{1, 1});
}

TEST_CASE("corrupted unit is reported") {
    FinAlgebra bad = *truncated_poly(F5, 2);
    bad.cref(0, 0, 0) = 2;  // break 1*1 = 1
    Validation v = validate_algebra(bad);
    CHECK_FALSE(v.ok);
    CHECK(v.message.find("unit") != std::string::npos);
}

TEST_CASE("triangular2 is noncommutative with a witness pair") {
    AlgebraPtr T = triangular2(F5);
    CHECK_FALSE(T->commutative);
    // derived: scan all basis pairs for a witness
    bool witness = false;
    for (int i = 0; i < T->dim && !witness; ++i)
        for (int j = 0; j < T->dim && !witness; ++j)
            if (T->mul(T->basis_vec(i), T->basis_vec(j)) !=
                T->mul(T->basis_vec(j), T->basis_vec(i)))
                witness = true;
    CHECK(witness);
}

TEST_CASE("tensor_algebras") {
    AlgebraPtr t2 = truncated_poly(F5, 2);

    SECTION("dims multiply") {
        CHECK(tensor_algebras(t2, t2)->dim == 4);
    }
    SECTION("split(2) (x) split(2) is split(4) up to relabeling") {
        AlgebraPtr s2 = split_algebra(F5, 2);
        CHECK(tables_equal_up_to_permutation(*tensor_algebras(s2, s2), *split_algebra(F5, 4)));
    }
    SECTION("A (x) k = A on the nose") {
        AlgebraPtr k = base_field(F5);
        AlgebraPtr Ak = tensor_algebras(t2, k);
        CHECK(Ak->c == t2->c);
        CHECK(Ak->unit == t2->unit);
        AlgebraPtr kA = tensor_algebras(k, t2);
        CHECK(kA->c == t2->c);
    }
    SECTION("associative up to lexicographic re-indexing") {
        AlgebraPtr s2 = split_algebra(F5, 2);
        AlgebraPtr t3 = truncated_poly(F5, 3);
        AlgebraPtr left = tensor_algebras(tensor_algebras(t2, s2), t3);
        AlgebraPtr right = tensor_algebras(t2, tensor_algebras(s2, t3));
        CHECK(left->c == right->c);  // (i,j),l and i,(j,l) agree lexicographically
        CHECK(left->unit == right->unit);
    }
    SECTION("every constructed tensor validates") {
        CHECK(validate_algebra(*tensor_algebras(t2, triangular2(F5))).ok);
    }
}

TEST_CASE("opposite_algebra") {
    AlgebraPtr t2 = truncated_poly(F5, 2);
    SECTION("commutative algebras are fixed") {
        CHECK(opposite_algebra(t2)->c == t2->c);
    }
    AlgebraPtr T = triangular2(F5);
    SECTION("tables transpose in (i,j)") {
        AlgebraPtr Top = opposite_algebra(T);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) CHECK(Top->cval(i, j, k) == T->cval(j, i, k));
    }
    SECTION("involution") {
        CHECK(opposite_algebra(opposite_algebra(T))->c == T->c);
    }
    SECTION("opposite validates") {
        CHECK(validate_algebra(*opposite_algebra(T)).ok);
    }
}

TEST_CASE("algebra maps validate") {
    AlgebraPtr t2 = truncated_poly(F5, 2);
    CHECK(validate_algebra_map(identity_map(t2)).ok);
    // x -> 0 is the augmentation map t2 -> k
    Matrix m(F5, 1, 2);
    m(0, 0) = 1;
    AlgebraMap aug{t2, base_field(F5), m};
    CHECK(validate_algebra_map(aug).ok);
    // x -> 1 is not multiplicative
    Matrix bad(F5, 1, 2);
    bad(0, 0) = 1;
    bad(0, 1) = 1;
    CHECK_FALSE(validate_algebra_map(AlgebraMap{t2, base_field(F5), bad}).ok);
}

TEST_CASE("freeness certificates") {
    SECTION("every algebra is free over k") {
        FreeBasisCert c = cert_over_k(truncated_poly(F5, 3));
        CHECK(c.basis.size() == 3);
    }
    SECTION("tp2 -> tp4 via y -> x^2 with basis {1, x}") {
        FreeBasisCert c = tp2_in_tp4();
        CHECK(c.basis.size() == 2);
        // r_coords of x^3 must be (0, y) against basis {1, x}
        auto rc = c.r_coords(Vec{0, 0, 0, 1});
        CHECK(rc[0] == Vec{0, 0});
        CHECK(rc[1] == Vec{0, 1});
    }
    SECTION("a non-basis is rejected") {
        AlgebraPtr R = truncated_poly(F5, 2, "y");
        AlgebraPtr S = truncated_poly(F5, 4, "x");
        Matrix m(F5, 4, 2);
        m.set_col(0, S->unit);
        m.set_col(1, Vec{0, 0, 1, 0});
        AlgebraMap sigma{R, S, m};
        CHECK_THROWS_AS(make_free_cert(sigma, {S->basis_vec(0), S->basis_vec(2)}),
                        std::invalid_argument);
    }
}

TEST_CASE("enveloping algebra") {
    SECTION("R = k, S = tp2: dim S^e = 4") {
        EnvelopingAlgebra env = enveloping_algebra(cert_over_k(truncated_poly(F5, 2)));
        CHECK(env.Se->dim == 4);
        CHECK(validate_algebra(*env.Se).ok);
    }
    SECTION("R = S via identity: S^e = S") {
        AlgebraPtr S = truncated_poly(F5, 2);
        FreeBasisCert c = make_free_cert(identity_map(S), {S->unit});
        EnvelopingAlgebra env = enveloping_algebra(c);
        CHECK(env.Se->dim == S->dim);
        CHECK(tables_equal_up_to_permutation(*env.Se, *S));
    }
    SECTION("R = tp2(y), S = tp4(x), sigma(y) = x^2: dim_k S^e = 8") {
        EnvelopingAlgebra env = enveloping_algebra(tp2_in_tp4());
        CHECK(env.Se->dim == 8);
        CHECK(validate_algebra(*env.Se).ok);
    }
    SECTION("mu composed with both inclusions is the identity of S") {
        for (auto cert : {cert_over_k(truncated_poly(F5, 2)), cert_over_k(split_algebra(F5, 2)),
                          tp2_in_tp4()}) {
            EnvelopingAlgebra env = enveloping_algebra(cert);
            const FinAlgebra& S = *env.mu.target;
            CHECK(env.mu.matrix * env.incl_left.matrix == Matrix::identity(S.F, S.dim));
            CHECK(env.mu.matrix * env.incl_right.matrix == Matrix::identity(S.F, S.dim));
        }
    }
    SECTION("noncommutative S is rejected") {
        CHECK_THROWS_AS(enveloping_algebra(cert_over_k(triangular2(F5))), std::invalid_argument);
    }
}
