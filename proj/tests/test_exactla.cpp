#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hochkit/matrix.hpp"

using namespace hochkit;

namespace {

Matrix random_matrix(PrimeField f, int rows, int cols, std::mt19937& rng) {
    Matrix m(f, rows, cols);
    std::uniform_int_distribution<u32> d(0, f.p() - 1);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = d(rng);
    return m;
}

// Independent oracle: enumerate all of F_p^n and keep the null vectors.
std::vector<Vec> kernel_by_enumeration(const Matrix& m) {
    std::vector<Vec> out;
    u64 total = 1;
    for (int i = 0; i < m.cols(); ++i) total *= m.field().p();
    for (u64 code = 0; code < total; ++code) {
        Vec v(m.cols());
        u64 c = code;
        for (int i = 0; i < m.cols(); ++i) {
            v[i] = u32(c % m.field().p());
            c /= m.field().p();
        }
        Vec img = m.apply(v);
        if (std::all_of(img.begin(), img.end(), [](u32 x) { return x == 0; })) out.push_back(v);
    }
    return out;
}

bool in_span(const std::vector<Vec>& vs, const Vec& v, PrimeField f) {
    if (vs.empty()) return std::all_of(v.begin(), v.end(), [](u32 x) { return x == 0; });
    Matrix m = columns_matrix(f, int(v.size()), vs);
    return solve_linear(m, v).has_value();
}

}  // namespace

TEST_CASE("field arithmetic") {
    PrimeField f(5);
    CHECK(f.add(3, 4) == 2);
    CHECK(f.sub(1, 3) == 3);
    CHECK(f.mul(2, 3) == 1);
    CHECK(f.inv(2) == 3);
    CHECK(f.neg(0) == 0);
    CHECK_THROWS_AS(PrimeField(6), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(1), std::invalid_argument);
    PrimeField big(2147483647);  // 2^31 - 1 is prime
    CHECK(big.mul(big.inv(12345), 12345) == 1);
}

TEST_CASE("kernel_basis on the spec examples") {
    PrimeField f(5);

    SECTION("identity is injective") {
        CHECK(kernel_basis(Matrix::identity(f, 2)).empty());
    }

    SECTION("rank-1 matrix, oracle by enumeration of all 25 vectors") {
        Matrix m(f, 2, 2, {1, 2, 2, 4});
        auto oracle = kernel_by_enumeration(m);
        CHECK(oracle.size() == 5);  // a line through 0
        auto basis = kernel_basis(m);
        REQUIRE(basis.size() == 1);
        CHECK(basis[0] == Vec{3, 1});  // frozen from the oracle: (3,1) spans the line
        for (const Vec& v : oracle) CHECK(in_span(basis, v, f));
    }

    SECTION("zero matrix has the standard basis") {
        auto basis = kernel_basis(Matrix::zero(f, 2, 2));
        REQUIRE(basis.size() == 2);
        CHECK(basis[0] == Vec{1, 0});
        CHECK(basis[1] == Vec{0, 1});
    }
}

TEST_CASE("solve_linear on the spec examples") {
    PrimeField f(5);

    SECTION("identity returns b") {
        Vec b{2, 4};
        auto x = solve_linear(Matrix::identity(f, 2), b);
        REQUIRE(x);
        CHECK(*x == b);
    }

    SECTION("inconsistent system") {
        Matrix m(f, 2, 1, {1, 0});
        CHECK_FALSE(solve_linear(m, Vec{0, 1}).has_value());
    }

    SECTION("2x = 1 mod 5") {
        Matrix m(f, 1, 1, {2});
        auto x = solve_linear(m, Vec{1});
        REQUIRE(x);
        CHECK(*x == Vec{3});
    }

    SECTION("dimension mismatch is an error") {
        CHECK_THROWS_AS(solve_linear(Matrix::identity(f, 2), Vec{1}), std::invalid_argument);
    }
}

TEST_CASE("rank-nullity and solver consistency on random matrices") {
    std::mt19937 rng(20260810);
    for (u32 p : {2u, 5u, 97u}) {
        PrimeField f(p);
        for (int trial = 0; trial < 40; ++trial) {
            std::uniform_int_distribution<int> dims(0, 7);
            int rows = dims(rng), cols = dims(rng);
            Matrix m = random_matrix(f, rows, cols, rng);

            auto ker = kernel_basis(m);
            CHECK(m.rank() + int(ker.size()) == cols);
            for (const Vec& v : ker) {
                Vec img = m.apply(v);
                CHECK(std::all_of(img.begin(), img.end(), [](u32 x) { return x == 0; }));
            }

            Vec x(cols);
            std::uniform_int_distribution<u32> d(0, p - 1);
            for (auto& xi : x) xi = d(rng);
            Vec b = m.apply(x);
            auto sol = solve_linear(m, b);
            REQUIRE(sol);
            CHECK(m.apply(*sol) == b);
        }
    }
}

TEST_CASE("kernel basis is deterministic echelon data") {
    std::mt19937 rng(7);
    PrimeField f(5);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix m = random_matrix(f, 4, 6, rng);
        auto k1 = kernel_basis(m);
        auto k2 = kernel_basis(m);
        CHECK(k1 == k2);
        // one vector per free column in increasing order, with 1 at its own
        // free coordinate and 0 at the other free coordinates
        Matrix r = m;
        std::vector<int> pivots = r.rref();
        std::vector<int> frees;
        for (int c = 0; c < m.cols(); ++c)
            if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) frees.push_back(c);
        REQUIRE(k1.size() == frees.size());
        for (std::size_t t = 0; t < k1.size(); ++t)
            for (std::size_t s = 0; s < frees.size(); ++s)
                CHECK(k1[t][frees[s]] == (s == t ? 1u : 0u));
    }
}

TEST_CASE("matrix utilities") {
    PrimeField f(5);
    Matrix a(f, 2, 2, {1, 2, 3, 4});
    SECTION("inverse") {
        auto inv = inverse(a);
        REQUIRE(inv);
        CHECK((*inv) * a == Matrix::identity(f, 2));
        Matrix sing(f, 2, 2, {1, 2, 2, 4});
        CHECK_FALSE(inverse(sing).has_value());
    }
    SECTION("kron dimensions and entries") {
        Matrix b(f, 1, 3, {1, 0, 2});
        Matrix k = a.kron(b);
        CHECK(k.rows() == 2);
        CHECK(k.cols() == 6);
        CHECK(k(0, 0) == 1);
        CHECK(k(0, 2) == 2);
        CHECK(k(1, 3) == 4);  // a(1,1)*b(0,0)
    }
    SECTION("budget guard") {
        Budget tiny{16};
        CHECK_THROWS_AS(tiny.check(5, 5, "test"), BudgetExceeded);
        CHECK_NOTHROW(tiny.check(4, 4, "test"));
    }
}
