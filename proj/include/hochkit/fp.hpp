#ifndef HOCHKIT_FP_HPP
#define HOCHKIT_FP_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hochkit {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

/// Thrown when a computation would allocate more matrix entries than allowed.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Entry budget for size-growing computations (resolutions, hom/tensor
/// spaces, simplex enumeration).  Carried explicitly so concurrent cases
/// can run with different caps.
struct Budget {
    std::size_t max_entries = 200000;

    void check(std::size_t rows, std::size_t cols, const char* where) const {
        if (rows != 0 && cols > max_entries / rows)
            throw BudgetExceeded(std::string(where) + ": " + std::to_string(rows) + "x" +
                                 std::to_string(cols) + " exceeds entry budget " +
                                 std::to_string(max_entries));
    }
    void check_count(std::size_t n, const char* where) const {
        if (n > max_entries)
            throw BudgetExceeded(std::string(where) + ": " + std::to_string(n) +
                                 " exceeds entry budget " + std::to_string(max_entries));
    }
};

/// Arithmetic in the prime field F_p, 2 <= p < 2^31.  Elements are residues
/// stored as u32 in [0, p).
class PrimeField {
  public:
    PrimeField() : p_(5) {}
    explicit PrimeField(u32 p) : p_(p) {
        if (p < 2 || p >= (1u << 31) || !is_prime(p))
            throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) +
                                        " is not a prime in [2, 2^31)");
    }

    u32 p() const { return p_; }

    u32 add(u32 a, u32 b) const {
        u32 s = a + b;
        if (s >= p_) s -= p_;
        return s;
    }
    u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p_ - b; }
    u32 neg(u32 a) const { return a == 0 ? 0 : p_ - a; }
    u32 mul(u32 a, u32 b) const { return static_cast<u32>(u64(a) * b % p_); }
    u32 pow(u32 a, u64 e) const {
        u64 r = 1, x = a % p_;
        while (e) {
            if (e & 1) r = r * x % p_;
            x = x * x % p_;
            e >>= 1;
        }
        return static_cast<u32>(r);
    }
    u32 inv(u32 a) const {
        if (a % p_ == 0) throw std::domain_error("PrimeField::inv: zero is not invertible");
        return pow(a, u64(p_) - 2);
    }
    u32 reduce(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return static_cast<u32>(r);
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

    static bool is_prime(u32 n) {
        if (n < 2) return false;
        for (u32 d = 2; u64(d) * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

  private:
    u32 p_;
};

}  // namespace hochkit

#endif
