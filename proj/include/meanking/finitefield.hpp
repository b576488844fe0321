#pragma once

// Exact arithmetic in Z/dZ for an odd prime d.
//
// Every integer label in the construction (state index m, basis index b,
// line coordinates, collective labels) is a residue mod d. The modular
// "half" x/2 = x * (d+1)/2 is what makes the odd-prime restriction load
// bearing: 2 is not invertible mod 2. All arithmetic here is exact
// integer arithmetic; no floating point.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace meanking {

/// True iff n is an odd prime. Trial division; dimensions are desk scale.
constexpr bool is_valid_dim(std::uint64_t n) noexcept {
    if (n < 3 || n % 2 == 0) return false;
    for (std::uint64_t k = 3; k * k <= n; k += 2) {
        if (n % k == 0) return false;
    }
    return true;
}

/// Hilbert-space dimension d: an odd prime, validated at construction.
class PrimeDim {
public:
    explicit PrimeDim(std::uint32_t d) : d_(d) {
        if (!is_valid_dim(d)) {
            throw std::invalid_argument("dimension must be an odd prime (d = p, p != 2), got " +
                                        std::to_string(d));
        }
    }

    std::uint32_t value() const noexcept { return d_; }

    /// Dimension of the two-particle space, d^2.
    std::size_t pair_dim() const noexcept { return std::size_t{d_} * d_; }

    friend bool operator==(PrimeDim, PrimeDim) = default;

private:
    std::uint32_t d_;
};

/// Residue mod d, stored as the canonical representative in [0, d).
/// Negative or oversized inputs are reduced immediately, so equality is
/// plain value comparison.
class ModInt {
public:
    ModInt(std::int64_t value, PrimeDim dim) : d_(dim), v_(reduce(value, dim.value())) {}

    std::uint32_t value() const noexcept { return v_; }
    PrimeDim dim() const noexcept { return d_; }

    ModInt operator+(ModInt rhs) const {
        require_same(rhs);
        return raw((v_ + rhs.v_) % d_.value(), d_);
    }
    ModInt operator-(ModInt rhs) const {
        require_same(rhs);
        return raw((v_ + d_.value() - rhs.v_) % d_.value(), d_);
    }
    ModInt operator*(ModInt rhs) const {
        require_same(rhs);
        return raw(static_cast<std::uint32_t>((std::uint64_t{v_} * rhs.v_) % d_.value()), d_);
    }
    ModInt operator-() const { return raw(v_ == 0 ? 0 : d_.value() - v_, d_); }

    ModInt& operator+=(ModInt rhs) { return *this = *this + rhs; }
    ModInt& operator-=(ModInt rhs) { return *this = *this - rhs; }
    ModInt& operator*=(ModInt rhs) { return *this = *this * rhs; }

    /// Repeated squaring.
    ModInt pow(std::uint64_t e) const {
        ModInt result = raw(1 % d_.value(), d_);
        ModInt base = *this;
        while (e > 0) {
            if (e & 1) result *= base;
            base *= base;
            e >>= 1;
        }
        return result;
    }

    friend bool operator==(ModInt a, ModInt b) {
        return a.d_ == b.d_ && a.v_ == b.v_;
    }

private:
    static ModInt raw(std::uint32_t v, PrimeDim d) {
        ModInt m(0, d);
        m.v_ = v;
        return m;
    }
    static std::uint32_t reduce(std::int64_t x, std::uint32_t d) {
        std::int64_t r = x % static_cast<std::int64_t>(d);
        if (r < 0) r += d;
        return static_cast<std::uint32_t>(r);
    }
    void require_same(ModInt rhs) const {
        if (!(d_ == rhs.d_)) throw std::invalid_argument("ModInt arithmetic across different moduli");
    }

    PrimeDim d_;
    std::uint32_t v_;
};

/// Multiplicative inverse by Fermat exponentiation, a^(d-2); d is prime so
/// the contract is exact. a = 0 has no inverse.
inline ModInt mod_inv(ModInt a) {
    if (a.value() == 0) throw std::domain_error("mod_inv: 0 has no inverse");
    return a.pow(a.dim().value() - 2);
}

/// a/2 mod d, i.e. a * (d+1)/2. Doubling the result recovers a.
inline ModInt mod_half(ModInt a) {
    return a * ModInt((a.dim().value() + 1) / 2, a.dim());
}

/// a/b mod d via b's inverse; b = 0 is a division error.
inline ModInt mod_div(ModInt a, ModInt b) {
    if (b.value() == 0) throw std::domain_error("mod_div: division by zero");
    return a * mod_inv(b);
}

}  // namespace meanking
