#include <doctest.h>

#include "meanking/finitefield.hpp"

using namespace meanking;

namespace {

/// Independent inverse oracle: exhaustive search for the unit product.
std::uint32_t brute_force_inverse(std::uint32_t a, std::uint32_t d) {
    for (std::uint32_t k = 1; k < d; ++k) {
        if (a * k % d == 1) return k;
    }
    return 0;
}

}  // namespace

TEST_CASE("odd primes are the only valid dimensions") {
    CHECK(is_valid_dim(3));
    CHECK(is_valid_dim(5));
    CHECK(is_valid_dim(7));
    CHECK(is_valid_dim(11));
    CHECK(is_valid_dim(13));
    CHECK_FALSE(is_valid_dim(0));
    CHECK_FALSE(is_valid_dim(1));
    CHECK_FALSE(is_valid_dim(2));
    CHECK_FALSE(is_valid_dim(4));
    CHECK_FALSE(is_valid_dim(9));
    CHECK_FALSE(is_valid_dim(15));
    CHECK_FALSE(is_valid_dim(21));
}

TEST_CASE("PrimeDim rejects invalid dimensions at construction") {
    CHECK_THROWS_AS(PrimeDim(2), std::invalid_argument);
    CHECK_THROWS_AS(PrimeDim(9), std::invalid_argument);
    CHECK_THROWS_AS(PrimeDim(0), std::invalid_argument);
    CHECK_EQ(PrimeDim(7).value(), 7);
    CHECK_EQ(PrimeDim(5).pair_dim(), 25);
}

TEST_CASE("ModInt stores the canonical representative") {
    const PrimeDim d(3);
    CHECK_EQ(ModInt(-1, d).value(), 2);
    CHECK_EQ(ModInt(7, d).value(), 1);
    CHECK_EQ(ModInt(-7, d).value(), 2);
    CHECK_EQ(ModInt(0, d).value(), 0);
    CHECK_EQ((-ModInt(0, d)).value(), 0);
    CHECK_EQ((-ModInt(1, d)).value(), 2);
}

TEST_CASE("ModInt arithmetic matches hand-computed residues mod 7") {
    const PrimeDim d(7);
    CHECK_EQ((ModInt(4, d) + ModInt(5, d)).value(), 2);
    CHECK_EQ((ModInt(2, d) - ModInt(5, d)).value(), 4);
    CHECK_EQ((ModInt(3, d) * ModInt(4, d)).value(), 5);
    CHECK_EQ(mod_inv(ModInt(3, d)).value(), 5);
    CHECK_EQ(mod_inv(ModInt(2, d)).value(), 4);
    CHECK_EQ(mod_half(ModInt(1, d)).value(), 4);
    CHECK_EQ(mod_div(ModInt(6, d), ModInt(4, d)).value(), 5);  // 6 * 4^{-1} = 6 * 2 = 12 = 5
}

TEST_CASE("mixing moduli is an error") {
    const PrimeDim d3(3);
    const PrimeDim d5(5);
    CHECK_THROWS_AS(ModInt(1, d3) + ModInt(1, d5), std::invalid_argument);
    CHECK_THROWS_AS(ModInt(2, d3) * ModInt(2, d5), std::invalid_argument);
}

TEST_CASE("zero has no inverse and cannot divide") {
    const PrimeDim d(5);
    CHECK_THROWS_AS(mod_inv(ModInt(0, d)), std::domain_error);
    CHECK_THROWS_AS(mod_div(ModInt(3, d), ModInt(0, d)), std::domain_error);
}

TEST_CASE("inverse agrees with the exhaustive oracle for every unit") {
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
        const PrimeDim d(p);
        for (std::uint32_t a = 1; a < p; ++a) {
            const ModInt inv = mod_inv(ModInt(a, d));
            CHECK_EQ(inv.value(), brute_force_inverse(a, p));
            CHECK_EQ((ModInt(a, d) * inv).value(), 1);
        }
    }
}

TEST_CASE("halving is the exact inverse of doubling") {
    for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
        const PrimeDim d(p);
        for (std::uint32_t a = 0; a < p; ++a) {
            const ModInt h = mod_half(ModInt(a, d));
            CHECK_EQ((h + h).value(), a);
        }
    }
}

TEST_CASE("Fermat exponentiation: a^(d-1) = 1 for nonzero a") {
    for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
        const PrimeDim d(p);
        for (std::uint32_t a = 1; a < p; ++a) {
            CHECK_EQ(ModInt(a, d).pow(p - 1).value(), 1);
        }
    }
}
