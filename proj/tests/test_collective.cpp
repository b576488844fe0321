#include <doctest.h>

#include "meanking/collective.hpp"

using namespace meanking;

TEST_CASE("collective labels match hand-computed halvings") {
    const PrimeDim d7(7);
    const auto idx = to_collective(ModInt(1, d7), ModInt(0, d7));
    CHECK_EQ(idx.n_r.value(), 4);  // (1-0)/2 = 1 * 4 mod 7
    CHECK_EQ(idx.n_c.value(), 4);  // (1+0)/2

    const PrimeDim d3(3);
    const auto [n1, n2] = to_particles(CollectiveIndex{ModInt(1, d3), ModInt(2, d3)});
    CHECK_EQ(n1.value(), 0);  // n_r + n_c = 3 = 0
    CHECK_EQ(n2.value(), 1);  // n_c - n_r
}

TEST_CASE("particle and collective labels are in bijection") {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        const PrimeDim d(p);
        for (std::uint32_t n1 = 0; n1 < p; ++n1) {
            for (std::uint32_t n2 = 0; n2 < p; ++n2) {
                const auto idx = to_collective(ModInt(n1, d), ModInt(n2, d));
                const auto back = to_particles(idx);
                CHECK_EQ(back.first.value(), n1);
                CHECK_EQ(back.second.value(), n2);
            }
        }
    }
}

TEST_CASE("collective Weyl operators: unitary, order d, canonical pairs") {
    for (std::uint32_t p : {3u, 5u}) {
        const PrimeDim d(p);
        const auto ops = collective_operators(d);
        const Operator id = Operator::identity(d.pair_dim());
        const cx omega = root_of_unity(p, 1);
        for (const Operator* op : {&ops.z_r, &ops.z_c, &ops.x_r, &ops.x_c}) {
            CHECK(op->is_unitary(1e-10));
            CHECK_EQ(op->pow(p).max_abs_diff(id), doctest::Approx(0.0).epsilon(1e-10));
        }
        // Each mode is its own Weyl pair; the two modes commute entirely.
        CHECK_EQ((ops.z_r * ops.x_r).max_abs_diff((ops.x_r * ops.z_r) * omega),
                 doctest::Approx(0.0).epsilon(1e-12));
        CHECK_EQ((ops.z_c * ops.x_c).max_abs_diff((ops.x_c * ops.z_c) * omega),
                 doctest::Approx(0.0).epsilon(1e-12));
        CHECK_EQ((ops.z_r * ops.x_c).max_abs_diff(ops.x_c * ops.z_r),
                 doctest::Approx(0.0).epsilon(1e-12));
        CHECK_EQ((ops.z_c * ops.x_r).max_abs_diff(ops.x_r * ops.z_c),
                 doctest::Approx(0.0).epsilon(1e-12));
        CHECK_EQ((ops.z_r * ops.z_c).max_abs_diff(ops.z_c * ops.z_r),
                 doctest::Approx(0.0).epsilon(1e-12));
        CHECK_EQ((ops.x_r * ops.x_c).max_abs_diff(ops.x_c * ops.x_r),
                 doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("the relabeling unitary is the label permutation") {
    const PrimeDim d(5);
    const Operator p_map = particle_to_collective_map(d);
    CHECK(p_map.is_unitary(1e-12));
    for (std::uint32_t n1 = 0; n1 < 5; ++n1) {
        for (std::uint32_t n2 = 0; n2 < 5; ++n2) {
            const auto idx = to_collective(ModInt(n1, d), ModInt(n2, d));
            const Ket image = apply(p_map, Ket::basis(25, std::size_t{n1} * 5 + n2));
            const Ket target = Ket::basis(25, std::size_t{idx.n_r.value()} * 5 + idx.n_c.value());
            CHECK_EQ((image - target).norm(), doctest::Approx(0.0));
        }
    }
}

TEST_CASE("collective basis states carry the same amplitudes as MUB states") {
    const PrimeDim d(5);
    for (std::uint32_t m = 0; m < 5; ++m) {
        const Ket direct = mub_state(d, MubIndex{BasisLabel::shifted(ModInt(0, d)), ModInt(m, d)});
        const Ket rel =
            collective_basis_state(d, CollectiveMode::relative, BasisLabel::shifted(ModInt(0, d)),
                                   ModInt(m, d));
        const Ket cen = collective_basis_state(d, CollectiveMode::center, BasisLabel::shifted(ModInt(0, d)),
                                               ModInt(m, d));
        CHECK_EQ((direct - rel).norm(), doctest::Approx(0.0));
        CHECK_EQ((direct - cen).norm(), doctest::Approx(0.0));
    }
}

TEST_CASE("embedding a center/relative product lands on the particle grid") {
    const PrimeDim d(3);
    Ket center(3);
    center[0] = cx{0.5, 0.25};
    center[1] = cx{-0.5, 0.0};
    center[2] = cx{0.0, 1.0};
    Ket relative(3);
    relative[0] = cx{1.0, 0.0};
    relative[1] = cx{0.0, -2.0};
    relative[2] = cx{0.75, 0.75};

    const Ket embedded = embed_collective_product(d, center, relative);
    REQUIRE_EQ(embedded.dim(), 9);
    for (std::uint32_t n1 = 0; n1 < 3; ++n1) {
        for (std::uint32_t n2 = 0; n2 < 3; ++n2) {
            const auto idx = to_collective(ModInt(n1, d), ModInt(n2, d));
            const cx expect = center[idx.n_c.value()] * relative[idx.n_r.value()];
            CHECK_EQ(std::abs(embedded[std::size_t{n1} * 3 + n2] - expect),
                     doctest::Approx(0.0).epsilon(1e-14));
        }
    }

    // Same content through the relabeling unitary: relative-major tensor
    // pulled back to particle indexing.
    const Operator p_map = particle_to_collective_map(d);
    const Ket via_map = apply(p_map.dagger(), tensor(relative, center));
    CHECK_EQ((embedded - via_map).norm(), doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("embedded products are eigenstates of the matching mode operators") {
    const PrimeDim d(5);
    const auto ops = collective_operators(d);
    for (std::uint32_t mddot = 0; mddot < 5; ++mddot) {
        for (std::uint32_t m = 0; m < 5; ++m) {
            const Ket rel = mub_state(d, MubIndex{BasisLabel::shifted(ModInt(0, d)), ModInt(m, d)});
            const Ket v = embed_collective_product(d, Ket::basis(5, mddot), rel);
            // Center clock reads the center label; relative shift reads the
            // relative MUB label.
            CHECK_EQ((apply(ops.z_c, v) - v * root_of_unity(5, mddot)).norm(),
                     doctest::Approx(0.0).epsilon(1e-12));
            CHECK_EQ((apply(ops.x_r, v) - v * root_of_unity(5, m)).norm(),
                     doctest::Approx(0.0).epsilon(1e-12));
        }
    }
}
