#include "meanking/collective.hpp"

#include <stdexcept>

namespace meanking {

CollectiveIndex to_collective(ModInt n1, ModInt n2) {
    return CollectiveIndex{mod_half(n1 - n2), mod_half(n1 + n2)};
}

std::pair<ModInt, ModInt> to_particles(const CollectiveIndex& idx) {
    return {idx.n_r + idx.n_c, idx.n_c - idx.n_r};
}

CollectiveOperators collective_operators(PrimeDim d) {
    const Operator z = pauli_z(d);
    const Operator x = pauli_x(d);
    const std::uint32_t half = (d.value() + 1) / 2;       // 1/2 mod d
    const std::uint32_t neg_half = d.value() - half;      // -1/2 mod d
    const Operator z_half = z.pow(half);
    const Operator z_neg_half = z.pow(neg_half);
    const Operator x_inv = x.pow(d.value() - 1);
    return CollectiveOperators{
        tensor(z_half, z_neg_half),
        tensor(z_half, z_half),
        tensor(x, x_inv),
        tensor(x, x),
    };
}

Operator particle_to_collective_map(PrimeDim d) {
    const std::uint32_t n = d.value();
    Operator p(d.pair_dim());
    for (std::uint32_t n1 = 0; n1 < n; ++n1) {
        for (std::uint32_t n2 = 0; n2 < n; ++n2) {
            const CollectiveIndex c = to_collective(ModInt(n1, d), ModInt(n2, d));
            p.at(std::size_t{c.n_r.value()} * n + c.n_c.value(), std::size_t{n1} * n + n2) = cx{1.0, 0.0};
        }
    }
    return p;
}

Ket collective_basis_state(PrimeDim d, CollectiveMode, const BasisLabel& b, ModInt m) {
    return mub_state(d, MubIndex{b, m});
}

Ket embed_collective_product(PrimeDim d, const Ket& center, const Ket& relative) {
    const std::uint32_t n = d.value();
    if (center.dim() != n || relative.dim() != n)
        throw std::invalid_argument("embed_collective_product: factors must have dimension d");
    Ket out(d.pair_dim());
    for (std::uint32_t n1 = 0; n1 < n; ++n1) {
        for (std::uint32_t n2 = 0; n2 < n; ++n2) {
            const CollectiveIndex c = to_collective(ModInt(n1, d), ModInt(n2, d));
            out[std::size_t{n1} * n + n2] = center[c.n_c.value()] * relative[c.n_r.value()];
        }
    }
    return out;
}

}  // namespace meanking
