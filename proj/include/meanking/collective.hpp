#pragma once

// Center-of-mass and relative coordinates on the two-qudit space. Two-qudit
// vectors are always stored in the particle computational-basis indexing
// (index = n1*d + n2); the collective labeling is a view through a
// permutation, never a second storage convention.

#include "meanking/mub.hpp"

#include <utility>

namespace meanking {

/// Relative / center-of-mass label pair. Bijective with particle pairs via
/// n1 = n_r + n_c, n2 = n_c - n_r (mod d).
struct CollectiveIndex {
    ModInt n_r;
    ModInt n_c;

    friend bool operator==(const CollectiveIndex& a, const CollectiveIndex& b) {
        return a.n_r == b.n_r && a.n_c == b.n_c;
    }
};

enum class CollectiveMode { relative, center };

/// n_r = (n1 - n2)/2, n_c = (n1 + n2)/2 with mod-d halving.
CollectiveIndex to_collective(ModInt n1, ModInt n2);

/// Inverse map: (n1, n2).
std::pair<ModInt, ModInt> to_particles(const CollectiveIndex& idx);

struct CollectiveOperators {
    Operator z_r;  // Z1^{1/2} Z2^{-1/2}
    Operator z_c;  // Z1^{1/2} Z2^{1/2}
    Operator x_r;  // X1 X2^{-1}
    Operator x_c;  // X1 X2
};

/// The four collective Weyl operators on the d^2-dimensional space. The
/// modular square roots are integer powers via mod-d halving; each operator
/// is unitary of order d.
CollectiveOperators collective_operators(PrimeDim d);

/// Unitary permutation sending the particle CB vector at index n1*d + n2 to
/// the collective CB vector at index n_r*d + n_c.
Operator particle_to_collective_map(PrimeDim d);

/// The MUB state of the given label, read in one collective mode. The mode
/// does not change the amplitudes, only which tensor slot the state occupies
/// when embedded via embed_collective_product.
Ket collective_basis_state(PrimeDim d, CollectiveMode mode, const BasisLabel& b, ModInt m);

/// Embed the product |center>_c |relative>_r into the two-qudit space in
/// particle CB storage: amplitude at (n1, n2) is
/// center[(n1+n2)/2] * relative[(n1-n2)/2].
Ket embed_collective_product(PrimeDim d, const Ket& center, const Ket& relative);

}  // namespace meanking
