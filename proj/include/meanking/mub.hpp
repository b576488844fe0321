#pragma once

// The d+1 mutually unbiased bases of an odd-prime-dimension qudit, the
// clock/shift pair that generates them, conjugation and inversion maps,
// and the King's measurement operator.

#include "meanking/finitefield.hpp"
#include "meanking/qudit.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace meanking {

/// Basis label: either the computational basis (spelled "dd0" everywhere a
/// label is serialized) or one of the d shifted bases b = 0..d-1. The CB tag
/// carries no numerical value, so it is a tagged union, never a sentinel
/// integer: CB and b = 0 are different bases.
class BasisLabel {
public:
    static BasisLabel cb() noexcept { return BasisLabel(); }
    static BasisLabel shifted(ModInt b) { return BasisLabel(b); }

    bool is_cb() const noexcept { return !b_.has_value(); }

    /// The shift value; only shifted labels have one.
    ModInt shift() const {
        if (is_cb()) throw std::logic_error("BasisLabel::shift: computational basis has no shift value");
        return *b_;
    }

    std::string to_string() const { return is_cb() ? "dd0" : std::to_string(b_->value()); }

    /// Inverse of to_string: "dd0" or a decimal residue.
    static BasisLabel parse(std::string_view text, PrimeDim d);

    friend bool operator==(const BasisLabel& a, const BasisLabel& b) {
        if (a.is_cb() || b.is_cb()) return a.is_cb() == b.is_cb();
        return *a.b_ == *b.b_;
    }

private:
    BasisLabel() = default;
    explicit BasisLabel(ModInt b) : b_(b) {}
    std::optional<ModInt> b_;
};

/// All d+1 labels: CB first, then b = 0..d-1.
std::vector<BasisLabel> all_basis_labels(PrimeDim d);

/// One of the d(d+1) MUB states, addressed by basis and position.
struct MubIndex {
    BasisLabel b;
    ModInt m;

    friend bool operator==(const MubIndex& x, const MubIndex& y) { return x.b == y.b && x.m == y.m; }
};

/// The state |m;b>. For a shifted basis the amplitude at |n> is
/// omega^{(b/2) n(n-1) - n m} / sqrt(d) with the exponent evaluated
/// entirely in mod-d integer arithmetic before omega is raised to it;
/// for the CB it is the standard basis vector with nil phase.
Ket mub_state(PrimeDim d, const MubIndex& idx);

/// The d states of one basis, m = 0..d-1.
std::vector<Ket> basis_states(PrimeDim d, const BasisLabel& b);

/// Clock operator: diagonal with entries omega^n.
Operator pauli_z(PrimeDim d);

/// Cyclic shift: |n> -> |n+1 mod d>.
Operator pauli_x(PrimeDim d);

/// The conjugate label: componentwise complex conjugation maps |m,b> to
/// |d-m, d-b> for shifted bases and fixes CB states.
MubIndex conjugate_label(PrimeDim d, const MubIndex& idx);

/// Permutation |n> -> |-n mod d>; involutive.
Operator inversion_operator(PrimeDim d);

/// K_b = sum_m |m,b> omega^m <b,m|. The eigenvalues omega^m are pairwise
/// distinct for m in [0, d), so measuring K_b is operationally the same as
/// measuring in basis b.
Operator king_operator(PrimeDim d, const BasisLabel& b);

/// True iff every cross overlap between the two orthonormal bases has
/// modulus 1/sqrt(d) within tol. A basis paired with itself fails: its
/// overlaps are 0 or 1.
bool verify_unbiased(const std::vector<Ket>& basis1, const std::vector<Ket>& basis2,
                     double tol = kDefaultTol);

}  // namespace meanking
