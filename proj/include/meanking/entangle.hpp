#pragma once

// Hilbert-space realization of the geometry: a point carries a two-particle
// product state |m,b>|~m,~b>, a line carries a maximally entangled state,
// and the balance state inverts the transcription between them.
//
// Two line-vector conventions coexist on purpose. line_state is the unit
// vector |mddot>_c |2 m0>_r used for every Born probability; line_vector_raw
// is the norm-sqrt(d) sum of the line's point states minus the balance
// state, which satisfies the geometric sum identities exactly. The two agree
// up to the factor sqrt(d), and keeping both explicit is what resolves the
// prefactor mismatch between the geometric and the collective forms.

#include "meanking/collective.hpp"
#include "meanking/geometry.hpp"

namespace meanking {

/// Product state |m,b>_1 |~m,~b>_2 attached to point (m, b). Normalized,
/// Schmidt rank 1. For the CB column it is |n>_1 |n>_2.
struct PointState {
    Point point;
    Ket vector;  // dim d^2
};

/// Maximally entangled state attached to line j: both single-particle
/// marginals are maximally mixed.
struct LineState {
    Line line;
    Ket vector;  // dim d^2, normalized
};

/// The column sum: sum_n |n>_1 |n>_2, norm sqrt(d), identical for every
/// basis column.
struct BalanceState {
    Ket vector;  // dim d^2
};

PointState point_state(PrimeDim d, const Point& p);

BalanceState balance_state(PrimeDim d);

/// Unit line state via the collective route: the center-of-mass CB state
/// mddot times the relative-mode b=0 MUB state with label 2*m0. Amplitudes
/// vanish unless n1 + n2 = 2*mddot; the coefficient at n1 = n2 = mddot is
/// real positive, fixing the global phase.
LineState line_state(PrimeDim d, const Line& j);

/// The geometric route: sum of the line's d+1 point states minus the
/// balance state. Norm sqrt(d); equals sqrt(d) * line_state(j).vector.
Ket line_vector_raw(PrimeDim d, const Line& j);

/// Single-particle line operator, built as the sum of the line's rank-one
/// basis projectors minus the identity. Matrix elements come out as
/// <n|P_j|n'> = delta_{n+n',2*mddot} omega^{-(n-n') m0}; P_j^2 = I and
/// tr(P_j P_j') = d delta_{j,j'}.
Operator line_operator(PrimeDim d, const Line& j);

/// <A_p|P_j>: 1/sqrt(d) when p lies on j and 0 otherwise.
cx overlap_point_line(PrimeDim d, const Point& p, const Line& j);

/// Partial contraction <b,m|_1 P_j: the particle-2 vector left behind when
/// particle 1 of a line state is projected on one MUB state.
struct ParticleResidue {
    Ket residue;       // dim d, unnormalized; squared norm is exactly 1/d
    MubIndex predicted;  // conjugate of (m_bar + Delta, b), the residue's direction
    cx phase;          // unimodular factor with residue = phase/sqrt(d) * |predicted>
};

/// The residue of projecting particle 1 of line j on |m,b>. Its squared
/// norm is 1/d for every (m, b, j): each constituent particle alone is
/// equally likely to be found anywhere. With m_bar the line's row in column
/// b and Delta = m_bar - m, the residue points along the conjugate of
/// (m_bar + Delta, b).
ParticleResidue single_particle_residue(PrimeDim d, ModInt m, const BasisLabel& b, const Line& j);

/// All d^2 line states, lexicographic in (mddot, m0).
std::vector<LineState> all_line_states(PrimeDim d);

/// Marginal of particle 1 (trace out particle 2), and vice versa.
Operator reduced_density_1(PrimeDim d, const Ket& pair_state);
Operator reduced_density_2(PrimeDim d, const Ket& pair_state);

/// Schmidt coefficients of a two-qudit pure state, descending: square roots
/// of the particle-1 marginal's eigenvalues.
std::vector<double> schmidt_coefficients(PrimeDim d, const Ket& pair_state);

}  // namespace meanking
