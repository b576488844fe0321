#pragma once

// Executable rounds of the Mean King Problem and of Tracking the King.
// Both variants share one engine: Alice prepares a two-qudit state (the
// normalized balance state for MKP, a line state for Tracking), the King
// measures his particle in a basis of his choice, Alice measures the
// non-degenerate line-state operator, and an inference rule turns her
// outcome into the King's outcome (MKP) or the King's basis (Tracking).
// Every probability is an honest Born-rule computation on dense state
// vectors; the inference formulas are pure label arithmetic checked against
// that simulation.

#include "meanking/entangle.hpp"

#include <map>
#include <optional>
#include <variant>

namespace meanking {

enum class Variant { mkp, tracking };

struct InferenceResult {
    enum class Kind { outcome, basis, undetermined };
    Kind kind = Kind::undetermined;
    std::optional<ModInt> outcome;    // set when kind == outcome
    std::optional<BasisLabel> basis;  // set when kind == basis
};

/// Full record of one protocol branch or sampled round.
struct Transcript {
    PrimeDim dim;
    Variant variant;
    std::optional<Line> prepared;  // empty means the balance state (MKP)
    BasisLabel king_basis;
    ModInt king_outcome;
    Line control;  // Alice's (mddot', m0'')
    InferenceResult inference;

    /// Exhaustive mode only: Born distribution over control outcomes given
    /// the King outcome, keyed "mddot,m0". Sums to 1.
    std::map<std::string, double> probabilities;

    // Simulation byproducts kept for verification; not serialized.
    double king_outcome_probability = 0.0;
    double control_probability = 0.0;
    Ket post_control{1};
};

struct Exhaustive {};
struct Sampled {
    std::uint64_t seed = 0;
    std::size_t trials = 1;
};
using RunMode = std::variant<Exhaustive, Sampled>;

/// Alice's control measurement basis: the d^2 line states, outcome label
/// (mddot', m0'') at index mddot'*d + m0''. Orthonormal and complete, so
/// any d^2 distinct eigenvalue labels make it a non-degenerate operator.
std::vector<Ket> alice_control_basis(PrimeDim d);

/// Mean King rounds. Exhaustive mode enumerates every King outcome and
/// every control outcome of nonzero probability; sampled mode draws
/// `trials` independent seeded rounds.
std::vector<Transcript> run_mkp(PrimeDim d, const BasisLabel& king_basis, const RunMode& mode);

/// Tracking rounds with a prepared line state.
std::vector<Transcript> run_tracking(PrimeDim d, const Line& prepared, const BasisLabel& king_basis,
                                     const RunMode& mode);

/// True iff the post-control state has unit fidelity with the control
/// outcome's line state: the control measurement resets the system for a
/// succeeding message.
bool verify_reset(PrimeDim d, const Transcript& t, double tol = kDefaultTol);

struct ChannelResult {
    std::vector<std::optional<BasisLabel>> decoded;  // empty optional = erasure
    std::vector<Transcript> transcripts;
};

/// Multi-round channel: each round sends one basis symbol through a
/// tracking round, and the control outcome becomes the next round's known
/// line (the reset property makes the composition free). Undetermined
/// rounds are reported as erasures, never retried.
ChannelResult run_channel(PrimeDim d, const std::vector<BasisLabel>& message, const Line& initial_line,
                          std::uint64_t seed);

std::string to_json_line(const Transcript& t);

}  // namespace meanking
