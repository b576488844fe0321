#include "meanking/protocol.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

#include "meanking/rng.hpp"

namespace meanking {

namespace {

// Probabilities below this are treated as exact zeros when enumerating the
// support of a branch. Genuine branch probabilities are >= 1/d^2.
constexpr double kSupportEps = 1e-12;

void require_basis(PrimeDim d, const BasisLabel& b) {
    if (!b.is_cb() && !(b.shift().dim() == d)) {
        throw std::invalid_argument("king basis label does not belong to dimension " +
                                    std::to_string(d.value()));
    }
}

void require_line(PrimeDim d, const Line& j) {
    if (!(j.mddot.dim() == d) || !(j.m0.dim() == d)) {
        throw std::invalid_argument("line label does not belong to dimension " +
                                    std::to_string(d.value()));
    }
}

struct KingBranch {
    ModInt outcome;
    double probability;
    Ket post;  // dim d^2, normalized when probability > 0
};

/// Collapse of `prepared` under the King's outcome (m, b) on particle 1:
/// probability is the squared norm of the particle-2 contraction, the
/// post state is |m,b>_1 tensor that contraction renormalized.
std::vector<KingBranch> king_branches(PrimeDim d, const Ket& prepared, const BasisLabel& b) {
    const std::size_t n = d.value();
    std::vector<KingBranch> branches;
    branches.reserve(n);
    for (std::uint32_t m = 0; m < n; ++m) {
        const Ket probe = mub_state(d, MubIndex{b, ModInt(m, d)});
        Ket contraction(n);
        for (std::size_t n2 = 0; n2 < n; ++n2) {
            cx acc{0.0, 0.0};
            for (std::size_t n1 = 0; n1 < n; ++n1) {
                acc += std::conj(probe[n1]) * prepared[n1 * n + n2];
            }
            contraction[n2] = acc;
        }
        const double p = contraction.norm_sq();
        Ket post(n * n);
        if (p > kSupportEps) {
            const Ket unit = contraction.normalized();
            for (std::size_t n1 = 0; n1 < n; ++n1) {
                for (std::size_t n2 = 0; n2 < n; ++n2) {
                    post[n1 * n + n2] = probe[n1] * unit[n2];
                }
            }
        }
        branches.push_back(KingBranch{ModInt(m, d), p, std::move(post)});
    }
    return branches;
}

std::vector<double> control_distribution(const Ket& post, const std::vector<LineState>& lines) {
    std::vector<double> probs;
    probs.reserve(lines.size());
    for (const auto& ls : lines) probs.push_back(std::norm(inner(ls.vector, post)));
    return probs;
}

/// Projective collapse onto one line state, keeping the physical phase.
Ket project_line(const Ket& post, const Ket& line) {
    return (line * inner(line, post)).normalized();
}

std::size_t sample_index(const std::vector<double>& probs, double u) {
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return i;
    }
    for (std::size_t i = probs.size(); i-- > 0;) {
        if (probs[i] > 0.0) return i;
    }
    throw std::logic_error("sample_index: distribution has no support");
}

InferenceResult infer(PrimeDim d, Variant variant, const std::optional<Line>& prepared,
                      const BasisLabel& king_basis, const Line& control) {
    InferenceResult r;
    if (variant == Variant::mkp) {
        // The control line passes through the King's point (m, b); once b
        // is disclosed, m is the line's row in that column.
        r.kind = InferenceResult::Kind::outcome;
        r.outcome = line_row(d, control, king_basis);
        return r;
    }
    // Tracking: the prepared and control lines are distinct lines through
    // the King's point, so the point's column names his basis. An outcome
    // equal to the prepared line carries no information.
    const Line& j = *prepared;
    if (control == j) {
        r.kind = InferenceResult::Kind::undetermined;
        return r;
    }
    r.kind = InferenceResult::Kind::basis;
    if (control.mddot == j.mddot) {
        r.basis = BasisLabel::cb();
    } else {
        r.basis = BasisLabel::shifted(mod_div(control.m0 - j.m0, j.mddot - control.mddot));
    }
    return r;
}

std::string probability_key(const Line& l) {
    return std::to_string(l.mddot.value()) + "," + std::to_string(l.m0.value());
}

Transcript make_transcript(PrimeDim d, Variant variant, const std::optional<Line>& prepared,
                           const BasisLabel& king_basis, const KingBranch& kb,
                           const LineState& control, double control_prob,
                           std::map<std::string, double> probabilities) {
    return Transcript{
        d,
        variant,
        prepared,
        king_basis,
        kb.outcome,
        control.line,
        infer(d, variant, prepared, king_basis, control.line),
        std::move(probabilities),
        kb.probability,
        control_prob,
        project_line(kb.post, control.vector),
    };
}

Transcript sample_round(PrimeDim d, Variant variant, const std::optional<Line>& prepared_line,
                        const Ket& prepared, const BasisLabel& king_basis,
                        const std::vector<LineState>& lines, SplitMix64& rng) {
    const auto branches = king_branches(d, prepared, king_basis);
    std::vector<double> king_probs;
    king_probs.reserve(branches.size());
    for (const auto& kb : branches) king_probs.push_back(kb.probability);
    const KingBranch& kb = branches[sample_index(king_probs, rng.uniform01())];
    const auto dist = control_distribution(kb.post, lines);
    const std::size_t pick = sample_index(dist, rng.uniform01());
    return make_transcript(d, variant, prepared_line, king_basis, kb, lines[pick], dist[pick], {});
}

std::vector<Transcript> run_rounds(PrimeDim d, Variant variant,
                                   const std::optional<Line>& prepared_line,
                                   const BasisLabel& king_basis, const RunMode& mode) {
    require_basis(d, king_basis);
    if (prepared_line) require_line(d, *prepared_line);
    const Ket prepared = prepared_line ? line_state(d, *prepared_line).vector
                                       : balance_state(d).vector.normalized();
    const auto lines = all_line_states(d);

    std::vector<Transcript> out;
    if (std::holds_alternative<Exhaustive>(mode)) {
        for (const auto& kb : king_branches(d, prepared, king_basis)) {
            if (kb.probability <= kSupportEps) continue;
            const auto dist = control_distribution(kb.post, lines);
            std::map<std::string, double> probabilities;
            for (std::size_t i = 0; i < lines.size(); ++i) {
                if (dist[i] > kSupportEps) probabilities.emplace(probability_key(lines[i].line), dist[i]);
            }
            for (std::size_t i = 0; i < lines.size(); ++i) {
                if (dist[i] <= kSupportEps) continue;
                out.push_back(make_transcript(d, variant, prepared_line, king_basis, kb, lines[i],
                                              dist[i], probabilities));
            }
        }
    } else {
        const auto& s = std::get<Sampled>(mode);
        out.reserve(s.trials);
        for (std::size_t trial = 0; trial < s.trials; ++trial) {
            SplitMix64 rng = SplitMix64::split(s.seed, trial);
            out.push_back(sample_round(d, variant, prepared_line, prepared, king_basis, lines, rng));
        }
    }
    return out;
}

}  // namespace

std::vector<Ket> alice_control_basis(PrimeDim d) {
    std::vector<Ket> basis;
    basis.reserve(d.pair_dim());
    for (const auto& ls : all_line_states(d)) basis.push_back(ls.vector);
    return basis;
}

std::vector<Transcript> run_mkp(PrimeDim d, const BasisLabel& king_basis, const RunMode& mode) {
    return run_rounds(d, Variant::mkp, std::nullopt, king_basis, mode);
}

std::vector<Transcript> run_tracking(PrimeDim d, const Line& prepared, const BasisLabel& king_basis,
                                     const RunMode& mode) {
    return run_rounds(d, Variant::tracking, prepared, king_basis, mode);
}

bool verify_reset(PrimeDim d, const Transcript& t, double tol) {
    if (t.post_control.dim() != d.pair_dim()) return false;
    const Ket target = line_state(d, t.control).vector;
    const double fidelity = std::norm(inner(target, t.post_control));
    return std::abs(fidelity - 1.0) <= tol;
}

ChannelResult run_channel(PrimeDim d, const std::vector<BasisLabel>& message,
                          const Line& initial_line, std::uint64_t seed) {
    require_line(d, initial_line);
    for (const auto& b : message) require_basis(d, b);
    const auto lines = all_line_states(d);

    ChannelResult result;
    result.decoded.reserve(message.size());
    result.transcripts.reserve(message.size());
    Line current = initial_line;
    for (std::size_t round = 0; round < message.size(); ++round) {
        SplitMix64 rng = SplitMix64::split(seed, round);
        const Ket prepared = line_state(d, current).vector;
        Transcript t = sample_round(d, Variant::tracking, current, prepared, message[round], lines, rng);
        if (t.inference.kind == InferenceResult::Kind::basis) {
            result.decoded.push_back(*t.inference.basis);
        } else {
            result.decoded.push_back(std::nullopt);
        }
        current = t.control;
        result.transcripts.push_back(std::move(t));
    }
    return result;
}

std::string to_json_line(const Transcript& t) {
    nlohmann::ordered_json j;
    j["dim"] = t.dim.value();
    j["variant"] = t.variant == Variant::mkp ? "MKP" : "Tracking";
    if (t.prepared) {
        j["prepared"] = {{"mddot", t.prepared->mddot.value()}, {"m0", t.prepared->m0.value()}};
    } else {
        j["prepared"] = "balance";
    }
    if (t.king_basis.is_cb()) {
        j["king_basis"] = "dd0";
    } else {
        j["king_basis"] = t.king_basis.shift().value();
    }
    j["king_outcome"] = t.king_outcome.value();
    j["control"] = {{"mddot_prime", t.control.mddot.value()}, {"m0_dprime", t.control.m0.value()}};
    nlohmann::ordered_json inf;
    switch (t.inference.kind) {
        case InferenceResult::Kind::outcome:
            inf["kind"] = "outcome";
            inf["value"] = t.inference.outcome->value();
            break;
        case InferenceResult::Kind::basis:
            inf["kind"] = "basis";
            if (t.inference.basis->is_cb()) {
                inf["value"] = "dd0";
            } else {
                inf["value"] = t.inference.basis->shift().value();
            }
            break;
        case InferenceResult::Kind::undetermined:
            inf["kind"] = "undetermined";
            break;
    }
    j["inference"] = inf;
    if (!t.probabilities.empty()) j["probabilities"] = t.probabilities;
    return j.dump();
}

}  // namespace meanking
