#include "meanking/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <map>
#include <stdexcept>

#include "meanking/collective.hpp"
#include "meanking/entangle.hpp"
#include "meanking/geometry.hpp"
#include "meanking/mub.hpp"
#include "meanking/parallel.hpp"
#include "meanking/protocol.hpp"
#include "meanking/qudit.hpp"
#include "meanking/rng.hpp"

namespace meanking {

namespace {

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

CheckRecord dev_check(const char* suite, const char* name, double deviation, double tol) {
    return CheckRecord{suite, name, "deviation <= " + fmt(tol), "deviation = " + fmt(deviation),
                       deviation <= tol};
}

CheckRecord bool_check(const char* suite, const char* name, bool ok) {
    return CheckRecord{suite, name, "true", ok ? "true" : "false", ok};
}

CheckRecord count_check(const char* suite, const char* name, std::size_t expected,
                        std::size_t observed) {
    return CheckRecord{suite, name, std::to_string(expected), std::to_string(observed),
                       expected == observed};
}

double ket_dev(const Ket& a, const Ket& b) { return (a - b).norm(); }

Ket random_ket(PrimeDim d, SplitMix64& rng) {
    Ket v(d.value());
    for (std::size_t i = 0; i < v.dim(); ++i) {
        v[i] = cx{2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0};
    }
    return v;
}

// ---------------------------------------------------------------- mub

std::vector<CheckRecord> suite_mub(PrimeDim d, double tol) {
    constexpr const char* S = "mub";
    const std::uint32_t n = d.value();
    const auto labels = all_basis_labels(d);
    std::vector<CheckRecord> out;

    double dev_orth = 0.0;
    for (const auto& label : labels) {
        const auto states = basis_states(d, label);
        for (std::size_t i = 0; i < states.size(); ++i) {
            for (std::size_t k = 0; k < states.size(); ++k) {
                const double target = i == k ? 1.0 : 0.0;
                dev_orth = std::max(dev_orth, std::abs(std::abs(inner(states[i], states[k])) - target));
            }
        }
    }
    out.push_back(dev_check(S, "bases_orthonormal", dev_orth, tol));

    const double cross = 1.0 / std::sqrt(static_cast<double>(n));
    double dev_mub = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto bi = basis_states(d, labels[i]);
        for (std::size_t k = i + 1; k < labels.size(); ++k) {
            const auto bk = basis_states(d, labels[k]);
            for (const auto& u : bi) {
                for (const auto& v : bk) {
                    dev_mub = std::max(dev_mub, std::abs(std::abs(inner(u, v)) - cross));
                }
            }
        }
    }
    out.push_back(dev_check(S, "pairwise_unbiased", dev_mub, tol));

    const Operator Z = pauli_z(d);
    const Operator X = pauli_x(d);
    out.push_back(dev_check(S, "clock_shift_commutation",
                            (Z * X).max_abs_diff((X * Z) * root_of_unity(n, 1)), tol));

    double dev_cb = 0.0;
    for (std::uint32_t m = 0; m < n; ++m) {
        const Ket v = mub_state(d, MubIndex{BasisLabel::cb(), ModInt(m, d)});
        dev_cb = std::max(dev_cb, ket_dev(apply(Z, v), v * root_of_unity(n, m)));
    }
    out.push_back(dev_check(S, "cb_clock_eigenstates", dev_cb, tol));

    double dev_eig = 0.0;
    for (std::uint32_t b = 0; b < n; ++b) {
        const Operator XZb = X * Z.pow(b);
        for (std::uint32_t m = 0; m < n; ++m) {
            const Ket v = mub_state(d, MubIndex{BasisLabel::shifted(ModInt(b, d)), ModInt(m, d)});
            dev_eig = std::max(dev_eig, ket_dev(apply(XZb, v), v * root_of_unity(n, m)));
        }
    }
    out.push_back(dev_check(S, "shifted_basis_eigenstates", dev_eig, tol));

    bool king_unitary = true;
    double dev_king = 0.0;
    for (const auto& label : labels) {
        const Operator K = king_operator(d, label);
        king_unitary = king_unitary && K.is_unitary(tol);
        for (std::uint32_t m = 0; m < n; ++m) {
            const Ket v = mub_state(d, MubIndex{label, ModInt(m, d)});
            dev_king = std::max(dev_king, ket_dev(apply(K, v), v * root_of_unity(n, m)));
        }
    }
    out.push_back(bool_check(S, "king_operator_unitary", king_unitary));
    out.push_back(dev_check(S, "king_operator_spectrum", dev_king, tol));

    double dev_conj = 0.0;
    for (const auto& label : labels) {
        for (std::uint32_t m = 0; m < n; ++m) {
            const MubIndex idx{label, ModInt(m, d)};
            const Ket v = mub_state(d, idx);
            const Ket w = mub_state(d, conjugate_label(d, idx));
            for (std::size_t k = 0; k < v.dim(); ++k) {
                dev_conj = std::max(dev_conj, std::abs(std::conj(v[k]) - w[k]));
            }
        }
    }
    out.push_back(dev_check(S, "conjugation_closure", dev_conj, tol));

    out.push_back(bool_check(S, "cb_unbiased_with_shift0",
                             verify_unbiased(basis_states(d, BasisLabel::cb()),
                                             basis_states(d, BasisLabel::shifted(ModInt(0, d))), tol)));
    return out;
}

// ---------------------------------------------------------- collective

std::vector<CheckRecord> suite_collective(PrimeDim d, double tol) {
    constexpr const char* S = "collective";
    const std::uint32_t n = d.value();
    std::vector<CheckRecord> out;

    bool bijective = true;
    for (std::uint32_t n1 = 0; n1 < n; ++n1) {
        for (std::uint32_t n2 = 0; n2 < n; ++n2) {
            const auto idx = to_collective(ModInt(n1, d), ModInt(n2, d));
            const auto back = to_particles(idx);
            bijective = bijective && back.first.value() == n1 && back.second.value() == n2;
        }
    }
    out.push_back(bool_check(S, "label_bijection", bijective));

    const auto ops = collective_operators(d);
    const cx omega = root_of_unity(n, 1);
    double dev_weyl = 0.0;
    dev_weyl = std::max(dev_weyl, (ops.z_r * ops.x_r).max_abs_diff((ops.x_r * ops.z_r) * omega));
    dev_weyl = std::max(dev_weyl, (ops.z_c * ops.x_c).max_abs_diff((ops.x_c * ops.z_c) * omega));
    out.push_back(dev_check(S, "mode_weyl_pairs", dev_weyl, tol));

    double dev_cross = 0.0;
    dev_cross = std::max(dev_cross, (ops.z_r * ops.x_c).max_abs_diff(ops.x_c * ops.z_r));
    dev_cross = std::max(dev_cross, (ops.z_c * ops.x_r).max_abs_diff(ops.x_r * ops.z_c));
    dev_cross = std::max(dev_cross, (ops.z_r * ops.z_c).max_abs_diff(ops.z_c * ops.z_r));
    dev_cross = std::max(dev_cross, (ops.x_r * ops.x_c).max_abs_diff(ops.x_c * ops.x_r));
    out.push_back(dev_check(S, "modes_commute", dev_cross, tol));

    double dev_order = 0.0;
    const Operator id = Operator::identity(d.pair_dim());
    for (const Operator* op : {&ops.z_r, &ops.z_c, &ops.x_r, &ops.x_c}) {
        dev_order = std::max(dev_order, op->pow(n).max_abs_diff(id));
    }
    out.push_back(dev_check(S, "operators_order_d", dev_order, tol));

    const Operator P = particle_to_collective_map(d);
    out.push_back(bool_check(S, "relabeling_unitary", P.is_unitary(tol)));

    double dev_perm = 0.0;
    for (std::uint32_t n1 = 0; n1 < n; ++n1) {
        for (std::uint32_t n2 = 0; n2 < n; ++n2) {
            const auto idx = to_collective(ModInt(n1, d), ModInt(n2, d));
            const Ket image = apply(P, Ket::basis(d.pair_dim(), std::size_t{n1} * n + n2));
            const Ket target = Ket::basis(d.pair_dim(), std::size_t{idx.n_r.value()} * n + idx.n_c.value());
            dev_perm = std::max(dev_perm, ket_dev(image, target));
        }
    }
    out.push_back(dev_check(S, "relabeling_matches_map", dev_perm, tol));

    SplitMix64 rng(0x636f6c6cULL);
    double dev_embed = 0.0;
    for (int rep = 0; rep < 4; ++rep) {
        const Ket center = random_ket(d, rng);
        const Ket relative = random_ket(d, rng);
        const Ket direct = embed_collective_product(d, center, relative);
        const Ket via_map = apply(P.dagger(), tensor(relative, center));
        dev_embed = std::max(dev_embed, ket_dev(direct, via_map));
    }
    out.push_back(dev_check(S, "embedding_matches_relabeling", dev_embed, tol));

    double dev_eigen = 0.0;
    for (std::uint32_t mddot = 0; mddot < n; ++mddot) {
        for (std::uint32_t m = 0; m < n; ++m) {
            const Ket rel = mub_state(d, MubIndex{BasisLabel::shifted(ModInt(0, d)), ModInt(m, d)});
            const Ket v = embed_collective_product(d, Ket::basis(n, mddot), rel);
            dev_eigen = std::max(dev_eigen, ket_dev(apply(ops.z_c, v), v * root_of_unity(n, mddot)));
            dev_eigen = std::max(dev_eigen, ket_dev(apply(ops.x_r, v), v * root_of_unity(n, m)));
        }
    }
    out.push_back(dev_check(S, "center_relative_eigenstates", dev_eigen, tol));
    return out;
}

// ------------------------------------------------------------ entangle

std::vector<CheckRecord> suite_entangle(PrimeDim d, double tol) {
    constexpr const char* S = "entangle";
    const std::uint32_t n = d.value();
    const double inv_d = 1.0 / n;
    std::vector<CheckRecord> out;

    const auto lines = all_lines(d);
    const auto points = all_points(d);
    const auto line_kets = all_line_states(d);

    double dev_gram = 0.0;
    for (std::size_t i = 0; i < line_kets.size(); ++i) {
        for (std::size_t k = 0; k < line_kets.size(); ++k) {
            const double target = i == k ? 1.0 : 0.0;
            dev_gram = std::max(dev_gram,
                                std::abs(std::abs(inner(line_kets[i].vector, line_kets[k].vector)) - target));
        }
    }
    out.push_back(dev_check(S, "line_states_orthonormal", dev_gram, tol));

    double dev_overlap = 0.0;
    for (const auto& p : points) {
        for (const auto& j : lines) {
            const double target = point_on_line(d, p, j) ? inv_d : 0.0;
            dev_overlap = std::max(dev_overlap, std::abs(std::norm(overlap_point_line(d, p, j)) - target));
        }
    }
    out.push_back(dev_check(S, "point_line_overlap_law", dev_overlap, tol));

    const Ket balance = balance_state(d).vector;
    double dev_balance = 0.0;
    for (const auto& b : all_basis_labels(d)) {
        Ket column_sum(d.pair_dim());
        for (const auto& p : column_points(d, b)) column_sum += point_state(d, p).vector;
        dev_balance = std::max(dev_balance, ket_dev(column_sum, balance));
    }
    out.push_back(dev_check(S, "balance_column_sums", dev_balance, tol));

    const Operator id = Operator::identity(n);
    double dev_sq = 0.0;
    double dev_tr = 0.0;
    std::vector<Operator> line_ops;
    line_ops.reserve(lines.size());
    for (const auto& j : lines) line_ops.push_back(line_operator(d, j));
    for (std::size_t i = 0; i < line_ops.size(); ++i) {
        dev_sq = std::max(dev_sq, (line_ops[i] * line_ops[i]).max_abs_diff(id));
        for (std::size_t k = 0; k < line_ops.size(); ++k) {
            const double target = i == k ? static_cast<double>(n) : 0.0;
            dev_tr = std::max(dev_tr, std::abs((line_ops[i] * line_ops[k]).trace() - cx{target, 0.0}));
        }
    }
    out.push_back(dev_check(S, "line_operator_involution", dev_sq, tol));
    out.push_back(dev_check(S, "line_operator_trace_orthogonality", dev_tr, tol));

    const double sqrt_d = std::sqrt(static_cast<double>(n));
    double dev_routes = 0.0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        dev_routes = std::max(dev_routes,
                              ket_dev(line_vector_raw(d, lines[i]) * (1.0 / sqrt_d), line_kets[i].vector));
    }
    out.push_back(dev_check(S, "geometric_vs_collective_route", dev_routes, tol));

    double dev_recon = 0.0;
    for (const auto& p : points) {
        Ket sum(d.pair_dim());
        for (const auto& j : lines_through_point(d, p)) sum += line_vector_raw(d, j);
        dev_recon = std::max(dev_recon, ket_dev(sum * (1.0 / n), point_state(d, p).vector));
    }
    out.push_back(dev_check(S, "point_reconstruction", dev_recon, tol));

    double dev_res = 0.0;
    double dev_res_dir = 0.0;
    for (const auto& b : all_basis_labels(d)) {
        for (std::uint32_t m = 0; m < n; ++m) {
            for (const auto& j : lines) {
                const auto res = single_particle_residue(d, ModInt(m, d), b, j);
                dev_res = std::max(dev_res, std::abs(res.residue.norm_sq() - inv_d));
                const Ket predicted = mub_state(d, res.predicted) * (res.phase / sqrt_d);
                dev_res_dir = std::max(dev_res_dir, ket_dev(res.residue, predicted));
                dev_res_dir = std::max(dev_res_dir, std::abs(std::abs(res.phase) - 1.0));
            }
        }
    }
    out.push_back(dev_check(S, "single_particle_uniformity", dev_res, tol));
    out.push_back(dev_check(S, "residue_direction_and_phase", dev_res_dir, tol));

    double dev_schmidt = 0.0;
    double dev_marginal = 0.0;
    const Operator mixed = Operator::identity(n) * cx{inv_d, 0.0};
    for (const auto& ls : line_kets) {
        for (double c : schmidt_coefficients(d, ls.vector)) {
            dev_schmidt = std::max(dev_schmidt, std::abs(c - 1.0 / sqrt_d));
        }
        dev_marginal = std::max(dev_marginal, reduced_density_1(d, ls.vector).max_abs_diff(mixed));
        dev_marginal = std::max(dev_marginal, reduced_density_2(d, ls.vector).max_abs_diff(mixed));
    }
    out.push_back(dev_check(S, "line_schmidt_spectrum_flat", dev_schmidt, tol));
    out.push_back(dev_check(S, "line_marginals_maximally_mixed", dev_marginal, tol));
    return out;
}

// ------------------------------------------------------------ protocol

struct TrackingRunSummary {
    double dev_king_uniform = 0.0;
    double dev_control_uniform = 0.0;
    double dev_prob_sum = 0.0;
    double dev_undetermined = 0.0;
    bool support_is_constraint = true;
    bool inference_correct = true;
    bool geometry_consistent = true;
    bool reset_ok = true;
    bool support_count_ok = true;
};

/// Exhaustive tracking run for one (prepared line, basis) pair, reduced to
/// the deviations of every protocol invariant.
TrackingRunSummary summarize_tracking(PrimeDim d, const Line& j, const BasisLabel& b, double tol) {
    const std::uint32_t n = d.value();
    const double inv_d = 1.0 / n;
    TrackingRunSummary s;
    const auto transcripts = run_tracking(d, j, b, Exhaustive{});

    std::map<std::uint32_t, std::size_t> per_outcome;
    for (const auto& t : transcripts) {
        s.dev_king_uniform = std::max(s.dev_king_uniform, std::abs(t.king_outcome_probability - inv_d));
        s.dev_control_uniform = std::max(s.dev_control_uniform, std::abs(t.control_probability - inv_d));
        per_outcome[t.king_outcome.value()] += 1;

        double sum = 0.0;
        for (const auto& [key, p] : t.probabilities) sum += p;
        s.dev_prob_sum = std::max(s.dev_prob_sum, std::abs(sum - 1.0));

        // Support constraint: the control line passes through the prepared
        // line's point in the King's column.
        const ModInt row = line_row(d, j, b);
        s.support_is_constraint =
            s.support_is_constraint && line_row(d, t.control, b) == row && point_on_line(d, Point{row, b}, t.control);

        if (t.control == j) {
            s.dev_undetermined = std::max(s.dev_undetermined, std::abs(t.control_probability - inv_d));
            s.inference_correct =
                s.inference_correct && t.inference.kind == InferenceResult::Kind::undetermined;
        } else {
            s.inference_correct = s.inference_correct &&
                                  t.inference.kind == InferenceResult::Kind::basis &&
                                  *t.inference.basis == b;
            const Point shared = intersect_lines(d, j, t.control);
            s.geometry_consistent = s.geometry_consistent && shared.b == *t.inference.basis;
        }
        s.reset_ok = s.reset_ok && verify_reset(d, t, tol);
    }
    // d king outcomes, each with the d lines through one point.
    s.support_count_ok = transcripts.size() == std::size_t{n} * n;
    for (const auto& [outcome, count] : per_outcome) {
        (void)outcome;
        s.support_count_ok = s.support_count_ok && count == n;
    }
    s.support_count_ok = s.support_count_ok && per_outcome.size() == n;
    return s;
}

std::vector<CheckRecord> suite_protocol(PrimeDim d, double tol) {
    constexpr const char* S = "protocol";
    const std::uint32_t n = d.value();
    const double inv_d = 1.0 / n;
    std::vector<CheckRecord> out;

    const auto control = alice_control_basis(d);
    Operator completeness(d.pair_dim());
    for (const auto& v : control) {
        for (std::size_t r = 0; r < v.dim(); ++r) {
            for (std::size_t c = 0; c < v.dim(); ++c) {
                completeness.at(r, c) += v[r] * std::conj(v[c]);
            }
        }
    }
    out.push_back(dev_check(S, "control_basis_complete",
                            completeness.max_abs_diff(Operator::identity(d.pair_dim())), tol));

    const auto labels = all_basis_labels(d);

    bool mkp_correct = true;
    bool mkp_reset = true;
    double dev_mkp_uniform = 0.0;
    double dev_mkp_prob_sum = 0.0;
    bool mkp_counts = true;
    for (const auto& b : labels) {
        const auto transcripts = run_mkp(d, b, Exhaustive{});
        mkp_counts = mkp_counts && transcripts.size() == std::size_t{n} * n;
        for (const auto& t : transcripts) {
            mkp_correct = mkp_correct && t.inference.kind == InferenceResult::Kind::outcome &&
                          *t.inference.outcome == t.king_outcome;
            dev_mkp_uniform = std::max(dev_mkp_uniform, std::abs(t.king_outcome_probability - inv_d));
            dev_mkp_uniform = std::max(dev_mkp_uniform, std::abs(t.control_probability - inv_d));
            double sum = 0.0;
            for (const auto& [key, p] : t.probabilities) sum += p;
            dev_mkp_prob_sum = std::max(dev_mkp_prob_sum, std::abs(sum - 1.0));
            mkp_reset = mkp_reset && verify_reset(d, t, tol);
        }
    }
    out.push_back(bool_check(S, "mkp_inference_exact", mkp_correct));
    out.push_back(bool_check(S, "mkp_branch_counts", mkp_counts));
    out.push_back(dev_check(S, "mkp_outcome_uniformity", dev_mkp_uniform, tol));
    out.push_back(dev_check(S, "mkp_probabilities_normalized", dev_mkp_prob_sum, tol));
    out.push_back(bool_check(S, "mkp_reset", mkp_reset));

    const auto lines = all_lines(d);
    std::vector<TrackingRunSummary> summaries(lines.size() * labels.size());
    parallel_for(summaries.size(), [&](std::size_t i) {
        const Line& j = lines[i / labels.size()];
        const BasisLabel& b = labels[i % labels.size()];
        summaries[i] = summarize_tracking(d, j, b, tol);
    });
    TrackingRunSummary agg;
    for (const auto& s : summaries) {
        agg.dev_king_uniform = std::max(agg.dev_king_uniform, s.dev_king_uniform);
        agg.dev_control_uniform = std::max(agg.dev_control_uniform, s.dev_control_uniform);
        agg.dev_prob_sum = std::max(agg.dev_prob_sum, s.dev_prob_sum);
        agg.dev_undetermined = std::max(agg.dev_undetermined, s.dev_undetermined);
        agg.support_is_constraint = agg.support_is_constraint && s.support_is_constraint;
        agg.inference_correct = agg.inference_correct && s.inference_correct;
        agg.geometry_consistent = agg.geometry_consistent && s.geometry_consistent;
        agg.reset_ok = agg.reset_ok && s.reset_ok;
        agg.support_count_ok = agg.support_count_ok && s.support_count_ok;
    }
    out.push_back(bool_check(S, "tracking_inference_exact", agg.inference_correct));
    out.push_back(bool_check(S, "tracking_support_matches_constraint", agg.support_is_constraint));
    out.push_back(bool_check(S, "tracking_support_counts", agg.support_count_ok));
    out.push_back(dev_check(S, "tracking_king_uniformity", agg.dev_king_uniform, tol));
    out.push_back(dev_check(S, "tracking_control_uniformity", agg.dev_control_uniform, tol));
    out.push_back(dev_check(S, "tracking_probabilities_normalized", agg.dev_prob_sum, tol));
    out.push_back(dev_check(S, "tracking_undetermined_rate", agg.dev_undetermined, tol));
    out.push_back(bool_check(S, "tracking_matches_intersection_geometry", agg.geometry_consistent));
    out.push_back(bool_check(S, "tracking_reset", agg.reset_ok));

    std::vector<BasisLabel> message;
    for (int rep = 0; rep < 2; ++rep) {
        for (const auto& b : labels) message.push_back(b);
    }
    const Line start{ModInt(0, d), ModInt(0, d)};
    const auto channel = run_channel(d, message, start, 0x6b696e67ULL);
    bool channel_ok = channel.decoded.size() == message.size();
    Line carried = start;
    for (std::size_t i = 0; i < channel.decoded.size() && channel_ok; ++i) {
        const auto& t = channel.transcripts[i];
        channel_ok = channel_ok && t.prepared.has_value() && *t.prepared == carried;
        if (channel.decoded[i].has_value()) {
            channel_ok = channel_ok && *channel.decoded[i] == message[i];
        } else {
            channel_ok = channel_ok && t.control == carried;
        }
        channel_ok = channel_ok && verify_reset(d, t, tol);
        carried = t.control;
    }
    out.push_back(bool_check(S, "channel_decodes_or_erases", channel_ok));

    const auto sampled_a = run_tracking(d, start, labels.back(), Sampled{42, 32});
    const auto sampled_b = run_tracking(d, start, labels.back(), Sampled{42, 32});
    bool reproducible = sampled_a.size() == sampled_b.size();
    for (std::size_t i = 0; i < sampled_a.size() && reproducible; ++i) {
        reproducible = to_json_line(sampled_a[i]) == to_json_line(sampled_b[i]);
    }
    out.push_back(bool_check(S, "sampled_runs_reproducible", reproducible));
    return out;
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names{"mub", "collective", "geometry", "entangle",
                                                "protocol"};
    return names;
}

std::vector<CheckRecord> run_suite(PrimeDim d, const std::string& suite, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
    if (suite == "mub") return suite_mub(d, tol);
    if (suite == "collective") return suite_collective(d, tol);
    if (suite == "geometry") return audit_dapg(d).checks;
    if (suite == "entangle") return suite_entangle(d, tol);
    if (suite == "protocol") return suite_protocol(d, tol);
    if (suite == "all") {
        std::vector<CheckRecord> out;
        for (const auto& name : verify_suite_names()) {
            auto part = run_suite(d, name, tol);
            out.insert(out.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
        }
        return out;
    }
    throw std::invalid_argument("unknown suite: " + suite +
                                " (expected mub, collective, geometry, entangle, protocol, all)");
}

}  // namespace meanking
