#include <doctest.h>

#include <cmath>
#include <string>

#include "meanking/protocol.hpp"
#include "meanking/qudit.hpp"

using namespace meanking;

namespace {

Line parse_key(const std::string& key, PrimeDim d) {
    const auto comma = key.find(',');
    REQUIRE_NE(comma, std::string::npos);
    return Line{ModInt(std::stol(key.substr(0, comma)), d), ModInt(std::stol(key.substr(comma + 1)), d)};
}

}  // namespace

TEST_CASE("the control basis is complete and measures line states sharply") {
    const PrimeDim d(3);
    const auto basis = alice_control_basis(d);
    REQUIRE_EQ(basis.size(), 9);

    Operator sum(9);
    for (const auto& v : basis) {
        for (std::size_t r = 0; r < 9; ++r) {
            for (std::size_t c = 0; c < 9; ++c) sum.at(r, c) += v[r] * std::conj(v[c]);
        }
    }
    CHECK_EQ(sum.max_abs_diff(Operator::identity(9)), doctest::Approx(0.0).epsilon(1e-10));

    // A line state fed back into the measurement returns its own label with
    // probability 1.
    const auto outcomes = measurement_distribution(basis[4], basis);
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        CHECK_EQ(outcomes[k].probability, doctest::Approx(k == 4 ? 1.0 : 0.0).epsilon(1e-12));
    }
}

TEST_CASE("mean king rounds infer the outcome on every exhaustive branch") {
    for (std::uint32_t prime : {3u, 5u}) {
        const PrimeDim d(prime);
        const double inv_d = 1.0 / prime;
        for (const auto& b : all_basis_labels(d)) {
            const auto transcripts = run_mkp(d, b, Exhaustive{});
            REQUIRE_EQ(transcripts.size(), std::size_t{prime} * prime);
            for (const auto& t : transcripts) {
                REQUIRE(t.inference.kind == InferenceResult::Kind::outcome);
                CHECK(*t.inference.outcome == t.king_outcome);
                CHECK_FALSE(t.prepared.has_value());
                CHECK_EQ(t.king_outcome_probability, doctest::Approx(inv_d).epsilon(1e-12));
                CHECK_EQ(t.control_probability, doctest::Approx(inv_d).epsilon(1e-12));
                double sum = 0.0;
                for (const auto& [key, p] : t.probabilities) sum += p;
                CHECK_EQ(sum, doctest::Approx(1.0).epsilon(1e-10));
                CHECK(verify_reset(d, t));
            }
        }
    }
}

TEST_CASE("mean king with the dd0 basis pins the control row directly") {
    const PrimeDim d(5);
    for (const auto& t : run_mkp(d, BasisLabel::cb(), Exhaustive{})) {
        CHECK(t.control.mddot == t.king_outcome);
    }
}

TEST_CASE("tracking decodes the King's basis on every non-degenerate branch") {
    const PrimeDim d(3);
    for (const Line& j : all_lines(d)) {
        for (const auto& b : all_basis_labels(d)) {
            const auto transcripts = run_tracking(d, j, b, Exhaustive{});
            REQUIRE_EQ(transcripts.size(), 9);
            for (const auto& t : transcripts) {
                REQUIRE(t.prepared.has_value());
                CHECK(*t.prepared == j);
                CHECK_EQ(t.king_outcome_probability, doctest::Approx(1.0 / 3).epsilon(1e-12));
                CHECK_EQ(t.control_probability, doctest::Approx(1.0 / 3).epsilon(1e-12));
                if (t.control == j) {
                    CHECK(t.inference.kind == InferenceResult::Kind::undetermined);
                } else {
                    REQUIRE(t.inference.kind == InferenceResult::Kind::basis);
                    CHECK(*t.inference.basis == b);
                    // Pure geometry gives the same answer: the shared point
                    // of the two lines sits in the King's column.
                    CHECK(intersect_lines(d, j, t.control).b == b);
                }
                CHECK(verify_reset(d, t));
            }
        }
    }
}

TEST_CASE("tracking at d=5 with a shifted basis decodes that basis everywhere") {
    const PrimeDim d(5);
    const Line j{ModInt(1, d), ModInt(2, d)};
    const BasisLabel b = BasisLabel::shifted(ModInt(3, d));
    std::size_t undetermined = 0;
    for (const auto& t : run_tracking(d, j, b, Exhaustive{})) {
        if (t.inference.kind == InferenceResult::Kind::undetermined) {
            ++undetermined;
            CHECK(t.control == j);
        } else {
            REQUIRE(t.inference.kind == InferenceResult::Kind::basis);
            CHECK(*t.inference.basis == b);
        }
    }
    CHECK_EQ(undetermined, 5);  // once per King outcome, probability 1/d each
}

TEST_CASE("simulation support resolves the constraint sign") {
    // The two printed forms of the constraint differ by the sign of
    // b*(mddot - mddot'). The Born-rule support decides: every control line
    // of nonzero probability obeys m0'' - m0 = b*(mddot - mddot'), and for
    // b != 0 the opposite sign fails on every branch that can tell the two
    // apart.
    for (std::uint32_t prime : {3u, 5u}) {
        const PrimeDim d(prime);
        for (const Line& j : all_lines(d)) {
            for (std::uint32_t bval = 0; bval < prime; ++bval) {
                const ModInt b(bval, d);
                const auto transcripts = run_tracking(d, j, BasisLabel::shifted(b), Exhaustive{});
                REQUIRE_FALSE(transcripts.empty());
                std::size_t discriminating = 0;
                std::size_t opposite_sign_failures = 0;
                for (const auto& [key, p] : transcripts.front().probabilities) {
                    CHECK_GT(p, 0.0);
                    const Line control = parse_key(key, d);
                    const ModInt gap = control.m0 - j.m0;
                    CHECK(gap == b * (j.mddot - control.mddot));
                    if (!(b * (j.mddot - control.mddot) == b * (control.mddot - j.mddot))) {
                        ++discriminating;
                        if (!(gap == b * (control.mddot - j.mddot))) ++opposite_sign_failures;
                    }
                }
                if (bval != 0) {
                    // All support lines except the prepared one discriminate.
                    CHECK_EQ(discriminating, prime - 1);
                    CHECK_EQ(opposite_sign_failures, discriminating);
                }
            }
        }
    }
}

TEST_CASE("tracking with the dd0 basis confines outcomes to the prepared row") {
    const PrimeDim d(5);
    const Line j{ModInt(3, d), ModInt(1, d)};
    for (const auto& t : run_tracking(d, j, BasisLabel::cb(), Exhaustive{})) {
        CHECK(t.control.mddot == j.mddot);
        if (t.inference.kind == InferenceResult::Kind::basis) {
            CHECK(t.inference.basis->is_cb());
        }
    }
}

TEST_CASE("undetermined branches carry probability exactly 1/d") {
    const PrimeDim d(5);
    const Line j{ModInt(2, d), ModInt(4, d)};
    for (const auto& b : all_basis_labels(d)) {
        std::size_t undetermined = 0;
        for (const auto& t : run_tracking(d, j, b, Exhaustive{})) {
            if (t.control == j) {
                ++undetermined;
                CHECK(t.inference.kind == InferenceResult::Kind::undetermined);
                CHECK_EQ(t.control_probability, doctest::Approx(0.2).epsilon(1e-12));
            }
        }
        CHECK_EQ(undetermined, 5);
    }
}

TEST_CASE("sampled rounds are reproducible and respect the trial count") {
    const PrimeDim d(3);
    const Line j{ModInt(0, d), ModInt(0, d)};
    const BasisLabel b = BasisLabel::shifted(ModInt(1, d));
    const auto run1 = run_tracking(d, j, b, Sampled{2024, 100});
    const auto run2 = run_tracking(d, j, b, Sampled{2024, 100});
    REQUIRE_EQ(run1.size(), 100);
    REQUIRE_EQ(run2.size(), 100);
    bool identical = true;
    for (std::size_t i = 0; i < run1.size(); ++i) {
        CHECK(run1[i].probabilities.empty());
        identical = identical && to_json_line(run1[i]) == to_json_line(run2[i]);
        CHECK(verify_reset(d, run1[i]));
        if (run1[i].inference.kind == InferenceResult::Kind::basis) {
            CHECK(*run1[i].inference.basis == b);
        }
    }
    CHECK(identical);

    const auto run3 = run_tracking(d, j, b, Sampled{2025, 100});
    bool differs = false;
    for (std::size_t i = 0; i < run3.size(); ++i) {
        differs = differs || to_json_line(run1[i]) != to_json_line(run3[i]);
    }
    CHECK(differs);
}

TEST_CASE("a single channel round reproduces a single tracking round") {
    const PrimeDim d(3);
    const Line j{ModInt(1, d), ModInt(2, d)};
    const BasisLabel b = BasisLabel::shifted(ModInt(0, d));
    const auto direct = run_tracking(d, j, b, Sampled{77, 1});
    const auto via_channel = run_channel(d, {b}, j, 77);
    REQUIRE_EQ(direct.size(), 1);
    REQUIRE_EQ(via_channel.transcripts.size(), 1);
    CHECK_EQ(to_json_line(direct[0]), to_json_line(via_channel.transcripts[0]));
}

TEST_CASE("channel rounds chain through control outcomes and flag erasures") {
    const PrimeDim d(3);
    const auto labels = all_basis_labels(d);
    std::vector<BasisLabel> message;
    for (int rep = 0; rep < 25; ++rep) message.push_back(labels[rep % labels.size()]);
    const Line start{ModInt(0, d), ModInt(0, d)};
    const auto result = run_channel(d, message, start, 9);
    REQUIRE_EQ(result.decoded.size(), message.size());
    REQUIRE_EQ(result.transcripts.size(), message.size());

    Line carried = start;
    for (std::size_t i = 0; i < message.size(); ++i) {
        const auto& t = result.transcripts[i];
        REQUIRE(t.prepared.has_value());
        CHECK(*t.prepared == carried);
        if (result.decoded[i].has_value()) {
            CHECK(*result.decoded[i] == message[i]);
        } else {
            CHECK(t.control == carried);
        }
        CHECK(verify_reset(d, t));
        carried = t.control;
    }
}

TEST_CASE("an all-dd0 message decodes to dd0 or erasure") {
    const PrimeDim d(3);
    const std::vector<BasisLabel> message(40, BasisLabel::cb());
    const auto result = run_channel(d, message, Line{ModInt(2, d), ModInt(1, d)}, 5);
    for (const auto& symbol : result.decoded) {
        if (symbol.has_value()) CHECK(symbol->is_cb());
    }
}

TEST_CASE("labels from a different dimension are rejected") {
    const PrimeDim d5(5);
    const PrimeDim d7(7);
    const BasisLabel foreign = BasisLabel::shifted(ModInt(3, d5));
    CHECK_THROWS_AS(run_mkp(d7, foreign, Exhaustive{}), std::invalid_argument);
    const Line foreign_line{ModInt(1, d5), ModInt(2, d5)};
    CHECK_THROWS_AS(run_tracking(d7, foreign_line, BasisLabel::cb(), Exhaustive{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_channel(d7, {BasisLabel::cb()}, foreign_line, 0), std::invalid_argument);
}

TEST_CASE("transcripts serialize to the stable schema") {
    const PrimeDim d(3);
    const auto mkp_lines = run_mkp(d, BasisLabel::cb(), Exhaustive{});
    REQUIRE_FALSE(mkp_lines.empty());
    const std::string mkp_json = to_json_line(mkp_lines.front());
    CHECK(mkp_json.find("\"variant\":\"MKP\"") != std::string::npos);
    CHECK(mkp_json.find("\"prepared\":\"balance\"") != std::string::npos);
    CHECK(mkp_json.find("\"king_basis\":\"dd0\"") != std::string::npos);
    CHECK(mkp_json.find("\"control\":{\"mddot_prime\":") != std::string::npos);
    CHECK(mkp_json.find("\"inference\":{\"kind\":\"outcome\",\"value\":") != std::string::npos);
    CHECK(mkp_json.find("\"probabilities\":{") != std::string::npos);

    const Line j{ModInt(1, d), ModInt(0, d)};
    const auto track_lines = run_tracking(d, j, BasisLabel::shifted(ModInt(2, d)), Sampled{3, 1});
    const std::string track_json = to_json_line(track_lines.front());
    CHECK(track_json.find("\"variant\":\"Tracking\"") != std::string::npos);
    CHECK(track_json.find("\"prepared\":{\"mddot\":1,\"m0\":0}") != std::string::npos);
    CHECK(track_json.find("\"king_basis\":2") != std::string::npos);
    CHECK(track_json.find("\"probabilities\"") == std::string::npos);
}
