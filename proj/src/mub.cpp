#include "meanking/mub.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace meanking {

BasisLabel BasisLabel::parse(std::string_view text, PrimeDim d) {
    if (text == "dd0") return cb();
    std::uint32_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || v >= d.value()) {
        throw std::invalid_argument("invalid basis label '" + std::string(text) +
                                    "': expected dd0 or an integer in [0, " +
                                    std::to_string(d.value()) + ")");
    }
    return shifted(ModInt(v, d));
}

std::vector<BasisLabel> all_basis_labels(PrimeDim d) {
    std::vector<BasisLabel> labels;
    labels.reserve(d.value() + 1);
    labels.push_back(BasisLabel::cb());
    for (std::uint32_t b = 0; b < d.value(); ++b) labels.push_back(BasisLabel::shifted(ModInt(b, d)));
    return labels;
}

Ket mub_state(PrimeDim d, const MubIndex& idx) {
    const std::uint32_t n = d.value();
    if (idx.b.is_cb()) return Ket::basis(n, idx.m.value());
    const ModInt half_b = mod_half(idx.b.shift());
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    Ket s(n);
    for (std::uint32_t k = 0; k < n; ++k) {
        const ModInt kk(k, d);
        const ModInt exponent = half_b * kk * ModInt(static_cast<std::int64_t>(k) - 1, d) - kk * idx.m;
        s[k] = scale * root_of_unity(n, exponent.value());
    }
    return s;
}

std::vector<Ket> basis_states(PrimeDim d, const BasisLabel& b) {
    std::vector<Ket> states;
    states.reserve(d.value());
    for (std::uint32_t m = 0; m < d.value(); ++m) states.push_back(mub_state(d, MubIndex{b, ModInt(m, d)}));
    return states;
}

Operator pauli_z(PrimeDim d) {
    Operator z(d.value());
    for (std::uint32_t n = 0; n < d.value(); ++n) z.at(n, n) = root_of_unity(d.value(), n);
    return z;
}

Operator pauli_x(PrimeDim d) {
    Operator x(d.value());
    for (std::uint32_t n = 0; n < d.value(); ++n) x.at((n + 1) % d.value(), n) = cx{1.0, 0.0};
    return x;
}

MubIndex conjugate_label(PrimeDim d, const MubIndex& idx) {
    if (idx.b.is_cb()) return idx;
    return MubIndex{BasisLabel::shifted(-idx.b.shift()), -idx.m};
}

Operator inversion_operator(PrimeDim d) {
    Operator inv(d.value());
    for (std::uint32_t n = 0; n < d.value(); ++n) inv.at((d.value() - n) % d.value(), n) = cx{1.0, 0.0};
    return inv;
}

Operator king_operator(PrimeDim d, const BasisLabel& b) {
    const std::uint32_t n = d.value();
    Operator k(n);
    for (std::uint32_t m = 0; m < n; ++m) {
        const Ket em = mub_state(d, MubIndex{b, ModInt(m, d)});
        const cx lambda = root_of_unity(n, m);
        for (std::uint32_t r = 0; r < n; ++r)
            for (std::uint32_t c = 0; c < n; ++c) k.at(r, c) += lambda * em[r] * std::conj(em[c]);
    }
    return k;
}

bool verify_unbiased(const std::vector<Ket>& basis1, const std::vector<Ket>& basis2, double tol) {
    if (basis1.empty() || basis1.size() != basis2.size()) return false;
    const double target = 1.0 / std::sqrt(static_cast<double>(basis1[0].dim()));
    for (const Ket& u : basis1)
        for (const Ket& v : basis2)
            if (std::abs(std::abs(inner(u, v)) - target) > tol) return false;
    return true;
}

}  // namespace meanking
