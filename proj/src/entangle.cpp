#include "meanking/entangle.hpp"

#include <cmath>
#include <stdexcept>

namespace meanking {

PointState point_state(PrimeDim d, const Point& p) {
    const MubIndex first{p.b, p.m};
    const Ket one = mub_state(d, first);
    const Ket two = mub_state(d, conjugate_label(d, first));
    return PointState{p, tensor(one, two)};
}

BalanceState balance_state(PrimeDim d) {
    const std::uint32_t n = d.value();
    Ket r(d.pair_dim());
    for (std::uint32_t k = 0; k < n; ++k) r[std::size_t{k} * n + k] = cx{1.0, 0.0};
    return BalanceState{r};
}

LineState line_state(PrimeDim d, const Line& j) {
    const Ket center = Ket::basis(d.value(), j.mddot.value());
    const ModInt two_m0 = j.m0 + j.m0;
    const Ket relative =
        collective_basis_state(d, CollectiveMode::relative, BasisLabel::shifted(ModInt(0, d)), two_m0);
    return LineState{j, embed_collective_product(d, center, relative)};
}

Ket line_vector_raw(PrimeDim d, const Line& j) {
    Ket sum(d.pair_dim());
    for (const Point& p : line_points(d, j)) sum += point_state(d, p).vector;
    sum -= balance_state(d).vector;
    return sum;
}

Operator line_operator(PrimeDim d, const Line& j) {
    const std::uint32_t n = d.value();
    Operator op(n);
    for (const Point& p : line_points(d, j)) {
        const Ket s = mub_state(d, MubIndex{p.b, p.m});
        for (std::uint32_t r = 0; r < n; ++r)
            for (std::uint32_t c = 0; c < n; ++c) op.at(r, c) += s[r] * std::conj(s[c]);
    }
    for (std::uint32_t k = 0; k < n; ++k) op.at(k, k) -= cx{1.0, 0.0};
    return op;
}

cx overlap_point_line(PrimeDim d, const Point& p, const Line& j) {
    return inner(point_state(d, p).vector, line_state(d, j).vector);
}

ParticleResidue single_particle_residue(PrimeDim d, ModInt m, const BasisLabel& b, const Line& j) {
    const std::uint32_t n = d.value();
    const Ket line = line_state(d, j).vector;
    const Ket projector_state = mub_state(d, MubIndex{b, m});
    Ket residue(n);
    for (std::uint32_t n2 = 0; n2 < n; ++n2) {
        cx acc{0.0, 0.0};
        for (std::uint32_t n1 = 0; n1 < n; ++n1) acc += std::conj(projector_state[n1]) * line[std::size_t{n1} * n + n2];
        residue[n2] = acc;
    }
    const ModInt m_bar = line_row(d, j, b);
    const ModInt delta = m_bar - m;
    const MubIndex predicted = conjugate_label(d, MubIndex{b, m_bar + delta});
    // phase = sqrt(d) <predicted|residue>; unimodular exactly when the
    // residue points along the predicted MUB state.
    const cx phase = std::sqrt(static_cast<double>(n)) * inner(mub_state(d, predicted), residue);
    return ParticleResidue{residue, predicted, phase};
}

std::vector<LineState> all_line_states(PrimeDim d) {
    std::vector<LineState> states;
    states.reserve(d.pair_dim());
    for (const Line& j : all_lines(d)) states.push_back(line_state(d, j));
    return states;
}

Operator reduced_density_1(PrimeDim d, const Ket& pair_state) {
    const std::uint32_t n = d.value();
    if (pair_state.dim() != d.pair_dim())
        throw std::invalid_argument("reduced_density_1: expected a two-qudit state");
    Operator rho(n);
    for (std::uint32_t r = 0; r < n; ++r)
        for (std::uint32_t c = 0; c < n; ++c) {
            cx acc{0.0, 0.0};
            for (std::uint32_t k = 0; k < n; ++k)
                acc += pair_state[std::size_t{r} * n + k] * std::conj(pair_state[std::size_t{c} * n + k]);
            rho.at(r, c) = acc;
        }
    return rho;
}

Operator reduced_density_2(PrimeDim d, const Ket& pair_state) {
    const std::uint32_t n = d.value();
    if (pair_state.dim() != d.pair_dim())
        throw std::invalid_argument("reduced_density_2: expected a two-qudit state");
    Operator rho(n);
    for (std::uint32_t r = 0; r < n; ++r)
        for (std::uint32_t c = 0; c < n; ++c) {
            cx acc{0.0, 0.0};
            for (std::uint32_t k = 0; k < n; ++k)
                acc += pair_state[std::size_t{k} * n + r] * std::conj(pair_state[std::size_t{k} * n + c]);
            rho.at(r, c) = acc;
        }
    return rho;
}

std::vector<double> schmidt_coefficients(PrimeDim d, const Ket& pair_state) {
    std::vector<double> eig = hermitian_eigenvalues(reduced_density_1(d, pair_state));
    for (double& v : eig) v = std::sqrt(std::max(v, 0.0));
    return eig;
}

}  // namespace meanking
