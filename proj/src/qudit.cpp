#include "meanking/qudit.hpp"

#include "meanking/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace meanking {

cx root_of_unity(std::uint32_t d, std::int64_t k) {
    if (d < 1) throw std::invalid_argument("root_of_unity: d must be >= 1");
    std::int64_t r = k % static_cast<std::int64_t>(d);
    if (r < 0) r += d;
    if (r == 0) return cx{1.0, 0.0};
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(d);
    return cx{std::cos(angle), std::sin(angle)};
}

Ket Ket::basis(std::size_t dim, std::size_t k) {
    if (k >= dim) throw std::invalid_argument("Ket::basis: index out of range");
    Ket s(dim);
    s.amp_[k] = cx{1.0, 0.0};
    return s;
}

double Ket::norm_sq() const noexcept {
    double n = 0.0;
    for (const cx& a : amp_) n += std::norm(a);
    return n;
}

double Ket::norm() const noexcept { return std::sqrt(norm_sq()); }

bool Ket::is_normalized(double tol) const noexcept { return std::abs(norm_sq() - 1.0) <= tol; }

Ket Ket::normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::domain_error("Ket::normalized: zero vector");
    Ket s = *this;
    for (cx& a : s.amp_) a /= n;
    return s;
}

Ket Ket::operator+(const Ket& rhs) const {
    Ket s = *this;
    return s += rhs;
}

Ket Ket::operator-(const Ket& rhs) const {
    Ket s = *this;
    return s -= rhs;
}

Ket Ket::operator*(cx scalar) const {
    Ket s = *this;
    return s *= scalar;
}

Ket& Ket::operator+=(const Ket& rhs) {
    if (dim() != rhs.dim()) throw std::invalid_argument("Ket addition: dimension mismatch");
    for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] += rhs.amp_[i];
    return *this;
}

Ket& Ket::operator-=(const Ket& rhs) {
    if (dim() != rhs.dim()) throw std::invalid_argument("Ket subtraction: dimension mismatch");
    for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] -= rhs.amp_[i];
    return *this;
}

Ket& Ket::operator*=(cx scalar) {
    for (cx& a : amp_) a *= scalar;
    return *this;
}

Operator Operator::identity(std::size_t dim) {
    Operator op(dim);
    for (std::size_t i = 0; i < dim; ++i) op.at(i, i) = cx{1.0, 0.0};
    return op;
}

Operator Operator::operator*(const Operator& rhs) const {
    if (dim_ != rhs.dim_) throw std::invalid_argument("Operator product: dimension mismatch");
    Operator out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t k = 0; k < dim_; ++k) {
            const cx aik = at(i, k);
            if (aik == cx{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < dim_; ++j) out.at(i, j) += aik * rhs.at(k, j);
        }
    }
    return out;
}

Operator Operator::operator+(const Operator& rhs) const {
    if (dim_ != rhs.dim_) throw std::invalid_argument("Operator sum: dimension mismatch");
    Operator out = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] += rhs.a_[i];
    return out;
}

Operator Operator::operator-(const Operator& rhs) const {
    if (dim_ != rhs.dim_) throw std::invalid_argument("Operator difference: dimension mismatch");
    Operator out = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] -= rhs.a_[i];
    return out;
}

Operator Operator::operator*(cx scalar) const {
    Operator out = *this;
    for (cx& a : out.a_) a *= scalar;
    return out;
}

Operator Operator::dagger() const {
    Operator out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out.at(j, i) = std::conj(at(i, j));
    return out;
}

Operator Operator::pow(std::uint64_t e) const {
    Operator result = identity(dim_);
    Operator base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

cx Operator::trace() const {
    cx t{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

double Operator::max_abs_diff(const Operator& rhs) const {
    if (dim_ != rhs.dim_) throw std::invalid_argument("Operator comparison: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_[i] - rhs.a_[i]));
    return m;
}

bool Operator::is_unitary(double tol) const {
    return ((*this) * dagger()).max_abs_diff(identity(dim_)) <= tol;
}

cx inner(const Ket& a, const Ket& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
    cx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

Ket apply(const Operator& op, const Ket& s) {
    if (op.dim() != s.dim()) throw std::invalid_argument("apply: dimension mismatch");
    Ket out(s.dim());
    for (std::size_t i = 0; i < op.dim(); ++i) {
        cx acc{0.0, 0.0};
        for (std::size_t j = 0; j < op.dim(); ++j) acc += op.at(i, j) * s[j];
        out[i] = acc;
    }
    return out;
}

Ket tensor(const Ket& a, const Ket& b) {
    Ket out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
    return out;
}

Operator tensor(const Operator& a, const Operator& b) {
    const std::size_t db = b.dim();
    Operator out(a.dim() * db);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            const cx aij = a.at(i, j);
            if (aij == cx{0.0, 0.0}) continue;
            for (std::size_t k = 0; k < db; ++k)
                for (std::size_t l = 0; l < db; ++l) out.at(i * db + k, j * db + l) = aij * b.at(k, l);
        }
    return out;
}

namespace {

void validate_measurement(const Ket& s, const std::vector<Ket>& basis, double tol) {
    if (!s.is_normalized(std::max(tol, 1e-12)))
        throw std::invalid_argument("measurement: state is not normalized");
    if (basis.size() != s.dim())
        throw std::invalid_argument("measurement: basis has " + std::to_string(basis.size()) +
                                    " states, expected " + std::to_string(s.dim()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].dim() != s.dim()) throw std::invalid_argument("measurement: basis state dimension mismatch");
        for (std::size_t j = i; j < basis.size(); ++j) {
            const cx g = inner(basis[i], basis[j]);
            const cx expect = (i == j) ? cx{1.0, 0.0} : cx{0.0, 0.0};
            if (std::abs(g - expect) > tol)
                throw std::invalid_argument("measurement: basis is not orthonormal");
        }
    }
}

}  // namespace

std::vector<MeasurementOutcome> measurement_distribution(const Ket& s, const std::vector<Ket>& basis,
                                                         double tol) {
    validate_measurement(s, basis, tol);
    std::vector<MeasurementOutcome> outcomes;
    outcomes.reserve(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const double p = std::norm(inner(basis[k], s));
        outcomes.push_back(MeasurementOutcome{k, p, basis[k].normalized()});
    }
    return outcomes;
}

MeasurementOutcome measure_in_basis(const Ket& s, const std::vector<Ket>& basis, std::uint64_t seed,
                                    double tol) {
    std::vector<MeasurementOutcome> outcomes = measurement_distribution(s, basis, tol);
    SplitMix64 rng(seed);
    const double u = rng.uniform01();
    double acc = 0.0;
    for (const MeasurementOutcome& o : outcomes) {
        acc += o.probability;
        if (u < acc) return o;
    }
    return outcomes.back();  // u landed in rounding slack at the top
}

std::vector<double> hermitian_eigenvalues(const Operator& h) {
    const std::size_t n = h.dim();
    Operator a = h;
    // Cyclic Jacobi: one complex phase alignment plus one real rotation per
    // (p, q) pair, swept until the off-diagonal mass is negligible.
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a.at(p, q));
        if (std::sqrt(off) < 1e-14) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cx apq = a.at(p, q);
                const double b = std::abs(apq);
                if (b < 1e-300) continue;
                const double phi = std::arg(apq);
                const double app = a.at(p, p).real();
                const double aqq = a.at(q, q).real();
                const double tau = (aqq - app) / (2.0 * b);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sv = t * c;
                // Block unitary U: U_pp = c, U_pq = s, U_qp = -s e^{-i phi}, U_qq = c e^{-i phi}
                const cx upp{c, 0.0};
                const cx upq{sv, 0.0};
                const cx uqp = -sv * std::exp(cx{0.0, -phi});
                const cx uqq = c * std::exp(cx{0.0, -phi});
                for (std::size_t i = 0; i < n; ++i) {  // A <- A U
                    const cx aip = a.at(i, p), aiq = a.at(i, q);
                    a.at(i, p) = aip * upp + aiq * uqp;
                    a.at(i, q) = aip * upq + aiq * uqq;
                }
                for (std::size_t j = 0; j < n; ++j) {  // A <- U^dagger A
                    const cx apj = a.at(p, j), aqj = a.at(q, j);
                    a.at(p, j) = std::conj(upp) * apj + std::conj(uqp) * aqj;
                    a.at(q, j) = std::conj(upq) * apj + std::conj(uqq) * aqj;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a.at(i, i).real();
    std::sort(eig.rbegin(), eig.rend());
    return eig;
}

}  // namespace meanking
