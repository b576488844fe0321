#pragma once

// Dense complex linear algebra for single-qudit (dim d) and two-qudit
// (dim d^2) states and operators, plus Born-rule measurement. Everything
// is a plain dense vector or row-major matrix of std::complex<double>;
// at desk scale (d <= 13, d^2 <= 169) sparsity buys nothing.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace meanking {

using cx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;

/// e^{2*pi*i*k/d}. k is reduced mod d first, so the periodicity in k is
/// exact rather than up to rounding.
cx root_of_unity(std::uint32_t d, std::int64_t k);

/// Dense complex amplitude vector of a fixed dimension.
class Ket {
public:
    explicit Ket(std::size_t dim) : amp_(dim, cx{0.0, 0.0}) {}

    /// Standard (computational) basis vector |k>.
    static Ket basis(std::size_t dim, std::size_t k);

    std::size_t dim() const noexcept { return amp_.size(); }
    cx& operator[](std::size_t i) { return amp_[i]; }
    const cx& operator[](std::size_t i) const { return amp_[i]; }

    double norm_sq() const noexcept;
    double norm() const noexcept;
    bool is_normalized(double tol = 1e-12) const noexcept;

    /// A unit-norm copy. Zero vectors cannot be normalized.
    Ket normalized() const;

    Ket operator+(const Ket& rhs) const;
    Ket operator-(const Ket& rhs) const;
    Ket operator*(cx scalar) const;
    Ket& operator+=(const Ket& rhs);
    Ket& operator-=(const Ket& rhs);
    Ket& operator*=(cx scalar);

private:
    std::vector<cx> amp_;
};

inline Ket operator*(cx scalar, const Ket& k) { return k * scalar; }

/// Dense square complex matrix.
class Operator {
public:
    explicit Operator(std::size_t dim) : dim_(dim), a_(dim * dim, cx{0.0, 0.0}) {}

    static Operator identity(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }
    cx& at(std::size_t row, std::size_t col) { return a_[row * dim_ + col]; }
    const cx& at(std::size_t row, std::size_t col) const { return a_[row * dim_ + col]; }

    Operator operator*(const Operator& rhs) const;
    Operator operator+(const Operator& rhs) const;
    Operator operator-(const Operator& rhs) const;
    Operator operator*(cx scalar) const;

    /// Conjugate transpose.
    Operator dagger() const;

    /// Integer matrix power by repeated squaring.
    Operator pow(std::uint64_t e) const;

    cx trace() const;

    /// Largest entrywise |this - rhs|.
    double max_abs_diff(const Operator& rhs) const;

    /// U * U^dagger == I within tol.
    bool is_unitary(double tol = kDefaultTol) const;

private:
    std::size_t dim_;
    std::vector<cx> a_;  // row-major
};

/// <a|b>, conjugate-linear in the first argument. Dimensions must match.
cx inner(const Ket& a, const Ket& b);

/// Matrix-vector product op|s>. Dimensions must match.
Ket apply(const Operator& op, const Ket& s);

/// Kronecker product, first factor major: index = n1 * dim(b) + n2.
Ket tensor(const Ket& a, const Ket& b);
Operator tensor(const Operator& a, const Operator& b);

struct MeasurementOutcome {
    std::size_t index;       // label of the observed basis state
    double probability;      // Born probability
    Ket post_state;          // normalized post-measurement state
};

/// All outcomes of a complete orthonormal measurement with their Born
/// probabilities (the exhaustive mode used by verification). Validates
/// that s is normalized and the basis is orthonormal and complete.
std::vector<MeasurementOutcome> measurement_distribution(const Ket& s, const std::vector<Ket>& basis,
                                                         double tol = kDefaultTol);

/// One seeded sample from measurement_distribution. Reproducible: the same
/// seed always yields the same outcome. No hidden global randomness.
MeasurementOutcome measure_in_basis(const Ket& s, const std::vector<Ket>& basis, std::uint64_t seed,
                                    double tol = kDefaultTol);

/// Eigenvalues of a Hermitian matrix, descending, by cyclic Jacobi
/// rotations. Used for Schmidt-coefficient checks.
std::vector<double> hermitian_eigenvalues(const Operator& h);

}  // namespace meanking
