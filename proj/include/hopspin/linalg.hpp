#pragma once

// Dense complex linear algebra for small Hilbert spaces (dimension <= a few
// dozen). Everything here is a pure function of its arguments.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace hopspin {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Row-major dense complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Row-major initializer; throws if the entry count does not match.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::initializer_list<Complex> entries);

  static ComplexMatrix zeros(std::size_t n) { return ComplexMatrix(n, n); }
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<Complex> entries() noexcept { return data_; }
  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Pure state as a column of amplitudes.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t dim) : amps_(dim) {}
  explicit StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {}

  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return amps_.size(); }
  Complex& operator[](std::size_t i) noexcept { return amps_[i]; }
  const Complex& operator[](std::size_t i) const noexcept { return amps_[i]; }
  std::span<Complex> amplitudes() noexcept { return amps_; }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }

  double norm_squared() const noexcept;
  double norm() const noexcept;
  StateVector normalized() const;

  StateVector& operator+=(const StateVector& other);
  StateVector& operator*=(Complex scale);

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  std::vector<Complex> amps_;
};

StateVector operator+(StateVector a, const StateVector& b);
StateVector operator*(Complex scale, StateVector s);
StateVector operator*(const ComplexMatrix& m, const StateVector& s);

/// <a|b>
Complex inner(const StateVector& a, const StateVector& b);
/// <s|m|s>
Complex expectation(const ComplexMatrix& m, const StateVector& s);
/// |s><s|
ComplexMatrix outer(const StateVector& s);
StateVector kron(const StateVector& a, const StateVector& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(std::initializer_list<ComplexMatrix> factors);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
Complex trace(const ComplexMatrix& m);

double max_abs(const ComplexMatrix& m) noexcept;
double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& m) noexcept;
/// max |m - m^dagger| over entries.
double hermitian_asymmetry(const ComplexMatrix& m);
/// max|m - m^dagger| <= tolerance * max|m|.
bool is_hermitian(const ComplexMatrix& m, double relative_tolerance = 1e-12);

/// Spectrum and eigenvectors of a Hermitian matrix. Eigenvalues ascending;
/// column k of `vectors` belongs to `values[k]`.
struct Eigensystem {
  std::vector<double> values;
  ComplexMatrix vectors;

  std::size_t dim() const noexcept { return values.size(); }
  StateVector vector(std::size_t k) const;
  /// V diag(values) V^dagger
  ComplexMatrix reconstruct() const;
};

/// Cyclic Jacobi diagonalization with complex rotations. Converges once the
/// off-diagonal Frobenius norm drops below 1e-12 * ||m||_F; throws
/// std::invalid_argument for non-Hermitian input and std::runtime_error if
/// 100 sweeps do not suffice.
Eigensystem hermitian_eigensystem(const ComplexMatrix& m);

/// V exp(-i diag(values) t) V^dagger |state>.
StateVector propagate(const StateVector& state, const Eigensystem& eig, double t);

/// exp(-i H t) built from the spectral decomposition.
ComplexMatrix evolution_operator(const Eigensystem& eig, double t);

/// Reduced operator on the subsystems listed in `keep` (any order; the
/// result keeps them in their original tensor order).
ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

enum class Subsystem { A, B };

ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t dim_a, std::size_t dim_b,
                                Subsystem part);

/// Sum of |eigenvalues| of a Hermitian matrix.
double trace_norm_hermitian(const ComplexMatrix& m);

/// Principal square root of a positive semidefinite Hermitian matrix;
/// negative round-off eigenvalues are clipped to zero.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 between two
/// density matrices.
double uhlmann_fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma);

}  // namespace hopspin
