#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace qfid {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major. Entries are always finite.
class ComplexMatrix {
 public:
  /// Zero matrix of dimension `dim` (dim >= 1).
  explicit ComplexMatrix(std::size_t dim);
  /// Takes ownership of `entries` (row-major, dim*dim). Throws on non-finite entries.
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  /// Row-by-row literal, mostly for tests and fixtures.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::initializer_list<double> values);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) noexcept { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * dim_ + col];
  }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }
  std::span<const Complex> row(std::size_t r) const noexcept { return {data_.data() + r * dim_, dim_}; }

  Complex trace() const noexcept;
  ComplexMatrix adjoint() const;
  double frobenius_norm() const noexcept;
  double max_abs() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar) noexcept;

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex s) noexcept { return m *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix m) noexcept { return m *= s; }
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

/// Eigen-decomposition of a Hermitian matrix. Column k of `eigenvectors`
/// pairs with `eigenvalues[k]`; eigenvalues ascend.
struct Spectrum {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Relative tolerance for Hermiticity checks (against the largest entry).
inline constexpr double kHermitianTol = 1e-10;

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b);

/// Matrix product.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr(AB) as the double sum over A[i,j]B[j,i]; no product is formed.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// <A|B> = Tr(A^dagger B).
Complex hilbert_schmidt_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// max |H[i,j] - conj(H[j,i])| relative to the largest entry magnitude
/// (0 for the zero matrix).
double hermitian_deviation(const ComplexMatrix& h) noexcept;

/// Returns (H + H^dagger)/2, or throws NotHermitian when the relative
/// deviation exceeds `tol`.
ComplexMatrix symmetrized(const ComplexMatrix& h, double tol = kHermitianTol);

/// Cyclic Jacobi eigensolver for complex Hermitian matrices.
Spectrum hermitian_eig(const ComplexMatrix& h);

/// Eigenvalues only (ascending); skips eigenvector accumulation.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

/// V diag(values) V^dagger for a unitary V.
ComplexMatrix spectral_synthesis(const ComplexMatrix& eigenvectors, std::span<const Complex> values);

/// V diag(f(lambda)) V^dagger. Throws if f yields a non-finite value.
ComplexMatrix hermitian_apply(const ComplexMatrix& h, const std::function<double(double)>& f);
ComplexMatrix hermitian_apply(const Spectrum& spectrum, const std::function<double(double)>& f);

/// Complex-valued spectral function, e.g. lambda -> exp(-i t lambda).
ComplexMatrix hermitian_apply_complex(const ComplexMatrix& h, const std::function<Complex(double)>& f);
ComplexMatrix hermitian_apply_complex(const Spectrum& spectrum, const std::function<Complex(double)>& f);

/// Eigenvalues in [-kPsdTol, 0) are treated as zero.
inline constexpr double kPsdTol = 1e-9;

/// Principal square root of a positive semidefinite Hermitian matrix.
ComplexMatrix psd_sqrt(const ComplexMatrix& h);

/// Kronecker product; entry [(i*dB + k), (j*dB + l)] = A[i,j] * B[k,l].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// max |U^dagger U - I|.
double unitarity_deviation(const ComplexMatrix& u);

}  // namespace qfid
