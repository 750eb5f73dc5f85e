#include "quditfid/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "quditfid/error.hpp"

namespace qfid {
namespace {

bool is_finite(Complex z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(std::span<const Complex> entries) {
  for (Complex z : entries) {
    if (!is_finite(z)) throw NotFinite("matrix contains a non-finite entry");
  }
}

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTol = 1e-12;

double off_diagonal_norm(const ComplexMatrix& a) noexcept {
  const std::size_t n = a.dim();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

// Diagonalizes `a` in place. When `vt` is non-null it accumulates the
// eigenvectors as ROWS (vt = V^T) so every update touches contiguous memory.
void jacobi_diagonalize(ComplexMatrix& a, ComplexMatrix* vt) {
  const std::size_t n = a.dim();
  if (n == 1) return;
  const double norm = a.frobenius_norm();
  if (norm == 0.0) return;
  const double skip = 1e-14 * norm / static_cast<double>(n);

  std::vector<Complex> row_p(n);
  std::vector<Complex> row_q(n);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) < kOffDiagonalTol * norm) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= skip) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        // Phase e^{i phi} = apq / |apq| makes the pivot real; then a real rotation.
        const Complex phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // Rows p and q of J^dagger A J; for k != p,q only J^dagger acts.
        const Complex sp = s * phase;
        const Complex cp = c * phase;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex hp = a(p, k);
          const Complex hq = a(q, k);
          row_p[k] = c * hp - sp * hq;
          row_q[k] = s * hp + cp * hq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          a(p, k) = row_p[k];
          a(q, k) = row_q[k];
          a(k, p) = std::conj(row_p[k]);
          a(k, q) = std::conj(row_q[k]);
        }
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
        a(p, q) = a(q, p) = 0.0;

        if (vt != nullptr) {
          // V <- V J with J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q).
          const Complex conj_phase = std::conj(phase);
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vp = (*vt)(p, k);
            const Complex vq = (*vt)(q, k);
            (*vt)(p, k) = c * vp - s * conj_phase * vq;
            (*vt)(q, k) = s * vp + c * conj_phase * vq;
          }
        }
      }
    }
  }
}

std::vector<std::size_t> ascending_order(const ComplexMatrix& a) {
  std::vector<std::size_t> order(a.dim());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  return order;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
  if (dim == 0) throw InvalidArgument("matrix dimension must be >= 1");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (dim == 0) throw InvalidArgument("matrix dimension must be >= 1");
  if (data_.size() != dim * dim) throw InvalidArgument("entry count does not match dimension");
  require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  if (dim_ == 0) throw InvalidArgument("matrix dimension must be >= 1");
  data_.reserve(dim_ * dim_);
  for (const auto& r : rows) {
    if (r.size() != dim_) throw InvalidArgument("matrix literal is not square");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw NotFinite("diagonal entry is not finite");
    m(i, i) = values[i];
  }
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

Complex ComplexMatrix::trace() const noexcept {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) sum += (*this)(i, i);
  return sum;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

double ComplexMatrix::frobenius_norm() const noexcept {
  double sum = 0.0;
  for (Complex z : data_) sum += std::norm(z);
  return std::sqrt(sum);
}

double ComplexMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (Complex z : data_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) noexcept {
  for (Complex& z : data_) z *= scalar;
  return *this;
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      const Complex* brow = b.row(k).data();
      Complex* orow = &out(i, 0);
      for (std::size_t j = 0; j < n; ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  const std::size_t n = a.dim();
  Complex sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sum += a(i, j) * b(j, i);
  return sum;
}

Complex hilbert_schmidt_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  const auto ea = a.entries();
  const auto eb = b.entries();
  Complex sum = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) sum += std::conj(ea[i]) * eb[i];
  return sum;
}

double hermitian_deviation(const ComplexMatrix& h) noexcept {
  const std::size_t n = h.dim();
  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) dev = std::max(dev, std::abs(h(i, j) - std::conj(h(j, i))));
  const double scale = h.max_abs();
  return scale == 0.0 ? 0.0 : dev / scale;
}

ComplexMatrix symmetrized(const ComplexMatrix& h, double tol) {
  const double dev = hermitian_deviation(h);
  if (dev > tol) throw NotHermitian(dev);
  const std::size_t n = h.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex z = 0.5 * (h(i, j) + std::conj(h(j, i)));
      out(i, j) = z;
      out(j, i) = std::conj(z);
    }
  }
  return out;
}

Spectrum hermitian_eig(const ComplexMatrix& h) {
  ComplexMatrix a = symmetrized(h);
  ComplexMatrix vt = ComplexMatrix::identity(a.dim());
  jacobi_diagonalize(a, &vt);

  const std::size_t n = a.dim();
  const auto order = ascending_order(a);
  Spectrum out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.eigenvalues[k] = a(src, src).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = vt(src, i);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
  ComplexMatrix a = symmetrized(h);
  jacobi_diagonalize(a, nullptr);
  std::vector<double> values(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) values[i] = a(i, i).real();
  std::sort(values.begin(), values.end());
  return values;
}

ComplexMatrix spectral_synthesis(const ComplexMatrix& eigenvectors, std::span<const Complex> values) {
  const std::size_t n = eigenvectors.dim();
  if (values.size() != n) throw DimensionMismatch(n, values.size());
  // scaled = diag(values) V^dagger, then V * scaled.
  ComplexMatrix scaled(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) scaled(k, j) = values[k] * std::conj(eigenvectors(j, k));
  return matmul(eigenvectors, scaled);
}

ComplexMatrix hermitian_apply(const Spectrum& spectrum, const std::function<double(double)>& f) {
  std::vector<Complex> values;
  values.reserve(spectrum.eigenvalues.size());
  for (double lambda : spectrum.eigenvalues) {
    const double v = f(lambda);
    if (!std::isfinite(v)) throw NotFinite("spectral function produced a non-finite value");
    values.emplace_back(v);
  }
  // Real f on a Hermitian input yields a Hermitian output; remove rounding skew.
  ComplexMatrix out = spectral_synthesis(spectrum.eigenvectors, values);
  return symmetrized(out, std::numeric_limits<double>::infinity());
}

ComplexMatrix hermitian_apply(const ComplexMatrix& h, const std::function<double(double)>& f) {
  return hermitian_apply(hermitian_eig(h), f);
}

ComplexMatrix hermitian_apply_complex(const Spectrum& spectrum, const std::function<Complex(double)>& f) {
  std::vector<Complex> values;
  values.reserve(spectrum.eigenvalues.size());
  for (double lambda : spectrum.eigenvalues) {
    const Complex v = f(lambda);
    if (!is_finite(v)) throw NotFinite("spectral function produced a non-finite value");
    values.push_back(v);
  }
  return spectral_synthesis(spectrum.eigenvectors, values);
}

ComplexMatrix hermitian_apply_complex(const ComplexMatrix& h, const std::function<Complex(double)>& f) {
  return hermitian_apply_complex(hermitian_eig(h), f);
}

ComplexMatrix psd_sqrt(const ComplexMatrix& h) {
  const Spectrum spectrum = hermitian_eig(h);
  if (spectrum.eigenvalues.front() < -kPsdTol) throw NotPositive(spectrum.eigenvalues.front());
  return hermitian_apply(spectrum, [](double lambda) { return std::sqrt(std::max(lambda, 0.0)); });
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  if (da > kMax / db) throw InvalidArgument("Kronecker product dimension overflows");
  const std::size_t n = da * db;
  if (n > kMax / n / sizeof(Complex)) throw InvalidArgument("Kronecker product dimension overflows");
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
    }
  return out;
}

double unitarity_deviation(const ComplexMatrix& u) {
  const ComplexMatrix gram = matmul(u.adjoint(), u);
  return (gram - ComplexMatrix::identity(u.dim())).max_abs();
}

}  // namespace qfid
