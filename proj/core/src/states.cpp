#include "quditfid/states.hpp"

#include <cmath>
#include <numbers>

#include "quditfid/error.hpp"

namespace qfid {
namespace {

constexpr double kNormTol = 1e-12;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double squared_norm(std::span<const Complex> v) noexcept {
  double s = 0.0;
  for (Complex z : v) s += std::norm(z);
  return s;
}

void require_state_dim(std::size_t d) {
  if (d < 2) throw InvalidArgument("density matrices require dimension >= 2, got " + std::to_string(d));
}

void require_trace_one(const ComplexMatrix& m, double tol) {
  const double tr = m.trace().real();
  if (!(std::abs(tr - 1.0) <= tol)) throw TraceError(tr);
}

}  // namespace

namespace detail {

// Outputs of the library's own constructors are positive semidefinite by
// construction; they only pass the Hermitian and trace gates.
struct DensityAccess {
  static DensityMatrix trusted(const ComplexMatrix& m) {
    require_state_dim(m.dim());
    ComplexMatrix h = symmetrized(m);
    require_trace_one(h, DensityTolerances{}.trace);
    return DensityMatrix(std::move(h));
  }
};

}  // namespace detail

namespace {
DensityMatrix trusted_density(const ComplexMatrix& m) { return detail::DensityAccess::trusted(m); }
}  // namespace

DensityMatrix density_from_matrix(const ComplexMatrix& m, const DensityTolerances& tol) {
  require_state_dim(m.dim());
  ComplexMatrix h = symmetrized(m, tol.hermitian);
  require_trace_one(h, tol.trace);
  const std::vector<double> eigenvalues = hermitian_eigenvalues(h);
  if (eigenvalues.front() < -tol.negative_eigenvalue) throw NotPositive(eigenvalues.front());
  return DensityMatrix(std::move(h));
}

Hamiltonian::Hamiltonian(const ComplexMatrix& m, double tol) : matrix_(symmetrized(m, tol)) {}

PureState::PureState(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw InvalidArgument("pure state needs at least one amplitude");
  const double norm = std::sqrt(squared_norm(amplitudes_));
  if (!(std::abs(norm - 1.0) <= kNormTol)) {
    throw InvalidArgument("pure state is not normalized: norm " + std::to_string(norm));
  }
}

PureState PureState::normalized(std::vector<Complex> amplitudes) {
  const double norm = std::sqrt(squared_norm(amplitudes));
  if (!(norm > 0.0) || !std::isfinite(norm)) throw InvalidArgument("cannot normalize a zero vector");
  for (Complex& z : amplitudes) z /= norm;
  return PureState(std::move(amplitudes));
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw InvalidArgument("basis index out of range");
  std::vector<Complex> v(dim);
  v[index] = 1.0;
  return PureState(std::move(v));
}

Complex PureState::expectation(const ComplexMatrix& m) const {
  if (m.dim() != dim()) throw DimensionMismatch(dim(), m.dim());
  Complex sum = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    Complex row = 0.0;
    for (std::size_t j = 0; j < dim(); ++j) row += m(i, j) * amplitudes_[j];
    sum += std::conj(amplitudes_[i]) * row;
  }
  return sum;
}

double RandomSource::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double RandomSource::gaussian() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

Complex RandomSource::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re, im};
}

RandomSource RandomSource::split(std::uint64_t index) const {
  return RandomSource(splitmix64(seed_ ^ splitmix64(index + 1)));
}

DensityMatrix pure_density(const PureState& v) {
  const std::size_t d = v.dim();
  require_state_dim(d);
  const auto a = v.amplitudes();
  ComplexMatrix m(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = a[i] * std::conj(a[j]);
  return trusted_density(m);
}

DensityMatrix maximally_mixed(std::size_t d) {
  require_state_dim(d);
  return trusted_density(ComplexMatrix::identity(d) * Complex(1.0 / static_cast<double>(d)));
}

DensityMatrix mix(std::span<const double> weights, std::span<const DensityMatrix> states) {
  if (weights.empty() || weights.size() != states.size()) {
    throw InvalidArgument("mix needs one weight per state and at least one state");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidArgument("mixture weights must be finite and >= 0");
    total += w;
  }
  if (!(std::abs(total - 1.0) <= 1e-12)) throw InvalidArgument("mixture weights must sum to 1");
  ComplexMatrix m(states.front().dim());
  for (std::size_t k = 0; k < states.size(); ++k) {
    require_same_dim(m, states[k].matrix());
    m += states[k].matrix() * Complex(weights[k]);
  }
  return trusted_density(m);
}

DensityMatrix tensor_state(const DensityMatrix& a, const DensityMatrix& b) {
  return trusted_density(kron(a.matrix(), b.matrix()));
}

DensityMatrix conjugate(const DensityMatrix& rho, const ComplexMatrix& u) {
  return trusted_density(matmul(matmul(u, rho.matrix()), u.adjoint()));
}

DensityMatrix random_density(std::size_t d, std::size_t rank, RandomSource& rng) {
  require_state_dim(d);
  if (rank < 1 || rank > d) {
    throw InvalidArgument("rank must lie in [1, " + std::to_string(d) + "], got " + std::to_string(rank));
  }
  std::vector<Complex> g(d * rank);
  for (Complex& z : g) z = rng.complex_gaussian();
  ComplexMatrix m(d);
  double trace = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < rank; ++k) s += g[i * rank + k] * std::conj(g[j * rank + k]);
      m(i, j) = s;
      m(j, i) = std::conj(s);
    }
    trace += m(i, i).real();
  }
  m *= Complex(1.0 / trace);
  return trusted_density(m);
}

ComplexMatrix random_unitary(std::size_t d, RandomSource& rng) {
  if (d < 1) throw InvalidArgument("unitary dimension must be >= 1");
  // Columns stored as rows of `q` for contiguous access; transposed at the end.
  std::vector<std::vector<Complex>> q(d, std::vector<Complex>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) q[j][i] = rng.complex_gaussian();

  // Modified Gram-Schmidt, applied twice per column; R's diagonal is the
  // positive column norm, which is the phase normalization.
  for (std::size_t k = 0; k < d; ++k) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < k; ++j) {
        Complex proj = 0.0;
        for (std::size_t i = 0; i < d; ++i) proj += std::conj(q[j][i]) * q[k][i];
        for (std::size_t i = 0; i < d; ++i) q[k][i] -= proj * q[j][i];
      }
    }
    const double norm = std::sqrt(squared_norm(q[k]));
    for (Complex& z : q[k]) z /= norm;
  }
  ComplexMatrix u(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) u(i, j) = q[j][i];
  return u;
}

Hamiltonian random_hamiltonian(std::size_t d, RandomSource& rng) {
  ComplexMatrix g(d);
  for (Complex& z : g.entries()) z = rng.complex_gaussian();
  ComplexMatrix h = (g + g.adjoint()) * Complex(0.5);
  return Hamiltonian(h);
}

PureState random_pure_state(std::size_t d, RandomSource& rng) {
  std::vector<Complex> v(d);
  for (Complex& z : v) z = rng.complex_gaussian();
  return PureState::normalized(std::move(v));
}

DensityMatrix thermal_state(const Hamiltonian& h, double beta) {
  if (!std::isfinite(beta)) throw InvalidArgument("beta must be finite");
  if (beta < 0.0) throw InvalidArgument("beta must be >= 0 for a thermal state");
  require_state_dim(h.dim());
  const Spectrum spectrum = hermitian_eig(h.matrix());
  const double lambda_min = spectrum.eigenvalues.front();
  double z = 0.0;
  for (double lambda : spectrum.eigenvalues) z += std::exp(-beta * (lambda - lambda_min));
  const ComplexMatrix rho = hermitian_apply(
      spectrum, [&](double lambda) { return std::exp(-beta * (lambda - lambda_min)) / z; });
  return trusted_density(rho);
}

double purity(const DensityMatrix& rho) { return trace_product(rho.matrix(), rho.matrix()).real(); }

}  // namespace qfid
