#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "quditfid/linalg.hpp"

namespace qfid {

namespace detail {
struct DensityAccess;
}

/// Acceptance thresholds for `density_from_matrix`.
struct DensityTolerances {
  double hermitian = kHermitianTol;  ///< relative, as in `symmetrized`
  double negative_eigenvalue = kPsdTol;
  double trace = 1e-10;
};

/// Validated quantum state: Hermitian, positive semidefinite, unit trace, d >= 2.
class DensityMatrix {
 public:
  std::size_t dim() const noexcept { return matrix_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  friend DensityMatrix density_from_matrix(const ComplexMatrix& m, const DensityTolerances& tol);
  friend struct detail::DensityAccess;

 private:
  explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;
};

/// Validated Hermitian generator.
class Hamiltonian {
 public:
  explicit Hamiltonian(const ComplexMatrix& m, double tol = kHermitianTol);
  std::size_t dim() const noexcept { return matrix_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

/// Unit-norm state vector.
class PureState {
 public:
  /// Throws unless the Euclidean norm is 1 within 1e-12.
  explicit PureState(std::vector<Complex> amplitudes);
  /// Normalizes a nonzero vector.
  static PureState normalized(std::vector<Complex> amplitudes);
  /// Computational basis state |index> in dimension `dim`.
  static PureState basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }

  /// <psi|M|psi>
  Complex expectation(const ComplexMatrix& m) const;

 private:
  std::vector<Complex> amplitudes_;
};

/// Seeded pseudo-random stream: mt19937_64 for bits, 53-bit uniforms,
/// Box-Muller Gaussians. Single owner; not thread-safe.
class RandomSource {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64+box-muller";

  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  double gaussian();
  /// Real and imaginary parts independent N(0, 1).
  Complex complex_gaussian();

  /// Independent stream for task `index`, a pure function of (seed, index).
  RandomSource split(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

DensityMatrix density_from_matrix(const ComplexMatrix& m, const DensityTolerances& tol = {});
DensityMatrix pure_density(const PureState& v);
DensityMatrix maximally_mixed(std::size_t d);
DensityMatrix mix(std::span<const double> weights, std::span<const DensityMatrix> states);
DensityMatrix tensor_state(const DensityMatrix& a, const DensityMatrix& b);

/// Unitary conjugation U rho U^dagger.
DensityMatrix conjugate(const DensityMatrix& rho, const ComplexMatrix& u);

/// rho = G G^dagger / Tr(G G^dagger), G a d x rank complex Ginibre matrix.
DensityMatrix random_density(std::size_t d, std::size_t rank, RandomSource& rng);
/// Haar unitary: QR of a Ginibre matrix with a positive real R diagonal.
ComplexMatrix random_unitary(std::size_t d, RandomSource& rng);
/// (G + G^dagger) / 2 for a complex Ginibre G.
Hamiltonian random_hamiltonian(std::size_t d, RandomSource& rng);
/// Haar-random pure state.
PureState random_pure_state(std::size_t d, RandomSource& rng);

/// exp(-beta H) / Z, computed with the spectrum shifted by its minimum.
DensityMatrix thermal_state(const Hamiltonian& h, double beta);

/// Tr(rho^2).
double purity(const DensityMatrix& rho);

}  // namespace qfid
