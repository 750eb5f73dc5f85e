#pragma once

#include <optional>
#include <string_view>

#include "quditfid/linalg.hpp"
#include "quditfid/states.hpp"

namespace qfid {

/// State-based fidelity measures.
enum class Measure { uhlmann, super, f2, alt, op };

std::string_view to_string(Measure m) noexcept;
/// Accepts "uhlmann", "super", "f2", "alt", "operator".
std::optional<Measure> parse_measure(std::string_view name) noexcept;

/// One fidelity evaluation with its diagnostics. `raw_value` is what the
/// formula produced; `value` is clamped to [0, 1].
struct FidelityReport {
  Measure measure;
  double value;
  double raw_value;
  Complex inner_product;  ///< Tr(rho0 rho1), or Tr(A^dagger B) for operators
  double purity0;
  double purity1;
  std::size_t dim;
};

/// Tr sqrt(sqrt(rho0) rho1 sqrt(rho0)).
double uhlmann(const DensityMatrix& rho0, const DensityMatrix& rho1);

/// Tr(rho0 rho1) + sqrt(1 - Tr rho0^2) sqrt(1 - Tr rho1^2).
double super_fidelity(const DensityMatrix& rho0, const DensityMatrix& rho1);

/// (1 - r)/2 + (1 + r)/2 * super_fidelity, r = 1/(d - 1).
double f2(const DensityMatrix& rho0, const DensityMatrix& rho1);

/// |Tr(A^dagger B)| / sqrt(Tr(A A^dagger) Tr(B B^dagger)).
double operator_fidelity(const ComplexMatrix& a, const ComplexMatrix& b);

/// |Tr(U0^dagger U1)| / d for unitaries (checked to 1e-8).
double unitary_fidelity(const ComplexMatrix& u0, const ComplexMatrix& u1);

/// Normalized Hilbert-Schmidt overlap |Tr(rho0 rho1)| / sqrt(Tr rho0^2 Tr rho1^2).
///
/// Three O(d^2) trace products; no eigendecomposition and no matrix product.
/// Throws if Tr(rho0 rho1) has an imaginary residue above 1e-12.
double alt_fidelity(const DensityMatrix& rho0, const DensityMatrix& rho1);

/// alt_fidelity of the Gibbs states of `h0` and `h1` at inverse temperature `beta`.
/// Partition functions cancel, so only the shifted Boltzmann weights are formed.
double thermal_fidelity(const Hamiltonian& h0, const Hamiltonian& h1, double beta);

/// |Tr(e^{i t H0} e^{-i t H1})| / d, the imaginary-temperature continuation of
/// thermal_fidelity.
double wick_unitary_fidelity(const Hamiltonian& h0, const Hamiltonian& h1, double t);

/// e^{-i t H} via spectral application.
ComplexMatrix time_evolution(const Hamiltonian& h, double t);

/// Scalar value of `m` on a pair of states.
double fidelity(Measure m, const DensityMatrix& rho0, const DensityMatrix& rho1);

/// Value plus purities and inner product.
FidelityReport evaluate(Measure m, const DensityMatrix& rho0, const DensityMatrix& rho1);

}  // namespace qfid
