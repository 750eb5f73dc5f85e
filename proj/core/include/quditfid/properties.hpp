#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "quditfid/fidelity.hpp"
#include "quditfid/states.hpp"

namespace qfid {

/// How a report's pass flag relates to its violation magnitude.
enum class CheckMode {
  within_tolerance,  ///< passed iff max_violation <= tolerance
  expect_violation,  ///< passed iff max_violation > tolerance (locks in a known failure)
  report_only,       ///< always passes; the numbers are data
};

std::string_view to_string(CheckMode mode) noexcept;

/// Inputs that produced a report's worst sample.
struct Witness {
  std::vector<std::pair<std::string, ComplexMatrix>> matrices;
  std::vector<std::pair<std::string, double>> scalars;
};

struct PropertyReport {
  std::string property;
  std::string measure;
  std::size_t dim = 0;
  std::size_t samples = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  CheckMode mode = CheckMode::within_tolerance;
  bool passed = true;
  std::optional<Witness> witness;
  std::uint64_t seed = 0;
  // Concavity sweeps only.
  std::optional<double> satisfied_fraction;
  std::optional<double> min_gap;
};

/// One evaluation of the concavity inequality; gap = lhs - rhs, negative
/// when concavity fails.
struct ConcavityRecord {
  double p;
  double lhs;  ///< F(p rho1 + (1-p) rho2, sigma)
  double rhs;  ///< p F(rho1, sigma) + (1-p) F(rho2, sigma)
  double gap;
};

// --- Orthogonal-state example ------------------------------------------------

/// rho0 = (|0><0| + |1><1|)/2 and rho1 = (|2><2| + |3><3|)/2 in d = 4.
std::pair<DensityMatrix, DensityMatrix> orthogonal_pair();

/// uhlmann, super, f2 and alt on the given pair, in that order.
std::vector<FidelityReport> orthogonal_table(const DensityMatrix& rho0, const DensityMatrix& rho1);
std::vector<FidelityReport> paper_orthogonal_example();

// --- Concavity -----------------------------------------------------------------

/// The counterexample family: rho1 = I/2, rho2 = |0><0|, sigma = |1><1|.
struct CounterexampleFamily {
  DensityMatrix rho1;
  DensityMatrix rho2;
  DensityMatrix sigma;
};
CounterexampleFamily counterexample_family();

/// Closed forms for the counterexample family under alt_fidelity.
double counterexample_lhs_closed_form(double p);
double counterexample_rhs_closed_form(double p);

ConcavityRecord concavity_gap(Measure measure, const DensityMatrix& rho1, const DensityMatrix& rho2,
                              const DensityMatrix& sigma, double p);

/// alt_fidelity on the counterexample family. p in [0, 1].
ConcavityRecord paper_counterexample(double p);

enum class SweepFamily { random, paper };

/// Samples (rho1, rho2, sigma, p) and records the satisfied fraction
/// (gap >= -1e-12), the minimum gap and its witness. Report-only.
///
/// `random` draws Hilbert-Schmidt states in dimension d and p uniform on [0, 1].
/// `paper` fixes the counterexample family (d = 2) and draws p on (0.01, 0.99).
PropertyReport concavity_sweep(Measure measure, std::size_t d, std::size_t samples, RandomSource& rng,
                               SweepFamily family = SweepFamily::random);

// --- Axioms and structural properties -----------------------------------------

struct AxiomTolerances {
  double normalization;
  double symmetry;
  double unitary_invariance;
  double pure_state;

  static AxiomTolerances defaults(Measure m) noexcept;
  static AxiomTolerances uniform(double tol) noexcept { return {tol, tol, tol, tol}; }
};

/// Target of F(rho, |psi><psi|) for each measure; for alt this is
/// <psi|rho|psi> / sqrt(Tr rho^2).
double pure_state_target(Measure m, const DensityMatrix& rho, const PureState& psi);

/// Normalization, symmetry, unitary invariance and pure-state reduction,
/// in that order. Throws InvalidArgument when samples == 0.
std::vector<PropertyReport> check_jozsa_axioms(Measure measure, std::size_t d, std::size_t samples,
                                               RandomSource& rng, const AxiomTolerances& tol);
std::vector<PropertyReport> check_jozsa_axioms(Measure measure, std::size_t d, std::size_t samples,
                                               RandomSource& rng);

/// |F(a x b, c x e) - F(a, c) F(b, e)|. super and f2 are not multiplicative and
/// run in expect_violation mode (tolerance 1e-3). Requires d1 * d2 <= 64.
PropertyReport check_multiplicativity(Measure measure, std::size_t d1, std::size_t d2, std::size_t samples,
                                      RandomSource& rng);
/// Default tolerance for the check above.
double multiplicativity_tolerance(Measure measure) noexcept;

/// On random qubit pairs: |super - uhlmann^2| <= 1e-8, |f2 - super| <= 1e-14 and
/// |uhlmann^2 - (Tr(rho sigma) + 2 sqrt(det rho det sigma))| <= 1e-8.
std::vector<PropertyReport> check_qubit_reduction(std::size_t samples, RandomSource& rng);

/// super >= uhlmann^2 - 1e-8 on random pairs, followed by an expect_violation
/// report showing super < uhlmann for rho = |0><0|, sigma = I/2.
std::vector<PropertyReport> check_superfidelity_bound(std::size_t d, std::size_t samples, RandomSource& rng);

/// wick_unitary_fidelity against unitary_fidelity of e^{-itH0}, e^{-itH1}; d <= 8.
PropertyReport check_wick(std::size_t d, std::size_t samples, std::span<const double> t_grid,
                          RandomSource& rng);

/// thermal_fidelity against alt_fidelity of the two thermal states.
PropertyReport check_thermal_consistency(std::size_t d, std::size_t samples, std::span<const double> betas,
                                         RandomSource& rng);

}  // namespace qfid
