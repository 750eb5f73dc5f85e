#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "quditfid/error.hpp"
#include "quditfid/states.hpp"
#include "support/oracles.hpp"

namespace qfid {
namespace {

void expect_revalidates(const DensityMatrix& rho) {
  EXPECT_NO_THROW(density_from_matrix(rho.matrix()));
}

TEST(DensityFromMatrix, MaximallyMixedQubit) {
  const DensityMatrix rho = density_from_matrix(ComplexMatrix::identity(2) * Complex(0.5));
  EXPECT_NEAR(purity(rho), 0.5, 1e-15);
}

TEST(DensityFromMatrix, TraceError) {
  try {
    density_from_matrix(ComplexMatrix::diagonal({0.6, 0.5}));
    FAIL();
  } catch (const TraceError& e) {
    EXPECT_NEAR(e.trace(), 1.1, 1e-15);
  }
}

TEST(DensityFromMatrix, PositivityError) {
  try {
    density_from_matrix(ComplexMatrix::diagonal({1.2, -0.2}));
    FAIL();
  } catch (const NotPositive& e) {
    EXPECT_NEAR(e.min_eigenvalue(), -0.2, 1e-14);
  }
}

TEST(DensityFromMatrix, HermiticityError) {
  const ComplexMatrix m{{0.5, 0.3}, {0.1, 0.5}};
  EXPECT_THROW(density_from_matrix(m), NotHermitian);
}

TEST(DensityFromMatrix, RequiresDimensionTwo) {
  EXPECT_THROW(density_from_matrix(ComplexMatrix::identity(1)), InvalidArgument);
}

TEST(DensityFromMatrix, SymmetrizesWithinTolerance) {
  const ComplexMatrix m{{0.5, Complex(0.1, 0.2)}, {Complex(0.1, -0.2 + 1e-12), 0.5}};
  const DensityMatrix rho = density_from_matrix(m);
  EXPECT_EQ(rho.matrix()(1, 0), std::conj(rho.matrix()(0, 1)));
}

TEST(PureDensity, BasisAndSuperposition) {
  EXPECT_EQ(pure_density(PureState::basis(2, 0)).matrix(), ComplexMatrix::diagonal({1.0, 0.0}));
  const double h = 1.0 / std::sqrt(2.0);
  const DensityMatrix plus = pure_density(PureState({h, h}));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(plus.matrix()(i, j).real(), 0.5, 1e-15);
}

TEST(PureDensity, RandomStateHasRankOne) {
  RandomSource rng(6);
  const DensityMatrix rho = pure_density(random_pure_state(6, rng));
  EXPECT_NEAR(purity(rho), 1.0, 1e-12);
  const auto lambda = hermitian_eigenvalues(rho.matrix());
  EXPECT_LE(lambda[lambda.size() - 2], 1e-10);
}

TEST(PureState, RejectsUnnormalized) {
  EXPECT_THROW(PureState({1.0, 1.0}), InvalidArgument);
  EXPECT_THROW(PureState::normalized({0.0, 0.0}), InvalidArgument);
}

TEST(MaximallyMixed, Values) {
  EXPECT_EQ(maximally_mixed(2).matrix(), ComplexMatrix::diagonal({0.5, 0.5}));
  EXPECT_EQ(maximally_mixed(4).matrix(), ComplexMatrix::diagonal({0.25, 0.25, 0.25, 0.25}));
  EXPECT_NEAR(purity(maximally_mixed(3)), 1.0 / 3.0, 1e-14);
  EXPECT_THROW(maximally_mixed(1), InvalidArgument);
}

TEST(Mix, HalfMaximallyMixedHalfGround) {
  const std::array<double, 2> w{0.5, 0.5};
  const std::array<DensityMatrix, 2> s{maximally_mixed(2), pure_density(PureState::basis(2, 0))};
  // (1 - p/2)|0><0| + (p/2)|1><1| at p = 1/2.
  EXPECT_EQ(mix(w, s).matrix(), ComplexMatrix::diagonal({0.75, 0.25}));
}

TEST(Mix, DegenerateWeights) {
  RandomSource rng(1);
  const std::array<DensityMatrix, 2> s{random_density(3, 3, rng), random_density(3, 3, rng)};
  const std::array<double, 2> w{1.0, 0.0};
  EXPECT_EQ(mix(w, s).matrix(), s[0].matrix());
}

TEST(Mix, ThreeQutrits) {
  RandomSource rng(2);
  const std::array<DensityMatrix, 3> s{random_density(3, 3, rng), random_density(3, 2, rng), random_density(3, 1, rng)};
  const std::array<double, 3> w{0.2, 0.3, 0.5};
  const DensityMatrix m = mix(w, s);
  EXPECT_NEAR(m.matrix().trace().real(), 1.0, 1e-14);
  EXPECT_GE(hermitian_eigenvalues(m.matrix()).front(), -1e-12);
}

TEST(Mix, Errors) {
  const std::array<DensityMatrix, 2> s{maximally_mixed(2), maximally_mixed(2)};
  const std::array<double, 2> bad_sum{0.5, 0.6};
  const std::array<double, 2> negative{1.5, -0.5};
  EXPECT_THROW(mix(bad_sum, s), InvalidArgument);
  EXPECT_THROW(mix(negative, s), InvalidArgument);
  const std::array<DensityMatrix, 2> mismatched{maximally_mixed(2), maximally_mixed(3)};
  const std::array<double, 2> w{0.5, 0.5};
  EXPECT_THROW(mix(w, mismatched), DimensionMismatch);
}

TEST(Mix, MixingWithItselfPreservesPurity) {
  RandomSource rng(3);
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix rho = random_density(4, 4, rng);
    const double p = rng.uniform();
    const std::array<double, 2> w{p, 1.0 - p};
    const std::array<DensityMatrix, 2> s{rho, rho};
    EXPECT_NEAR(purity(mix(w, s)), purity(rho), 1e-12);
  }
}

TEST(TensorState, Examples) {
  EXPECT_EQ(tensor_state(maximally_mixed(2), maximally_mixed(2)).matrix(), maximally_mixed(4).matrix());
  RandomSource rng(4);
  const DensityMatrix pp = tensor_state(pure_density(random_pure_state(2, rng)), pure_density(random_pure_state(3, rng)));
  EXPECT_NEAR(purity(pp), 1.0, 1e-12);
}

TEST(TensorState, PurityFactorizes) {
  RandomSource rng(5);
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix a = random_density(3, 3, rng);
    const DensityMatrix b = random_density(2, 2, rng);
    const DensityMatrix ab = tensor_state(a, b);
    // Direct sum of squared moduli, independent of trace_product.
    double direct = 0.0;
    for (Complex z : ab.matrix().entries()) direct += std::norm(z);
    ASSERT_NEAR(direct, purity(a) * purity(b), 1e-12);
  }
}

TEST(RandomDensity, RankOneIsPure) {
  RandomSource rng(6);
  EXPECT_NEAR(purity(random_density(2, 1, rng)), 1.0, 1e-12);
}

TEST(RandomDensity, DeterministicForSeed) {
  RandomSource a(99);
  RandomSource b(99);
  EXPECT_EQ(random_density(4, 4, a).matrix(), random_density(4, 4, b).matrix());
}

TEST(RandomDensity, DistinctSeedsDiffer) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    RandomSource a(2 * s);
    RandomSource b(2 * s + 1);
    const ComplexMatrix diff = random_density(3, 3, a).matrix() - random_density(3, 3, b).matrix();
    EXPECT_GT(diff.max_abs(), 1e-6);
  }
}

TEST(RandomDensity, RankOutOfRange) {
  RandomSource rng(1);
  EXPECT_THROW(random_density(3, 0, rng), InvalidArgument);
  EXPECT_THROW(random_density(3, 4, rng), InvalidArgument);
}

TEST(RandomDensity, HilbertSchmidtMeanPurityForQubits) {
  const double expected = oracle::hs_qubit_mean_purity();
  ASSERT_NEAR(expected, 0.8, 1e-9);
  RandomSource rng(2024);
  double sum = 0.0;
  constexpr int kSamples = 10000;
  for (int i = 0; i < kSamples; ++i) sum += purity(random_density(2, 2, rng));
  EXPECT_NEAR(sum / kSamples, expected, 0.01);
}

TEST(RandomDensity, ConstructorsRevalidate) {
  RandomSource rng(7);
  for (std::size_t d : {2u, 3u, 6u}) {
    expect_revalidates(random_density(d, d, rng));
    expect_revalidates(random_density(d, 1, rng));
    expect_revalidates(thermal_state(random_hamiltonian(d, rng), 2.0));
    expect_revalidates(conjugate(random_density(d, d, rng), random_unitary(d, rng)));
  }
}

TEST(RandomUnitary, Contracts) {
  RandomSource rng(8);
  const ComplexMatrix u1 = random_unitary(1, rng);
  EXPECT_NEAR(std::abs(u1(0, 0)), 1.0, 1e-15);
  for (std::size_t d : {2u, 4u, 9u}) EXPECT_LE(unitarity_deviation(random_unitary(d, rng)), 1e-10);
  RandomSource fixed(4);
  EXPECT_NEAR(std::abs(oracle::determinant(random_unitary(4, fixed))), 1.0, 1e-10);
}

TEST(RandomSource, UniformRangeAndSplit) {
  RandomSource rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
  const RandomSource base(5);
  RandomSource a = base.split(3);
  RandomSource b = base.split(3);
  RandomSource c = base.split(4);
  const auto x = a.next_u64();
  EXPECT_EQ(x, b.next_u64());
  EXPECT_NE(x, c.next_u64());
}

TEST(ThermalState, InfiniteTemperature) {
  const Hamiltonian h(ComplexMatrix::diagonal({0.0, 1.0, 3.0}));
  EXPECT_LE(oracle::max_abs_diff(thermal_state(h, 0.0).matrix(), maximally_mixed(3).matrix()), 1e-15);
}

TEST(ThermalState, DiagonalClosedForm) {
  const DensityMatrix rho = thermal_state(Hamiltonian(ComplexMatrix::diagonal({0.0, 1.0})), 1.0);
  const double z = 1.0 + std::exp(-1.0);
  EXPECT_NEAR(rho.matrix()(0, 0).real(), 1.0 / z, 1e-12);
  EXPECT_NEAR(rho.matrix()(1, 1).real(), std::exp(-1.0) / z, 1e-12);
  EXPECT_NEAR(rho.matrix()(0, 0).real(), 0.731059, 1e-6);
  EXPECT_NEAR(rho.matrix()(1, 1).real(), 0.268941, 1e-6);
}

TEST(ThermalState, GroundStateLimit) {
  const DensityMatrix rho = thermal_state(Hamiltonian(ComplexMatrix::diagonal({0.0, 1.0})), 1e3);
  EXPECT_LE(oracle::max_abs_diff(rho.matrix(), ComplexMatrix::diagonal({1.0, 0.0})), 1e-10);
}

TEST(ThermalState, LargeEnergiesDoNotOverflow) {
  const Hamiltonian h(ComplexMatrix::diagonal({-2000.0, -1999.0}));
  const DensityMatrix rho = thermal_state(h, 1.0);
  EXPECT_NEAR(rho.matrix()(0, 0).real(), 1.0 / (1.0 + std::exp(-1.0)), 1e-12);
}

TEST(ThermalState, CommutesWithHamiltonian) {
  RandomSource rng(9);
  for (int i = 0; i < 10; ++i) {
    const Hamiltonian h = random_hamiltonian(5, rng);
    const ComplexMatrix rho = thermal_state(h, 0.3 + rng.uniform()).matrix();
    const ComplexMatrix comm = matmul(rho, h.matrix()) - matmul(h.matrix(), rho);
    EXPECT_LE(comm.max_abs(), 1e-9);
  }
}

TEST(ThermalState, RejectsNegativeBeta) {
  const Hamiltonian h(ComplexMatrix::diagonal({0.0, 1.0}));
  EXPECT_THROW(thermal_state(h, -1.0), InvalidArgument);
  EXPECT_THROW(thermal_state(h, std::nan("")), InvalidArgument);
}

TEST(Purity, Values) {
  RandomSource rng(10);
  EXPECT_NEAR(purity(pure_density(random_pure_state(5, rng))), 1.0, 1e-12);
  EXPECT_NEAR(purity(maximally_mixed(7)), 1.0 / 7.0, 1e-15);
  const DensityMatrix rho0 = density_from_matrix(ComplexMatrix::diagonal({0.5, 0.5, 0.0, 0.0}));
  EXPECT_EQ(purity(rho0), 0.5);
}

TEST(Hamiltonian, RejectsNonHermitian) {
  EXPECT_THROW(Hamiltonian(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), NotHermitian);
}

}  // namespace
}  // namespace qfid
