#include "quditfid/properties.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "quditfid/error.hpp"

namespace qfid {
namespace {

constexpr double kSatisfiedSlack = 1e-12;
constexpr double kExpectedViolation = 1e-3;

void require_samples(std::size_t samples) {
  if (samples == 0) throw InvalidArgument("samples must be >= 1");
}

// Running maximum of a violation together with the inputs that produced it.
class WorstCase {
 public:
  void offer(double violation, const std::function<Witness()>& make_witness) {
    if (!seen_ || violation > worst_) {
      worst_ = violation;
      witness_ = make_witness();
      seen_ = true;
    }
  }
  double worst() const noexcept { return worst_; }

  PropertyReport finish(std::string property, std::string measure, std::size_t dim, std::size_t samples,
                        double tolerance, CheckMode mode, std::uint64_t seed) && {
    PropertyReport r;
    r.property = std::move(property);
    r.measure = std::move(measure);
    r.dim = dim;
    r.samples = samples;
    r.max_violation = worst_;
    r.tolerance = tolerance;
    r.mode = mode;
    switch (mode) {
      case CheckMode::within_tolerance:
        r.passed = worst_ <= tolerance;
        break;
      case CheckMode::expect_violation:
        r.passed = worst_ > tolerance;
        break;
      case CheckMode::report_only:
        r.passed = true;
        break;
    }
    r.witness = std::move(witness_);
    r.seed = seed;
    return r;
  }

 private:
  bool seen_ = false;
  double worst_ = 0.0;
  std::optional<Witness> witness_;
};

Witness states_witness(std::initializer_list<std::pair<const char*, const DensityMatrix*>> states,
                       std::initializer_list<std::pair<const char*, double>> scalars = {}) {
  Witness w;
  for (const auto& [name, rho] : states) w.matrices.emplace_back(name, rho->matrix());
  for (const auto& [name, value] : scalars) w.scalars.emplace_back(name, value);
  return w;
}

double det2(const ComplexMatrix& m) noexcept { return (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real(); }

}  // namespace

std::string_view to_string(CheckMode mode) noexcept {
  switch (mode) {
    case CheckMode::within_tolerance:
      return "within_tolerance";
    case CheckMode::expect_violation:
      return "expect_violation";
    case CheckMode::report_only:
      return "report_only";
  }
  return "unknown";
}

std::pair<DensityMatrix, DensityMatrix> orthogonal_pair() {
  return {density_from_matrix(ComplexMatrix::diagonal({0.5, 0.5, 0.0, 0.0})),
          density_from_matrix(ComplexMatrix::diagonal({0.0, 0.0, 0.5, 0.5}))};
}

std::vector<FidelityReport> orthogonal_table(const DensityMatrix& rho0, const DensityMatrix& rho1) {
  std::vector<FidelityReport> rows;
  for (Measure m : {Measure::uhlmann, Measure::super, Measure::f2, Measure::alt}) {
    rows.push_back(evaluate(m, rho0, rho1));
  }
  return rows;
}

std::vector<FidelityReport> paper_orthogonal_example() {
  const auto [rho0, rho1] = orthogonal_pair();
  return orthogonal_table(rho0, rho1);
}

CounterexampleFamily counterexample_family() {
  return {maximally_mixed(2), pure_density(PureState::basis(2, 0)), pure_density(PureState::basis(2, 1))};
}

double counterexample_lhs_closed_form(double p) {
  return p / (std::numbers::sqrt2 * std::sqrt(1.0 + (1.0 - p) * (1.0 - p)));
}

double counterexample_rhs_closed_form(double p) { return p / std::numbers::sqrt2; }

ConcavityRecord concavity_gap(Measure measure, const DensityMatrix& rho1, const DensityMatrix& rho2,
                              const DensityMatrix& sigma, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("p must lie in [0, 1]");
  require_same_dim(rho1.matrix(), rho2.matrix());
  require_same_dim(rho1.matrix(), sigma.matrix());
  const std::array<double, 2> weights{p, 1.0 - p};
  const std::array<DensityMatrix, 2> parts{rho1, rho2};
  const DensityMatrix mixture = mix(weights, parts);
  ConcavityRecord rec{};
  rec.p = p;
  rec.lhs = fidelity(measure, mixture, sigma);
  rec.rhs = p * fidelity(measure, rho1, sigma) + (1.0 - p) * fidelity(measure, rho2, sigma);
  rec.gap = rec.lhs - rec.rhs;
  return rec;
}

ConcavityRecord paper_counterexample(double p) {
  const CounterexampleFamily f = counterexample_family();
  return concavity_gap(Measure::alt, f.rho1, f.rho2, f.sigma, p);
}

PropertyReport concavity_sweep(Measure measure, std::size_t d, std::size_t samples, RandomSource& rng,
                               SweepFamily family) {
  require_samples(samples);
  const std::uint64_t seed = rng.seed();
  std::optional<CounterexampleFamily> fixed;
  if (family == SweepFamily::paper) {
    fixed = counterexample_family();
    d = 2;
  }
  std::size_t satisfied = 0;
  WorstCase worst;  // tracks -gap, so the worst case is the minimum gap
  for (std::size_t i = 0; i < samples; ++i) {
    double p = 0.0;
    ConcavityRecord rec{};
    std::optional<DensityMatrix> rho1, rho2, sigma;
    if (fixed) {
      p = 0.01 + 0.98 * rng.uniform();
      rho1 = fixed->rho1;
      rho2 = fixed->rho2;
      sigma = fixed->sigma;
    } else {
      rho1 = random_density(d, d, rng);
      rho2 = random_density(d, d, rng);
      sigma = random_density(d, d, rng);
      p = rng.uniform();
    }
    rec = concavity_gap(measure, *rho1, *rho2, *sigma, p);
    if (rec.gap >= -kSatisfiedSlack) ++satisfied;
    worst.offer(-rec.gap, [&] {
      return states_witness({{"rho1", &*rho1}, {"rho2", &*rho2}, {"sigma", &*sigma}},
                            {{"p", p}, {"lhs", rec.lhs}, {"rhs", rec.rhs}, {"gap", rec.gap}});
    });
  }
  const double min_gap = -worst.worst();
  PropertyReport r = std::move(worst).finish("concavity_sweep", std::string(to_string(measure)), d, samples,
                                             kSatisfiedSlack, CheckMode::report_only, seed);
  r.max_violation = std::max(0.0, -min_gap);
  r.satisfied_fraction = static_cast<double>(satisfied) / static_cast<double>(samples);
  r.min_gap = min_gap;
  return r;
}

AxiomTolerances AxiomTolerances::defaults(Measure m) noexcept {
  if (m == Measure::uhlmann) return {1e-8, 1e-8, 1e-8, 1e-8};
  return {1e-12, 1e-12, 1e-9, 1e-10};
}

double pure_state_target(Measure m, const DensityMatrix& rho, const PureState& psi) {
  const double expectation = psi.expectation(rho.matrix()).real();
  switch (m) {
    case Measure::uhlmann:
      return std::sqrt(std::max(expectation, 0.0));
    case Measure::super:
      return expectation;
    case Measure::f2: {
      const double r = 1.0 / static_cast<double>(rho.dim() - 1);
      return (1.0 - r) / 2.0 + (1.0 + r) / 2.0 * expectation;
    }
    case Measure::alt:
    case Measure::op:
      return expectation / std::sqrt(purity(rho));
  }
  return 0.0;
}

std::vector<PropertyReport> check_jozsa_axioms(Measure measure, std::size_t d, std::size_t samples,
                                               RandomSource& rng, const AxiomTolerances& tol) {
  require_samples(samples);
  const std::uint64_t seed = rng.seed();
  WorstCase normalization, symmetry, invariance, pure;
  for (std::size_t i = 0; i < samples; ++i) {
    const DensityMatrix rho = random_density(d, d, rng);
    const DensityMatrix sigma = random_density(d, d, rng);
    const ComplexMatrix u = random_unitary(d, rng);
    const PureState psi = random_pure_state(d, rng);

    const double self = fidelity(measure, rho, rho);
    normalization.offer(std::abs(self - 1.0), [&] { return states_witness({{"rho", &rho}}, {{"F", self}}); });

    const double forward = fidelity(measure, rho, sigma);
    const double backward = fidelity(measure, sigma, rho);
    symmetry.offer(std::abs(forward - backward), [&] {
      return states_witness({{"rho", &rho}, {"sigma", &sigma}}, {{"F(rho,sigma)", forward}, {"F(sigma,rho)", backward}});
    });

    const DensityMatrix rho_u = conjugate(rho, u);
    const DensityMatrix sigma_u = conjugate(sigma, u);
    const double rotated = fidelity(measure, rho_u, sigma_u);
    invariance.offer(std::abs(rotated - forward), [&] {
      Witness w = states_witness({{"rho", &rho}, {"sigma", &sigma}}, {{"F", forward}, {"F(U rho U+, U sigma U+)", rotated}});
      w.matrices.emplace_back("U", u);
      return w;
    });

    const DensityMatrix projector = pure_density(psi);
    const double value = fidelity(measure, rho, projector);
    const double target = pure_state_target(measure, rho, psi);
    pure.offer(std::abs(value - target), [&] {
      return states_witness({{"rho", &rho}, {"psi_projector", &projector}}, {{"F", value}, {"target", target}});
    });
  }
  const std::string name(to_string(measure));
  std::vector<PropertyReport> out;
  out.push_back(std::move(normalization)
                    .finish("normalization", name, d, samples, tol.normalization, CheckMode::within_tolerance, seed));
  out.push_back(std::move(symmetry).finish("symmetry", name, d, samples, tol.symmetry, CheckMode::within_tolerance, seed));
  out.push_back(std::move(invariance)
                    .finish("unitary_invariance", name, d, samples, tol.unitary_invariance, CheckMode::within_tolerance,
                            seed));
  out.push_back(
      std::move(pure).finish("pure_state_reduction", name, d, samples, tol.pure_state, CheckMode::within_tolerance, seed));
  return out;
}

std::vector<PropertyReport> check_jozsa_axioms(Measure measure, std::size_t d, std::size_t samples,
                                               RandomSource& rng) {
  return check_jozsa_axioms(measure, d, samples, rng, AxiomTolerances::defaults(measure));
}

double multiplicativity_tolerance(Measure measure) noexcept {
  switch (measure) {
    case Measure::uhlmann:
      return 1e-7;
    case Measure::super:
    case Measure::f2:
      return kExpectedViolation;
    case Measure::alt:
    case Measure::op:
      return 1e-9;
  }
  return 0.0;
}

PropertyReport check_multiplicativity(Measure measure, std::size_t d1, std::size_t d2, std::size_t samples,
                                      RandomSource& rng) {
  require_samples(samples);
  if (d1 < 2 || d2 < 2 || d1 * d2 > 64) throw InvalidArgument("multiplicativity needs 2 <= d1, d2 and d1*d2 <= 64");
  const std::uint64_t seed = rng.seed();
  WorstCase worst;
  for (std::size_t i = 0; i < samples; ++i) {
    const DensityMatrix a = random_density(d1, d1, rng);
    const DensityMatrix c = random_density(d1, d1, rng);
    const DensityMatrix b = random_density(d2, d2, rng);
    const DensityMatrix e = random_density(d2, d2, rng);
    const double joint = fidelity(measure, tensor_state(a, b), tensor_state(c, e));
    const double product = fidelity(measure, a, c) * fidelity(measure, b, e);
    worst.offer(std::abs(joint - product), [&] {
      return states_witness({{"a", &a}, {"b", &b}, {"c", &c}, {"e", &e}},
                            {{"F(a(x)b, c(x)e)", joint}, {"F(a,c)F(b,e)", product}});
    });
  }
  const bool multiplicative = measure != Measure::super && measure != Measure::f2;
  return std::move(worst).finish("multiplicativity", std::string(to_string(measure)), d1 * d2, samples,
                                 multiplicativity_tolerance(measure),
                                 multiplicative ? CheckMode::within_tolerance : CheckMode::expect_violation, seed);
}

std::vector<PropertyReport> check_qubit_reduction(std::size_t samples, RandomSource& rng) {
  require_samples(samples);
  const std::uint64_t seed = rng.seed();
  WorstCase squared, f2_equals_super, closed_form;
  for (std::size_t i = 0; i < samples; ++i) {
    const DensityMatrix rho = random_density(2, 2, rng);
    const DensityMatrix sigma = random_density(2, 2, rng);
    const double fu = uhlmann(rho, sigma);
    const double fs = super_fidelity(rho, sigma);
    const double ff = f2(rho, sigma);
    const double oracle = trace_product(rho.matrix(), sigma.matrix()).real() +
                          2.0 * std::sqrt(std::max(det2(rho.matrix()) * det2(sigma.matrix()), 0.0));
    auto witness = [&] {
      return states_witness({{"rho", &rho}, {"sigma", &sigma}},
                            {{"uhlmann", fu}, {"super", fs}, {"f2", ff}, {"closed_form_uhlmann_sq", oracle}});
    };
    squared.offer(std::abs(fs - fu * fu), witness);
    f2_equals_super.offer(std::abs(ff - fs), witness);
    closed_form.offer(std::abs(fu * fu - oracle), witness);
  }
  std::vector<PropertyReport> out;
  out.push_back(std::move(squared).finish("qubit_super_equals_uhlmann_squared", "super", 2, samples, 1e-8,
                                          CheckMode::within_tolerance, seed));
  out.push_back(std::move(f2_equals_super)
                    .finish("qubit_f2_equals_super", "f2", 2, samples, 1e-14, CheckMode::within_tolerance, seed));
  out.push_back(std::move(closed_form).finish("qubit_uhlmann_closed_form", "uhlmann", 2, samples, 1e-8,
                                              CheckMode::within_tolerance, seed));
  return out;
}

std::vector<PropertyReport> check_superfidelity_bound(std::size_t d, std::size_t samples, RandomSource& rng) {
  require_samples(samples);
  const std::uint64_t seed = rng.seed();
  WorstCase bound;
  for (std::size_t i = 0; i < samples; ++i) {
    const DensityMatrix rho = random_density(d, d, rng);
    const DensityMatrix sigma = random_density(d, d, rng);
    const double fu = uhlmann(rho, sigma);
    const double fs = super_fidelity(rho, sigma);
    bound.offer(std::max(0.0, fu * fu - fs), [&] {
      return states_witness({{"rho", &rho}, {"sigma", &sigma}}, {{"uhlmann", fu}, {"super", fs}});
    });
  }
  std::vector<PropertyReport> out;
  out.push_back(std::move(bound).finish("super_bounds_uhlmann_squared", "super", d, samples, 1e-8,
                                        CheckMode::within_tolerance, seed));

  // Unsquared reading: super >= uhlmann fails on a single qubit pair.
  const DensityMatrix rho = pure_density(PureState::basis(2, 0));
  const DensityMatrix sigma = maximally_mixed(2);
  const double fu = uhlmann(rho, sigma);
  const double fs = super_fidelity(rho, sigma);
  WorstCase unsquared;
  unsquared.offer(std::max(0.0, fu - fs), [&] {
    return states_witness({{"rho", &rho}, {"sigma", &sigma}}, {{"uhlmann", fu}, {"super", fs}});
  });
  out.push_back(std::move(unsquared).finish("super_bounds_uhlmann_unsquared", "super", 2, 1, kExpectedViolation,
                                            CheckMode::expect_violation, seed));
  return out;
}

PropertyReport check_wick(std::size_t d, std::size_t samples, std::span<const double> t_grid, RandomSource& rng) {
  require_samples(samples);
  if (d < 1 || d > 8) throw InvalidArgument("wick check supports 1 <= d <= 8");
  if (t_grid.empty()) throw InvalidArgument("t grid must not be empty");
  const std::uint64_t seed = rng.seed();
  WorstCase worst;
  for (std::size_t i = 0; i < samples; ++i) {
    const Hamiltonian h0 = random_hamiltonian(d, rng);
    const Hamiltonian h1 = random_hamiltonian(d, rng);
    for (double t : t_grid) {
      const double continued = wick_unitary_fidelity(h0, h1, t);
      const double direct = unitary_fidelity(time_evolution(h0, t), time_evolution(h1, t));
      worst.offer(std::abs(continued - direct), [&] {
        Witness w;
        w.matrices.emplace_back("H0", h0.matrix());
        w.matrices.emplace_back("H1", h1.matrix());
        w.scalars = {{"t", t}, {"wick", continued}, {"unitary", direct}};
        return w;
      });
    }
  }
  return std::move(worst).finish("wick_identity", "operator", d, samples, 1e-10, CheckMode::within_tolerance, seed);
}

PropertyReport check_thermal_consistency(std::size_t d, std::size_t samples, std::span<const double> betas,
                                         RandomSource& rng) {
  require_samples(samples);
  if (d < 2) throw InvalidArgument("thermal check needs d >= 2");
  if (betas.empty()) throw InvalidArgument("beta grid must not be empty");
  const std::uint64_t seed = rng.seed();
  WorstCase worst;
  for (std::size_t i = 0; i < samples; ++i) {
    const Hamiltonian h0 = random_hamiltonian(d, rng);
    const Hamiltonian h1 = random_hamiltonian(d, rng);
    for (double beta : betas) {
      const double spectral = thermal_fidelity(h0, h1, beta);
      const double via_states = alt_fidelity(thermal_state(h0, beta), thermal_state(h1, beta));
      worst.offer(std::abs(spectral - via_states), [&] {
        Witness w;
        w.matrices.emplace_back("H0", h0.matrix());
        w.matrices.emplace_back("H1", h1.matrix());
        w.scalars = {{"beta", beta}, {"thermal", spectral}, {"alt_of_states", via_states}};
        return w;
      });
    }
  }
  return std::move(worst).finish("thermal_consistency", "alt", d, samples, 1e-10, CheckMode::within_tolerance, seed);
}

}  // namespace qfid
