#include "quditfid/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quditfid/error.hpp"

namespace qfid {
namespace {

constexpr double kImagResidueTol = 1e-12;
constexpr double kUnitaryTol = 1e-8;
constexpr double kZeroOperatorNorm = 1e-300;

double clamp_unit(double x) noexcept { return std::clamp(x, 0.0, 1.0); }

double uhlmann_raw(const DensityMatrix& rho0, const DensityMatrix& rho1) {
  require_same_dim(rho0.matrix(), rho1.matrix());
  const ComplexMatrix s = psd_sqrt(rho0.matrix());
  const ComplexMatrix m =
      symmetrized(matmul(matmul(s, rho1.matrix()), s), std::numeric_limits<double>::infinity());
  const std::vector<double> eigenvalues = hermitian_eigenvalues(m);
  // Eigenvalues at the rounding floor would contribute O(sqrt(eps)) each.
  const double floor = static_cast<double>(m.dim()) * std::numeric_limits<double>::epsilon() *
                       std::max(eigenvalues.back(), 0.0);
  double sum = 0.0;
  for (double lambda : eigenvalues) {
    if (lambda > floor) sum += std::sqrt(lambda);
  }
  return sum;
}

double super_raw(double overlap, double purity0, double purity1) noexcept {
  return overlap + std::sqrt(std::max(1.0 - purity0, 0.0)) * std::sqrt(std::max(1.0 - purity1, 0.0));
}

double f2_raw(std::size_t d, double super_value) noexcept {
  const double r = 1.0 / static_cast<double>(d - 1);
  return (1.0 - r) / 2.0 + (1.0 + r) / 2.0 * super_value;
}

double real_overlap(const Complex& inner) {
  if (std::abs(inner.imag()) > kImagResidueTol) {
    throw Error("Tr(rho0 rho1) has imaginary residue " + std::to_string(inner.imag()) +
                "; inputs are not Hermitian");
  }
  return inner.real();
}

double operator_raw(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Complex inner = hilbert_schmidt_inner(a, b);
  const double norm_a = hilbert_schmidt_inner(a, a).real();
  const double norm_b = hilbert_schmidt_inner(b, b).real();
  if (!(norm_a > kZeroOperatorNorm) || !(norm_b > kZeroOperatorNorm)) {
    throw InvalidArgument("operator fidelity undefined for zero operator");
  }
  return std::abs(inner) / (std::sqrt(norm_a) * std::sqrt(norm_b));
}

void require_beta(double beta) {
  if (!std::isfinite(beta)) throw InvalidArgument("beta must be finite");
  if (beta < 0.0) throw InvalidArgument("beta must be >= 0");
}

}  // namespace

std::string_view to_string(Measure m) noexcept {
  switch (m) {
    case Measure::uhlmann:
      return "uhlmann";
    case Measure::super:
      return "super";
    case Measure::f2:
      return "f2";
    case Measure::alt:
      return "alt";
    case Measure::op:
      return "operator";
  }
  return "unknown";
}

std::optional<Measure> parse_measure(std::string_view name) noexcept {
  for (Measure m : {Measure::uhlmann, Measure::super, Measure::f2, Measure::alt, Measure::op}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

double uhlmann(const DensityMatrix& rho0, const DensityMatrix& rho1) {
  return clamp_unit(uhlmann_raw(rho0, rho1));
}

double super_fidelity(const DensityMatrix& rho0, const DensityMatrix& rho1) {
  const double overlap = trace_product(rho0.matrix(), rho1.matrix()).real();
  return clamp_unit(super_raw(overlap, purity(rho0), purity(rho1)));
}

double f2(const DensityMatrix& rho0, const DensityMatrix& rho1) {
  const double overlap = trace_product(rho0.matrix(), rho1.matrix()).real();
  return clamp_unit(f2_raw(rho0.dim(), super_raw(overlap, purity(rho0), purity(rho1))));
}

double operator_fidelity(const ComplexMatrix& a, const ComplexMatrix& b) {
  return clamp_unit(operator_raw(a, b));
}

double unitary_fidelity(const ComplexMatrix& u0, const ComplexMatrix& u1) {
  require_same_dim(u0, u1);
  for (const ComplexMatrix* u : {&u0, &u1}) {
    const double dev = unitarity_deviation(*u);
    if (!(dev <= kUnitaryTol)) throw NotUnitary(dev);
  }
  return clamp_unit(std::abs(hilbert_schmidt_inner(u0, u1)) / static_cast<double>(u0.dim()));
}

double alt_fidelity(const DensityMatrix& rho0, const DensityMatrix& rho1) {
  const double overlap = real_overlap(trace_product(rho0.matrix(), rho1.matrix()));
  return clamp_unit(std::abs(overlap) / std::sqrt(purity(rho0) * purity(rho1)));
}

double thermal_fidelity(const Hamiltonian& h0, const Hamiltonian& h1, double beta) {
  require_same_dim(h0.matrix(), h1.matrix());
  require_beta(beta);
  const Spectrum s0 = hermitian_eig(h0.matrix());
  const Spectrum s1 = hermitian_eig(h1.matrix());
  const double min0 = s0.eigenvalues.front();
  const double min1 = s1.eigenvalues.front();
  const ComplexMatrix e0 = hermitian_apply(s0, [&](double l) { return std::exp(-beta * (l - min0)); });
  const ComplexMatrix e1 = hermitian_apply(s1, [&](double l) { return std::exp(-beta * (l - min1)); });
  // Tr(e^{-2 beta H}) straight from the shifted spectrum.
  double norm0 = 0.0;
  double norm1 = 0.0;
  for (double l : s0.eigenvalues) norm0 += std::exp(-2.0 * beta * (l - min0));
  for (double l : s1.eigenvalues) norm1 += std::exp(-2.0 * beta * (l - min1));
  const double overlap = trace_product(e0, e1).real();
  return clamp_unit(std::abs(overlap) / std::sqrt(norm0 * norm1));
}

ComplexMatrix time_evolution(const Hamiltonian& h, double t) {
  return hermitian_apply_complex(h.matrix(), [t](double l) { return std::exp(Complex(0.0, -t * l)); });
}

double wick_unitary_fidelity(const Hamiltonian& h0, const Hamiltonian& h1, double t) {
  require_same_dim(h0.matrix(), h1.matrix());
  if (!std::isfinite(t)) throw InvalidArgument("t must be finite");
  const ComplexMatrix forward0 =
      hermitian_apply_complex(h0.matrix(), [t](double l) { return std::exp(Complex(0.0, t * l)); });
  const ComplexMatrix backward1 =
      hermitian_apply_complex(h1.matrix(), [t](double l) { return std::exp(Complex(0.0, -t * l)); });
  return clamp_unit(std::abs(trace_product(forward0, backward1)) / static_cast<double>(h0.dim()));
}

double fidelity(Measure m, const DensityMatrix& rho0, const DensityMatrix& rho1) {
  switch (m) {
    case Measure::uhlmann:
      return uhlmann(rho0, rho1);
    case Measure::super:
      return super_fidelity(rho0, rho1);
    case Measure::f2:
      return f2(rho0, rho1);
    case Measure::alt:
      return alt_fidelity(rho0, rho1);
    case Measure::op:
      return operator_fidelity(rho0.matrix(), rho1.matrix());
  }
  throw InvalidArgument("unknown measure");
}

FidelityReport evaluate(Measure m, const DensityMatrix& rho0, const DensityMatrix& rho1) {
  require_same_dim(rho0.matrix(), rho1.matrix());
  FidelityReport report{};
  report.measure = m;
  report.dim = rho0.dim();
  report.inner_product = trace_product(rho0.matrix(), rho1.matrix());
  report.purity0 = purity(rho0);
  report.purity1 = purity(rho1);
  const double overlap = report.inner_product.real();
  switch (m) {
    case Measure::uhlmann:
      report.raw_value = uhlmann_raw(rho0, rho1);
      break;
    case Measure::super:
      report.raw_value = super_raw(overlap, report.purity0, report.purity1);
      break;
    case Measure::f2:
      report.raw_value = f2_raw(report.dim, super_raw(overlap, report.purity0, report.purity1));
      break;
    case Measure::alt:
      report.raw_value =
          std::abs(real_overlap(report.inner_product)) / std::sqrt(report.purity0 * report.purity1);
      break;
    case Measure::op:
      report.raw_value = operator_raw(rho0.matrix(), rho1.matrix());
      break;
  }
  report.value = clamp_unit(report.raw_value);
  return report;
}

}  // namespace qfid
