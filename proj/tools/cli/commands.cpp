#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "matrix_file.hpp"
#include "quditfid/quditfid.hpp"

#ifndef QUDITFID_FIXTURE_DIR
#define QUDITFID_FIXTURE_DIR "fixtures"
#endif

namespace qfid::cli {
namespace {

using nlohmann::json;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Options {
  std::string measure = "alt";
  std::string a;
  std::string b;
  std::string beta;
  std::string t;
  std::optional<std::size_t> d;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string dims;
  int reps = 5;
  std::string p;
  int grid = 101;
  std::string family = "random";
  std::string format = "human";
  std::string out_path;
  std::string name;  // demo name or check suite
};

// --- small helpers --------------------------------------------------------------

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* flag) {
  std::vector<T> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw UsageError(std::string(flag) + ": empty list element");
    char* end = nullptr;
    if constexpr (std::is_floating_point_v<T>) {
      const double v = std::strtod(item.c_str(), &end);
      if (end != item.c_str() + item.size() || !std::isfinite(v)) {
        throw UsageError(std::string(flag) + ": not a number: " + item);
      }
      values.push_back(v);
    } else {
      if (item.front() == '-') throw UsageError(std::string(flag) + ": must be non-negative: " + item);
      const unsigned long long v = std::strtoull(item.c_str(), &end, 10);
      if (end != item.c_str() + item.size()) throw UsageError(std::string(flag) + ": not an integer: " + item);
      values.push_back(static_cast<T>(v));
    }
  }
  if (values.empty()) throw UsageError(std::string(flag) + ": empty list");
  return values;
}

double parse_scalar(const std::string& text, const char* flag) {
  const auto values = parse_list<double>(text, flag);
  if (values.size() != 1) throw UsageError(std::string(flag) + " takes a single value here");
  return values.front();
}

Measure require_state_measure(const std::string& name) {
  const auto m = parse_measure(name);
  if (!m) throw UsageError("unknown measure \"" + name + "\"");
  return *m;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const ComplexMatrix& m) {
  json data = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(complex_json(m(i, j)));
    data.push_back(std::move(row));
  }
  return {{"dim", m.dim()}, {"data", std::move(data)}};
}

json witness_json(const Witness& w) {
  json matrices = json::object();
  for (const auto& [name, m] : w.matrices) matrices[name] = matrix_json(m);
  json scalars = json::object();
  for (const auto& [name, v] : w.scalars) scalars[name] = v;
  return {{"matrices", std::move(matrices)}, {"scalars", std::move(scalars)}};
}

json report_json(const PropertyReport& r) {
  json j = {{"type", "property"},
            {"property", r.property},
            {"measure", r.measure},
            {"dim", r.dim},
            {"samples", r.samples},
            {"max_violation", r.max_violation},
            {"tolerance", r.tolerance},
            {"mode", to_string(r.mode)},
            {"passed", r.passed},
            {"seed", r.seed},
            {"rng", RandomSource::kAlgorithm}};
  if (r.satisfied_fraction) j["satisfied_fraction"] = *r.satisfied_fraction;
  if (r.min_gap) j["min_gap"] = *r.min_gap;
  if (r.witness) j["witness"] = witness_json(*r.witness);
  return j;
}

json fidelity_json(const FidelityReport& r) {
  return {{"type", "fidelity"},
          {"measure", to_string(r.measure)},
          {"value", r.value},
          {"raw_value", r.raw_value},
          {"inner_product", complex_json(r.inner_product)},
          {"purity0", r.purity0},
          {"purity1", r.purity1},
          {"dim", r.dim}};
}

// Routes results to stdout (or --out) in the selected format.
class Printer {
 public:
  Printer(std::ostream& out, bool records) : out_(out), records_(records) {}

  bool records() const noexcept { return records_; }
  void record(const json& j) { out_ << j.dump() << '\n'; }
  void line(const std::string& s) { out_ << s << '\n'; }

  void fidelity(const FidelityReport& r) {
    if (records_) return record(fidelity_json(r));
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-9s value=%.12g raw=%.12g Tr(rho0 rho1)=%.12g%+.3gi purity0=%.12g purity1=%.12g d=%zu",
                  std::string(to_string(r.measure)).c_str(), r.value, r.raw_value, r.inner_product.real(),
                  r.inner_product.imag(), r.purity0, r.purity1, r.dim);
    line(buf);
  }

  void report(const PropertyReport& r) {
    if (records_) return record(report_json(r));
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s %-36s measure=%-8s d=%-3zu samples=%-5zu max_violation=%.3e tol=%.1e [%s]",
                  r.passed ? "PASS" : "FAIL", r.property.c_str(), r.measure.c_str(), r.dim, r.samples,
                  r.max_violation, r.tolerance, std::string(to_string(r.mode)).c_str());
    line(buf);
    if (r.satisfied_fraction) {
      line("     satisfied_fraction=" + fmt("%.6f", *r.satisfied_fraction) + " min_gap=" + fmt("%.6e", *r.min_gap) +
           " seed=" + std::to_string(r.seed) + " rng=" + std::string(RandomSource::kAlgorithm));
    }
    if (r.witness && (!r.passed || r.satisfied_fraction)) {
      std::string s = "     witness:";
      for (const auto& [name, v] : r.witness->scalars) s += " " + name + "=" + fmt("%.12g", v);
      line(s);
    }
  }

 private:
  std::ostream& out_;
  bool records_;
};

// --- subcommands ------------------------------------------------------------------

int cmd_compute(const Options& o, Printer& print) {
  if (o.a.empty() || o.b.empty()) throw UsageError("compute needs --a and --b");
  const std::string& m = o.measure;
  if (m == "thermal" || m == "wick") {
    const Hamiltonian h0 = load_hamiltonian(o.a);
    const Hamiltonian h1 = load_hamiltonian(o.b);
    if (h0.dim() != h1.dim()) throw DimensionMismatch(h0.dim(), h1.dim());
    const bool thermal = m == "thermal";
    const std::string& param = thermal ? o.beta : o.t;
    if (param.empty()) throw UsageError(thermal ? "thermal needs --beta" : "wick needs --t");
    const double x = parse_scalar(param, thermal ? "--beta" : "--t");
    const double value = thermal ? thermal_fidelity(h0, h1, x) : wick_unitary_fidelity(h0, h1, x);
    if (print.records()) {
      print.record({{"type", "fidelity"}, {"measure", m}, {"value", value}, {thermal ? "beta" : "t", x}, {"dim", h0.dim()}});
    } else {
      print.line(m + " value=" + fmt("%.12g", value) + (thermal ? " beta=" : " t=") + fmt("%.12g", x) +
                 " d=" + std::to_string(h0.dim()));
    }
    return kSuccess;
  }
  if (m == "unitary" || m == "operator") {
    const bool unitary = m == "unitary";
    const ComplexMatrix a = unitary ? load_unitary(o.a) : load_raw(o.a);
    const ComplexMatrix b = unitary ? load_unitary(o.b) : load_raw(o.b);
    const double value = unitary ? unitary_fidelity(a, b) : operator_fidelity(a, b);
    const Complex inner = hilbert_schmidt_inner(a, b);
    if (print.records()) {
      print.record({{"type", "fidelity"}, {"measure", m}, {"value", value}, {"inner_product", complex_json(inner)},
                    {"dim", a.dim()}});
    } else {
      print.line(m + " value=" + fmt("%.12g", value) + " Tr(A+ B)=" + fmt("%.12g", inner.real()) +
                 fmt("%+.12gi", inner.imag()) + " d=" + std::to_string(a.dim()));
    }
    return kSuccess;
  }
  const Measure measure = require_state_measure(m);
  const DensityMatrix rho0 = load_density(o.a);
  const DensityMatrix rho1 = load_density(o.b);
  print.fidelity(evaluate(measure, rho0, rho1));
  return kSuccess;
}

int demo_orthogonal(Printer& print) {
  const DensityMatrix rho0 = load_density(fixture_dir() / "orthogonal_rho0.json");
  const DensityMatrix rho1 = load_density(fixture_dir() / "orthogonal_rho1.json");
  const auto rows = orthogonal_table(rho0, rho1);
  bool ok = true;
  for (const FidelityReport& r : rows) {
    double expected = 0.0;
    double tol = 1e-12;
    switch (r.measure) {
      case Measure::uhlmann:
        tol = 1e-7;
        break;
      case Measure::super:
        expected = 0.5;
        break;
      case Measure::f2:
        expected = 2.0 / 3.0;
        break;
      default:
        break;
    }
    const bool match = std::abs(r.value - expected) <= tol;
    ok = ok && match;
    if (print.records()) {
      json j = fidelity_json(r);
      j["type"] = "demo_orthogonal";
      j["expected"] = expected;
      j["match"] = match;
      print.record(j);
    } else {
      char buf[128];
      std::snprintf(buf, sizeof buf, "%s %-9s %.6f   expected %.6f", match ? "ok  " : "FAIL",
                    std::string(to_string(r.measure)).c_str(), r.value, expected);
      print.line(buf);
    }
  }
  return ok ? kSuccess : kPropertyFailure;
}

int demo_concavity(const Options& o, Printer& print) {
  const DensityMatrix rho1 = load_density(fixture_dir() / "concavity_rho1.json");
  const DensityMatrix rho2 = load_density(fixture_dir() / "concavity_rho2.json");
  const DensityMatrix sigma = load_density(fixture_dir() / "concavity_sigma.json");
  std::vector<double> grid;
  if (!o.p.empty()) {
    grid = parse_list<double>(o.p, "--p");
  } else {
    if (o.grid < 2) throw UsageError("--grid needs at least 2 points");
    for (int i = 0; i < o.grid; ++i) grid.push_back(static_cast<double>(i) / (o.grid - 1));
  }
  bool ok = true;
  if (!print.records()) print.line("       p          lhs          rhs          gap    lhs_resid    rhs_resid");
  for (double p : grid) {
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError("--p values must lie in [0, 1]");
    const ConcavityRecord rec = concavity_gap(Measure::alt, rho1, rho2, sigma, p);
    const double lhs_resid = rec.lhs - counterexample_lhs_closed_form(p);
    const double rhs_resid = rec.rhs - counterexample_rhs_closed_form(p);
    bool match = std::abs(lhs_resid) <= 1e-12 && std::abs(rhs_resid) <= 1e-12;
    if (p >= 0.05 && p <= 0.95) match = match && rec.gap < -1e-6;
    if (p == 0.0 || p == 1.0) match = match && std::abs(rec.gap) <= 1e-12;
    ok = ok && match;
    if (print.records()) {
      print.record({{"type", "concavity"}, {"p", p}, {"lhs", rec.lhs}, {"rhs", rec.rhs}, {"gap", rec.gap},
                    {"lhs_residual", lhs_resid}, {"rhs_residual", rhs_resid}, {"match", match}});
    } else {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%8.4f %12.6f %12.6f %12.6f %12.3e %12.3e%s", p, rec.lhs, rec.rhs, rec.gap,
                    lhs_resid, rhs_resid, match ? "" : "  FAIL");
      print.line(buf);
    }
  }
  return ok ? kSuccess : kPropertyFailure;
}

int cmd_demo(const Options& o, Printer& print) {
  if (o.name == "orthogonal") return demo_orthogonal(print);
  if (o.name == "concavity") return demo_concavity(o, print);
  throw UsageError("unknown demo \"" + o.name + "\" (expected orthogonal or concavity)");
}

std::vector<PropertyReport> run_suite(const std::string& suite, const Options& o) {
  const std::size_t d = o.d.value_or(4);
  const std::size_t samples = o.samples.value_or(100);
  const std::uint64_t seed = o.seed.value_or(1);
  if (samples < 1) throw UsageError("--samples must be >= 1");
  RandomSource rng(seed);
  if (suite == "axioms") {
    if (d < 2) throw UsageError("--d must be >= 2");
    return check_jozsa_axioms(require_state_measure(o.measure), d, samples, rng);
  }
  if (suite == "multiplicativity") {
    const auto factors = parse_list<std::size_t>(o.dims.empty() ? "2,2" : o.dims, "--dims");
    if (factors.size() != 2) throw UsageError("multiplicativity takes --dims d1,d2");
    return {check_multiplicativity(require_state_measure(o.measure), factors[0], factors[1], samples, rng)};
  }
  if (suite == "qubit") return check_qubit_reduction(samples, rng);
  if (suite == "bound") {
    if (d < 2) throw UsageError("--d must be >= 2");
    return check_superfidelity_bound(d, samples, rng);
  }
  if (suite == "wick") {
    if (d < 2 || d > 8) throw UsageError("wick suite needs 2 <= --d <= 8");
    const auto ts = parse_list<double>(o.t.empty() ? "0.1,0.5,1.0,2.0" : o.t, "--t");
    const auto betas = parse_list<double>(o.beta.empty() ? "0,0.5,1,10,1000" : o.beta, "--beta");
    std::vector<PropertyReport> out{check_wick(d, samples, ts, rng)};
    RandomSource thermal_rng(seed);
    out.push_back(check_thermal_consistency(d, samples, betas, thermal_rng));
    return out;
  }
  throw UsageError("unknown suite \"" + suite + "\"");
}

int cmd_check(const Options& o, Printer& print) {
  static const std::vector<std::string> kAll = {"axioms", "multiplicativity", "qubit", "bound", "wick"};
  std::vector<std::string> suites;
  if (o.name == "all") {
    suites = kAll;
  } else if (std::find(kAll.begin(), kAll.end(), o.name) != kAll.end()) {
    suites = {o.name};
  } else {
    throw UsageError("unknown suite \"" + o.name + "\"");
  }
  if (o.tol && !(*o.tol >= 0.0)) throw UsageError("--tol must be >= 0");
  // Validate everything before printing anything.
  std::vector<PropertyReport> reports;
  for (const std::string& s : suites) {
    for (PropertyReport& r : run_suite(s, o)) reports.push_back(std::move(r));
  }
  bool ok = true;
  for (PropertyReport& r : reports) {
    if (o.tol && r.mode == CheckMode::within_tolerance) {
      r.tolerance = *o.tol;
      r.passed = r.max_violation <= *o.tol;
    }
    ok = ok && r.passed;
    print.report(r);
  }
  return ok ? kSuccess : kPropertyFailure;
}

int cmd_sweep(const Options& o, Printer& print) {
  const std::size_t d = o.d.value_or(2);
  const std::size_t samples = o.samples.value_or(1000);
  if (samples < 1) throw UsageError("--samples must be >= 1");
  SweepFamily family;
  if (o.family == "random") {
    family = SweepFamily::random;
  } else if (o.family == "paper") {
    family = SweepFamily::paper;
  } else {
    throw UsageError("unknown family \"" + o.family + "\" (expected random or paper)");
  }
  if (family == SweepFamily::random && d < 2) throw UsageError("--d must be >= 2");
  RandomSource rng(o.seed.value_or(42));
  print.report(concavity_sweep(require_state_measure(o.measure), d, samples, rng, family));
  return kSuccess;
}

int cmd_bench(const Options& o, Printer& print) {
  if (o.reps < 3) throw UsageError("--reps must be >= 3");
  const auto dims = parse_list<std::size_t>(o.dims.empty() ? "2,4,8,16,32,64,128,256" : o.dims, "--dims");
  for (std::size_t d : dims) {
    if (d < 2) throw UsageError("--dims entries must be >= 2");
  }
  const std::vector<BenchRecord> records = run_bench(dims, o.reps, o.seed.value_or(1));
  for (std::size_t i = 0; i + 1 < records.size(); i += 2) {
    const BenchRecord& alt = records[i];
    const BenchRecord& uhl = records[i + 1];
    const double ratio = uhl.median_seconds / alt.median_seconds;
    if (print.records()) {
      for (const BenchRecord* r : {&alt, &uhl}) {
        print.record({{"type", "bench"}, {"dim", r->dim}, {"measure", r->measure},
                      {"median_seconds", r->median_seconds}, {"reps", r->reps}});
      }
      print.record({{"type", "speedup"}, {"dim", alt.dim}, {"ratio", ratio}});
    } else {
      char buf[200];
      std::snprintf(buf, sizeof buf, "d=%-5zu alt=%.3e s  uhlmann=%.3e s  speedup=%.1fx  (median of %d)", alt.dim,
                    alt.median_seconds, uhl.median_seconds, ratio, alt.reps);
      print.line(buf);
    }
  }
  return kSuccess;
}

void add_output_flags(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"human", "records"}));
  sub->add_option("--out", o.out_path, "Write results to this file instead of stdout");
}

}  // namespace

std::filesystem::path fixture_dir() {
  if (const char* env = std::getenv("QUDITFID_FIXTURES"); env != nullptr && *env != '\0') return env;
  return QUDITFID_FIXTURE_DIR;
}

std::vector<BenchRecord> run_bench(std::span<const std::size_t> dims, int reps, std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  std::vector<BenchRecord> records;
  const RandomSource master(seed);
  for (std::size_t d : dims) {
    RandomSource rng = master.split(d);
    const DensityMatrix rho0 = random_density(d, d, rng);
    const DensityMatrix rho1 = random_density(d, d, rng);
    for (Measure m : {Measure::alt, Measure::uhlmann}) {
      std::vector<double> times;
      volatile double sink = 0.0;
      for (int r = 0; r < reps; ++r) {
        const auto start = clock::now();
        sink = m == Measure::alt ? alt_fidelity(rho0, rho1) : uhlmann(rho0, rho1);
        times.push_back(std::chrono::duration<double>(clock::now() - start).count());
      }
      (void)sink;
      std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
      records.push_back({d, std::string(to_string(m)), times[times.size() / 2], reps});
    }
  }
  return records;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Quantum fidelity measures for qudit density matrices", "quditfid"};
  app.require_subcommand(1, 1);

  auto* compute = app.add_subcommand("compute", "Evaluate one fidelity on matrix files");
  compute->add_option("--measure", o.measure,
                      "uhlmann | super | f2 | alt | operator | unitary | thermal | wick")
      ->required();
  compute->add_option("--a", o.a, "First matrix file")->required();
  compute->add_option("--b", o.b, "Second matrix file")->required();
  compute->add_option("--beta", o.beta, "Inverse temperature (thermal)");
  compute->add_option("--t", o.t, "Time (wick)");
  add_output_flags(compute, o);

  auto* demo = app.add_subcommand("demo", "Reproduce the orthogonal-pair table or the concavity counterexample");
  demo->add_option("name", o.name, "orthogonal | concavity")->required();
  demo->add_option("--p", o.p, "Comma-separated p values (concavity)");
  demo->add_option("--grid", o.grid, "Number of uniform p points on [0, 1] (concavity)");
  add_output_flags(demo, o);

  auto* check = app.add_subcommand("check", "Run property suites");
  check->add_option("suite", o.name, "axioms | multiplicativity | qubit | bound | wick | all")->required();
  check->add_option("--measure", o.measure, "uhlmann | super | f2 | alt | operator");
  check->add_option("--d", o.d, "Dimension (default 4)");
  check->add_option("--samples", o.samples, "Samples per suite (default 100)");
  check->add_option("--seed", o.seed, "RNG seed (default 1)");
  check->add_option("--tol", o.tol, "Override every within-tolerance threshold");
  check->add_option("--dims", o.dims, "Factor dimensions d1,d2 (multiplicativity)");
  check->add_option("--t", o.t, "Comma-separated times (wick)");
  check->add_option("--beta", o.beta, "Comma-separated inverse temperatures (wick)");
  add_output_flags(check, o);

  auto* sweep = app.add_subcommand("sweep", "Concavity sweep over random triples");
  sweep->add_option("--d", o.d, "Dimension (default 2)");
  sweep->add_option("--samples", o.samples, "Samples (default 1000)");
  sweep->add_option("--seed", o.seed, "RNG seed (default 42)");
  sweep->add_option("--measure", o.measure, "uhlmann | super | f2 | alt | operator");
  sweep->add_option("--family", o.family, "random | paper");
  add_output_flags(sweep, o);

  auto* bench = app.add_subcommand("bench", "Time alt_fidelity against uhlmann");
  bench->add_option("--dims", o.dims, "Comma-separated dimensions");
  bench->add_option("--reps", o.reps, "Repetitions per measure (>= 3)");
  bench->add_option("--seed", o.seed, "RNG seed (default 1)");
  add_output_flags(bench, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "quditfid: " << e.what() << '\n';
    if (app.get_subcommands().empty()) err << app.help();
    return kUsageError;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.out_path.empty()) {
    file.open(o.out_path, std::ios::binary);
    if (!file) {
      err << "quditfid: cannot open --out file " << o.out_path << '\n';
      return kUsageError;
    }
    sink = &file;
  }
  Printer print(*sink, o.format == "records");
  try {
    if (compute->parsed()) return cmd_compute(o, print);
    if (demo->parsed()) return cmd_demo(o, print);
    if (check->parsed()) return cmd_check(o, print);
    if (sweep->parsed()) return cmd_sweep(o, print);
    if (bench->parsed()) return cmd_bench(o, print);
  } catch (const std::exception& e) {
    err << "quditfid: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace qfid::cli
