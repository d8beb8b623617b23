#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "hexlap/acceptance.hpp"
#include "hexlap/conjugate.hpp"
#include "hexlap/hypotheses.hpp"
#include "hexlap/io.hpp"
#include "hexlap/lap.hpp"
#include "hexlap/mourre.hpp"
#include "hexlap/operators.hpp"
#include "hexlap/tables.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;
using namespace hexlap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct RunConfig {
  int N = 32;
  BoundaryCondition bc = BoundaryCondition::Periodic;
  int M = 256;
  double gamma = 0.5;
  double eta_amp = 0.5;
  double v_amp = 0.4;
  double eps_scale = 0.5;
  double theta = 1.0;
  std::string profile_kind = "powerlaw";
  std::vector<std::pair<double, double>> intervals = {{0.5, 0.9}};
  double threshold_margin = 0.05;
  double s = 0.6;
  double rho_start = 0.1;
  std::vector<double> lambdas = {0.5, 0.6, 0.7};
  double horizon = 100.0;
  double dt = 1.0;
  long R = 64;
  std::string out_dir = "out";
  unsigned long seed = 1;
  int jobs = 1;
};

RunConfig parse_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("config: cannot open " + path);
  json j;
  try {
    is >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config: parse error: ") + e.what());
  }
  RunConfig cfg;
  auto get = [&j](const char* key, auto fallback) {
    using T = decltype(fallback);
    return j.contains(key) ? j.at(key).get<T>() : fallback;
  };
  cfg.N = get("N", cfg.N);
  const std::string bc = get("bc", std::string("periodic"));
  if (bc == "periodic") cfg.bc = BoundaryCondition::Periodic;
  else if (bc == "dirichlet") cfg.bc = BoundaryCondition::Dirichlet;
  else throw std::invalid_argument("config: field 'bc' must be periodic or dirichlet");
  cfg.M = get("M", cfg.M);
  cfg.gamma = get("gamma", cfg.gamma);
  cfg.eta_amp = get("eta_amp", cfg.eta_amp);
  cfg.v_amp = get("v_amp", cfg.v_amp);
  cfg.eps_scale = get("eps_scale", cfg.eps_scale);
  cfg.theta = get("theta", cfg.theta);
  cfg.profile_kind = get("profile_kind", cfg.profile_kind);
  cfg.s = get("s", cfg.s);
  cfg.rho_start = get("rho_start", cfg.rho_start);
  cfg.horizon = get("horizon", cfg.horizon);
  cfg.dt = get("dt", cfg.dt);
  cfg.R = get("R", long(cfg.R));
  cfg.threshold_margin = get("threshold_margin", cfg.threshold_margin);
  cfg.out_dir = get("out_dir", cfg.out_dir);
  cfg.seed = get("seed", (unsigned long)cfg.seed);
  cfg.jobs = get("jobs", cfg.jobs);
  if (j.contains("lambdas")) cfg.lambdas = j.at("lambdas").get<std::vector<double>>();
  if (j.contains("intervals")) {
    cfg.intervals.clear();
    for (const auto& v : j.at("intervals"))
      cfg.intervals.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
  }
  if (cfg.N < 2) throw std::invalid_argument("config: field 'N' must be >= 2");
  if (cfg.M < 2) throw std::invalid_argument("config: field 'M' must be >= 2");
  if (cfg.dt <= 0) throw std::invalid_argument("config: field 'dt' must be positive");
  if (cfg.s <= 0.5) throw std::invalid_argument("config: field 's' must be > 1/2");
  for (const auto& [a, b] : cfg.intervals)
    if (!(a < b)) throw std::invalid_argument("config: intervals need a < b");
  return cfg;
}

PerturbationProfile profile_from(const RunConfig& cfg) {
  PerturbationProfile p;
  ProfileKind kind = ProfileKind::PowerLaw;
  if (cfg.profile_kind == "powerlaw") kind = ProfileKind::PowerLaw;
  else if (cfg.profile_kind == "bump") kind = ProfileKind::CompactBump;
  else if (cfg.profile_kind == "oscillatory") kind = ProfileKind::Oscillatory;
  else throw std::invalid_argument("config: unknown profile_kind " + cfg.profile_kind);
  const double delta = 1.0 + cfg.gamma + 0.1;
  p.eta = {kind, cfg.eta_amp, delta, cfg.gamma};
  p.V = {kind, cfg.v_amp, delta, cfg.gamma};
  p.eps_scale = cfg.eps_scale;
  return p.scaled(cfg.theta);
}

fs::path out_dir_for(const RunConfig& cfg, const std::string& override_dir) {
  fs::path dir = cfg.out_dir;
  if (!override_dir.empty()) dir = override_dir;
  if (const char* env = std::getenv("OUTPUT_DIR")) dir = env;
  fs::create_directories(dir);
  return dir;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream os(path);
  os << j.dump(2) << '\n';
}

AssembledOperator build_hamiltonian(const RunConfig& cfg) {
  const TruncationBox box(cfg.N, cfg.bc);
  const PerturbationProfile prof = profile_from(cfg);
  const MetricField mf = MetricField::make(box, prof.eta_fn(), prof.eps_fn());
  const PotentialField V = PotentialField::make(box, prof.V_fn());
  return hamiltonian(mf, V);
}

int cmd_spectrum(const RunConfig& cfg, const std::string& out_override) {
  const fs::path dir = out_dir_for(cfg, out_override);
  const AssembledOperator H = build_hamiltonian(cfg);
  const Eigen::VectorXd ev = dense_eigenvalues(H);
  write_eigenvalues_csv((dir / "eigenvalues.csv").string(), ev, true);
  write_dispersion_csv((dir / "dispersion.csv").string(), cfg.M);

  json summary{{"schema_version", 1}, {"N", cfg.N}, {"count", ev.size()}};
  const bool trivial = cfg.theta == 0.0 || (cfg.eta_amp == 0.0 && cfg.v_amp == 0.0);
  if (cfg.bc == BoundaryCondition::Periodic && trivial) {
    std::vector<double> oracle;
    for (int m1 = 0; m1 < cfg.N; ++m1)
      for (int m2 = 0; m2 < cfg.N; ++m2) {
        const double b = beta({2 * M_PI * m1 / cfg.N, 2 * M_PI * m2 / cfg.N});
        oracle.push_back(std::sqrt(std::max(b, 0.0)) / 3.0);
        oracle.push_back(-std::sqrt(std::max(b, 0.0)) / 3.0);
      }
    std::sort(oracle.begin(), oracle.end());
    double worst = 0.0;
    for (long k = 0; k < ev.size(); ++k)
      worst = std::max(worst, std::abs(ev[k] - oracle[size_t(k)]));
    summary["oracle_mismatch"] = worst;
    write_json(dir / "spectrum_summary.json", summary);
    if (worst > 1e-10) {
      std::cerr << "spectrum: oracle mismatch " << worst << "\n";
      return kExitVerification;
    }
    return kExitOk;
  }
  long outside = 0;
  for (long k = 0; k < ev.size(); ++k)
    if (std::abs(ev[k]) > 1.0) ++outside;
  summary["outside_band"] = outside;
  write_json(dir / "spectrum_summary.json", summary);
  return kExitOk;
}

int cmd_mourre(const RunConfig& cfg, const std::string& out_override) {
  const fs::path dir = out_dir_for(cfg, out_override);
  const TruncationBox box(cfg.N, BoundaryCondition::Dirichlet);
  RunConfig dcfg = cfg;
  dcfg.bc = BoundaryCondition::Dirichlet;
  const AssembledOperator H = build_hamiltonian(dcfg);
  const AssembledOperator A = conjugate_matrix(box);
  json reports = json::array();
  bool ok = true;
  for (const auto& [a, b] : cfg.intervals) {
    const EnergyInterval I{a, b, cfg.threshold_margin};
    const MourreReport rep = mourre_check(H, A, I, cfg.M);
    reports.push_back(json::parse(mourre_report_json(rep)));
    ok = ok && rep.c_symbol > 0.0;
  }
  write_json(dir / "mourre.json", json{{"schema_version", 1}, {"reports", reports}});
  return ok ? kExitOk : kExitVerification;
}

int cmd_lap(const RunConfig& cfg, const std::string& out_override) {
  const fs::path dir = out_dir_for(cfg, out_override);
  RunConfig dcfg = cfg;
  dcfg.bc = BoundaryCondition::Dirichlet;
  const AssembledOperator H = build_hamiltonian(dcfg);
  std::vector<ResolventCurve> curves;
  for (double lam : cfg.lambdas)
    curves.push_back(resolvent_curve(H, lam, cfg.s, cfg.rho_start));
  write_resolvent_curves_csv((dir / "resolvent_curves.csv").string(), curves);
  json summary{{"schema_version", 1}, {"N", cfg.N}, {"s", cfg.s}};
  json arr = json::array();
  for (const auto& c : curves)
    arr.push_back({{"lambda", c.lambda}, {"plateau", c.plateau_flag},
                   {"last_norm", c.norms.back()}});
  summary["curves"] = arr;
  write_json(dir / "lap_summary.json", summary);
  return kExitOk;
}

int cmd_evolve(const RunConfig& cfg, const std::string& out_override) {
  const fs::path dir = out_dir_for(cfg, out_override);
  RunConfig dcfg = cfg;
  dcfg.bc = BoundaryCondition::Dirichlet;
  const TruncationBox box(cfg.N, BoundaryCondition::Dirichlet);
  const AssembledOperator H = build_hamiltonian(dcfg);
  FieldVector f(box.dim());
  for (long i = 0; i < box.dim(); ++i) {
    const LatticeSite s = box.site_of(i);
    const double r2 = double(box.centered1(s) * box.centered1(s) +
                             box.centered2(s) * box.centered2(s));
    f[i] = std::exp(-r2 / 18.0);
  }
  f.normalize();
  const EnergyInterval I{cfg.intervals.at(0).first, cfg.intervals.at(0).second,
                         cfg.threshold_margin};
  const PropagationRecord rec =
      propagation_integral(H, I, f, cfg.s, cfg.horizon, cfg.dt);
  write_propagation_csv((dir / "propagation.csv").string(), rec);

  const long origin = box.flat_index({cfg.N / 2, cfg.N / 2, Sublattice::P1});
  FieldVector delta = FieldVector::Zero(box.dim());
  delta[origin] = 1.0;
  const DecayTrace tr = pointwise_decay(H, delta, origin, cfg.horizon, cfg.dt);
  {
    std::ofstream os(dir / "pointwise_decay.csv");
    os << "t,amplitude\n";
    for (size_t k = 0; k < tr.t.size(); ++k) os << tr.t[k] << ',' << tr.amplitude[k] << '\n';
  }
  write_json(dir / "evolve_summary.json",
             json{{"schema_version", 1},
                  {"saturated", rec.saturation_flag},
                  {"total_integral", rec.total},
                  {"early_max", tr.early_max},
                  {"late_max", tr.late_max}});
  return kExitOk;
}

int cmd_tables(const std::string& out_override, bool inject_mutation) {
  RunConfig cfg;
  const fs::path dir = out_dir_for(cfg, out_override);
  const std::string golden = std::string(HEXLAP_GOLDEN_DIR) + "/s_tables.csv";
  CoeffTable table = CoeffTable::published();
  if (inject_mutation) table.t[0][0][3][3] += 1;
  try {
    alpha_self_check(table);
    const IndexSetFamily fam = build_index_sets(table);
    const StructureReport structure = verify_structure(table, fam);
    const auto rows = verify_sum_identities(table, fam);
    write_sum_rows_csv((dir / "s_tables.csv").string(), rows);
    {
      std::ofstream os(dir / "alpha_tables.csv");
      os << "l1,l2,i,j,alpha\n";
      for (int l1 = 0; l1 < 2; ++l1)
        for (int l2 = 0; l2 < 2; ++l2)
          for (int i = -3; i <= 3; ++i)
            for (int j = -3; j <= 3; ++j)
              if (table.at(l1, l2, i, j) != 0)
                os << l1 << ',' << l2 << ',' << i << ',' << j << ','
                   << table.at(l1, l2, i, j) << '\n';
    }
    compare_with_golden(rows, golden);
    if (!structure.pass()) {
      std::cerr << "tables: structure check failed: " << structure.witness << "\n";
      return kExitVerification;
    }
  } catch (const std::exception& e) {
    std::cerr << "tables: " << e.what() << "\n";
    return kExitVerification;
  }
  return kExitOk;
}

int cmd_hypotheses(const RunConfig& cfg, const std::string& out_override) {
  const fs::path dir = out_dir_for(cfg, out_override);
  const PerturbationProfile prof = profile_from(cfg);
  const BasicReport basic = check_basic(prof, cfg.R);
  const HypothesisReport h31v = check_H3k(
      tuple_fn_site([&](const LatticeSite& s) { return prof.V_at(s); }), 1, cfg.gamma, cfg.R);
  const HypothesisReport h31e = check_H3k(
      tuple_fn_site([&](const LatticeSite& s) { return prof.eta_at(s); }), 1, cfg.gamma,
      cfg.R);
  const HypothesisReport h32 =
      check_H3k(tuple_fn_edge(prof.eps_fn()), 2, cfg.gamma, cfg.R);
  const DerivedReports derived = check_derived(
      tuple_fn_site([&](const LatticeSite& s) { return prof.V_at(s); }), 1, cfg.gamma,
      cfg.R);

  json out{{"schema_version", 1},
           {"basic_pass", basic.pass},
           {"inf_eta", basic.inf_eta},
           {"inf_eps", basic.inf_eps},
           {"H3_1_V", json::parse(hypothesis_report_json(h31v))},
           {"H3_1_eta", json::parse(hypothesis_report_json(h31e))},
           {"H3_2_eps", json::parse(hypothesis_report_json(h32))},
           {"derived_pass", derived.pass},
           {"chain_lhs", derived.chain_lhs},
           {"chain_rhs", derived.chain_rhs}};
  write_json(dir / "hypotheses.json", out);
  const bool ok =
      basic.pass && h31v.consistent && h31e.consistent && h32.consistent && derived.pass;
  return ok ? kExitOk : kExitVerification;
}

int cmd_verify_all(const std::string& out_override) {
  RunConfig cfg;
  const fs::path dir = out_dir_for(cfg, out_override);
  const auto results = run_acceptance(HEXLAP_GOLDEN_DIR);
  json arr = json::array();
  for (const auto& r : results)
    arr.push_back({{"id", r.id},
                   {"name", r.name},
                   {"pass", r.pass},
                   {"seconds", r.seconds},
                   {"detail", r.detail}});
  write_json(dir / "verify_all.json", json{{"schema_version", 1}, {"criteria", arr}});
  return all_passed(results) ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hexlap: spectral toolkit for the perturbed hexagonal-lattice Laplacian"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_override;
  int jobs = 1;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_override, "output directory (overrides config)");
  app.add_option("--jobs", jobs, "worker cap for internal parallelism");

  bool inject_mutation = false;
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues and dispersion export");
  auto* mourre = app.add_subcommand("mourre", "projected-commutator positivity reports");
  auto* lap = app.add_subcommand("lap", "weighted resolvent rho-sweeps");
  auto* evolve = app.add_subcommand("evolve", "propagation and pointwise decay");
  auto* tables = app.add_subcommand("tables", "coefficient-table suite and CSV export");
  tables->add_flag("--inject-mutation", inject_mutation,
                   "corrupt one coefficient to exercise the detectors");
  auto* hypotheses = app.add_subcommand("hypotheses", "long-range decay checkers");
  auto* verify = app.add_subcommand("verify-all", "full acceptance battery");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = parse_config(config_path);
    if (spectrum->parsed()) return cmd_spectrum(cfg, out_override);
    if (mourre->parsed()) return cmd_mourre(cfg, out_override);
    if (lap->parsed()) return cmd_lap(cfg, out_override);
    if (evolve->parsed()) return cmd_evolve(cfg, out_override);
    if (tables->parsed()) return cmd_tables(out_override, inject_mutation);
    if (hypotheses->parsed()) return cmd_hypotheses(cfg, out_override);
    if (verify->parsed()) return cmd_verify_all(out_override);
  } catch (const std::invalid_argument& e) {
    std::cerr << "{\"error\":\"config\",\"message\":\"" << e.what() << "\"}\n";
    return kExitConfig;
  } catch (const SolverStall& e) {
    std::cerr << "{\"error\":\"solver\",\"message\":\"" << e.what() << "\"}\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\":\"verification\",\"message\":\"" << e.what() << "\"}\n";
    return kExitVerification;
  }
  return kExitConfig;
}
