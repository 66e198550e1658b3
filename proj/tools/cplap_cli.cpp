// cplap: command-line front end for complex-Laplacian analysis and
// consensus simulation.
//
// Exit codes: 0 success (analyze: complex consensus), 1 I/O or parse error,
// 2 invalid configuration, 3 analyze found no consensus, 4 oracle-check
// disagreement.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "cplap/cplap.hpp"

namespace {

using cplap::io::json;

constexpr int exit_ok = 0;
constexpr int exit_parse = 1;
constexpr int exit_config = 2;
constexpr int exit_no_consensus = 3;
constexpr int exit_disagreement = 4;

void print(const json& doc) { std::cout << doc.dump(2) << '\n'; }

int exit_code_for(cplap::errc code) {
  switch (code) {
    case cplap::errc::parse_error:
    case cplap::errc::self_loop:
    case cplap::errc::duplicate_entry:
    case cplap::errc::index_out_of_range:
    case cplap::errc::zero_weight:
    case cplap::errc::non_finite_weight:
      return exit_parse;
    default:
      return exit_config;
  }
}

struct analyze_opts {
  std::string path;
  double tol = cplap::default_phase_tol;
  bool signed_graph = false;
};

int cmd_analyze(const analyze_opts& o) {
  const auto g = cplap::io::load_graph(o.path);
  const auto v = o.signed_graph ? cplap::bipartite_analyze(g, o.tol) : cplap::analyze(g, o.tol);
  print(cplap::io::verdict_to_json(v));
  return v.classification == cplap::consensus_class::complex_consensus ? exit_ok
                                                                       : exit_no_consensus;
}

struct spectrum_opts {
  std::string path;
  double tol = 1e-9;
};

int cmd_spectrum(const spectrum_opts& o) {
  const auto g = cplap::io::load_graph(o.path);
  print(cplap::io::spectrum_to_json(cplap::eigenvalues(cplap::laplacian(g), o.tol)));
  return exit_ok;
}

int cmd_balance(const analyze_opts& o) {
  const auto g = cplap::io::load_graph(o.path);
  json out;
  out["certificate"] = cplap::io::certificate_to_json(cplap::find_switching_vector(g, o.tol));
  out["reciprocal_products_positive"] = cplap::check_reciprocal_products(g, o.tol);
  if (g.size() <= cplap::cycle_oracle_limit) {
    out["balanced_by_cycles"] = cplap::is_balanced_by_cycles(g, o.tol);
    out["hermitian_part_balanced"] = cplap::is_balanced_by_cycles(cplap::hermitian_part(g), o.tol);
    out["hermitian_part_criterion"] = cplap::hermitian_part_criterion(g, o.tol);
  } else {
    out["balanced_by_cycles"] = nullptr;
    out["hermitian_part_balanced"] = nullptr;
    out["hermitian_part_criterion"] = nullptr;
  }
  print(out);
  return exit_ok;
}

struct simulate_opts {
  std::string path;
  std::string mode = "ct";
  std::string method = "rk4";
  std::optional<double> kappa;
  double t_final = 40.0;
  std::optional<double> dt;
  std::size_t steps = 200;
  std::size_t record_every = 1;
  std::string z0 = "random";
  std::uint64_t seed = 0;
  std::string out;
  double tol = 1e-8;
  std::optional<std::size_t> window;  // default: 10, clamped to the trajectory
};

void write_csvs(const std::string& prefix, const cplap::trajectory& traj) {
  const auto parent = std::filesystem::path(prefix).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream states(prefix + ".csv", std::ios::binary);
  std::ofstream moduli(prefix + "_moduli.csv", std::ios::binary);
  if (!states || !moduli) throw cplap::error(cplap::errc::parse_error, "cannot write " + prefix + "*.csv");
  cplap::write_trajectory_csv(states, traj);
  cplap::write_moduli_csv(moduli, traj);
}

int cmd_simulate(const simulate_opts& o) {
  const auto g = cplap::io::load_graph(o.path);
  const double delta = cplap::max_modulus_degree(g);

  cplap::sim_config cfg;
  if (o.mode == "ct") {
    cfg.mode = cplap::sim_mode::ct;
    cfg.kappa = o.kappa.value_or(1.0);
  } else if (o.mode == "dt") {
    cfg.mode = cplap::sim_mode::dt;
    cfg.kappa = o.kappa.value_or(delta > 0.0 ? 0.9 / delta : 1.0);
  } else {
    throw cplap::error(cplap::errc::invalid_config, "--mode must be ct or dt");
  }
  if (!(cfg.kappa > 0.0)) throw cplap::error(cplap::errc::invalid_config, "--kappa must be positive");
  if (o.method == "rk4") {
    cfg.method = cplap::ct_method::rk4;
  } else if (o.method == "expm") {
    cfg.method = cplap::ct_method::matrix_exponential;
  } else {
    throw cplap::error(cplap::errc::invalid_config, "--method must be rk4 or expm");
  }
  cfg.t_final = o.t_final;
  cfg.dt = o.dt.value_or(std::min(0.01, cplap::max_rk4_step(cfg.kappa, delta)));
  cfg.steps = o.steps;
  cfg.record_every = o.record_every;
  cfg.seed = o.seed;

  cplap::complex_vector z0;
  if (o.z0 == "random") {
    z0 = cplap::random_initial_state(g.size(), o.seed);
  } else {
    const auto doc = json::parse(cplap::io::read_file(o.z0), nullptr, false);
    if (doc.is_discarded()) throw cplap::error(cplap::errc::parse_error, "malformed z0 JSON");
    z0 = cplap::io::state_from_json(doc);
  }

  const auto traj = cfg.mode == cplap::sim_mode::ct ? cplap::simulate_ct(g, cfg, z0)
                                                    : cplap::simulate_dt(g, cfg, z0);
  for (const auto& w : traj.warnings) std::cerr << "warning: " << w << '\n';
  if (!o.out.empty()) write_csvs(o.out, traj);

  json report;
  report["mode"] = o.mode;
  if (cfg.mode == cplap::sim_mode::ct) {
    report["method"] = o.method;
    report["t_final"] = cfg.t_final;
    report["dt"] = cfg.dt;
  } else {
    report["steps"] = cfg.steps;
  }
  report["kappa"] = cfg.kappa;
  report["samples"] = traj.states.size();
  report["z0"] = cplap::io::vector_to_json(z0);
  report["final_state"] = cplap::io::vector_to_json(traj.final_state());
  const std::size_t window = o.window.value_or(std::min<std::size_t>(10, traj.states.size()));
  report["detection"] = cplap::io::convergence_to_json(cplap::detect_complex_consensus(traj, o.tol, window));
  report["warnings"] = traj.warnings;

  const auto verdict = cplap::analyze(g);
  report["classification"] = cplap::to_string(verdict.classification);
  if (verdict.classification == cplap::consensus_class::complex_consensus) {
    const auto pred = cplap::predict_limit(verdict, z0);
    report["prediction"] = {{"limit", cplap::io::vector_to_json(pred.limit_vector)},
                            {"consensus_modulus", pred.consensus_modulus},
                            {"degenerate", pred.degenerate}};
    report["prediction_error"] = cplap::compare_to_prediction(traj, pred);
  } else {
    report["prediction"] = nullptr;
    report["prediction_error"] = nullptr;
  }
  print(report);
  return exit_ok;
}

struct oracle_opts {
  std::size_t n = 6;
  std::size_t count = 500;
  std::uint64_t seed = 1;
};

int cmd_oracle_check(const oracle_opts& o) {
  const auto s = cplap::run_oracle_check(o.n, o.count, o.seed);
  json out;
  out["total"] = s.total;
  out["agreements"] = s.agreements;
  out["essentially_nonnegative"] = s.essentially_nonnegative;
  out["disagreeing_instances"] = s.disagreeing_instances;
  out["summary"] = std::to_string(s.agreements) + "/" + std::to_string(s.total) + " agree";
  print(out);
  return s.passed() ? exit_ok : exit_disagreement;
}

struct repro_opts {
  std::string out;
  std::uint64_t seed = 7;
};

json describe_fixture(const cplap::digraph& g, const std::string& name, const repro_opts& o) {
  json d;
  d["graph"] = cplap::io::graph_to_json(g);
  d["verdict"] = cplap::io::verdict_to_json(cplap::analyze(g));
  d["spectrum"] = cplap::io::spectrum_to_json(cplap::eigenvalues(cplap::laplacian(g)));
  d["balanced_by_cycles"] = cplap::is_balanced_by_cycles(g);
  d["hermitian_part_criterion"] = cplap::hermitian_part_criterion(g);
  const auto cert = cplap::find_switching_vector(g);
  if (cert.has_witness())
    d["switched"] = cplap::io::graph_to_json(cplap::apply_switching(g, cert.zeta()));

  cplap::sim_config cfg;
  cfg.t_final = 50.0;
  cfg.dt = std::min(0.01, cplap::max_rk4_step(1.0, cplap::max_modulus_degree(g)));
  const auto traj = cplap::simulate_ct(g, cfg, cplap::random_initial_state(g.size(), o.seed));
  d["ct_detection"] = cplap::io::convergence_to_json(cplap::detect_complex_consensus(traj));
  if (!o.out.empty()) write_csvs((std::filesystem::path(o.out) / name).string(), traj);
  return d;
}

int cmd_repro(const repro_opts& o) {
  json out;
  out["four_agent"] = describe_fixture(cplap::fixtures::four_agent(), "four_agent", o);
  out["counterexample3"] = describe_fixture(cplap::fixtures::counterexample3(), "counterexample3", o);
  out["unbalanced6"] = describe_fixture(cplap::fixtures::unbalanced6(), "unbalanced6", o);
  out["signed2"] = describe_fixture(cplap::fixtures::signed2(), "signed2", o);
  print(out);
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complex Laplacian analysis and consensus simulation"};
  app.require_subcommand(1);

  analyze_opts analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Consensus verdict for a graph (JSON)");
  analyze_cmd->add_option("path", analyze.path, "Graph file (JSON or edge list)")->required();
  analyze_cmd->add_option("--tol", analyze.tol, "Relative phase tolerance");
  analyze_cmd->add_flag("--signed", analyze.signed_graph, "Real signed graph: use a +-1 gauge");

  spectrum_opts spectrum;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Eigenvalues of the complex Laplacian");
  spectrum_cmd->add_option("path", spectrum.path, "Graph file")->required();
  spectrum_cmd->add_option("--tol", spectrum.tol, "Zero-eigenvalue tolerance");

  analyze_opts balance;
  auto* balance_cmd = app.add_subcommand("balance", "Switching certificate and cycle criteria");
  balance_cmd->add_option("path", balance.path, "Graph file")->required();
  balance_cmd->add_option("--tol", balance.tol, "Relative phase tolerance");

  simulate_opts sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate CT or DT consensus dynamics");
  sim_cmd->add_option("path", sim.path, "Graph file")->required();
  sim_cmd->add_option("--mode", sim.mode, "ct or dt")->check(CLI::IsMember({"ct", "dt"}));
  sim_cmd->add_option("--method", sim.method, "CT integrator: rk4 or expm")
      ->check(CLI::IsMember({"rk4", "expm"}));
  sim_cmd->add_option("--kappa", sim.kappa, "Gain (default 1 for CT, 0.9/Delta for DT)");
  sim_cmd->add_option("--t-final", sim.t_final, "CT horizon");
  sim_cmd->add_option("--dt", sim.dt, "CT step or sample spacing");
  sim_cmd->add_option("--steps", sim.steps, "DT iterations");
  sim_cmd->add_option("--record-every", sim.record_every, "Keep every k-th step");
  sim_cmd->add_option("--z0", sim.z0, "Initial state JSON file, or 'random'");
  sim_cmd->add_option("--seed", sim.seed, "Seed for the random initial state");
  sim_cmd->add_option("--out", sim.out, "Write PREFIX.csv and PREFIX_moduli.csv");
  sim_cmd->add_option("--tol", sim.tol, "Convergence detection tolerance");
  sim_cmd->add_option("--window", sim.window, "Convergence detection window (samples)");

  oracle_opts oracle;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "Cross-check balance criteria on random graphs");
  oracle_cmd->add_option("--n", oracle.n, "Largest vertex count");
  oracle_cmd->add_option("--count", oracle.count, "Number of random graphs");
  oracle_cmd->add_option("--seed", oracle.seed, "Random seed");

  repro_opts repro;
  auto* repro_cmd = app.add_subcommand("repro", "Analyze and simulate the bundled example graphs");
  repro_cmd->add_option("--out", repro.out, "Directory for trajectory CSVs");
  repro_cmd->add_option("--seed", repro.seed, "Seed for the random initial states");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(analyze);
    if (*spectrum_cmd) return cmd_spectrum(spectrum);
    if (*balance_cmd) return cmd_balance(balance);
    if (*sim_cmd) return cmd_simulate(sim);
    if (*oracle_cmd) return cmd_oracle_check(oracle);
    if (*repro_cmd) return cmd_repro(repro);
  } catch (const cplap::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_parse;
  }
  return exit_config;
}
