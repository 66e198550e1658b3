// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Each line reports the measured worst case next to the
// threshold it was checked against.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cplap/cplap.hpp"
#include "oracles.hpp"

using namespace cplap;
using fixtures::j;

namespace {

struct outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << x;
  return s.str();
}

std::string fixture(const std::string& name) { return std::string(CPLAP_FIXTURE_DIR) + "/" + name; }

std::string run_cli(const std::string& args, int& code) {
  const std::string cmd = std::string("\"") + CPLAP_CLI_PATH + "\" " + args + " 2>/dev/null";
  std::string out;
  code = -1;
  if (FILE* p = popen(cmd.c_str(), "r")) {
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
    const int status = pclose(p);
    if (WIFEXITED(status)) code = WEXITSTATUS(status);
  }
  return out;
}

double max_abs(const complex_vector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// 1. Four-node eigenvalues, through both the library and the CLI.
outcome criterion1() {
  const std::vector<complex> expected{0.0, std::sqrt(2.0), complex(1.5, std::sqrt(3.0) / 2),
                                      complex(1.5, -std::sqrt(3.0) / 2)};
  const auto s = eigenvalues(laplacian(io::load_graph(fixture("fig1.json"))));
  const double lib = oracle::multiset_distance(s.eigenvalues, expected);

  int code = 0;
  const auto doc = nlohmann::json::parse(run_cli("spectrum \"" + fixture("fig1.json") + "\"", code),
                                         nullptr, false);
  std::vector<complex> cli;
  if (!doc.is_discarded() && doc.contains("eigenvalues"))
    for (const auto& p : doc["eigenvalues"]) cli.emplace_back(p[0].get<double>(), p[1].get<double>());
  const double via_cli = oracle::multiset_distance(cli, expected);

  const bool pass = code == 0 && s.eigenvalues.size() == 4 && cli.size() == 4 && lib <= 1e-9 &&
                    via_cli <= 1e-9;
  return {pass, "library err " + fmt(lib) + ", CLI err " + fmt(via_cli) + " (tol 1e-9)"};
}

// 2. Switching witness and the switched matrix.
outcome criterion2() {
  const auto g = io::load_graph(fixture("fig1.json"));
  const auto cert = find_switching_vector(g);
  if (!cert.has_witness()) return {false, "no witness found"};
  const double zeta_err = oracle::distance_up_to_phase(
      cert.zeta().values(), {1.0, 1.0, j, std::polar(1.0, std::numbers::pi / 4)});
  const auto a1 = oracle::to_dense(apply_switching(g, cert.zeta()));
  oracle::dense want(4, std::vector<complex>(4));
  want[0][2] = 1.0;
  want[1][0] = 1.0;
  want[2][1] = 1.0;
  want[3][1] = std::sqrt(2.0);
  double a_err = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) a_err = std::max(a_err, std::abs(a1[r][c] - want[r][c]));
  return {zeta_err <= 1e-9 && a_err <= 1e-12,
          "zeta err " + fmt(zeta_err) + " (tol 1e-9), A1 err " + fmt(a_err) + " (tol 1e-12)"};
}

// 3. Balanced cycles but not essentially nonnegative.
outcome criterion3() {
  const auto g = io::load_graph(fixture("counterexample3.json"));
  const bool cycles = is_balanced_by_cycles(g);
  const auto cert = find_switching_vector(g);
  const bool criterion = hermitian_part_criterion(g);
  return {cycles && !cert.has_witness() && !criterion,
          std::string("cycles balanced ") + (cycles ? "yes" : "no") + ", switching " +
              (cert.has_witness() ? "witness" : "conflict") + ", Hermitian-part criterion " +
              (criterion ? "true" : "false")};
}

// 4. Six-node example.
outcome criterion4() {
  const auto g = io::load_graph(fixture("unbalanced6.json"));
  const auto s = eigenvalues(laplacian(g), 1e-8);
  const auto v = analyze(g);
  sim_config cfg;
  cfg.t_final = 50.0;
  cfg.dt = 0.01;
  const auto traj = simulate_ct(g, cfg, random_initial_state(g.size(), 7));
  const auto r = detect_complex_consensus(traj);
  const bool pass = s.zero_multiplicity >= 1 && v.classification == consensus_class::no_consensus &&
                    r.verdict == convergence_class::not_converged && r.final_spread > 0.01;
  return {pass, "zero multiplicity " + std::to_string(s.zero_multiplicity) + ", verdict " +
                    to_string(v.classification) + ", CT " + to_string(r.verdict) +
                    ", final spread " + fmt(r.final_spread) + " (> 1e-2)"};
}

// 5. Limit formula on random consensus graphs, CT and DT.
outcome criterion5() {
  random_graphs::rng_type rng(20240501);
  const std::size_t count = 200;
  double worst_ct = 0.0, worst_dt = 0.0;
  std::size_t failures = 0, max_steps = 0;
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t n = 2 + t % 9;  // 2..10
    const auto g = random_graphs::consensus_graph(n, rng);
    const auto v = analyze(g);
    if (v.classification != consensus_class::complex_consensus) {
      ++failures;
      continue;
    }
    const auto z0 = random_initial_state(n, 1000 + t);
    const auto pred = predict_limit(v, z0);
    const auto spec = eigenvalues(laplacian(g));
    const double lambda2 = slowest_decay_rate(spec);
    const double delta = v.max_modulus_degree;

    sim_config ct;
    ct.kappa = 1.0;
    ct.t_final = 60.0 / (ct.kappa * lambda2);
    ct.dt = std::min(0.05, max_rk4_step(ct.kappa, delta));
    ct.record_every = 1u << 30;  // first and last sample only
    const double e_ct = compare_to_prediction(simulate_ct(g, ct, z0), pred);

    // DT contraction factor on the non-consensus modes.
    sim_config dt;
    dt.mode = sim_mode::dt;
    dt.kappa = 0.9 / delta;
    double rho = 0.0;
    for (auto l : spec.eigenvalues)
      if (std::abs(l) > spec.tol_used) rho = std::max(rho, std::abs(1.0 - dt.kappa * l));
    dt.steps = static_cast<std::size_t>(std::ceil(2.0 * std::log(1e-14) / std::log(rho))) + 50;
    dt.record_every = 1u << 30;
    max_steps = std::max(max_steps, dt.steps);
    const double e_dt = compare_to_prediction(simulate_dt(g, dt, z0), pred);

    worst_ct = std::max(worst_ct, e_ct);
    worst_dt = std::max(worst_dt, e_dt);
    if (!(e_ct <= 1e-6) || !(e_dt <= 1e-6)) ++failures;
  }
  return {failures == 0, std::to_string(count - failures) + "/" + std::to_string(count) +
                             " graphs, worst CT err " + fmt(worst_ct) + ", worst DT err " +
                             fmt(worst_dt) + " (tol 1e-6), longest DT run " +
                             std::to_string(max_steps) + " steps"};
}

// 6. Three characterizations agree.
outcome criterion6() {
  const auto s = run_oracle_check(6, 500, 6);
  return {s.total == 500 && s.passed(),
          std::to_string(s.agreements) + "/" + std::to_string(s.total) + " agree, " +
              std::to_string(s.essentially_nonnegative) + " essentially nonnegative"};
}

// 7. Quadratic form of a Hermitian Laplacian equals the edge sum.
outcome criterion7() {
  random_graphs::rng_type rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_ratio = 0.0;
  bool pass = true;
  for (std::size_t t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 11;  // 2..12
    const auto g = random_graphs::hermitian_connected(n, rng);
    complex_vector z(n);
    for (auto& x : z) x = {u(rng), u(rng)};
    const auto l = laplacian(g);
    const complex q = quadratic_form(l, z);
    const double e = edge_sum_form(g, z);

    // Dense loop oracle for z* L z, independent of Eigen.
    const auto a = oracle::to_dense(g);
    complex dense_q{};
    for (std::size_t i = 0; i < n; ++i) {
      double d = 0.0;
      complex lz{};
      for (std::size_t k = 0; k < n; ++k) {
        d += std::abs(a[i][k]);
        lz -= a[i][k] * z(k);
      }
      lz += d * z(i);
      dense_q += std::conj(z(i)) * lz;
    }

    const double norm_l = Eigen::JacobiSVD<complex_matrix>(l).singularValues()(0);
    const double bound = 1e-10 * (1.0 + z.squaredNorm() * norm_l);
    const double err = std::max(std::abs(q - e), std::abs(dense_q - e));
    worst_ratio = std::max(worst_ratio, err / bound);
    if (!(err <= bound)) pass = false;
  }
  return {pass, "worst error / bound = " + fmt(worst_ratio) + " (<= 1)"};
}

// 8. Unbalanced Hermitian graphs: positive definite Laplacian, decay to zero.
outcome criterion8() {
  random_graphs::rng_type rng(88);
  double smallest = INFINITY;
  std::size_t ok = 0;
  for (std::size_t t = 0; t < 100; ++t) {
    const std::size_t n = 3 + t % 10;  // 3..12
    const auto g = random_graphs::hermitian_unbalanced(n, rng);
    const bool sc = find_roots(g).strongly_connected;
    const auto l = laplacian(g);
    const double lmin = Eigen::SelfAdjointEigenSolver<complex_matrix>(l).eigenvalues().minCoeff();
    smallest = std::min(smallest, lmin);
    sim_config cfg;
    cfg.method = ct_method::matrix_exponential;
    cfg.t_final = 60.0 / lmin;
    cfg.dt = cfg.t_final / 20.0;
    const auto traj = simulate_ct(g, cfg, random_initial_state(n, 2000 + t));
    const bool decays = detect_complex_consensus(traj).verdict == convergence_class::trivial_zero;
    if (sc && !find_switching_vector(g).has_witness() && lmin > 1e-10 &&
        is_positive_definite_hermitian(l, 1e-10) && decays)
      ++ok;
  }
  return {ok == 100, std::to_string(ok) + "/100 graphs, smallest lambda_min " + fmt(smallest) +
                         " (> 1e-10), all decayed to TRIVIAL_ZERO"};
}

// 9. Bipartite consensus on signed graphs.
outcome criterion9() {
  const auto g = io::load_graph(fixture("signed2.json"));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  complex_vector x0(2);
  x0 << u(rng), u(rng);
  const double m = (x0(0).real() - x0(1).real()) / 2.0;
  complex_vector target(2);
  target << m, -m;

  sim_config ct;
  ct.kappa = 0.4;
  ct.t_final = 50.0;
  ct.dt = 0.01;
  sim_config dt;
  dt.mode = sim_mode::dt;
  dt.kappa = 0.4;
  dt.steps = 50;
  const double e_ct = max_abs(simulate_ct(g, ct, x0).final_state() - target);
  const double e_dt = max_abs(simulate_dt(g, dt, x0).final_state() - target);
  const auto v = bipartite_analyze(g);
  const bool sigma_ok = v.zeta && v.zeta->values() == std::vector<complex>{1.0, -1.0};

  const auto tri = fixtures::signed_triangle_unbalanced();
  const bool tri_none = bipartite_analyze(tri).classification == consensus_class::no_consensus &&
                        analyze(tri).classification == consensus_class::no_consensus;
  return {e_ct <= 1e-8 && e_dt <= 1e-8 && sigma_ok && tri_none,
          "CT err " + fmt(e_ct) + ", DT err " + fmt(e_dt) + " (tol 1e-8), sigma " +
              (sigma_ok ? "[1,-1]" : "wrong") + ", signed triangle " +
              (tri_none ? "NO_CONSENSUS" : "misclassified")};
}

// 10. eta^T z is invariant along trajectories.
outcome criterion10() {
  random_graphs::rng_type rng(1010);
  double worst_ratio = 0.0;
  std::size_t samples = 0;
  std::vector<digraph> graphs{fixtures::four_agent()};
  for (std::size_t t = 0; t < 100; ++t) graphs.push_back(random_graphs::consensus_graph(2 + t % 9, rng));
  for (std::size_t t = 0; t < graphs.size(); ++t) {
    const auto& g = graphs[t];
    const auto v = analyze(g);
    if (!v.eta) return {false, "graph " + std::to_string(t) + " not classified as consensus"};
    const auto z0 = random_initial_state(g.size(), 3000 + t);
    const complex c0 = v.eta->transpose() * z0;
    sim_config ct;
    ct.method = ct_method::matrix_exponential;
    ct.t_final = 20.0;
    ct.dt = 0.5;
    sim_config dt;
    dt.mode = sim_mode::dt;
    dt.kappa = 0.9 * v.dt_gain_bound;
    dt.steps = 200;
    for (const auto& traj : {simulate_ct(g, ct, z0), simulate_dt(g, dt, z0)})
      for (const auto& z : traj.states) {
        const complex c = v.eta->transpose() * z;
        worst_ratio = std::max(worst_ratio, std::abs(c - c0) / (1e-9 * (1.0 + std::abs(c0))));
        ++samples;
      }
  }
  return {worst_ratio <= 1.0, std::to_string(samples) + " samples on " +
                                  std::to_string(graphs.size()) +
                                  " graphs, worst drift / bound = " + fmt(worst_ratio) + " (<= 1)"};
}

}  // namespace

int main() {
  const std::vector<std::function<outcome()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7, criterion8,
                                                       criterion9, criterion10};
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    outcome o;
    try {
      o = criteria[k]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k + 1 << ": " << o.detail << '\n';
    if (!o.pass) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed ? 1 : 0;
}
