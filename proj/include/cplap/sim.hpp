#ifndef CPLAP_SIM_HPP
#define CPLAP_SIM_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "cplap/consensus.hpp"
#include "cplap/error.hpp"
#include "cplap/graph.hpp"
#include "cplap/spectral.hpp"

namespace cplap {

enum class sim_mode { ct, dt };
enum class ct_method { rk4, matrix_exponential };

struct sim_config {
  sim_mode mode = sim_mode::ct;
  double kappa = 1.0;
  double t_final = 40.0;    // CT horizon
  double dt = 0.01;         // CT step (RK4) or sample spacing (matrix exponential)
  std::size_t steps = 200;  // DT iterations
  ct_method method = ct_method::rk4;
  std::size_t record_every = 1;  // keep every k-th step; the final state is always kept
  std::uint64_t seed = 0;
};

struct trajectory {
  std::vector<double> times;
  std::vector<complex_vector> states;
  sim_config config;
  std::vector<std::string> warnings;

  const complex_vector& final_state() const { return states.back(); }
};

/// Initial state uniform on the box [-1, 1] x [-1, 1] in each coordinate.
inline complex_vector random_initial_state(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  complex_vector z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double re = u(rng);
    const double im = u(rng);
    z(i) = {re, im};
  }
  return z;
}

/// exp(a) by scaling and squaring with the degree-13 Pade approximant.
inline complex_matrix matrix_exponential(const complex_matrix& a) {
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
      129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
      1323241920.0,        40840800.0,          960960.0,           16380.0,
      182.0,               1.0};
  static constexpr double theta13 = 5.371920351148152;
  const auto n = a.rows();
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / theta13))));
  const complex_matrix x = a / std::ldexp(1.0, squarings);
  const complex_matrix id = complex_matrix::Identity(n, n);
  const complex_matrix x2 = x * x;
  const complex_matrix x4 = x2 * x2;
  const complex_matrix x6 = x4 * x2;
  const complex_matrix u_inner = x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2) + b[7] * x6 +
                                 b[5] * x4 + b[3] * x2 + b[1] * id;
  const complex_matrix u = x * u_inner;
  const complex_matrix v =
      x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2) + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;
  complex_matrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

namespace detail {

inline void check_state(const digraph& g, const complex_vector& z0) {
  if (static_cast<std::size_t>(z0.size()) != g.size())
    throw error(errc::dimension_mismatch, "initial state has length " + std::to_string(z0.size()) +
                                              ", graph has " + std::to_string(g.size()) +
                                              " vertices");
}

inline void check_common(const sim_config& cfg) {
  if (!(cfg.kappa >= 0.0) || !std::isfinite(cfg.kappa))
    throw error(errc::invalid_config, "kappa must be a finite nonnegative number");
  if (cfg.record_every == 0) throw error(errc::invalid_config, "record_every must be positive");
}

}  // namespace detail

/// Largest RK4 step accepted for gain kappa on a graph of maximum modulus
/// degree delta.
inline double max_rk4_step(double kappa, double delta) {
  return kappa * delta > 0.0 ? 0.5 / (kappa * delta) : std::numeric_limits<double>::infinity();
}

/// Integrates z' = -kappa L z on [0, t_final].
inline trajectory simulate_ct(const digraph& g, const sim_config& cfg, const complex_vector& z0) {
  if (cfg.mode != sim_mode::ct) throw error(errc::invalid_config, "simulate_ct needs CT mode");
  detail::check_common(cfg);
  detail::check_state(g, z0);
  if (!(cfg.dt > 0.0) || !(cfg.t_final >= 0.0))
    throw error(errc::invalid_config, "dt must be positive and t_final nonnegative");

  const complex_matrix l = laplacian(g);
  const complex_matrix a = -cfg.kappa * l;
  trajectory traj;
  traj.config = cfg;
  traj.times.push_back(0.0);
  traj.states.push_back(z0);

  // Uniform grid: the smallest step count whose step does not exceed dt.
  const auto count = static_cast<std::size_t>(std::max(0.0, std::ceil(cfg.t_final / cfg.dt - 1e-9)));
  const double h = count ? cfg.t_final / static_cast<double>(count) : 0.0;

  if (cfg.method == ct_method::rk4) {
    const double limit = max_rk4_step(cfg.kappa, max_modulus_degree(g));
    if (cfg.dt > limit)
      throw error(errc::step_size_too_large, "dt = " + std::to_string(cfg.dt) +
                                                 " exceeds 0.5/(kappa*Delta) = " +
                                                 std::to_string(limit));
    complex_vector z = z0;
    for (std::size_t k = 1; k <= count; ++k) {
      const complex_vector k1 = a * z;
      const complex_vector k2 = a * (z + 0.5 * h * k1);
      const complex_vector k3 = a * (z + 0.5 * h * k2);
      const complex_vector k4 = a * (z + h * k3);
      z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (k % cfg.record_every == 0 || k == count) {
        traj.times.push_back(static_cast<double>(k) * h);
        traj.states.push_back(z);
      }
    }
  } else {
    for (std::size_t k = cfg.record_every; ; k += cfg.record_every) {
      const std::size_t kk = std::min(k, count);
      if (kk == 0) break;
      const double t = static_cast<double>(kk) * h;
      traj.times.push_back(t);
      traj.states.push_back(matrix_exponential(a * t) * z0);
      if (kk == count) break;
    }
  }
  return traj;
}

/// Iterates z(k+1) = z(k) - kappa L z(k) for k = 0..steps-1. A gain at or
/// above 1/Delta is accepted with a warning.
inline trajectory simulate_dt(const digraph& g, const sim_config& cfg, const complex_vector& z0) {
  if (cfg.mode != sim_mode::dt) throw error(errc::invalid_config, "simulate_dt needs DT mode");
  detail::check_common(cfg);
  detail::check_state(g, z0);
  const complex_matrix l = laplacian(g);
  const double delta = max_modulus_degree(g);
  trajectory traj;
  traj.config = cfg;
  if (delta > 0.0 && cfg.kappa >= 1.0 / delta)
    traj.warnings.push_back("kappa = " + std::to_string(cfg.kappa) + " is not below 1/Delta = " +
                            std::to_string(1.0 / delta) + "; the iteration may diverge");
  traj.times.push_back(0.0);
  traj.states.push_back(z0);
  complex_vector z = z0;
  for (std::size_t k = 1; k <= cfg.steps; ++k) {
    z -= cfg.kappa * (l * z);
    if (k % cfg.record_every == 0 || k == cfg.steps) {
      traj.times.push_back(static_cast<double>(k));
      traj.states.push_back(z);
    }
  }
  return traj;
}

enum class convergence_class { complex_consensus, trivial_zero, not_converged };

inline const char* to_string(convergence_class c) {
  switch (c) {
    case convergence_class::complex_consensus: return "COMPLEX_CONSENSUS";
    case convergence_class::trivial_zero: return "TRIVIAL_ZERO";
    case convergence_class::not_converged: return "NOT_CONVERGED";
  }
  return "UNKNOWN";
}

struct convergence_report {
  convergence_class verdict = convergence_class::not_converged;
  double spread = 0.0;   // max over the window of (max_i |z_i| - min_i |z_i|)
  double drift = 0.0;    // max inf-norm change between consecutive window samples
  double modulus = 0.0;  // mean |z_i| at the final sample
  double final_spread = 0.0;
};

/// Finite-horizon check of |z_i| -> a > 0 over the trailing `window` samples.
inline convergence_report detect_complex_consensus(const trajectory& traj, double tol = 1e-8,
                                                   std::size_t window = 10) {
  if (window == 0 || window > traj.states.size())
    throw error(errc::window_too_large, "window of " + std::to_string(window) +
                                            " samples, trajectory has " +
                                            std::to_string(traj.states.size()));
  convergence_report r;
  const std::size_t first = traj.states.size() - window;
  bool all_small = true;
  for (std::size_t k = first; k < traj.states.size(); ++k) {
    const Eigen::VectorXd mod = traj.states[k].cwiseAbs();
    const double s = mod.size() ? mod.maxCoeff() - mod.minCoeff() : 0.0;
    r.spread = std::max(r.spread, s);
    if (mod.size() && mod.maxCoeff() > tol) all_small = false;
    if (k > first)
      r.drift = std::max(r.drift, (traj.states[k] - traj.states[k - 1]).cwiseAbs().maxCoeff());
  }
  const Eigen::VectorXd last = traj.final_state().cwiseAbs();
  r.modulus = last.size() ? last.mean() : 0.0;
  r.final_spread = last.size() ? last.maxCoeff() - last.minCoeff() : 0.0;
  if (all_small)
    r.verdict = convergence_class::trivial_zero;
  else if (r.spread <= tol && r.drift <= tol && r.modulus > tol)
    r.verdict = convergence_class::complex_consensus;
  else
    r.verdict = convergence_class::not_converged;
  return r;
}

/// Infinity-norm distance between the final state and the predicted limit.
inline double compare_to_prediction(const trajectory& traj, const limit_prediction& pred) {
  const auto& z = traj.final_state();
  if (z.size() != pred.limit_vector.size())
    throw error(errc::dimension_mismatch, "prediction and trajectory differ in length");
  return z.size() ? (z - pred.limit_vector).cwiseAbs().maxCoeff() : 0.0;
}

namespace detail {

inline void put_number(std::ostream& os, double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  os.write(buf.data(), res.ptr - buf.data());
}

}  // namespace detail

/// "t,re_z1,im_z1,...,re_zn,im_zn", one row per sample, shortest round-trip
/// decimal for every value.
inline void write_trajectory_csv(std::ostream& os, const trajectory& traj) {
  const auto n = traj.states.empty() ? 0 : traj.states.front().size();
  os << 't';
  for (Eigen::Index i = 1; i <= n; ++i) os << ",re_z" << i << ",im_z" << i;
  os << '\n';
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    detail::put_number(os, traj.times[k]);
    for (Eigen::Index i = 0; i < n; ++i) {
      os << ',';
      detail::put_number(os, traj.states[k](i).real());
      os << ',';
      detail::put_number(os, traj.states[k](i).imag());
    }
    os << '\n';
  }
}

/// "t,abs_z1,...,abs_zn".
inline void write_moduli_csv(std::ostream& os, const trajectory& traj) {
  const auto n = traj.states.empty() ? 0 : traj.states.front().size();
  os << 't';
  for (Eigen::Index i = 1; i <= n; ++i) os << ",abs_z" << i;
  os << '\n';
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    detail::put_number(os, traj.times[k]);
    for (Eigen::Index i = 0; i < n; ++i) {
      os << ',';
      detail::put_number(os, std::abs(traj.states[k](i)));
    }
    os << '\n';
  }
}

}  // namespace cplap

#endif  // CPLAP_SIM_HPP
