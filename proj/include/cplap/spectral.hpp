#ifndef CPLAP_SPECTRAL_HPP
#define CPLAP_SPECTRAL_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cplap/balance.hpp"
#include "cplap/error.hpp"
#include "cplap/graph.hpp"

namespace cplap {

using complex_matrix = Eigen::MatrixXcd;
using complex_vector = Eigen::VectorXcd;

inline constexpr double machine_epsilon = std::numeric_limits<double>::epsilon();

/// Max absolute row sum.
inline double inf_norm(const complex_matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

/// Modulus degree d_i = sum_j |a_ij|.
inline std::vector<double> modulus_degrees(const digraph& g) {
  std::vector<double> d(g.size(), 0.0);
  for (const auto& e : g.entries()) d[e.row] += std::abs(e.weight);
  return d;
}

/// Complex Laplacian L = D - A with D the modulus degree matrix.
inline complex_matrix laplacian(const digraph& g) {
  const std::size_t n = g.size();
  complex_matrix m = complex_matrix::Zero(n, n);
  const auto d = modulus_degrees(g);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = d[i];
  for (const auto& e : g.entries()) m(e.row, e.col) = -e.weight;
  return m;
}

/// Maximum modulus degree; its reciprocal bounds the DT gain.
inline double max_modulus_degree(const digraph& g) {
  const auto d = modulus_degrees(g);
  return *std::max_element(d.begin(), d.end());
}

struct spectrum {
  std::vector<complex> eigenvalues;  // sorted by (re, im)
  std::size_t zero_multiplicity = 0;
  double tol_used = 0.0;
};

/// Zero-eigenvalue threshold: the caller's tolerance, raised to the backward
/// error floor n * eps * ||m||_inf.
inline double zero_threshold(const complex_matrix& m, double tol) {
  return std::max(tol, static_cast<double>(m.rows()) * machine_epsilon * inf_norm(m));
}

/// All eigenvalues of a dense complex matrix (Hessenberg reduction followed by
/// shifted QR to Schur form).
inline spectrum eigenvalues(const complex_matrix& m, double tol = 1e-9) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw error(errc::dimension_mismatch, "eigenvalues need a nonempty square matrix");
  Eigen::ComplexEigenSolver<complex_matrix> solver(m, false);
  if (solver.info() != Eigen::Success)
    throw error(errc::convergence_failure, "QR iteration did not converge");
  spectrum s;
  const auto& ev = solver.eigenvalues();
  s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), [](complex a, complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  s.tol_used = zero_threshold(m, tol);
  s.zero_multiplicity = static_cast<std::size_t>(
      std::count_if(s.eigenvalues.begin(), s.eigenvalues.end(),
                    [&](complex l) { return std::abs(l) <= s.tol_used; }));
  return s;
}

namespace detail {

inline void require_simple_zero(const complex_matrix& m, double tol) {
  const auto s = eigenvalues(m, tol);
  if (s.zero_multiplicity != 1)
    throw error(errc::zero_not_simple,
                "zero has multiplicity " + std::to_string(s.zero_multiplicity) + " (threshold " +
                    std::to_string(s.tol_used) + ")");
}

/// Unit right singular vector for the smallest singular value.
inline complex_vector smallest_singular_direction(const complex_matrix& m) {
  Eigen::JacobiSVD<complex_matrix> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().col(m.cols() - 1);
}

}  // namespace detail

/// Unit-norm v with m v = 0, phase fixed so its largest-modulus entry is real
/// positive. Requires a simple zero eigenvalue.
inline complex_vector right_null_vector(const complex_matrix& m, double tol = 1e-9) {
  detail::require_simple_zero(m, tol);
  complex_vector v = detail::smallest_singular_direction(m);
  Eigen::Index k;
  v.cwiseAbs().maxCoeff(&k);
  v *= std::conj(phase_of(v(k)));
  const double scale = std::max(1.0, inf_norm(m));
  if ((m * v).norm() > std::max(tol, zero_threshold(m, tol)) * scale)
    throw error(errc::convergence_failure, "null vector residual above tolerance");
  return v;
}

/// Left null vector eta (eta^T m = 0, plain transpose) with ||eta||_1 = 1 and
/// D_zeta eta real nonnegative.
///
/// The raw null vector of m^T is rotated so that zeta o eta points along the
/// nonnegative reals; entries that cannot be brought there within tol (relative
/// to the largest entry) raise phase_alignment_failure.
inline complex_vector left_null_vector_eta(const complex_matrix& m, const switching_vector& zeta,
                                           double tol = 1e-9) {
  const auto n = m.rows();
  if (static_cast<std::size_t>(n) != zeta.size())
    throw error(errc::dimension_mismatch, "switching vector length differs from matrix order");
  const complex_matrix mt = m.transpose();
  detail::require_simple_zero(mt, tol);
  complex_vector eta = detail::smallest_singular_direction(mt);

  complex_vector nu(n);
  for (Eigen::Index i = 0; i < n; ++i) nu(i) = zeta[i] * eta(i);
  Eigen::Index k;
  const double largest = nu.cwiseAbs().maxCoeff(&k);
  nu *= std::conj(phase_of(nu(k)));
  const double align_tol = std::max(tol, 1e-8) * largest;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(nu(i).imag()) > align_tol || nu(i).real() < -align_tol)
      throw error(errc::phase_alignment_failure,
                  "entry " + std::to_string(i + 1) + " of D_zeta eta is not a nonnegative real");
    nu(i) = std::max(nu(i).real(), 0.0);
  }
  nu /= nu.cwiseAbs().sum();
  for (Eigen::Index i = 0; i < n; ++i) eta(i) = std::conj(zeta[i]) * nu(i);

  const double scale = std::max(1.0, inf_norm(m));
  if ((mt * eta).norm() > std::max(tol, zero_threshold(m, tol)) * scale)
    throw error(errc::phase_alignment_failure, "aligned left null vector has large residual");
  return eta;
}

/// z* m z.
inline complex quadratic_form(const complex_matrix& m, const complex_vector& z) {
  if (z.size() != m.rows()) throw error(errc::dimension_mismatch, "vector length differs from matrix order");
  return z.dot(m * z);  // Eigen's dot conjugates the left operand
}

/// (1/2) sum over edges j -> i of |a_ij| |z_i - phi(a_ij) z_j|^2. Equals
/// z* L z when A is Hermitian.
inline double edge_sum_form(const digraph& g, const complex_vector& z) {
  if (static_cast<std::size_t>(z.size()) != g.size())
    throw error(errc::dimension_mismatch, "vector length differs from vertex count");
  double sum = 0.0;
  for (const auto& e : g.entries())
    sum += std::abs(e.weight) * std::norm(z(e.row) - phase_of(e.weight) * z(e.col));
  return 0.5 * sum;
}

/// Smallest eigenvalue of a Hermitian matrix exceeds tol.
inline bool is_positive_definite_hermitian(const complex_matrix& m, double tol = 1e-9) {
  if (m.rows() != m.cols()) throw error(errc::dimension_mismatch, "matrix is not square");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol * std::max(1.0, inf_norm(m)))
    throw error(errc::not_hermitian, "matrix is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<complex_matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw error(errc::convergence_failure, "Hermitian eigensolver did not converge");
  return solver.eigenvalues().minCoeff() > tol;
}

/// Smallest real part among eigenvalues outside the zero threshold; the
/// asymptotic decay rate of -L dynamics transverse to the null space.
inline double slowest_decay_rate(const spectrum& s) {
  double rate = std::numeric_limits<double>::infinity();
  for (complex l : s.eigenvalues)
    if (std::abs(l) > s.tol_used) rate = std::min(rate, l.real());
  return rate;
}

}  // namespace cplap

#endif  // CPLAP_SPECTRAL_HPP
