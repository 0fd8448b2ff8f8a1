#pragma once

#include <array>
#include <vector>

#include "cogcap/channel.hpp"
#include "cogcap/rates_low.hpp"

namespace cogcap {

// Row-major 2x2 real matrix; everything the genie construction needs is done
// in closed form.
struct Mat2 {
  double m00 = 0.0, m01 = 0.0, m10 = 0.0, m11 = 0.0;

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 diag(double d0, double d1) { return {d0, 0.0, 0.0, d1}; }
  static Mat2 outer(std::array<double, 2> u) { return {u[0] * u[0], u[0] * u[1], u[1] * u[0], u[1] * u[1]}; }

  [[nodiscard]] double det() const { return m00 * m11 - m01 * m10; }
  [[nodiscard]] double trace() const { return m00 + m11; }
  [[nodiscard]] Mat2 transpose() const { return {m00, m10, m01, m11}; }
  // Explicit adjugate inverse. Throws SingularMatrix when the 1-norm
  // condition number exceeds 1e12.
  [[nodiscard]] Mat2 inverse() const;
  [[nodiscard]] double condition() const;
  // Eigenvalues of the symmetric part, ascending.
  [[nodiscard]] std::array<double, 2> sym_eigenvalues() const;
  [[nodiscard]] double max_abs_diff(const Mat2& o) const;

  friend Mat2 operator+(const Mat2& x, const Mat2& y);
  friend Mat2 operator-(const Mat2& x, const Mat2& y);
  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  friend Mat2 operator*(double s, const Mat2& x);
};

inline constexpr double kConditionGuard = 1e12;
inline constexpr double kPsdTol = 1e-12;

// Two-antenna genie channel
//   Y_p = [[1, a], [1, 0]] X + Z_p,   Y_s = [[eps, 1], [0, 1]] X + Z_s,
// with Z ~ N(0, diag(1, M)) at both receivers.
struct AlignedChannel {
  double a = 0.0;
  double eps = 1e-6;
  double big_m = 1e6;

  static AlignedChannel make(double a, double eps, double big_m);

  [[nodiscard]] Mat2 hp() const { return {1.0, a, 1.0, 0.0}; }
  [[nodiscard]] Mat2 hs() const { return {eps, 1.0, 0.0, 1.0}; }
  [[nodiscard]] Mat2 sigma_z() const { return Mat2::diag(1.0, big_m); }
};

// Per-user covariances with the per-antenna constraints met with equality:
//   Sigma_p = [[beta Pp, k_p], [k_p, alpha Pc]]
//   Sigma_c = [[(1-beta) Pp, k_c], [k_c, (1-alpha) Pc]]
struct CovariancePair {
  double beta = 1.0;
  double alpha = 0.0;
  double k_p = 0.0;
  double k_c = 0.0;
  double pp = 1.0;
  double pc = 1.0;

  // Throws NonPSD if k_p or k_c leave their boxes.
  static CovariancePair make(double beta, double alpha, double k_p, double k_c, double pp, double pc);
  // beta = 1, k_p = sqrt(alpha Pp Pc), k_c = 0.
  static CovariancePair optimal(double alpha, double pp, double pc);

  [[nodiscard]] Mat2 sigma_p() const { return {beta * pp, k_p, k_p, alpha * pc}; }
  [[nodiscard]] Mat2 sigma_c() const { return {(1.0 - beta) * pp, k_c, k_c, (1.0 - alpha) * pc}; }
  void validate() const;
};

// Signature vectors whose outer products give the optimal covariances.
std::array<double, 2> optimal_primary_signature(double alpha, double pp, double pc);
std::array<double, 2> optimal_cognitive_signature(double alpha, double pc);

// Costa-precoded rates of the aligned channel:
//   R_p = 0.5 ln det(I + (I + Sz^-1 Hp Sc Hp^T)^-1 Sz^-1 Hp Sp Hp^T)
//   R_c = 0.5 ln det(I + Sz^-1 Hs Sc Hs^T)
RatePair adbc_rates(const AlignedChannel& ach, const CovariancePair& cov);

struct LimitMatrices {
  Mat2 cognitive_at_secondary;  // lim Sz^-1 Hs Sc Hs^T
  Mat2 interference_inverse;    // lim (I + Sz^-1 Hp Sc Hp^T)^-1
  Mat2 primary_at_primary;      // lim Sz^-1 Hp Sp Hp^T
};

// Analytic eps -> 0, M -> infinity limits, derived by direct 2x2 inversion.
LimitMatrices limit_covariance_terms(double a, const CovariancePair& cov);

// The interference-inverse limit with the off-diagonal numerator exactly as
// originally typeset, -(1-beta) Pc - a k_c. Kept for the discrepancy report.
Mat2 interference_inverse_printed(double a, const CovariancePair& cov);

// Limiting rates; R_c does not depend on beta.
RatePair limit_rates(const StandardChannel& ch, const CovariancePair& cov);

struct SweepRow {
  double eps = 0.0;
  double big_m = 0.0;
  RatePair rates;
  RatePair limit;
  double deviation = 0.0;  // max(|rp - rp_lim|, |rc - rc_lim|)
};

struct SweepTable {
  std::vector<SweepRow> rows;  // paired (eps_i, M_i) sequence
  std::vector<SweepRow> grid;  // full product grid, eps-major
  // Deviation along each iterated limit: eps -> 0 at every M (taken at the
  // smallest eps), and M -> infinity at every eps (taken at the largest M).
  std::vector<double> eps_first_path;
  std::vector<double> m_first_path;
  double max_deviation = 0.0;
  double final_deviation = 0.0;
  bool trending_down = true;
};

// Evaluates adbc_rates along paired (eps_i, M_i) and also on the product grid
// in both iterated orders. eps_seq must decrease, M_seq increase.
SweepTable convergence_sweep(const StandardChannel& ch, const CovariancePair& cov,
                             const std::vector<double>& eps_seq, const std::vector<double>& m_seq);

}  // namespace cogcap
