#include "cogcap/mimo_bc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cogcap/error.hpp"

namespace cogcap {

Mat2 operator+(const Mat2& x, const Mat2& y) { return {x.m00 + y.m00, x.m01 + y.m01, x.m10 + y.m10, x.m11 + y.m11}; }

Mat2 operator-(const Mat2& x, const Mat2& y) { return {x.m00 - y.m00, x.m01 - y.m01, x.m10 - y.m10, x.m11 - y.m11}; }

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.m00 * y.m00 + x.m01 * y.m10, x.m00 * y.m01 + x.m01 * y.m11, x.m10 * y.m00 + x.m11 * y.m10,
          x.m10 * y.m01 + x.m11 * y.m11};
}

Mat2 operator*(double s, const Mat2& x) { return {s * x.m00, s * x.m01, s * x.m10, s * x.m11}; }

namespace {

double norm1(const Mat2& x) {
  return std::max(std::abs(x.m00) + std::abs(x.m10), std::abs(x.m01) + std::abs(x.m11));
}

Mat2 adjugate_inverse(const Mat2& x) {
  const double d = x.det();
  if (d == 0.0 || !std::isfinite(d)) throw SingularMatrix("2x2 matrix is singular");
  return {x.m11 / d, -x.m01 / d, -x.m10 / d, x.m00 / d};
}

}  // namespace

double Mat2::condition() const { return norm1(*this) * norm1(adjugate_inverse(*this)); }

Mat2 Mat2::inverse() const {
  const Mat2 inv = adjugate_inverse(*this);
  const double cond = norm1(*this) * norm1(inv);
  if (!(cond <= kConditionGuard)) {
    throw SingularMatrix("2x2 matrix condition number " + std::to_string(cond) + " exceeds guard");
  }
  return inv;
}

std::array<double, 2> Mat2::sym_eigenvalues() const {
  const double off = 0.5 * (m01 + m10);
  const double mean = 0.5 * (m00 + m11);
  const double half_gap = std::hypot(0.5 * (m00 - m11), off);
  return {mean - half_gap, mean + half_gap};
}

double Mat2::max_abs_diff(const Mat2& o) const {
  return std::max({std::abs(m00 - o.m00), std::abs(m01 - o.m01), std::abs(m10 - o.m10), std::abs(m11 - o.m11)});
}

AlignedChannel AlignedChannel::make(double a, double eps, double big_m) {
  if (!(eps > 0.0)) throw SingularMatrix("eps must be positive for H_s to be invertible");
  if (a == 0.0) throw SingularMatrix("a must be nonzero for H_p to be invertible");
  if (!(big_m > 0.0)) throw DomainError("second-antenna noise variance M must be positive");
  return {a, eps, big_m};
}

CovariancePair CovariancePair::make(double beta, double alpha, double k_p, double k_c, double pp, double pc) {
  CovariancePair c{beta, alpha, k_p, k_c, pp, pc};
  c.validate();
  return c;
}

CovariancePair CovariancePair::optimal(double alpha, double pp, double pc) {
  return make(1.0, alpha, std::sqrt(alpha * pp * pc), 0.0, pp, pc);
}

void CovariancePair::validate() const {
  if (!(beta >= 0.0 && beta <= 1.0) || !(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("beta and alpha must lie in [0, 1]");
  }
  if (!(pp >= 0.0) || !(pc >= 0.0)) throw DomainError("powers must be nonnegative");
  // The k boxes are exactly the PSD boundary of the 2x2 forms; allow rounding.
  const double kp_max = std::sqrt(alpha * beta * pp * pc);
  const double kc_max = std::sqrt((1.0 - alpha) * (1.0 - beta) * pp * pc);
  const double slack = kPsdTol * std::max(1.0, pp + pc);
  if (std::abs(k_p) > kp_max + slack) throw NonPSD("k_p outside [-sqrt(alpha beta Pp Pc), +sqrt(alpha beta Pp Pc)]");
  if (std::abs(k_c) > kc_max + slack) {
    throw NonPSD("k_c outside [-sqrt((1-alpha)(1-beta) Pp Pc), +sqrt((1-alpha)(1-beta) Pp Pc)]");
  }
}

std::array<double, 2> optimal_primary_signature(double alpha, double pp, double pc) {
  return {std::sqrt(pp), std::sqrt(alpha * pc)};
}

std::array<double, 2> optimal_cognitive_signature(double alpha, double pc) {
  return {0.0, std::sqrt((1.0 - alpha) * pc)};
}

RatePair adbc_rates(const AlignedChannel& ach, const CovariancePair& cov) {
  if (!(ach.eps > 0.0) || ach.a == 0.0) throw SingularMatrix("aligned channel matrices are not invertible");
  cov.validate();
  const Mat2 hp = ach.hp();
  const Mat2 hs = ach.hs();
  const Mat2 sz_inv = ach.sigma_z().inverse();
  const Mat2 sp = cov.sigma_p();
  const Mat2 sc = cov.sigma_c();
  const Mat2 eye = Mat2::identity();

  const Mat2 interference = eye + sz_inv * hp * sc * hp.transpose();
  const Mat2 signal = sz_inv * hp * sp * hp.transpose();
  const double rp = 0.5 * std::log((eye + interference.inverse() * signal).det());
  const double rc = 0.5 * std::log((eye + sz_inv * hs * sc * hs.transpose()).det());
  return {rp, rc};
}

LimitMatrices limit_covariance_terms(double a, const CovariancePair& cov) {
  const double x = (1.0 - cov.alpha) * cov.pc;
  const double s11 = (1.0 - cov.beta) * cov.pp;
  // I + Sz^-1 Hp Sc Hp^T tends to [[D, s11 + a k_c], [0, 1]].
  const double d = s11 + 2.0 * a * cov.k_c + a * a * x + 1.0;
  LimitMatrices out;
  out.cognitive_at_secondary = {x, x, 0.0, 0.0};
  out.interference_inverse = {1.0 / d, -(s11 + a * cov.k_c) / d, 0.0, 1.0};
  out.primary_at_primary = {cov.beta * cov.pp + 2.0 * a * cov.k_p + a * a * cov.alpha * cov.pc,
                            cov.beta * cov.pp + a * cov.k_p, 0.0, 0.0};
  return out;
}

Mat2 interference_inverse_printed(double a, const CovariancePair& cov) {
  const double d = (1.0 - cov.beta) * cov.pp + 2.0 * a * cov.k_c + a * a * (1.0 - cov.alpha) * cov.pc + 1.0;
  return {1.0 / d, (-(1.0 - cov.beta) * cov.pc - a * cov.k_c) / d, 0.0, 1.0};
}

RatePair limit_rates(const StandardChannel& ch, const CovariancePair& cov) {
  cov.validate();
  const double a = ch.a;
  const double num = cov.beta * cov.pp + 2.0 * a * cov.k_p + a * a * cov.alpha * cov.pc;
  const double den = (1.0 - cov.beta) * cov.pp + 2.0 * a * cov.k_c + a * a * (1.0 - cov.alpha) * cov.pc + 1.0;
  return {0.5 * std::log1p(num / den), 0.5 * std::log1p((1.0 - cov.alpha) * cov.pc)};
}

SweepTable convergence_sweep(const StandardChannel& ch, const CovariancePair& cov,
                             const std::vector<double>& eps_seq, const std::vector<double>& m_seq) {
  if (eps_seq.empty() || m_seq.empty()) throw DomainError("sweep sequences must be nonempty");
  if (!std::is_sorted(eps_seq.rbegin(), eps_seq.rend()) || !std::is_sorted(m_seq.begin(), m_seq.end())) {
    throw DomainError("eps sequence must decrease and M sequence must increase");
  }
  const RatePair lim = limit_rates(ch, cov);
  const auto evaluate = [&](double eps, double big_m) {
    SweepRow row;
    row.eps = eps;
    row.big_m = big_m;
    row.rates = adbc_rates(AlignedChannel::make(ch.a, eps, big_m), cov);
    row.limit = lim;
    row.deviation = std::max(std::abs(row.rates.rp - lim.rp), std::abs(row.rates.rc - lim.rc));
    return row;
  };

  SweepTable t;
  const std::size_t paired = std::min(eps_seq.size(), m_seq.size());
  for (std::size_t i = 0; i < paired; ++i) {
    t.rows.push_back(evaluate(eps_seq[i], m_seq[i]));
    t.max_deviation = std::max(t.max_deviation, t.rows.back().deviation);
    if (i > 0 && t.rows[i].deviation > t.rows[i - 1].deviation + 1e-12) t.trending_down = false;
  }
  t.final_deviation = t.rows.back().deviation;

  for (double eps : eps_seq) {
    for (double big_m : m_seq) t.grid.push_back(evaluate(eps, big_m));
  }
  const std::size_t n_m = m_seq.size();
  for (std::size_t j = 0; j < n_m; ++j) t.eps_first_path.push_back(t.grid[(eps_seq.size() - 1) * n_m + j].deviation);
  for (std::size_t i = 0; i < eps_seq.size(); ++i) t.m_first_path.push_back(t.grid[i * n_m + n_m - 1].deviation);
  return t;
}

}  // namespace cogcap
