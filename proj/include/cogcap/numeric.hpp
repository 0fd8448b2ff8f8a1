#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

namespace cogcap::numeric {

struct BisectionResult {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Finds a sign change of `g` on [lo, hi]. Requires g(lo) <= 0 <= g(hi) or the
// reverse; the bracket is halved until its width drops below `tol` or
// `max_iter` halvings have been done.
template <typename F>
BisectionResult bisect(F&& g, double lo, double hi, double tol = 1e-12, int max_iter = 200) {
  double g_lo = g(lo);
  const bool increasing = g_lo <= 0.0;
  int it = 0;
  while (hi - lo > tol && it < max_iter) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = g(mid);
    if ((g_mid <= 0.0) == increasing) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
    ++it;
  }
  const double root = 0.5 * (lo + hi);
  return {root, g(root), it};
}

struct Maximum {
  double arg = 0.0;
  double value = 0.0;
};

// Golden-section search for the maximum of a unimodal `f` on [lo, hi].
template <typename F>
Maximum golden_max(F&& f, double lo, double hi, double tol = 1e-12, int max_iter = 200) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? Maximum{x1, f1} : Maximum{x2, f2};
}

// Dense uniform grid over [lo, hi] followed by golden-section refinement of
// the best cell. Ties on the grid resolve to the smallest argument, and the
// refined point only replaces the grid point if it is strictly better.
template <typename F>
Maximum grid_refine_max(F&& f, double lo, double hi, std::size_t n_grid) {
  const auto at = [&](std::size_t i) {
    return i + 1 == n_grid ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_grid - 1);
  };
  std::size_t best_i = 0;
  double best = f(at(0));
  for (std::size_t i = 1; i < n_grid; ++i) {
    const double v = f(at(i));
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  const double left = at(best_i == 0 ? 0 : best_i - 1);
  const double right = at(best_i + 1 >= n_grid ? n_grid - 1 : best_i + 1);
  Maximum out{at(best_i), best};
  if (right > left) {
    const Maximum refined = golden_max(f, left, right);
    if (refined.value > out.value) out = refined;
  }
  return out;
}

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace cogcap::numeric
