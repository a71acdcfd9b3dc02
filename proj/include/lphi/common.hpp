#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lphi {

/// Base class for every error thrown by this library.
struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct parse_error : error {
  using error::error;
};
struct size_limit_error : error {
  using error::error;
};
struct non_convergence_error : error {
  using error::error;
};
struct bracket_overflow_error : error {
  using error::error;
};
struct empty_ball_error : error {
  using error::error;
};
struct not_a_cocycle_error : error {
  using error::error;
};
struct scale_too_small_error : error {
  using error::error;
};
struct truncation_too_small_error : error {
  using error::error;
};
struct boundary_violation_error : error {
  using error::error;
};
struct degenerate_problem_error : error {
  using error::error;
};

inline constexpr double inf = std::numeric_limits<double>::infinity();

inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw error(std::string(what) + ": non-finite value");
}

/// Deterministic pairwise (tree) summation. Order of the input fixes the
/// result bit-for-bit, independent of any chunking a caller might do.
inline double pairwise_sum(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& xs) {
  return pairwise_sum(std::span<const double>(xs));
}

inline double sign(double t) { return t > 0 ? 1.0 : (t < 0 ? -1.0 : 0.0); }

/// Log-spaced grid on [lo, hi], endpoints included.
inline std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0) || !(hi > lo) || count < 2) throw error("log_grid: bad range");
  std::vector<double> g(count);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (std::size_t i = 0; i < count; ++i)
    g[i] = std::exp(llo + (lhi - llo) * double(i) / double(count - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace lphi
