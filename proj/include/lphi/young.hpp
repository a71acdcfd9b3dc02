#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lphi/common.hpp"

namespace lphi {

enum class young_family {
  power,              // |t|^p, p >= 1
  power_over_p,       // |t|^p / p, p > 1
  exp_inverse_square,  // e^{-1/t^2} below the splice point, a + b e^{|t|} above
  power_log,          // |t|^p * log(1+|t|)^a
  custom,
};

/// A Young function: convex, even, vanishing exactly at 0. Built-in families
/// carry closed-form derivatives; custom ones fall back to central
/// differences with relative step 1e-6. Values are immutable after
/// construction, so instances can be shared across threads freely.
class young_function {
 public:
  using fn = std::function<double(double)>;

  static young_function power(double p) {
    if (!(p >= 1.0)) throw error("young_function::power: need p >= 1");
    young_function y(young_family::power);
    y.p_ = p;
    return y;
  }

  static young_function power_over_p(double p) {
    if (!(p > 1.0)) throw error("young_function::power_over_p: need p > 1");
    young_function y(young_family::power_over_p);
    y.p_ = p;
    return y;
  }

  /// e^{-1/t^2} is convex only on (0, sqrt(2/3)); past the splice point the
  /// function continues as a + b e^{|t|} with a, b solved for C^1 contact.
  static young_function exp_inverse_square(double splice = default_splice()) {
    if (!(splice > 0.0) || splice > default_splice() + 1e-12)
      throw error("young_function::exp_inverse_square: splice must lie in (0, sqrt(2/3)]");
    young_function y(young_family::exp_inverse_square);
    y.splice_ = splice;
    const double phi_s = std::exp(-1.0 / (splice * splice));
    const double dphi_s = (2.0 / (splice * splice * splice)) * phi_s;
    y.b_ = dphi_s * std::exp(-splice);
    y.a_ = phi_s - dphi_s;  // phi_s - b e^{splice}
    return y;
  }

  static young_function power_log(double p, double a) {
    if (!(p >= 1.0) || !(a >= 0.0) || !(p + a > 1.0))
      throw error("young_function::power_log: need p >= 1, a >= 0, p + a > 1");
    young_function y(young_family::power_log);
    y.p_ = p;
    y.a_ = a;
    return y;
  }

  /// Custom evaluation; evenness is enforced by evaluating at |t|.
  /// Convexity is the caller's responsibility (checked only in tests, on grids).
  static young_function custom(fn eval, fn deriv = nullptr) {
    if (!eval) throw error("young_function::custom: eval required");
    young_function y(young_family::custom);
    y.eval_ = std::move(eval);
    y.deriv_ = std::move(deriv);
    return y;
  }

  static double default_splice() { return std::sqrt(2.0 / 3.0); }

  young_family family() const { return family_; }
  double param_p() const { return p_; }
  double param_a() const { return a_; }
  double splice_point() const { return splice_; }

  /// phi(|t|). Zero iff t == 0 for every built-in family.
  double eval(double t) const {
    require_finite(t, "young_function::eval");
    const double x = std::abs(t);
    switch (family_) {
      case young_family::power:
        return x == 0.0 ? 0.0 : std::pow(x, p_);
      case young_family::power_over_p:
        return x == 0.0 ? 0.0 : std::pow(x, p_) / p_;
      case young_family::exp_inverse_square:
        if (x == 0.0) return 0.0;
        if (x <= splice_) return std::exp(-1.0 / (x * x));
        return a_ + b_ * std::exp(x);
      case young_family::power_log:
        return x == 0.0 ? 0.0 : std::pow(x, p_) * std::pow(std::log1p(x), a_);
      case young_family::custom:
        return eval_(x);
    }
    throw error("young_function::eval: unreachable");
  }

  double operator()(double t) const { return eval(t); }

  /// One-sided derivative extended by phi'(0) = 0; odd by construction.
  double deriv(double t) const {
    require_finite(t, "young_function::deriv");
    if (t == 0.0) return 0.0;
    const double x = std::abs(t);
    const double s = sign(t);
    switch (family_) {
      case young_family::power:
        return s * p_ * std::pow(x, p_ - 1.0);
      case young_family::power_over_p:
        return s * std::pow(x, p_ - 1.0);
      case young_family::exp_inverse_square:
        if (x <= splice_) return s * (2.0 / (x * x * x)) * std::exp(-1.0 / (x * x));
        return s * b_ * std::exp(x);
      case young_family::power_log: {
        const double L = std::log1p(x);
        double d = p_ * std::pow(x, p_ - 1.0) * std::pow(L, a_);
        if (a_ > 0.0) d += a_ * std::pow(x, p_) * std::pow(L, a_ - 1.0) / (1.0 + x);
        return s * d;
      }
      case young_family::custom: {
        if (deriv_) return s * deriv_(x);
        const double h = 1e-6 * std::max(x, 1.0);
        return s * (eval_(x + h) - eval_(std::abs(x - h))) / (2.0 * h);
      }
    }
    throw error("young_function::deriv: unreachable");
  }

  /// Tagged text form, e.g. "power:2", "pop:3", "expinvsq", "powerlog:2,1".
  std::string spec_string() const {
    std::ostringstream os;
    switch (family_) {
      case young_family::power: os << "power:" << p_; break;
      case young_family::power_over_p: os << "pop:" << p_; break;
      case young_family::exp_inverse_square:
        os << "expinvsq";
        if (std::abs(splice_ - default_splice()) > 1e-15) os << ":" << splice_;
        break;
      case young_family::power_log: os << "powerlog:" << p_ << "," << a_; break;
      case young_family::custom: os << "custom"; break;
    }
    return os.str();
  }

 private:
  explicit young_function(young_family f) : family_(f) {}

  young_family family_;
  double p_ = 0.0;
  double a_ = 0.0;       // power_log exponent, or expinvsq splice constant a
  double b_ = 0.0;       // expinvsq splice constant b
  double splice_ = 0.0;
  fn eval_;
  fn deriv_;
};

/// Parses "power:p" | "pop:p" | "expinvsq[:splice]" | "powerlog:p,a".
inline young_function phi_from_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto parse_num = [&](const std::string& s) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw parse_error("phi_from_spec: bad numeric parameter '" + s + "' in '" + spec + "'");
    }
  };
  if (name == "power") {
    if (args.empty()) throw parse_error("phi_from_spec: power needs an exponent, e.g. power:2");
    return young_function::power(parse_num(args));
  }
  if (name == "pop") {
    if (args.empty()) throw parse_error("phi_from_spec: pop needs an exponent, e.g. pop:3");
    return young_function::power_over_p(parse_num(args));
  }
  if (name == "expinvsq") {
    if (args.empty()) return young_function::exp_inverse_square();
    return young_function::exp_inverse_square(parse_num(args));
  }
  if (name == "powerlog") {
    const auto comma = args.find(',');
    if (comma == std::string::npos)
      throw parse_error("phi_from_spec: powerlog needs two parameters, e.g. powerlog:2,1");
    return young_function::power_log(parse_num(args.substr(0, comma)),
                                     parse_num(args.substr(comma + 1)));
  }
  throw parse_error("phi_from_spec: unknown family '" + name + "'");
}

/// Numeric convex conjugate psi(s) = sup_{t>=0} (t|s| - phi(t)), by bracket
/// expansion on the slope followed by ternary search. Returns +infinity when
/// the slope |s| - phi'(t) never turns negative before t = 1e300 (a phi with
/// bounded derivative and |s| above its limit).
inline double conjugate_eval(const young_function& phi, double s) {
  require_finite(s, "conjugate_eval");
  const double as = std::abs(s);
  if (as == 0.0) return 0.0;  // sup of -phi(t) is attained at t = 0

  double hi = 1.0;
  while (as - phi.deriv(hi) >= 0.0) {
    hi *= 2.0;
    if (hi > 1e300) return inf;  // bracket overflow: psi(s) = +infinity
  }
  double lo = 0.0;
  auto g = [&](double t) { return t * as - phi.eval(t); };
  // Ternary search on the concave g over [lo, hi].
  for (int it = 0; it < 220 && (hi - lo) > 1e-10 * std::max(hi, 1e-300); ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (g(m1) < g(m2))
      lo = m1;
    else
      hi = m2;
  }
  return std::max(0.0, g(0.5 * (lo + hi)));
}

enum class doubling_verdict { doubling_on_grid, not_doubling_on_grid };

struct doubling_report_t {
  std::vector<double> grid;
  double max_ratio = 0.0;
  double ratio_argmax = 0.0;
  doubling_verdict verdict = doubling_verdict::doubling_on_grid;
  /// The constant D when verdict is doubling_on_grid (equal to max_ratio).
  double constant() const { return max_ratio; }
};

/// Max of phi(2t)/phi(t) over the grid. A diagnostic on the grid, never a
/// proof: the verdict flips to not_doubling_on_grid when the ratio passes
/// `explosion_threshold`.
inline doubling_report_t doubling_report(const young_function& phi,
                                         std::vector<double> grid,
                                         double explosion_threshold = 1e12) {
  if (grid.empty()) throw error("doubling_report: empty grid");
  doubling_report_t rep;
  rep.grid = std::move(grid);
  for (double t : rep.grid) {
    if (!(t > 0)) throw error("doubling_report: grid entries must be positive");
    const double denom = phi.eval(t);
    const double ratio = denom > 0 ? phi.eval(2.0 * t) / denom : inf;
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.ratio_argmax = t;
    }
  }
  rep.verdict = rep.max_ratio <= explosion_threshold ? doubling_verdict::doubling_on_grid
                                                     : doubling_verdict::not_doubling_on_grid;
  return rep;
}

/// |psi(phi'(t)) - (t phi'(t) - phi(t))| at |t|. The minus sign is the
/// Legendre identity for differentiable strictly convex N-functions; the
/// conjugate itself is the numeric sup, so this doubles as a self-check.
inline double young_identity_residual(const young_function& phi, double t) {
  const double x = std::abs(t);
  const double d = phi.deriv(x);
  const double lhs = conjugate_eval(phi, d);
  const double rhs = x * d - phi.eval(x);
  return std::abs(lhs - rhs);
}

enum class besov_verdict { convergent_likely, divergent_likely, inconclusive };

struct besov_report_t {
  std::vector<std::pair<std::int64_t, double>> partial_sums;  // (M, S_M) at checkpoints
  besov_verdict verdict = besov_verdict::inconclusive;
};

/// Partial sums of sum_m phi(1/m) m^{n-1} at geometric checkpoints, with a
/// Cauchy-tail verdict:
///   - convergent_likely when the last doubling changes S by < 1e-6 * S, or
///     when the per-doubling block sums decay by a stable factor <= 0.99
///     (geometric decay of the blocks makes the tail summable);
///   - divergent_likely when S itself keeps growing by a stable factor >= 1.01;
///   - inconclusive otherwise.
/// Raw partial sums are returned so callers can apply their own test.
inline besov_report_t besov_summability(const young_function& phi, int n, std::int64_t m_max) {
  if (n < 2) throw error("besov_summability: need n >= 2");
  if (m_max < 100) throw error("besov_summability: need m_max >= 100");

  std::vector<std::int64_t> checkpoints;
  for (std::int64_t m = m_max; m >= 25; m /= 2) checkpoints.push_back(m);
  std::reverse(checkpoints.begin(), checkpoints.end());

  besov_report_t rep;
  double s = 0.0;
  std::size_t next = 0;
  for (std::int64_t m = 1; m <= m_max; ++m) {
    s += phi.eval(1.0 / double(m)) * std::pow(double(m), double(n - 1));
    if (next < checkpoints.size() && m == checkpoints[next]) {
      rep.partial_sums.emplace_back(m, s);
      ++next;
    }
  }

  const auto& ps = rep.partial_sums;
  const std::size_t k = ps.size();
  if (k < 2) return rep;  // inconclusive: not enough history

  const double last = ps[k - 1].second, prev = ps[k - 2].second;
  if (last > 0 && (last - prev) < 1e-6 * last) {
    rep.verdict = besov_verdict::convergent_likely;
    return rep;
  }

  const std::size_t window = std::min<std::size_t>(3, k - 1);
  bool grows = true;
  for (std::size_t i = k - window; i < k; ++i)
    grows = grows && ps[i - 1].second > 0 && ps[i].second / ps[i - 1].second >= 1.01;
  if (grows) {
    rep.verdict = besov_verdict::divergent_likely;
    return rep;
  }

  if (k >= 3) {
    const std::size_t rwindow = std::min<std::size_t>(3, k - 2);
    bool decays = true;
    for (std::size_t i = k - rwindow; i < k; ++i) {
      const double db = ps[i].second - ps[i - 1].second;
      const double db_prev = ps[i - 1].second - (i >= 2 ? ps[i - 2].second : 0.0);
      decays = decays && db_prev > 0 && db / db_prev <= 0.99;
    }
    if (decays) rep.verdict = besov_verdict::convergent_likely;
  }
  return rep;
}

}  // namespace lphi
