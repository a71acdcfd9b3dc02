#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lphi/common.hpp"
#include "lphi/young.hpp"

namespace lphi {

/// Finitely many atoms: a value and a strictly positive weight per atom.
struct weighted_vector {
  std::vector<double> values;
  std::vector<double> weights;

  weighted_vector() = default;
  weighted_vector(std::vector<double> v, std::vector<double> w)
      : values(std::move(v)), weights(std::move(w)) {
    validate();
  }

  static weighted_vector unit_weights(std::vector<double> v) {
    std::vector<double> w(v.size(), 1.0);
    return weighted_vector(std::move(v), std::move(w));
  }

  std::size_t size() const { return values.size(); }

  bool is_zero() const {
    for (double v : values)
      if (v != 0.0) return false;
    return true;
  }

  void validate() const {
    if (values.size() != weights.size())
      throw error("weighted_vector: values/weights length mismatch");
    for (double w : weights)
      if (!(w > 0.0)) throw error("weighted_vector: weights must be strictly positive");
    for (double v : values) require_finite(v, "weighted_vector");
  }
};

/// rho_phi(f) = sum_i w_i * phi(f_i).
inline double modular(const young_function& phi, const weighted_vector& f) {
  std::vector<double> terms(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) terms[i] = f.weights[i] * phi.eval(f.values[i]);
  return pairwise_sum(terms);
}

struct luxemburg_info {
  double norm = 0.0;
  double modular_at_norm = 0.0;  // rho_phi(f / norm), exposed for audit
  int bisection_steps = 0;
};

/// Luxemburg norm inf{alpha > 0 : rho_phi(f/alpha) <= 1}. The map
/// alpha -> rho(f/alpha) is nonincreasing; bracket by doubling/halving, then
/// bisect to relative tolerance 1e-12.
inline luxemburg_info luxemburg_norm_detailed(const young_function& phi,
                                              const weighted_vector& f) {
  luxemburg_info out;
  if (f.is_zero()) return out;

  auto rho = [&](double alpha) {
    std::vector<double> terms(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
      terms[i] = f.weights[i] * phi.eval(f.values[i] / alpha);
    return pairwise_sum(terms);
  };

  double hi = 1.0;
  int guard = 0;
  while (rho(hi) > 1.0) {
    hi *= 2.0;
    if (++guard > 2000) throw non_convergence_error("luxemburg_norm: no upper bracket");
  }
  double lo = hi / 2.0;
  guard = 0;
  while (rho(lo) <= 1.0) {
    hi = lo;
    lo /= 2.0;
    if (++guard > 2000 || lo < 1e-300)
      throw non_convergence_error("luxemburg_norm: no lower bracket (bounded phi?)");
  }

  int steps = 0;
  while ((hi - lo) > 1e-12 * hi && steps < 200) {
    const double mid = 0.5 * (lo + hi);
    if (rho(mid) <= 1.0)
      hi = mid;
    else
      lo = mid;
    ++steps;
  }
  if ((hi - lo) > 1e-10 * hi)
    throw non_convergence_error("luxemburg_norm: bisection did not converge in 200 steps");
  out.norm = hi;
  out.modular_at_norm = rho(hi);
  out.bisection_steps = steps;
  return out;
}

inline double luxemburg_norm(const young_function& phi, const weighted_vector& f) {
  return luxemburg_norm_detailed(phi, f).norm;
}

/// The numeric conjugate packaged as a Young function (evaluation by sup,
/// derivative by central differences).
inline young_function conjugate_young(const young_function& phi) {
  return young_function::custom([phi](double s) { return conjugate_eval(phi, s); });
}

struct holder_sides {
  double lhs = 0.0;  // sum w_i |f_i g_i|
  double rhs = 0.0;  // 2 ||f||_phi ||g||_psi
};

/// Both sides of the Orlicz Hölder inequality; the contract lhs <= rhs is the
/// caller's assertion. f and g must share weights.
inline holder_sides holder_check(const young_function& phi, const weighted_vector& f,
                                 const weighted_vector& g) {
  if (f.size() != g.size()) throw error("holder_check: size mismatch");
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.weights[i] != g.weights[i]) throw error("holder_check: weights differ");
  std::vector<double> terms(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    terms[i] = f.weights[i] * std::abs(f.values[i] * g.values[i]);
  holder_sides out;
  out.lhs = pairwise_sum(terms);
  const young_function psi = conjugate_young(phi);
  out.rhs = 2.0 * luxemburg_norm(phi, f) * luxemburg_norm(psi, g);
  return out;
}

struct scaling_bounds {
  double norm_phi = 0.0;
  double norm_lambda_phi = 0.0;
  double C = 0.0;  // max{lambda, 1/lambda}
};

/// Norms under phi and lambda*phi; the contract is
/// C^{-1} ||f||_phi <= ||f||_{lambda phi} <= C ||f||_phi.
inline scaling_bounds scaling_bounds_check(const young_function& phi, double lambda,
                                           const weighted_vector& f) {
  if (!(lambda > 0.0)) throw error("scaling_bounds_check: lambda must be positive");
  scaling_bounds out;
  out.C = std::max(lambda, 1.0 / lambda);
  out.norm_phi = luxemburg_norm(phi, f);
  const young_function scaled = young_function::custom(
      [phi, lambda](double t) { return lambda * phi.eval(t); },
      [phi, lambda](double t) { return lambda * phi.deriv(t); });
  out.norm_lambda_phi = luxemburg_norm(scaled, f);
  return out;
}

/// Two-column CSV (value, weight); a "value,weight" header line is accepted.
inline void save_weighted_vector_csv(const weighted_vector& f, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw error("save_weighted_vector_csv: cannot open " + path);
  os.precision(17);
  os << "value,weight\n";
  for (std::size_t i = 0; i < f.size(); ++i) os << f.values[i] << "," << f.weights[i] << "\n";
}

inline weighted_vector load_weighted_vector_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw parse_error("load_weighted_vector_csv: cannot open " + path);
  std::vector<double> vals, wts;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double v, w = 1.0;
    if (!(ls >> v)) {
      if (lineno == 1) continue;  // header line
      throw parse_error("load_weighted_vector_csv: bad value at line " + std::to_string(lineno));
    }
    ls >> w;
    vals.push_back(v);
    wts.push_back(w);
  }
  return weighted_vector(std::move(vals), std::move(wts));
}

}  // namespace lphi
