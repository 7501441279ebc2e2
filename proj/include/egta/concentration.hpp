// Copyright 2026 The egta Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Tail bounds and sample-complexity formulas for bounded random variables.
//
// Throughout, `c` is the range width of the observations. Formulas that take
// a `delta_eff` expect the failure probability after any union-bound
// correction, so the log term is L = ln(1 / delta_eff).

#ifndef EGTA_CONCENTRATION_HPP_
#define EGTA_CONCENTRATION_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace egta {

namespace internal {

inline void require_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("delta must lie in (0, 1)");
}

inline void require_positive(double x, const char* what) {
  if (!(x > 0.0)) throw std::invalid_argument(std::string(what) + " must be > 0");
}

}  // namespace internal

// Bennett's function h(x) = (1 + x) ln(1 + x) - x.
inline double bennett_h(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("bennett_h needs x >= 0");
  return (1.0 + x) * std::log1p(x) - x;
}

inline double hoeffding_radius(double m, double delta, double c) {
  if (!(m >= 1.0)) throw std::invalid_argument("m must be >= 1");
  internal::require_delta(delta);
  return c * std::sqrt(std::log(2.0 / delta) / (2.0 * m));
}

// Samples needed for an eps-uniform estimate of |Gamma| indices.
inline double hoeffding_data_complexity(double eps, double delta, double c,
                                        double game_size) {
  internal::require_positive(eps, "eps");
  internal::require_delta(delta);
  return c * c * std::log(2.0 * game_size / delta) / (2.0 * eps * eps);
}

inline double hoeffding_query_complexity(double eps, double delta, double c,
                                         double game_size,
                                         double num_profiles) {
  return num_profiles +
         num_profiles * hoeffding_data_complexity(eps, delta, c, game_size);
}

// Exact two-sided Bennett sample size c^2 ln(2/delta) / (v h(c eps / v)).
// A zero-variance observable needs a single sample.
inline double bennett_sample_complexity(double eps, double delta, double c,
                                        double v) {
  internal::require_positive(eps, "eps");
  internal::require_delta(delta);
  if (!(v >= 0.0)) throw std::invalid_argument("variance must be >= 0");
  if (v == 0.0) return 1.0;
  return c * c * std::log(2.0 / delta) / (v * bennett_h(c * eps / v));
}

// 2 ln(2/delta) (c/(3 eps) + v/eps^2), the sub-gamma simplification.
inline double bennett_sample_complexity_simplified(double eps, double delta,
                                                   double c, double v) {
  internal::require_positive(eps, "eps");
  internal::require_delta(delta);
  return 2.0 * std::log(2.0 / delta) * (c / (3.0 * eps) + v / (eps * eps));
}

// Per-index variances and the two norms that govern data and query cost.
struct VarianceProfile {
  std::size_t num_players = 0;
  std::size_t num_profiles = 0;
  std::vector<double> variances;  // player-major, like NormalFormGame

  // max over players at one profile
  double profile_max(std::size_t rank) const {
    double v = 0.0;
    for (std::size_t p = 0; p < num_players; ++p)
      v = std::max(v, variances[p * num_profiles + rank]);
    return v;
  }
  double vmax() const {
    double v = 0.0;
    for (double x : variances) v = std::max(v, x);
    return v;
  }
  double v1inf() const {
    double total = 0.0;
    for (std::size_t s = 0; s < num_profiles; ++s) total += profile_max(s);
    return total;
  }
};

struct Complexity {
  double data = 0.0;
  double query = 0.0;
};

inline Complexity bennett_data_query_complexity(double eps, double delta,
                                                double c,
                                                const VarianceProfile& v) {
  const double game_size = double(v.num_players * v.num_profiles);
  const double profiles = double(v.num_profiles);
  return {bennett_sample_complexity(eps, delta / game_size, c, v.vmax()),
          profiles + bennett_sample_complexity(eps, delta / game_size,
                                               c * profiles, v.v1inf())};
}

struct BennettRadii {
  double eps_vhat = 0.0;
  double eps_mu = 0.0;
  double v_upper = 0.0;
  double hoeffding_radius = 0.0;
  double effective_radius = 0.0;
};

// Empirical-Bennett radii after m >= 2 samples with unbiased empirical
// variance `vhat`. The mean radius eps_mu covers both tails and the
// variance correction jointly; the Hoeffding radius uses the same log term.
inline BennettRadii empirical_bennett_radii(double m, double vhat,
                                            double delta_eff, double c) {
  if (!(m >= 2.0)) throw std::invalid_argument("empirical Bennett needs m >= 2");
  internal::require_delta(delta_eff);
  // The unbiased estimator of a [-c/2, c/2] variable peaks at
  // (c^2/4) m/(m-1), not c^2/4.
  if (!(vhat >= 0.0) || vhat > c * c / 4.0 * m / (m - 1.0) * (1.0 + 1e-9))
    throw std::invalid_argument("vhat outside [0, c^2 m / (4(m-1))]");
  const double L = -std::log(delta_eff);
  const double c2 = c * c;
  const double scale = c2 * L / (m - 1.0);
  BennettRadii r;
  r.eps_vhat = 2.0 * c2 * L / (3.0 * m) +
               std::sqrt((1.0 / 3.0 + 1.0 / (2.0 * L)) * scale * scale +
                         2.0 * c2 * vhat * L / m);
  r.v_upper = vhat + r.eps_vhat;
  r.eps_mu = c * L / (3.0 * m) + std::sqrt(2.0 * r.v_upper * L / m);
  r.hoeffding_radius = c * std::sqrt(L / (2.0 * m));
  r.effective_radius = std::min(r.eps_mu, r.hoeffding_radius);
  return r;
}

// Scale-plus-variance relaxation of eps_mu, valid for delta_eff <= e^-4.5.
inline double empirical_bennett_simplified(double m, double vhat,
                                           double delta_eff, double c) {
  const double L = -std::log(delta_eff);
  return 2.0 * c * L / (m - 1.0) + std::sqrt(2.0 * vhat * L / m);
}

// Sample size sufficient for eps_mu <= eps with probability 1 - delta/3.
inline double empirical_bennett_sufficient_m(double eps, double delta, double c,
                                             double v) {
  internal::require_positive(eps, "eps");
  internal::require_delta(delta);
  const double L = std::log(3.0 / delta);
  return 1.0 + 5.0 * c * L / eps + 2.0 * v * L / (eps * eps);
}

// Upper tail for the realized empirical variance given true variance v.
inline double variance_upper_tail(double m, double v, double delta, double c) {
  if (!(m >= 2.0)) throw std::invalid_argument("m must be >= 2");
  internal::require_delta(delta);
  const double L = std::log(3.0 / delta);
  return v + (2.0 * m + 1.0) / (6.0 * (m - 1.0)) * c * c * L / m +
         std::sqrt(2.0 * c * c * v * L / (m - 1.0));
}

struct PspQueryBound {
  double exact = 0.0;
  double loose = 0.0;
  double kappa = 0.0;
  double log_term = 0.0;
};

// Per-profile query bound for progressive sampling with pruning, with
// L = ln(3 T |Gamma| / delta) and v the profile's max variance.
inline PspQueryBound psp_profile_query_bound(double eps, double delta,
                                             double c, double v, double beta,
                                             double schedule_length,
                                             double game_size) {
  internal::require_positive(eps, "eps");
  internal::require_delta(delta);
  if (!(beta > 1.0)) throw std::invalid_argument("beta must be > 1");
  if (!(schedule_length >= 1.0))
    throw std::invalid_argument("schedule length must be >= 1");
  if (!(v >= 0.0)) throw std::invalid_argument("variance must be >= 0");
  PspQueryBound b;
  b.log_term = std::log(3.0 * schedule_length * game_size / delta);
  b.kappa = 4.0 / 3.0 + std::sqrt(1.0 + 1.0 / (2.0 * b.log_term));
  const double scale = b.kappa * c / eps;
  const double var = v / (eps * eps);
  b.exact = 1.0 + beta * b.log_term *
                      (scale + var + std::sqrt(2.0 * scale * var + var * var));
  b.loose =
      1.0 + 2.0 * beta * b.log_term * (5.0 * c / (2.0 * eps) + var);
  return b;
}

// Standard mean-estimation lower bound (v / eps^2) ln(|Gamma| / delta).
inline double mean_estimation_lower_bound(double eps, double delta, double v,
                                          double game_size) {
  internal::require_positive(eps, "eps");
  internal::require_delta(delta);
  return v / (eps * eps) * std::log(game_size / delta);
}

}  // namespace egta

#endif  // EGTA_CONCENTRATION_HPP_
