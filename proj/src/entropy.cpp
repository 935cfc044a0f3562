/*
 * Copyright 2026 The gaa Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "gaa/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace gaa {

namespace {

// Gradient evaluations floor iterates here so boundary-singular families
// never see an exact zero while ascending.
constexpr double kGradientFloor = 1e-300;

double phi_base_value(const EntropySpec& spec, const std::vector<double>& w) {
  double acc = 0.0;
  switch (spec.family) {
    case EntropyFamily::kNegShannon:
      for (double x : w) {
        if (x > 0.0) acc += x * std::log(x);  // 0 log 0 = 0
      }
      return acc;
    case EntropyFamily::kNegTsallis:
      for (double x : w) acc += std::pow(x, spec.tsallis_q);
      return (acc - 1.0) / (spec.tsallis_q - 1.0);
    case EntropyFamily::kQuadratic:
      for (double x : w) acc += x * x;
      return 0.5 * acc;
  }
  return acc;
}

double phi_base_derivative(const EntropySpec& spec, double w) {
  switch (spec.family) {
    case EntropyFamily::kNegShannon:
      return std::log(w) + 1.0;
    case EntropyFamily::kNegTsallis:
      return spec.tsallis_q / (spec.tsallis_q - 1.0) * std::pow(w, spec.tsallis_q - 1.0);
    case EntropyFamily::kQuadratic:
      return w;
  }
  return 0.0;
}

std::vector<double> softmax_scaled(const std::vector<double>& v, double scale) {
  const std::size_t n = v.size();
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, scale * x);
  std::vector<double> w(n);
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::exp(scale * v[i] - m);
    z += w[i];
  }
  for (double& x : w) x /= z;
  return w;
}

struct AscentState {
  std::vector<double> mu;
  double value = -std::numeric_limits<double>::infinity();
  double gap = std::numeric_limits<double>::infinity();
};

double objective(const EntropySpec& spec, const std::vector<double>& v,
                 const std::vector<double>& mu) {
  double dot = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) dot += mu[i] * v[i];
  return dot - phi_base_value(spec, mu) / spec.eta;
}

// Uniform strong-convexity modulus of Phi in the Euclidean norm on (0, 1],
// or 0 when none holds (Tsallis with q > 2 flattens at the boundary).
double strong_convexity_modulus(const EntropySpec& spec) {
  switch (spec.family) {
    case EntropyFamily::kNegShannon:
      return 1.0 / spec.eta;  // phi'' = 1/w >= 1
    case EntropyFamily::kNegTsallis:
      return spec.tsallis_q <= 2.0 ? spec.tsallis_q / spec.eta : 0.0;
    case EntropyFamily::kQuadratic:
      return 1.0 / spec.eta;
  }
  return 0.0;
}

// Certified optimality gap: for concave f over the simplex,
// f* - f(mu) <= max_i g_i - <g, mu> (linear-programming bound), and when Phi
// is m-strongly convex also f* - f(mu) <= ||g - mean(g)||^2 / (2m). The LP
// bound is sharp at boundary-supported optima, the curvature bound at
// interior optima whose small coordinates pin the LP bound.
double duality_gap(const EntropySpec& spec, const std::vector<double>& v,
                   const std::vector<double>& mu, std::vector<double>& g) {
  const std::size_t n = mu.size();
  double gmax = -std::numeric_limits<double>::infinity();
  double gdot = 0.0;
  double gsum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double wi = std::max(mu[i], kGradientFloor);
    g[i] = v[i] - phi_base_derivative(spec, wi) / spec.eta;
    gmax = std::max(gmax, g[i]);
    gdot += g[i] * mu[i];
    gsum += g[i];
  }
  double gap = gmax - gdot;
  const double m = strong_convexity_modulus(spec);
  if (m > 0.0) {
    const double mean = gsum / static_cast<double>(n);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm2 += (g[i] - mean) * (g[i] - mean);
    gap = std::min(gap, norm2 / (2.0 * m));
  }
  return gap;
}

// Multiplicative (exponentiated-gradient) step, centered so the iterate is
// invariant under shifting v by multiples of the all-ones vector.
bool multiplicative_step(const std::vector<double>& mu, const std::vector<double>& g,
                         double step, std::vector<double>& out) {
  const std::size_t n = mu.size();
  double gmax = -std::numeric_limits<double>::infinity();
  for (double x : g) gmax = std::max(gmax, x);
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double e = step * (g[i] - gmax);
    if (e < -700.0) e = -700.0;
    out[i] = mu[i] * std::exp(e);
    z += out[i];
  }
  if (!(z > 0.0) || !std::isfinite(z)) return false;
  for (double& x : out) x /= z;
  return true;
}

// Exponentiated ascent of <mu,v> - Phi(mu). Phase 1 backtracks on the value;
// phase 2 polishes by driving the certified gap down (value changes near the
// optimum sink below double precision long before the gap does).
AscentState ascend(const EntropySpec& spec, const std::vector<double>& v,
                   std::vector<double> start, int& budget) {
  const std::size_t n = v.size();
  AscentState st;
  st.mu = std::move(start);
  st.value = objective(spec, v, st.mu);
  std::vector<double> g(n), cand(n), gcand(n);
  st.gap = duality_gap(spec, v, st.mu, g);

  double step = spec.eta;
  while (budget > 0 && st.gap > 1e-14) {
    --budget;
    bool moved = false;
    for (int bt = 0; bt < 90 && step > 1e-18; ++bt) {
      if (!multiplicative_step(st.mu, g, step, cand)) {
        step *= 0.5;
        continue;
      }
      const double fc = objective(spec, v, cand);
      if (fc > st.value) {
        st.mu.swap(cand);
        st.value = fc;
        st.gap = duality_gap(spec, v, st.mu, g);
        step = std::min(step * 1.3, 1e6);
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }

  // Gap-driven polish (value changes are already below double resolution
  // here, so phase 1's step is spent). Anchored so the value cannot drift.
  const double anchor = st.value - 1e-12 * (1.0 + std::abs(st.value));
  step = spec.eta;
  while (budget > 0 && st.gap > 1e-14 && step > 1e-16) {
    --budget;
    if (!multiplicative_step(st.mu, g, step, cand)) {
      step *= 0.5;
      continue;
    }
    const double gapc = duality_gap(spec, v, cand, gcand);
    const double fc = objective(spec, v, cand);
    if (gapc < st.gap && fc >= anchor) {
      st.mu.swap(cand);
      g.swap(gcand);
      st.value = fc;
      st.gap = gapc;
      step = std::min(step * 1.2, 1e6);
    } else {
      step *= 0.5;
    }
  }
  return st;
}

// Coarse global probe used only when ascent stalls: best point of the full
// grid, then a few shrinking local sweeps around it.
std::vector<double> grid_probe(const EntropySpec& spec, const std::vector<double>& v,
                               int resolution) {
  const std::size_t n = v.size();
  // Keep the point count bounded as the dimension grows.
  std::size_t res = static_cast<std::size_t>(resolution);
  if (n == 3) res = std::min<std::size_t>(res, 48);
  if (n == 4) res = std::min<std::size_t>(res, 20);
  if (n >= 5) res = std::min<std::size_t>(res, 6);
  std::vector<double> best(n, 1.0 / static_cast<double>(n));
  double fbest = objective(spec, v, best);
  SimplexGrid coarse{n, res};
  for_each_grid_point(coarse, [&](const std::vector<double>& p) {
    const double f = objective(spec, v, p);
    if (f > fbest) {
      fbest = f;
      best = p;
    }
  });
  SimplexGrid local{n, 16};
  std::vector<double> cand(n);
  for (int level = 1; level <= 10; ++level) {
    const double lambda = std::ldexp(1.0, -level);
    std::vector<double> center = best;
    for_each_grid_point(local, [&](const std::vector<double>& p) {
      for (std::size_t i = 0; i < n; ++i) cand[i] = (1.0 - lambda) * center[i] + lambda * p[i];
      const double f = objective(spec, v, cand);
      if (f > fbest) {
        fbest = f;
        best = cand;
      }
    });
  }
  return best;
}

AscentState solve_conjugate(const EntropySpec& spec, const std::vector<double>& v,
                            const ConjugateSolverConfig& cfg) {
  int budget = cfg.max_iterations;
  AscentState best = ascend(spec, v, softmax_scaled(v, spec.eta), budget);
  if (best.gap > cfg.tolerance) {
    const std::size_t n = v.size();
    AscentState other =
        ascend(spec, v, std::vector<double>(n, 1.0 / static_cast<double>(n)), budget);
    if (other.gap < best.gap) best = std::move(other);
  }
  if (best.gap > cfg.tolerance) {
    int fallback_budget = cfg.max_iterations;
    AscentState refined =
        ascend(spec, v, grid_probe(spec, v, cfg.grid_resolution), fallback_budget);
    if (refined.gap < best.gap) best = std::move(refined);
  }
  if (best.gap > cfg.tolerance) {
    // one restart from the incumbent with fresh step sizes
    int retry_budget = cfg.max_iterations;
    AscentState retried = ascend(spec, v, best.mu, retry_budget);
    if (retried.gap < best.gap) best = std::move(retried);
  }
  if (best.gap > cfg.tolerance) {
    throw SolverError("conjugate solver: failed to certify tolerance", best.mu, best.gap);
  }
  return best;
}

}  // namespace

void EntropySpec::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw InvalidInputError("entropy spec: eta must be positive and finite");
  if (family == EntropyFamily::kNegTsallis) {
    if (!(tsallis_q > 0.0) || !std::isfinite(tsallis_q) || tsallis_q == 1.0)
      throw InvalidInputError("entropy spec: Tsallis q must be positive, finite and != 1");
  }
}

bool EntropySpec::boundary_singular() const {
  return family == EntropyFamily::kNegShannon ||
         (family == EntropyFamily::kNegTsallis && tsallis_q < 1.0);
}

void ConjugateSolverConfig::validate() const {
  if (max_iterations < 1) throw InvalidInputError("conjugate solver: max_iterations must be >= 1");
  if (!(tolerance > 0.0)) throw InvalidInputError("conjugate solver: tolerance must be > 0");
  if (grid_resolution < 10) throw InvalidInputError("conjugate solver: grid_resolution must be >= 10");
}

double entropy_value(const EntropySpec& spec, const SimplexPoint& mu) {
  spec.validate();
  return phi_base_value(spec, mu.weights()) / spec.eta;
}

DualVector entropy_gradient(const EntropySpec& spec, const SimplexPoint& mu) {
  spec.validate();
  const std::size_t n = mu.dimension();
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (mu[i] <= 0.0 && spec.boundary_singular())
      throw BoundaryGradientError("entropy gradient: boundary point for singular family");
    g[i] = phi_base_derivative(spec, mu[i]) / spec.eta;
  }
  return DualVector(std::move(g));
}

double conjugate(const EntropySpec& spec, const DualVector& v,
                 const ConjugateSolverConfig& cfg) {
  spec.validate();
  if (spec.family == EntropyFamily::kNegShannon) {
    // (1/eta) log sum exp(eta v), stabilized by the max.
    double m = -std::numeric_limits<double>::infinity();
    for (double x : v) m = std::max(m, x);
    double acc = 0.0;
    for (double x : v) acc += std::exp(spec.eta * (x - m));
    return std::log(acc) / spec.eta + m;
  }
  return conjugate_numeric(spec, v, cfg);
}

double conjugate_numeric(const EntropySpec& spec, const DualVector& v,
                         const ConjugateSolverConfig& cfg) {
  spec.validate();
  cfg.validate();
  double shift = -std::numeric_limits<double>::infinity();
  for (double x : v) shift = std::max(shift, x);
  std::vector<double> centered(v.values());
  for (double& x : centered) x -= shift;
  AscentState st = solve_conjugate(spec, centered, cfg);
  return st.value + shift;
}

SimplexPoint conjugate_gradient(const EntropySpec& spec, const DualVector& v,
                                const ConjugateSolverConfig& cfg) {
  spec.validate();
  if (spec.family == EntropyFamily::kNegShannon) {
    return SimplexPoint(softmax_scaled(v.values(), spec.eta));
  }
  cfg.validate();
  double shift = -std::numeric_limits<double>::infinity();
  for (double x : v) shift = std::max(shift, x);
  std::vector<double> centered(v.values());
  for (double& x : centered) x -= shift;
  AscentState st = solve_conjugate(spec, centered, cfg);
  return SimplexPoint(std::move(st.mu));
}

double conjugate_at_gradient(const EntropySpec& spec, const SimplexPoint& mu) {
  const DualVector g = entropy_gradient(spec, mu);
  double dot = 0.0;
  for (std::size_t i = 0; i < mu.dimension(); ++i) dot += mu[i] * g[i];
  return dot - entropy_value(spec, mu);
}

double bregman(const EntropySpec& spec, const SimplexPoint& mu,
               const SimplexPoint& mu_prime) {
  if (mu.dimension() != mu_prime.dimension())
    throw InvalidInputError("bregman: dimension mismatch");
  const DualVector g = entropy_gradient(spec, mu_prime);
  double inner = 0.0;
  for (std::size_t i = 0; i < mu.dimension(); ++i) inner += g[i] * (mu[i] - mu_prime[i]);
  return entropy_value(spec, mu) - entropy_value(spec, mu_prime) - inner;
}

}  // namespace gaa
