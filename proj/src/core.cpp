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

#include "gaa/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gaa {

namespace {

void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw InvalidInputError(std::string(what) + ": non-finite entry");
  }
}

}  // namespace

SimplexPoint::SimplexPoint(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw InvalidInputError("simplex point: empty weight vector");
  require_finite(weights_, "simplex point");
  double sum = 0.0;
  for (double& w : weights_) {
    if (w < 0.0) {
      // Tolerate rounding noise only.
      if (w < -kSimplexSumTolerance) throw InvalidInputError("simplex point: negative weight");
      w = 0.0;
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSimplexRenormTolerance)
    throw InvalidInputError("simplex point: weights sum too far from 1");
  if (sum != 1.0) {
    for (double& w : weights_) w /= sum;
  }
}

SimplexPoint SimplexPoint::uniform(std::size_t dimension) {
  if (dimension == 0) throw InvalidInputError("simplex point: dimension must be >= 1");
  return SimplexPoint(std::vector<double>(dimension, 1.0 / static_cast<double>(dimension)));
}

SimplexPoint SimplexPoint::vertex(std::size_t dimension, std::size_t index) {
  if (dimension == 0 || index >= dimension)
    throw InvalidInputError("simplex point: vertex index out of range");
  std::vector<double> w(dimension, 0.0);
  w[index] = 1.0;
  return SimplexPoint(std::move(w));
}

DualVector::DualVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidInputError("dual vector: empty");
  require_finite(values_, "dual vector");
}

DualVector DualVector::zeros(std::size_t dimension) {
  if (dimension == 0) throw InvalidInputError("dual vector: dimension must be >= 1");
  return DualVector(std::vector<double>(dimension, 0.0));
}

DualVector DualVector::operator+(const DualVector& other) const {
  if (other.dimension() != dimension()) throw InvalidInputError("dual vector: dimension mismatch");
  std::vector<double> out(values_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.values_[i];
  return DualVector(std::move(out));
}

DualVector DualVector::operator-(const DualVector& other) const {
  if (other.dimension() != dimension()) throw InvalidInputError("dual vector: dimension mismatch");
  std::vector<double> out(values_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= other.values_[i];
  return DualVector(std::move(out));
}

bool dual_equivalent(const DualVector& v, const DualVector& w, double tolerance) {
  if (v.dimension() != w.dimension()) return false;
  const std::size_t n = v.dimension();
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += v[i] - w[i];
  mean /= static_cast<double>(n);
  double sup = 0.0;
  for (std::size_t i = 0; i < n; ++i) sup = std::max(sup, std::abs(v[i] - w[i] - mean));
  return sup <= tolerance;
}

std::uint64_t grid_size(const SimplexGrid& grid) {
  if (grid.dimension < 1 || grid.resolution < 1)
    throw InvalidInputError("simplex grid: dimension and resolution must be >= 1");
  // C(resolution + dimension - 1, dimension - 1), multiplicative form.
  const std::uint64_t k = grid.dimension - 1;
  const std::uint64_t n = grid.resolution + grid.dimension - 1;
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

std::vector<SimplexPoint> enumerate_grid(const SimplexGrid& grid) {
  std::vector<SimplexPoint> points;
  points.reserve(grid_size(grid));
  for_each_grid_point(grid, [&](const std::vector<double>& w) {
    points.push_back(SimplexPoint(w));
  });
  return points;
}

SimplexPoint project_to_simplex(const std::vector<double>& v) {
  if (v.empty()) throw InvalidInputError("project_to_simplex: empty input");
  require_finite(v, "project_to_simplex");
  const std::size_t n = v.size();
  std::vector<double> u(v);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumulative = 0.0;
  double tau = u[0] - 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    cumulative += u[i];
    const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) tau = t;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = std::max(v[i] - tau, 0.0);
  return SimplexPoint(std::move(w));
}

SimplexPoint clamp_interior(const SimplexPoint& p, double epsilon) {
  const std::size_t n = p.dimension();
  if (!(epsilon > 0.0) || !(epsilon < 1.0 / static_cast<double>(n)))
    throw InvalidInputError("clamp_interior: epsilon must satisfy 0 < epsilon < 1/dimension");
  bool changed = false;
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = p[i];
    if (w[i] < epsilon) {
      w[i] = epsilon;
      changed = true;
    }
  }
  if (!changed) return p;
  double sum = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= sum;
  return SimplexPoint(std::move(w));
}

}  // namespace gaa
