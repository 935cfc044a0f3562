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

#ifndef GAA_CORE_HPP
#define GAA_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gaa/errors.hpp"

namespace gaa {

// Invariant tolerance: a valid simplex point sums to 1 within this bound.
inline constexpr double kSimplexSumTolerance = 1e-9;
// Constructor acceptance: inputs whose sum is within this bound of 1 are
// renormalized; anything worse is rejected as user error.
inline constexpr double kSimplexRenormTolerance = 1e-6;

/// A probability vector over a finite index set. Immutable once built.
/// Construction renormalizes float drift (sum within 1e-6 of 1) and rejects
/// negative weights and non-finite entries.
class SimplexPoint {
 public:
  explicit SimplexPoint(std::vector<double> weights);

  static SimplexPoint uniform(std::size_t dimension);
  /// Point mass on `index`.
  static SimplexPoint vertex(std::size_t dimension, std::size_t index);

  std::size_t dimension() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }

  std::vector<double>::const_iterator begin() const { return weights_.begin(); }
  std::vector<double>::const_iterator end() const { return weights_.end(); }

 private:
  std::vector<double> weights_;
};

/// A real vector over a finite index set, interpreted modulo additive
/// multiples of the all-ones vector. The representation is the raw vector;
/// the quotient lives in `dual_equivalent`. Entries must be finite.
class DualVector {
 public:
  explicit DualVector(std::vector<double> values);

  static DualVector zeros(std::size_t dimension);

  std::size_t dimension() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  std::vector<double>::const_iterator begin() const { return values_.begin(); }
  std::vector<double>::const_iterator end() const { return values_.end(); }

  DualVector operator+(const DualVector& other) const;
  DualVector operator-(const DualVector& other) const;

 private:
  std::vector<double> values_;
};

/// Equality modulo span{1}: (v - w) minus its mean has sup-norm <= tolerance.
bool dual_equivalent(const DualVector& v, const DualVector& w, double tolerance);

/// Regular grid on a simplex: all compositions of `resolution` into
/// `dimension` nonnegative parts, each divided by `resolution`.
struct SimplexGrid {
  std::size_t dimension = 1;
  std::size_t resolution = 1;
};

/// Number of grid points: C(resolution + dimension - 1, dimension - 1).
std::uint64_t grid_size(const SimplexGrid& grid);

std::vector<SimplexPoint> enumerate_grid(const SimplexGrid& grid);

/// Visits every grid point as a raw weight vector (no per-point allocation
/// beyond the shared buffer). `fn` must not retain the reference.
template <typename F>
void for_each_grid_point(const SimplexGrid& grid, F&& fn) {
  if (grid.dimension < 1 || grid.resolution < 1)
    throw InvalidInputError("simplex grid: dimension and resolution must be >= 1");
  const std::size_t dim = grid.dimension;
  const double res = static_cast<double>(grid.resolution);
  std::vector<std::uint32_t> counts(dim, 0);
  std::vector<double> point(dim, 0.0);
  counts[0] = static_cast<std::uint32_t>(grid.resolution);
  for (;;) {
    for (std::size_t i = 0; i < dim; ++i) point[i] = counts[i] / res;
    fn(static_cast<const std::vector<double>&>(point));
    if (dim == 1) break;
    // Lexicographic successor over compositions.
    if (counts[0] > 0) {
      --counts[0];
      ++counts[1];
    } else {
      std::size_t j = 1;
      while (j < dim && counts[j] == 0) ++j;
      if (j + 1 >= dim) break;
      counts[0] = counts[j] - 1;
      counts[j] = 0;
      ++counts[j + 1];
    }
  }
}

/// Euclidean projection onto the probability simplex.
SimplexPoint project_to_simplex(const std::vector<double>& v);

/// Pushes every coordinate to at least epsilon (up to the renormalization
/// factor) and renormalizes. Identity when all coordinates already clear
/// epsilon. Requires 0 < epsilon < 1/dimension.
SimplexPoint clamp_interior(const SimplexPoint& p, double epsilon);

}  // namespace gaa

#endif  // GAA_CORE_HPP
