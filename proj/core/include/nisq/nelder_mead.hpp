// Copyright 2026 The nisqlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace nisq {

struct NelderMeadOptions {
  double initial_step = 0.25;
  int max_evaluations = 1000;
  /// Stop when the spread of simplex values falls below this.
  double f_tolerance = 1e-10;
  /// ... and the simplex diameter below this.
  double x_tolerance = 1e-8;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Downhill simplex minimization with the standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2). The start point
/// is evaluated first, so the result is never worse than f(x0). Never makes
/// more than max_evaluations calls; hitting the cap returns the best point
/// seen with converged = false.
inline NelderMeadResult nelder_mead_minimize(const std::function<double(std::span<const double>)>& f,
                                             std::vector<double> x0, const NelderMeadOptions& options = {}) {
  const std::size_t dim = x0.size();
  NelderMeadResult result;
  result.x = x0;
  result.value = std::numeric_limits<double>::infinity();
  struct OutOfBudget {};
  auto eval = [&](const std::vector<double>& x) {
    if (result.evaluations >= options.max_evaluations) throw OutOfBudget{};
    ++result.evaluations;
    const double v = f(x);
    if (v < result.value) {
      result.value = v;
      result.x = x;
    }
    return v;
  };
  try {
    std::vector<std::vector<double>> simplex(dim + 1, x0);
    std::vector<double> values(dim + 1);
    values[0] = eval(x0);
    for (std::size_t i = 0; i < dim; ++i) {
      simplex[i + 1][i] += options.initial_step;
      values[i + 1] = eval(simplex[i + 1]);
    }

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), trial(dim), trial2(dim);
    auto point_along = [&](double coef, std::vector<double>& out, const std::vector<double>& worst) {
      for (std::size_t j = 0; j < dim; ++j) out[j] = centroid[j] + coef * (worst[j] - centroid[j]);
    };

    while (result.evaluations < options.max_evaluations) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
      const std::size_t best = order.front();
      const std::size_t worst = order.back();
      const std::size_t second_worst = order[dim > 0 ? dim - 1 : 0];

      double diameter = 0.0;
      for (std::size_t i = 0; i <= dim; ++i) {
        double d = 0.0;
        for (std::size_t j = 0; j < dim; ++j) d = std::max(d, std::abs(simplex[i][j] - simplex[best][j]));
        diameter = std::max(diameter, d);
      }
      if (values[worst] - values[best] <= options.f_tolerance && diameter <= options.x_tolerance) {
        result.converged = true;
        break;
      }
      if (dim == 0) {
        result.converged = true;
        break;
      }

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t i = 0; i <= dim; ++i) {
        if (i == worst) continue;
        for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j] / static_cast<double>(dim);
      }

      point_along(-1.0, trial, simplex[worst]);
      const double f_reflect = eval(trial);
      if (f_reflect < values[best]) {
        point_along(-2.0, trial2, simplex[worst]);
        const double f_expand = eval(trial2);
        if (f_expand < f_reflect) {
          simplex[worst] = trial2;
          values[worst] = f_expand;
        } else {
          simplex[worst] = trial;
          values[worst] = f_reflect;
        }
        continue;
      }
      if (f_reflect < values[second_worst]) {
        simplex[worst] = trial;
        values[worst] = f_reflect;
        continue;
      }
      const bool outside = f_reflect < values[worst];
      point_along(outside ? -0.5 : 0.5, trial2, simplex[worst]);
      const double f_contract = eval(trial2);
      if (f_contract < (outside ? f_reflect : values[worst])) {
        simplex[worst] = trial2;
        values[worst] = f_contract;
        continue;
      }
      for (std::size_t i = 0; i <= dim; ++i) {
        if (i == best) continue;
        for (std::size_t j = 0; j < dim; ++j)
          simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
        values[i] = eval(simplex[i]);
      }
    }

  } catch (const OutOfBudget&) {
    result.converged = false;
  }
  return result;
}

}  // namespace nisq
