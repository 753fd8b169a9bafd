// Copyright 2026 The Prophet Samples Authors.
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

#ifndef PROPHET_QUADRATURE_H_
#define PROPHET_QUADRATURE_H_

#include <vector>

namespace prophet {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

// m-point Gauss-Legendre rule, exact for polynomials of degree <= 2m - 1.
// Rules up to 64 points are cached after the first call.
const GaussRule& gauss_legendre(int m);

// Integrates f over [a, b] with the m-point rule.
template <typename F>
double integrate_gauss(F&& f, double a, double b, int m) {
  const GaussRule& rule = gauss_legendre(m);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

}  // namespace prophet

#endif  // PROPHET_QUADRATURE_H_
