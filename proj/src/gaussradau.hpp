// Copyright 2026 The seqcert authors
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

#ifndef SEQCERT_GAUSSRADAU_HPP
#define SEQCERT_GAUSSRADAU_HPP

#include <vector>

#include "matops.hpp"

namespace seqcert {

/// Gauss-Radau quadrature on [0,1] with the fixed node at 1, plus the
/// entropy-bound constants tau_i = w_i / (t_i ln 2) and c_m (summed over the
/// m-1 interior nodes; the endpoint's variational term vanishes at the
/// optimum).
struct RadauQuadrature {
  int m = 0;
  std::vector<double> nodes;    // strictly increasing, last entry exactly 1
  std::vector<double> weights;  // positive, sum to 1
  std::vector<double> tau;      // tau[i] = weights[i] / (nodes[i] * ln 2)
  double c_m = 0.0;             // sum of tau over interior nodes

  int interior_count() const { return m - 1; }
};

/// Build the m-point rule (2 <= m <= 64) via the Jacobi-matrix eigenproblem
/// with the endpoint modification. Exact for polynomials of degree <= 2m-2.
RadauQuadrature radau_quadrature(int m);

}  // namespace seqcert

#endif
