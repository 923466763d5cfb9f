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

#include "gaussradau.hpp"

#include <cmath>

namespace seqcert {

RadauQuadrature radau_quadrature(int m) {
  if (m < 2 || m > 64) throw invalid_input("radau_quadrature: m outside [2,64]");

  // Recurrence coefficients of the monic shifted-Legendre polynomials on
  // [0,1]: alpha_k = 1/2, beta_0 = 1, beta_k = k^2 / (4(4k^2 - 1)).
  std::vector<double> alpha(m, 0.5);
  std::vector<double> beta(m, 0.0);
  beta[0] = 1.0;
  for (int k = 1; k < m; ++k) {
    beta[k] = static_cast<double>(k) * k / (4.0 * (4.0 * k * k - 1.0));
  }

  // Endpoint modification: replace the last diagonal entry so that x = 1
  // becomes a node. p_k evaluated at 1 through the three-term recurrence.
  const double endpoint = 1.0;
  double p_prev = 0.0, p_cur = 1.0;
  for (int k = 0; k + 1 < m; ++k) {
    const double p_next = (endpoint - alpha[k]) * p_cur - beta[k] * p_prev;
    p_prev = p_cur;
    p_cur = p_next;
  }
  alpha[m - 1] = endpoint - beta[m - 1] * p_prev / p_cur;

  RealMatrix jacobi = RealMatrix::Zero(m, m);
  for (int k = 0; k < m; ++k) {
    jacobi(k, k) = alpha[k];
    if (k + 1 < m) {
      const double off = std::sqrt(beta[k + 1]);
      jacobi(k, k + 1) = off;
      jacobi(k + 1, k) = off;
    }
  }

  Eigen::SelfAdjointEigenSolver<RealMatrix> es(jacobi);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("radau_quadrature: eigensolver failed");
  }

  RadauQuadrature quad;
  quad.m = m;
  quad.nodes.resize(m);
  quad.weights.resize(m);
  for (int k = 0; k < m; ++k) {
    quad.nodes[k] = es.eigenvalues()(k);
    const double v0 = es.eigenvectors()(0, k);
    quad.weights[k] = beta[0] * v0 * v0;
  }
  // Eigen returns eigenvalues sorted ascending, so the fixed node is last.
  quad.nodes[m - 1] = 1.0;

  const double ln2 = std::log(2.0);
  quad.tau.resize(m);
  quad.c_m = 0.0;
  for (int k = 0; k < m; ++k) {
    quad.tau[k] = quad.weights[k] / (quad.nodes[k] * ln2);
    if (k < m - 1) quad.c_m += quad.tau[k];
  }

  for (int k = 0; k < m; ++k) {
    if (quad.weights[k] <= 0.0 || quad.nodes[k] <= 0.0 || quad.nodes[k] > 1.0) {
      throw std::runtime_error("radau_quadrature: invalid node or weight");
    }
    if (k > 0 && quad.nodes[k] <= quad.nodes[k - 1]) {
      throw std::runtime_error("radau_quadrature: nodes not increasing");
    }
  }
  return quad;
}

}  // namespace seqcert
