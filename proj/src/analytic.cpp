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

#include "analytic.hpp"

#include <cmath>

namespace seqcert {

double deterministic_strategy_rate(const ScenarioParams& params, double c, int lambda) {
  params.validate();
  if (c < 1.0 || c > 2.0) throw invalid_input("strategy scale c outside [1,2]");
  if (lambda != 0 && lambda != 1) throw invalid_input("lambda must be 0 or 1");
  // Both strategies give the same rate on the symmetric ensemble.
  const double w2 = params.pure_overlap() * params.pure_overlap();
  return w2 + (1.0 - w2) * c / 2.0;
}

CriticalRates critical_rates(const ScenarioParams& params) {
  params.validate();
  const double w = params.pure_overlap();
  CriticalRates out;
  out.q_crit_bob = (1.0 + w * w) / 2.0;
  out.q_crit_charlie = 2.0 * w / (1.0 + w * w);
  return out;
}

namespace {

void check_chain_args(int n, double x) {
  if (n < 2 || n > 12) throw invalid_input("chain size outside [2,12]");
  if (x < 0.0 || x > 1.0) throw invalid_input("overlap product outside [0,1]");
}

ChainFeasibility chain_feasible_default(int n, double x) {
  ChainFeasibility out;
  out.n_parties = n;
  out.x = x;
  const double threshold = (1.0 + x * x) / 2.0;
  out.feasible = x <= std::pow(threshold, n);
  if (out.feasible) {
    std::vector<double> rates(n, threshold);
    rates[n - 1] = x / std::pow(threshold, n - 1);
    out.rates = std::move(rates);
  }
  return out;
}

ChainFeasibility chain_feasible_literal(int n, double x) {
  ChainFeasibility out;
  out.n_parties = n;
  out.x = x;
  // Intermediate rates at their maximal allowed values, overlap product
  // updated through x_i = x_{i-1} / Q_i; the last rate is the minimal one.
  std::vector<double> rates;
  double xi = x;
  for (int i = 1; i < n; ++i) {
    const double qi = (1.0 + xi * xi) / 2.0;
    rates.push_back(qi);
    xi = std::min(1.0, xi / qi);
  }
  rates.push_back(xi);
  out.feasible = true;
  for (int i = 0; i + 1 < n; ++i) out.feasible = out.feasible && rates.back() >= rates[i];
  out.rates = std::move(rates);
  return out;
}

}  // namespace

ChainFeasibility chain_feasible(int n, double x, ChainCriterion criterion) {
  check_chain_args(n, x);
  return criterion == ChainCriterion::Default ? chain_feasible_default(n, x)
                                              : chain_feasible_literal(n, x);
}

double delta_threshold(int n, ChainCriterion criterion) {
  check_chain_args(n, 0.0);
  double lo = 0.0;
  double hi = 1.0 - 1e-9;
  const bool lo_feasible = chain_feasible(n, lo, criterion).feasible;
  // Bisection on the feasibility flip; the default criterion is feasible at
  // small x, the literal recursion at large x.
  while (hi - lo > 1e-7) {
    const double mid = 0.5 * (lo + hi);
    const bool f = chain_feasible(n, mid, criterion).feasible;
    if (f == lo_feasible) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace seqcert
