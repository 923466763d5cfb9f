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

#ifndef SEQCERT_ANALYTIC_HPP
#define SEQCERT_ANALYTIC_HPP

#include <optional>
#include <vector>

#include "quantum.hpp"

namespace seqcert {

/// Inconclusive-rate thresholds beyond (Bob) and below (Charlie) which the
/// observed statistics admit a deterministic classical simulation.
struct CriticalRates {
  double q_crit_bob = 0.0;      // (1 + r^2 delta^2) / 2
  double q_crit_charlie = 0.0;  // 2 r delta / (1 + r^2 delta^2)
};

enum class ChainCriterion {
  // Every party's rate at most the deterministic-simulation threshold
  // (1+x^2)/2, last party at the minimal rate; reproduces the two-party
  // window exactly.
  Default,
  // The literal recursion with thresholds updated through
  // t_i s_i = t_{i-1} s_{i-1} / Q_i; kept for comparison.
  LiteralRecursion,
};

struct ChainFeasibility {
  int n_parties = 2;
  double x = 0.0;  // the product r*delta
  bool feasible = false;
  std::optional<std::vector<double>> rates;
};

/// Averaged inconclusive rate of the dichotomic deterministic strategy with
/// POVM scale c in [1,2]: r^2 d^2 + (1 - r^2 d^2) c / 2.
double deterministic_strategy_rate(const ScenarioParams& params, double c, int lambda);

CriticalRates critical_rates(const ScenarioParams& params);

/// Can all n sequential measurements certify randomness at overlap product x?
ChainFeasibility chain_feasible(int n, double x,
                                ChainCriterion criterion = ChainCriterion::Default);

/// Largest x with chain_feasible(n, x), by bisection to 1e-6.
double delta_threshold(int n, ChainCriterion criterion = ChainCriterion::Default);

}  // namespace seqcert

#endif
