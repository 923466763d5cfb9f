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

#ifndef SEQCERT_QUANTUM_HPP
#define SEQCERT_QUANTUM_HPP

#include <array>
#include <optional>
#include <vector>

#include "matops.hpp"

namespace seqcert {

// Outcome alphabet for both measurement stages: the two preparation labels
// plus the inconclusive outcome.
inline constexpr int kOutcomes = 3;
inline constexpr int kInconclusive = 2;

/// Two pure qubit preparations with overlap `delta`, mixed with white noise
/// of weight 1-r. Only n=2, d=2 is supported.
struct ScenarioParams {
  double delta = 0.5;
  double r = 1.0;
  int n = 2;
  int d = 2;

  void validate() const;
  /// Overlap of the complementary pure pair, r*delta.
  double pure_overlap() const { return r * delta; }
};

struct DensityOperator {
  HermitianOperator op;

  explicit DensityOperator(const HermitianOperator& h);
  Eigen::Index dim() const { return op.dim(); }
};

struct Ensemble {
  std::vector<DensityOperator> states;
  std::vector<double> priors;

  Ensemble(std::vector<DensityOperator> s, std::vector<double> p);
  Eigen::Index dim() const { return states.front().dim(); }
  /// Prior-weighted average state.
  ComplexMatrix average() const;
};

/// Purity weight t and pure-part overlap s of Bob's post-measurement states.
struct PostMeasurementParams {
  double t = 0.0;
  double s = 0.0;
};

/// Honest sequential strategy: Bob's maximum confidence instrument followed
/// by Charlie's maximum confidence measurement on the post-measurement
/// states. Charlie runs at his minimal inconclusive rate.
struct MCMChain {
  std::array<HermitianOperator, kOutcomes> bob_povm;     // M_b
  std::array<ComplexMatrix, kOutcomes> bob_kraus;        // K_b, M_b = K_b' K_b
  std::array<HermitianOperator, kOutcomes> charlie_povm; // N_c
  // Joint elements G[b][c] = K_b' N_c K_b; sum over (b,c) is the identity.
  std::array<std::array<HermitianOperator, kOutcomes>, kOutcomes> joint;

  double bob_inconclusive = 0.0;      // target Q_B
  double charlie_inconclusive = 0.0;  // r*delta / Q_B
};

struct JointDistribution {
  // p[b][c][x]
  std::array<std::array<std::array<double, 2>, kOutcomes>, kOutcomes> p{};

  double marginal_b(int b, int x) const;
  double marginal_c(int c, int x) const;
};

/// Confidences and inconclusive rates constraining the adversary.
struct ObservedStats {
  double conf_b = 0.0;
  double inc_b = 0.0;
  double conf_c = 0.0;
  double inc_c = 0.0;

  void validate() const;
};

/// observed_stats() output; confidences are undefined when a party has zero
/// conclusive mass.
struct SimulatedStats {
  std::optional<double> conf_b;
  double inc_b = 0.0;
  std::optional<double> conf_c;
  double inc_c = 0.0;

  /// Throws invalid_input if either confidence is undefined.
  ObservedStats require() const;
};

/// The canonical real-amplitude pure pair with the given overlap:
/// sqrt((1+w)/2)|0> +/- sqrt((1-w)/2)|1>.
std::array<ComplexVector, 2> canonical_pair(double overlap);

/// Alice's preparations r|psi_x><psi_x| + (1-r)I/2 with equal priors.
Ensemble build_preparations(const ScenarioParams& params);

/// Closed-form maximum confidence (1 + r sqrt(1-delta^2)/sqrt(1-r^2 delta^2))/2.
/// The degenerate r=delta=1 point returns 1/2.
double max_confidence(const ScenarioParams& params);

struct ComplementaryDecomposition {
  std::array<ComplexVector, 2> phi;
  double confidence = 0.5;
  bool degenerate = false;  // r = 0: maximally mixed, no unique pure pair
};

/// rho_0 = C|phi_0><phi_0| + (1-C)|phi_1><phi_1| (and swapped for rho_1),
/// with <phi_0|phi_1> = r*delta.
ComplementaryDecomposition complementary_decomposition(const ScenarioParams& params);

/// Purity weight and overlap of the post-measurement states when Bob's
/// inconclusive rate is q_b. Requires r*delta <= q_b <= 1.
PostMeasurementParams post_measurement_params(const ScenarioParams& params, double q_b);

/// The sigma_x ensemble seen by Charlie, t|phi_x><phi_x| + (1-t)I/2.
Ensemble build_post_measurement_ensemble(const ScenarioParams& params, double q_b);

/// Honest chain at Bob inconclusive rate q_b; both parties attain the
/// scenario's maximum confidence.
MCMChain build_mcm_chain(const ScenarioParams& params, double q_b);

/// p(b,c|x) = Tr[rho_x K_b' N_c K_b] for the single honest strategy.
JointDistribution simulate_joint(const MCMChain& chain, const Ensemble& ensemble);

/// Aggregated confidences (conclusive-and-correct over conclusive mass) and
/// inconclusive rates.
SimulatedStats observed_stats(const JointDistribution& dist,
                              const std::vector<double>& priors);

/// The stats an honest chain produces, in closed form: both confidences at
/// max_confidence, Bob at q_b, Charlie at r*delta/q_b.
ObservedStats honest_stats(const ScenarioParams& params, double q_b);

}  // namespace seqcert

#endif
