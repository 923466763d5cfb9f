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

#ifndef SEQCERT_CERTIFY_HPP
#define SEQCERT_CERTIFY_HPP

#include <optional>

#include "gaussradau.hpp"
#include "quantum.hpp"
#include "sdp.hpp"

namespace seqcert {

enum class Target { Bob, CharlieTrusted, Charlie, Joint };
enum class BoundKind { MinEntropy, ShannonMinTradeoff };

/// Coefficients of the certified affine bound as a function of the observed
/// statistics. For min-tradeoff bounds:
///   f(stats) = c_m - g_b Q^B - h_b C^B (1-Q^B) - g_c Q^C - h_c C^C (1-Q^C)
///              - trace_r .
/// The same dual point stays feasible for any stats, so re-evaluating at
/// different stats is sound.
struct TradeoffCoeffs {
  double g_b = 0.0, h_b = 0.0;
  double g_c = 0.0, h_c = 0.0;
  double trace_r = 0.0;
  double c_m = 0.0;
};

struct EntropyBound {
  BoundKind kind = BoundKind::MinEntropy;
  Target target = Target::Bob;
  double value_bits = 0.0;     // certified, clamped at 0
  double raw_value = 0.0;      // unclamped certified value (p_g bound / f_min)
  double guessing_prob = 1.0;  // min-entropy kind: certified upper bound, clamped to [0,1]
  std::optional<TradeoffCoeffs> tradeoff;
  DualCertificate certificate;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  SolveStatus status = SolveStatus::NumericalTrouble;
};

struct BuildOptions {
  int x_star = 0;
  // Diagnostic mode: enter the confidence/rate constraints as equalities
  // instead of the one-sided form.
  bool stats_as_equalities = false;
};

/// A built program plus the constraint indices needed to read the named
/// dual multipliers back out of a solution.
struct ProgramInfo {
  SDPProblem problem;
  int rate_b = -1, conf_b = -1;
  int rate_c = -1, conf_c = -1;
  double c_m = 0.0;
  ObservedStats stats;
};

ProgramInfo build_guessing_program(Target target, const Ensemble& ensemble,
                                   const ObservedStats& stats,
                                   const BuildOptions& opts = {});
ProgramInfo build_shannon_program(Target target, const Ensemble& ensemble,
                                  const RadauQuadrature& quad,
                                  const ObservedStats& stats,
                                  const BuildOptions& opts = {});

/// Maximum confidence via the normalized SDP (Tr[avg M] = 1 makes the
/// Bayes ratio linear); agrees with the closed form on qubit pairs.
double max_confidence_sdp(const Ensemble& ensemble,
                          const SolverOptions& solver_opts = {});

/// Certified min-entropy bound. For CharlieTrusted the ensemble must be the
/// post-measurement ensemble and the Charlie stats fields are used.
EntropyBound guessing_bound(Target target, const Ensemble& ensemble,
                            const ObservedStats& stats, int x_star = 0,
                            const SolverOptions& solver_opts = {});

/// Certified Shannon-entropy min-tradeoff bound with m Gauss-Radau nodes.
EntropyBound shannon_tradeoff(Target target, const Ensemble& ensemble, int m,
                              const ObservedStats& stats, int x_star = 0,
                              const SolverOptions& solver_opts = {});

/// Affine evaluation of a min-tradeoff function at arbitrary stats,
/// clamped at zero.
double evaluate_tradeoff(const TradeoffCoeffs& coeffs, const ObservedStats& stats);
double evaluate_tradeoff_raw(const TradeoffCoeffs& coeffs, const ObservedStats& stats);

/// Asymptotic accumulated rate of a Shannon bound (first-order term only);
/// rejects min-entropy inputs.
double eat_first_order(const EntropyBound& bound);

const char* target_name(Target t);
std::optional<Target> target_from_name(const std::string& name);

}  // namespace seqcert

#endif
