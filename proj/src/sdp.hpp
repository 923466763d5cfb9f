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

#ifndef SEQCERT_SDP_HPP
#define SEQCERT_SDP_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "matops.hpp"

namespace seqcert {

enum class Sense { Minimize, Maximize };
enum class ConstraintKind { Equality, GreaterEqual };
enum class SolveStatus { Optimal, Infeasible, NumericalTrouble };

/// One affine constraint sum_j <coeff_j, X_j> (= or >=) rhs. Coefficient
/// matrices are Hermitian and sized to their block.
struct SDPConstraint {
  std::string label;
  std::vector<std::pair<int, ComplexMatrix>> coeffs;
  double rhs = 0.0;
  ConstraintKind kind = ConstraintKind::Equality;
  // For GreaterEqual constraints: a rigorous upper bound on the slack
  // <A,X> - rhs over the primal feasible set. Enters the certificate
  // rounding when a multiplier has the wrong sign.
  double slack_cap = 0.0;
};

/// Block-diagonal conic program over Hermitian PSD variable blocks.
struct SDPProblem {
  Sense sense = Sense::Maximize;
  std::vector<std::pair<std::string, int>> blocks;  // (label, dim)
  std::vector<std::pair<int, ComplexMatrix>> objective;
  double objective_constant = 0.0;
  std::vector<SDPConstraint> constraints;
  // Rigorous upper bound on the total trace of the matrix blocks of any
  // primal-feasible point; multiplies the measured LMI violation during
  // safe rounding. Builders must set it.
  double block_trace_cap = 0.0;

  int add_block(const std::string& label, int dim);
  SDPConstraint& add_constraint(const std::string& label, ConstraintKind kind,
                                double rhs);
  void set_objective(int block, const ComplexMatrix& coeff);

  int num_constraints() const { return static_cast<int>(constraints.size()); }
  int constraint_index(const std::string& label) const;  // -1 when absent

  void validate() const;
  /// Sparse-triplet text serialization for debugging; see README.
  void dump(std::ostream& os) const;
};

struct SolverOptions {
  int max_iterations = 200;
  double tolerance = 1e-8;  // max(primal res, dual res, relative gap)
  bool verbose = false;
};

struct SDPSolution {
  SolveStatus status = SolveStatus::NumericalTrouble;
  double primal_value = 0.0;  // in the problem's stated sense, incl constant
  double dual_value = 0.0;
  double gap = 0.0;  // |primal - dual| / max(1, |primal|, |dual|)
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  std::vector<ComplexMatrix> primal_blocks;
  // One multiplier per constraint, in order. Sign convention: for the
  // internal minimization form, Z = C_int - sum_i y_i A_i >= 0 and
  // GreaterEqual multipliers are nonnegative.
  std::vector<double> dual_multipliers;
};

/// A dual feasible point and the rigorous bound it certifies. The value is
/// safe-rounded: the measured LMI violation is absorbed through the trace
/// caps, always moving the bound to the conservative side.
struct DualCertificate {
  std::vector<double> multipliers;
  // Most positive eigenvalue across the recomputed LMI blocks (and sign
  // violations of inequality multipliers) before rounding; <= 0 means the
  // point is feasible as-is.
  double slack_margin = 0.0;
  double certified_value = 0.0;
  bool valid = false;
};

SDPSolution solve(const SDPProblem& problem, const SolverOptions& opts = {});

/// Recompute every LMI block of the candidate point with the independent
/// eigenvalue path and return the safe-rounded certificate. Never returns
/// valid=true when the post-rounding violation would be positive.
DualCertificate verify_certificate(const SDPProblem& problem,
                                   const DualCertificate& candidate);
DualCertificate verify_certificate(const SDPProblem& problem,
                                   const std::vector<double>& multipliers);

/// Real-symmetric embedding of a Hermitian matrix, [[Re, -Im], [Im, Re]].
/// Internal to the solver but exposed for its round-trip test.
RealMatrix embed_hermitian(const ComplexMatrix& h);
ComplexMatrix unembed_hermitian(const RealMatrix& e);

}  // namespace seqcert

#endif
