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

#include "quantum.hpp"

#include <cmath>

namespace seqcert {

namespace {

constexpr double kTol = 1e-10;

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

// Rotate a real qubit state by +90 degrees: (a,b) -> (-b,a).
ComplexVector perp(const ComplexVector& v) {
  ComplexVector w(2);
  w << -v(1), v(0);
  return w;
}

}  // namespace

void ScenarioParams::validate() const {
  if (!(delta >= 0.0 && delta <= 1.0)) throw invalid_input("delta outside [0,1]");
  if (!(r >= 0.0 && r <= 1.0)) throw invalid_input("r outside [0,1]");
  if (n != 2 || d != 2) throw invalid_input("only n=2 preparations on d=2 carriers supported");
}

DensityOperator::DensityOperator(const HermitianOperator& h) : op(h) {
  if (std::abs(op.trace() - 1.0) > kTol) throw invalid_input("density operator trace != 1");
  if (min_eigenvalue(op) < -kTol) throw invalid_input("density operator not PSD");
}

Ensemble::Ensemble(std::vector<DensityOperator> s, std::vector<double> p)
    : states(std::move(s)), priors(std::move(p)) {
  if (states.empty() || states.size() != priors.size()) {
    throw invalid_input("ensemble: states/priors size mismatch");
  }
  double total = 0.0;
  for (double q : priors) {
    if (q < 0.0) throw invalid_input("ensemble: negative prior");
    total += q;
  }
  if (std::abs(total - 1.0) > 1e-12) throw invalid_input("ensemble: priors do not sum to 1");
  for (const auto& st : states) {
    if (st.dim() != states.front().dim()) throw invalid_input("ensemble: dimension mismatch");
  }
}

ComplexMatrix Ensemble::average() const {
  ComplexMatrix avg = ComplexMatrix::Zero(dim(), dim());
  for (size_t i = 0; i < states.size(); ++i) avg += priors[i] * states[i].op.mat();
  return avg;
}

double JointDistribution::marginal_b(int b, int x) const {
  double m = 0.0;
  for (int c = 0; c < kOutcomes; ++c) m += p[b][c][x];
  return m;
}

double JointDistribution::marginal_c(int c, int x) const {
  double m = 0.0;
  for (int b = 0; b < kOutcomes; ++b) m += p[b][c][x];
  return m;
}

void ObservedStats::validate() const {
  for (double v : {conf_b, inc_b, conf_c, inc_c}) {
    if (!(v >= 0.0 && v <= 1.0)) throw invalid_input("observed stats outside [0,1]");
  }
}

ObservedStats SimulatedStats::require() const {
  if (!conf_b || !conf_c) throw invalid_input("confidence undefined: zero conclusive mass");
  return ObservedStats{*conf_b, inc_b, *conf_c, inc_c};
}

std::array<ComplexVector, 2> canonical_pair(double overlap) {
  if (overlap < -1.0 || overlap > 1.0) throw invalid_input("overlap outside [-1,1]");
  const double cos_a = std::sqrt((1.0 + overlap) / 2.0);
  const double sin_a = std::sqrt((1.0 - overlap) / 2.0);
  ComplexVector v0(2), v1(2);
  v0 << cos_a, sin_a;
  v1 << cos_a, -sin_a;
  return {v0, v1};
}

Ensemble build_preparations(const ScenarioParams& params) {
  params.validate();
  const auto psi = canonical_pair(params.delta);
  const ComplexMatrix noise = (1.0 - params.r) * 0.5 * ComplexMatrix::Identity(2, 2);
  std::vector<DensityOperator> states;
  states.emplace_back(HermitianOperator(params.r * projector(psi[0]) + noise));
  states.emplace_back(HermitianOperator(params.r * projector(psi[1]) + noise));
  return Ensemble(std::move(states), {0.5, 0.5});
}

double max_confidence(const ScenarioParams& params) {
  params.validate();
  const double d2 = params.delta * params.delta;
  const double denom = 1.0 - params.r * params.r * d2;
  if (denom <= 0.0) return 0.5;  // r = delta = 1: identical preparations
  return 0.5 * (1.0 + params.r * std::sqrt(1.0 - d2) / std::sqrt(denom));
}

ComplementaryDecomposition complementary_decomposition(const ScenarioParams& params) {
  params.validate();
  ComplementaryDecomposition out;
  if (params.r == 0.0) {
    out.degenerate = true;
    out.confidence = 0.5;
    out.phi = canonical_pair(0.0);
    return out;
  }
  out.phi = canonical_pair(params.pure_overlap());
  out.confidence = max_confidence(params);
  return out;
}

PostMeasurementParams post_measurement_params(const ScenarioParams& params, double q_b) {
  params.validate();
  const double w = params.pure_overlap();
  if (q_b < w - 1e-12 || q_b > 1.0 + 1e-12) {
    throw invalid_input("inconclusive rate outside [r*delta, 1]");
  }
  PostMeasurementParams out;
  if (params.delta == 0.0) {
    // sigma_x = r|xi_x><xi_x| + (1-r)I/2 with orthogonal xi.
    out.t = params.r;
    out.s = 0.0;
    return out;
  }
  const double d2 = params.delta * params.delta;
  const double r2 = params.r * params.r;
  const double doq = params.delta / q_b;
  const double num = 1.0 - d2 + (1.0 - r2) * doq * doq;
  const double den = 1.0 - r2 * d2;
  out.t = params.r * std::sqrt(num / den);
  out.s = (out.t > 0.0) ? doq * std::sqrt(den / num) : 0.0;
  return out;
}

Ensemble build_post_measurement_ensemble(const ScenarioParams& params, double q_b) {
  const PostMeasurementParams pm = post_measurement_params(params, q_b);
  const auto phi = canonical_pair(pm.s);
  const ComplexMatrix noise = (1.0 - pm.t) * 0.5 * ComplexMatrix::Identity(2, 2);
  std::vector<DensityOperator> states;
  states.emplace_back(HermitianOperator(pm.t * projector(phi[0]) + noise));
  states.emplace_back(HermitianOperator(pm.t * projector(phi[1]) + noise));
  return Ensemble(std::move(states), {0.5, 0.5});
}

MCMChain build_mcm_chain(const ScenarioParams& params, double q_b) {
  params.validate();
  const double w = params.pure_overlap();
  if (w >= 1.0 - 1e-9) throw invalid_input("identical preparations: chain undefined");
  if (q_b < w - 1e-12 || q_b > 1.0 + 1e-12) {
    throw invalid_input("inconclusive rate outside [r*delta, 1]");
  }
  q_b = std::min(1.0, std::max(q_b, w));

  const auto phi = canonical_pair(w);
  const ComplexVector phi0p = perp(phi[0]);  // (-sin a, cos a)
  const ComplexVector phi1p = perp(phi[1]);  // (sin a, cos a)

  const double c = (1.0 - q_b) / (1.0 - w * w);
  const double a = q_b / (1.0 - w * w);
  // Overlap of the conditional states Bob forwards. q_b = 0 forces w = 0.
  const double kappa = (q_b > 0.0) ? w / q_b : 0.0;
  const auto xi = canonical_pair(kappa);

  MCMChain chain;
  chain.bob_inconclusive = q_b;
  chain.charlie_inconclusive = kappa;

  chain.bob_kraus[0] = std::sqrt(c) * xi[0] * phi1p.adjoint();
  chain.bob_kraus[1] = std::sqrt(c) * xi[1] * phi0p.adjoint();
  // The relative minus sign closes the completeness relation.
  chain.bob_kraus[kInconclusive] =
      std::sqrt(a) * (xi[0] * phi1p.adjoint() - xi[1] * phi0p.adjoint());
  for (int b = 0; b < kOutcomes; ++b) {
    chain.bob_povm[b] =
        HermitianOperator(chain.bob_kraus[b].adjoint() * chain.bob_kraus[b]);
  }

  const ComplexVector xi0p = perp(xi[0]);
  const ComplexVector xi1p = perp(xi[1]);
  const double dc = 1.0 / (1.0 + kappa);
  chain.charlie_povm[0] = HermitianOperator(dc * projector(xi1p));
  chain.charlie_povm[1] = HermitianOperator(dc * projector(xi0p));
  chain.charlie_povm[kInconclusive] = HermitianOperator(
      ComplexMatrix::Identity(2, 2) - chain.charlie_povm[0].mat() -
      chain.charlie_povm[1].mat());

  ComplexMatrix povm_sum = ComplexMatrix::Zero(2, 2);
  for (int b = 0; b < kOutcomes; ++b) povm_sum += chain.bob_povm[b].mat();
  if ((povm_sum - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() > kTol) {
    throw std::runtime_error("mcm chain: Bob POVM does not sum to identity");
  }
  if (min_eigenvalue(chain.charlie_povm[kInconclusive]) < -kTol) {
    throw std::runtime_error("mcm chain: Charlie inconclusive element not PSD");
  }

  ComplexMatrix joint_sum = ComplexMatrix::Zero(2, 2);
  for (int b = 0; b < kOutcomes; ++b) {
    for (int cc = 0; cc < kOutcomes; ++cc) {
      chain.joint[b][cc] = HermitianOperator(chain.bob_kraus[b].adjoint() *
                                             chain.charlie_povm[cc].mat() *
                                             chain.bob_kraus[b]);
      joint_sum += chain.joint[b][cc].mat();
    }
  }
  if ((joint_sum - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() > kTol) {
    throw std::runtime_error("mcm chain: joint elements do not sum to identity");
  }
  return chain;
}

JointDistribution simulate_joint(const MCMChain& chain, const Ensemble& ensemble) {
  if (ensemble.dim() != 2 || ensemble.states.size() != 2) {
    throw invalid_input("simulate_joint: expected a two-state qubit ensemble");
  }
  JointDistribution dist;
  for (int x = 0; x < 2; ++x) {
    double total = 0.0;
    for (int b = 0; b < kOutcomes; ++b) {
      for (int c = 0; c < kOutcomes; ++c) {
        const double v =
            frobenius_inner(ensemble.states[x].op, chain.joint[b][c]);
        dist.p[b][c][x] = v;
        total += v;
      }
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw std::runtime_error("simulate_joint: distribution not normalized");
    }
  }
  return dist;
}

SimulatedStats observed_stats(const JointDistribution& dist,
                              const std::vector<double>& priors) {
  if (priors.size() != 2) throw invalid_input("observed_stats: need two priors");
  SimulatedStats st;
  double correct_b = 0.0, conclusive_b = 0.0;
  double correct_c = 0.0, conclusive_c = 0.0;
  for (int x = 0; x < 2; ++x) {
    st.inc_b += priors[x] * dist.marginal_b(kInconclusive, x);
    st.inc_c += priors[x] * dist.marginal_c(kInconclusive, x);
    for (int y = 0; y < 2; ++y) {
      conclusive_b += priors[x] * dist.marginal_b(y, x);
      conclusive_c += priors[x] * dist.marginal_c(y, x);
    }
    correct_b += priors[x] * dist.marginal_b(x, x);
    correct_c += priors[x] * dist.marginal_c(x, x);
  }
  if (conclusive_b > 1e-12) st.conf_b = correct_b / conclusive_b;
  if (conclusive_c > 1e-12) st.conf_c = correct_c / conclusive_c;
  return st;
}

ObservedStats honest_stats(const ScenarioParams& params, double q_b) {
  params.validate();
  const double w = params.pure_overlap();
  if (q_b < w - 1e-12 || q_b > 1.0 + 1e-12) {
    throw invalid_input("inconclusive rate outside [r*delta, 1]");
  }
  const double conf = max_confidence(params);
  const double q_c = (q_b > 0.0) ? w / q_b : 0.0;
  return ObservedStats{conf, q_b, conf, q_c};
}

}  // namespace seqcert
