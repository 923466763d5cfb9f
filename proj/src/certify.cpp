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

#include "certify.hpp"

#include <cmath>

namespace seqcert {

namespace {

constexpr double kMinGuessProb = 1e-12;

// At extremal observed stats (confidence exactly at its quantum maximum)
// the one-sided constraints are only satisfiable with equality and the dual
// optimum is not attained; the bound value approaches its limit like
// sqrt(slack). Solving with the stats right-hand sides pulled inward by a
// tiny relative margin restores attainability. The relaxation only enlarges
// the adversary's feasible set, so the certified bound stays sound; the
// margin is folded into the exported tradeoff coefficients.
constexpr double kInteriorRelax = 1e-8;

void relax_stats_constraints(SDPProblem& p, const ProgramInfo& info, double eps) {
  for (int idx : {info.rate_b, info.conf_b, info.rate_c, info.conf_c}) {
    if (idx >= 0 && p.constraints[idx].kind == ConstraintKind::GreaterEqual) {
      p.constraints[idx].rhs *= (1.0 - eps);
    }
  }
}

// Orthonormal Hermitian basis under <A,B> = Tr[AB]: diagonal units, then
// symmetric and antisymmetric off-diagonal pairs.
std::vector<ComplexMatrix> hermitian_basis(int d) {
  std::vector<ComplexMatrix> basis;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    ComplexMatrix e = ComplexMatrix::Zero(d, d);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      ComplexMatrix s = ComplexMatrix::Zero(d, d);
      s(i, j) = inv_sqrt2;
      s(j, i) = inv_sqrt2;
      basis.push_back(s);
      ComplexMatrix a = ComplexMatrix::Zero(d, d);
      a(i, j) = Complex(0.0, inv_sqrt2);
      a(j, i) = Complex(0.0, -inv_sqrt2);
      basis.push_back(a);
    }
  }
  return basis;
}

// Orthonormal basis of the traceless Hermitian subspace.
std::vector<ComplexMatrix> traceless_basis(int d) {
  std::vector<ComplexMatrix> basis;
  for (int k = 1; k < d; ++k) {
    ComplexMatrix e = ComplexMatrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) e(i, i) = norm;
    e(k, k) = -static_cast<double>(k) * norm;
    basis.push_back(e);
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      ComplexMatrix s = ComplexMatrix::Zero(d, d);
      s(i, j) = inv_sqrt2;
      s(j, i) = inv_sqrt2;
      basis.push_back(s);
      ComplexMatrix a = ComplexMatrix::Zero(d, d);
      a(i, j) = Complex(0.0, inv_sqrt2);
      a(j, i) = Complex(0.0, -inv_sqrt2);
      basis.push_back(a);
    }
  }
  return basis;
}

// Corner placements inside a 2d x 2d moment block [[G, K1], [K1, K2]].
ComplexMatrix top_corner(const ComplexMatrix& a) {
  const Eigen::Index d = a.rows();
  ComplexMatrix m = ComplexMatrix::Zero(2 * d, 2 * d);
  m.topLeftCorner(d, d) = a;
  return m;
}

ComplexMatrix bottom_corner(const ComplexMatrix& a) {
  const Eigen::Index d = a.rows();
  ComplexMatrix m = ComplexMatrix::Zero(2 * d, 2 * d);
  m.bottomRightCorner(d, d) = a;
  return m;
}

// <off_sym(A), Y> = 2 Re Tr[A Y12]; equals 2 Tr[A K1] once K1 is Hermitian.
ComplexMatrix off_sym(const ComplexMatrix& a) {
  const Eigen::Index d = a.rows();
  ComplexMatrix m = ComplexMatrix::Zero(2 * d, 2 * d);
  m.topRightCorner(d, d) = a;
  m.bottomLeftCorner(d, d) = a.adjoint();
  return m;
}

// <off_antiherm(E), Y> = 2 Im Tr[E Y12]; zero for all basis E pins Y12
// Hermitian.
ComplexMatrix off_antiherm(const ComplexMatrix& e) {
  const Eigen::Index d = e.rows();
  ComplexMatrix m = ComplexMatrix::Zero(2 * d, 2 * d);
  m.topRightCorner(d, d) = Complex(0.0, 1.0) * e;
  m.bottomLeftCorner(d, d) = Complex(0.0, -1.0) * e.adjoint();
  return m;
}

bool matrix_is_real(const ComplexMatrix& m) {
  return m.imag().cwiseAbs().maxCoeff() < 1e-14;
}

// Constraint basis sets. For real ensembles the optimum is attained at a
// real point (conjugating any feasible point preserves feasibility and
// objective), so the components that only pin imaginary parts can be
// dropped without weakening the bound; this keeps every solver block real.
struct BasisSets {
  std::vector<ComplexMatrix> unit;      // matrix-equality components
  std::vector<ComplexMatrix> traceless; // trace-proportionality components
  std::vector<ComplexMatrix> herm;      // K1-Hermiticity components
};

BasisSets basis_sets(int d, const Ensemble& ens) {
  bool real_data = true;
  for (const auto& st : ens.states) real_data = real_data && matrix_is_real(st.op.mat());
  BasisSets bs;
  for (const auto& e : hermitian_basis(d)) {
    if (!real_data || matrix_is_real(e)) bs.unit.push_back(e);
    // off_antiherm(e) is real exactly when e is imaginary.
    if (!real_data || !matrix_is_real(e)) bs.herm.push_back(e);
  }
  for (const auto& e : traceless_basis(d)) {
    if (!real_data || matrix_is_real(e)) bs.traceless.push_back(e);
  }
  return bs;
}

struct StatsRhs {
  double q_b = 0.0, conf_mass_b = 0.0;
  double q_c = 0.0, conf_mass_c = 0.0;
};

StatsRhs stats_rhs(const ObservedStats& st) {
  StatsRhs r;
  r.q_b = st.inc_b;
  r.conf_mass_b = st.conf_b * (1.0 - st.inc_b);
  r.q_c = st.inc_c;
  r.conf_mass_c = st.conf_c * (1.0 - st.inc_c);
  return r;
}

void check_bound_inputs(const Ensemble& ens, const ObservedStats& stats,
                        const BuildOptions& opts) {
  stats.validate();
  if (opts.x_star < 0 || opts.x_star >= static_cast<int>(ens.states.size())) {
    throw invalid_input("x_star outside the preparation alphabet");
  }
}

}  // namespace

ProgramInfo build_guessing_program(Target target, const Ensemble& ens,
                                   const ObservedStats& stats,
                                   const BuildOptions& opts) {
  check_bound_inputs(ens, stats, opts);
  const int d = static_cast<int>(ens.dim());
  const int n = static_cast<int>(ens.states.size());
  const ComplexMatrix rho_star = ens.states[opts.x_star].op.mat();
  const ComplexMatrix rho_avg = ens.average();
  const auto kind = opts.stats_as_equalities ? ConstraintKind::Equality
                                             : ConstraintKind::GreaterEqual;
  const StatsRhs rhs = stats_rhs(stats);

  ProgramInfo info;
  info.stats = stats;
  SDPProblem& p = info.problem;
  p.sense = Sense::Maximize;
  p.objective_constant = 0.0;

  const BasisSets bs = basis_sets(d, ens);
  const auto& basis = bs.unit;
  const auto& tfree = bs.traceless;

  const bool single = (target == Target::Bob || target == Target::CharlieTrusted);
  if (single) {
    // One strategy per guessed outcome; M[lambda][b], 9 blocks.
    int idx[kOutcomes][kOutcomes];
    for (int l = 0; l < kOutcomes; ++l) {
      for (int b = 0; b < kOutcomes; ++b) {
        idx[l][b] = p.add_block("M:l" + std::to_string(l) + ":b" + std::to_string(b), d);
      }
    }
    for (int l = 0; l < kOutcomes; ++l) p.set_objective(idx[l][l], rho_star);

    for (size_t k = 0; k < basis.size(); ++k) {
      auto& c = p.add_constraint("unit:" + std::to_string(k),
                                 ConstraintKind::Equality,
                                 basis[k].trace().real());
      for (int l = 0; l < kOutcomes; ++l) {
        for (int b = 0; b < kOutcomes; ++b) c.coeffs.emplace_back(idx[l][b], basis[k]);
      }
    }
    for (int l = 0; l < kOutcomes; ++l) {
      for (size_t k = 0; k < tfree.size(); ++k) {
        auto& c = p.add_constraint("tp:" + std::to_string(l) + ":" + std::to_string(k),
                                   ConstraintKind::Equality, 0.0);
        for (int b = 0; b < kOutcomes; ++b) c.coeffs.emplace_back(idx[l][b], tfree[k]);
      }
    }
    const double q = (target == Target::Bob) ? rhs.q_b : rhs.q_c;
    const double cm = (target == Target::Bob) ? rhs.conf_mass_b : rhs.conf_mass_c;
    {
      auto& c = p.add_constraint("rate", kind, q);
      c.slack_cap = d;
      for (int l = 0; l < kOutcomes; ++l) {
        c.coeffs.emplace_back(idx[l][kInconclusive], rho_avg);
      }
      if (target == Target::Bob) info.rate_b = p.num_constraints() - 1;
      else info.rate_c = p.num_constraints() - 1;
    }
    {
      auto& c = p.add_constraint("conf", kind, cm);
      c.slack_cap = d;
      for (int l = 0; l < kOutcomes; ++l) {
        for (int b = 0; b < n; ++b) {
          c.coeffs.emplace_back(idx[l][b], (1.0 / n) * ens.states[b].op.mat());
        }
      }
      if (target == Target::Bob) info.conf_b = p.num_constraints() - 1;
      else info.conf_c = p.num_constraints() - 1;
    }
    p.block_trace_cap = d;
    return info;
  }

  // Semi-device-independent programs over the combined operator. For the
  // Charlie target the strategy label is Eve's guess of c; for the joint
  // target it is the pair of guesses.
  const int nl1 = (target == Target::Joint) ? kOutcomes : 1;
  const int nl2 = kOutcomes;
  std::vector<int> idx(nl1 * nl2 * kOutcomes * kOutcomes);
  auto at = [&](int l1, int l2, int b, int c) -> int& {
    return idx[((l1 * nl2 + l2) * kOutcomes + b) * kOutcomes + c];
  };
  for (int l1 = 0; l1 < nl1; ++l1) {
    for (int l2 = 0; l2 < nl2; ++l2) {
      for (int b = 0; b < kOutcomes; ++b) {
        for (int c = 0; c < kOutcomes; ++c) {
          at(l1, l2, b, c) = p.add_block("G:l" + std::to_string(l1 * nl2 + l2) +
                                             ":b" + std::to_string(b) + ":c" +
                                             std::to_string(c),
                                         d);
        }
      }
    }
  }
  if (target == Target::Charlie) {
    for (int l2 = 0; l2 < nl2; ++l2) {
      for (int b = 0; b < kOutcomes; ++b) p.set_objective(at(0, l2, b, l2), rho_star);
    }
  } else {
    for (int l1 = 0; l1 < nl1; ++l1) {
      for (int l2 = 0; l2 < nl2; ++l2) p.set_objective(at(l1, l2, l1, l2), rho_star);
    }
  }

  for (size_t k = 0; k < basis.size(); ++k) {
    auto& c = p.add_constraint("unit:" + std::to_string(k), ConstraintKind::Equality,
                               basis[k].trace().real());
    for (int& blk : idx) c.coeffs.emplace_back(blk, basis[k]);
  }
  for (int l1 = 0; l1 < nl1; ++l1) {
    for (int l2 = 0; l2 < nl2; ++l2) {
      for (size_t k = 0; k < tfree.size(); ++k) {
        auto& c = p.add_constraint("tp:" + std::to_string(l1 * nl2 + l2) + ":" +
                                       std::to_string(k),
                                   ConstraintKind::Equality, 0.0);
        for (int b = 0; b < kOutcomes; ++b) {
          for (int cc = 0; cc < kOutcomes; ++cc) {
            c.coeffs.emplace_back(at(l1, l2, b, cc), tfree[k]);
          }
        }
      }
    }
  }
  {
    auto& c = p.add_constraint("rateB", kind, rhs.q_b);
    c.slack_cap = d;
    for (int l1 = 0; l1 < nl1; ++l1)
      for (int l2 = 0; l2 < nl2; ++l2)
        for (int cc = 0; cc < kOutcomes; ++cc)
          c.coeffs.emplace_back(at(l1, l2, kInconclusive, cc), rho_avg);
    info.rate_b = p.num_constraints() - 1;
  }
  {
    auto& c = p.add_constraint("confB", kind, rhs.conf_mass_b);
    c.slack_cap = d;
    for (int l1 = 0; l1 < nl1; ++l1)
      for (int l2 = 0; l2 < nl2; ++l2)
        for (int b = 0; b < n; ++b)
          for (int cc = 0; cc < kOutcomes; ++cc)
            c.coeffs.emplace_back(at(l1, l2, b, cc),
                                  (1.0 / n) * ens.states[b].op.mat());
    info.conf_b = p.num_constraints() - 1;
  }
  {
    auto& c = p.add_constraint("rateC", kind, rhs.q_c);
    c.slack_cap = d;
    for (int l1 = 0; l1 < nl1; ++l1)
      for (int l2 = 0; l2 < nl2; ++l2)
        for (int b = 0; b < kOutcomes; ++b)
          c.coeffs.emplace_back(at(l1, l2, b, kInconclusive), rho_avg);
    info.rate_c = p.num_constraints() - 1;
  }
  {
    auto& c = p.add_constraint("confC", kind, rhs.conf_mass_c);
    c.slack_cap = d;
    for (int l1 = 0; l1 < nl1; ++l1)
      for (int l2 = 0; l2 < nl2; ++l2)
        for (int b = 0; b < kOutcomes; ++b)
          for (int cc = 0; cc < n; ++cc)
            c.coeffs.emplace_back(at(l1, l2, b, cc),
                                  (1.0 / n) * ens.states[cc].op.mat());
    info.conf_c = p.num_constraints() - 1;
  }
  p.block_trace_cap = d;
  return info;
}

ProgramInfo build_shannon_program(Target target, const Ensemble& ens,
                                  const RadauQuadrature& quad,
                                  const ObservedStats& stats,
                                  const BuildOptions& opts) {
  if (target == Target::CharlieTrusted) {
    throw invalid_input("shannon bounds are defined for bob, charlie, joint");
  }
  check_bound_inputs(ens, stats, opts);
  const int d = static_cast<int>(ens.dim());
  const int n = static_cast<int>(ens.states.size());
  const ComplexMatrix rho_star = ens.states[opts.x_star].op.mat();
  const ComplexMatrix rho_avg = ens.average();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const auto kind = opts.stats_as_equalities ? ConstraintKind::Equality
                                             : ConstraintKind::GreaterEqual;
  const StatsRhs rhs = stats_rhs(stats);
  const BasisSets bs = basis_sets(d, ens);
  const auto& basis = bs.unit;
  const auto& tfree = bs.traceless;
  const int ni = quad.interior_count();

  // Cells of the measurement record the bound is taken over: Bob's marginal
  // outcome, or the joint outcome pair.
  struct Cell {
    int b = -1, c = -1;
  };
  std::vector<Cell> cells;
  if (target == Target::Bob) {
    for (int b = 0; b < kOutcomes; ++b) cells.push_back({b, -1});
  } else {
    for (int b = 0; b < kOutcomes; ++b)
      for (int c = 0; c < kOutcomes; ++c) cells.push_back({b, c});
  }
  const int ncells = static_cast<int>(cells.size());

  // The log-variable tuples: one scalar per quadrature node and per outcome
  // of the entropy's alphabet (b, c, or the joint pair).
  struct JTuple {
    int jb = -1, jc = -1;
  };
  std::vector<JTuple> jt;
  if (target == Target::Bob) {
    for (int j = 0; j < kOutcomes; ++j) jt.push_back({j, -1});
  } else if (target == Target::Charlie) {
    for (int j = 0; j < kOutcomes; ++j) jt.push_back({-1, j});
  } else {
    for (int j = 0; j < kOutcomes; ++j)
      for (int k = 0; k < kOutcomes; ++k) jt.push_back({j, k});
  }
  const int nj = static_cast<int>(jt.size());
  auto matches = [&](const JTuple& t, const Cell& cell) {
    if (t.jb >= 0 && cell.b != t.jb) return false;
    if (t.jc >= 0 && cell.c != t.jc) return false;
    return true;
  };

  ProgramInfo info;
  info.stats = stats;
  info.c_m = quad.c_m;
  SDPProblem& p = info.problem;
  p.sense = Sense::Minimize;
  p.objective_constant = quad.c_m;

  std::vector<int> gidx(ncells);
  for (int cell = 0; cell < ncells; ++cell) {
    gidx[cell] = p.add_block("G:" + std::to_string(cell), d);
  }
  std::vector<int> yidx(ni * nj * ncells);
  auto yat = [&](int i, int j, int cell) -> int& {
    return yidx[(i * nj + j) * ncells + cell];
  };
  for (int i = 0; i < ni; ++i) {
    for (int j = 0; j < nj; ++j) {
      for (int cell = 0; cell < ncells; ++cell) {
        yat(i, j, cell) = p.add_block("Y:" + std::to_string(i) + ":" +
                                          std::to_string(j) + ":" +
                                          std::to_string(cell),
                                      2 * d);
      }
    }
  }

  // Objective: c_m + sum_ij tau_i ( 2 Tr[rho* K1] + (1-t_i) Tr[rho* K2]
  // on the matching cell, plus t_i Tr[rho* K2] on every cell ).
  for (int i = 0; i < ni; ++i) {
    const double tau = quad.tau[i];
    const double node = quad.nodes[i];
    for (int j = 0; j < nj; ++j) {
      for (int cell = 0; cell < ncells; ++cell) {
        if (matches(jt[j], cells[cell])) {
          p.set_objective(yat(i, j, cell), off_sym(tau * rho_star));
          p.set_objective(yat(i, j, cell), bottom_corner(tau * rho_star));
        } else {
          p.set_objective(yat(i, j, cell), bottom_corner(tau * node * rho_star));
        }
      }
    }
  }

  for (size_t k = 0; k < basis.size(); ++k) {
    auto& c = p.add_constraint("unit:" + std::to_string(k), ConstraintKind::Equality,
                               basis[k].trace().real());
    for (int cell = 0; cell < ncells; ++cell) c.coeffs.emplace_back(gidx[cell], basis[k]);
  }

  {
    auto& c = p.add_constraint("rateB", kind, rhs.q_b);
    c.slack_cap = d;
    for (int cell = 0; cell < ncells; ++cell) {
      if (cells[cell].b == kInconclusive) c.coeffs.emplace_back(gidx[cell], rho_avg);
    }
    info.rate_b = p.num_constraints() - 1;
  }
  {
    auto& c = p.add_constraint("confB", kind, rhs.conf_mass_b);
    c.slack_cap = d;
    for (int cell = 0; cell < ncells; ++cell) {
      if (cells[cell].b < n) {
        c.coeffs.emplace_back(gidx[cell], (1.0 / n) * ens.states[cells[cell].b].op.mat());
      }
    }
    info.conf_b = p.num_constraints() - 1;
  }
  if (target != Target::Bob) {
    {
      auto& c = p.add_constraint("rateC", kind, rhs.q_c);
      c.slack_cap = d;
      for (int cell = 0; cell < ncells; ++cell) {
        if (cells[cell].c == kInconclusive) c.coeffs.emplace_back(gidx[cell], rho_avg);
      }
      info.rate_c = p.num_constraints() - 1;
    }
    {
      auto& c = p.add_constraint("confC", kind, rhs.conf_mass_c);
      c.slack_cap = d;
      for (int cell = 0; cell < ncells; ++cell) {
        if (cells[cell].c >= 0 && cells[cell].c < n) {
          c.coeffs.emplace_back(gidx[cell], (1.0 / n) * ens.states[cells[cell].c].op.mat());
        }
      }
      info.conf_c = p.num_constraints() - 1;
    }
  }

  for (int i = 0; i < ni; ++i) {
    for (int j = 0; j < nj; ++j) {
      const std::string ij = std::to_string(i) + ":" + std::to_string(j);
      for (int cell = 0; cell < ncells; ++cell) {
        const int y = yat(i, j, cell);
        // Top corner equals the shared G block.
        for (size_t k = 0; k < basis.size(); ++k) {
          auto& c = p.add_constraint("tie:" + ij + ":" + std::to_string(cell) +
                                         ":" + std::to_string(k),
                                     ConstraintKind::Equality, 0.0);
          c.coeffs.emplace_back(y, top_corner(basis[k]));
          c.coeffs.emplace_back(gidx[cell], -basis[k]);
        }
        // K1 Hermitian.
        for (size_t k = 0; k < bs.herm.size(); ++k) {
          auto& c = p.add_constraint("herm:" + ij + ":" + std::to_string(cell) +
                                         ":" + std::to_string(k),
                                     ConstraintKind::Equality, 0.0);
          c.coeffs.emplace_back(y, off_antiherm(bs.herm[k]));
        }
      }
      // sum_cell K(n) proportional to the identity.
      for (size_t k = 0; k < tfree.size(); ++k) {
        auto& c1 = p.add_constraint("tp1:" + ij + ":" + std::to_string(k),
                                    ConstraintKind::Equality, 0.0);
        auto& c2 = p.add_constraint("tp2:" + ij + ":" + std::to_string(k),
                                    ConstraintKind::Equality, 0.0);
        for (int cell = 0; cell < ncells; ++cell) {
          c1.coeffs.emplace_back(yat(i, j, cell), off_sym(0.5 * tfree[k]));
          c2.coeffs.emplace_back(yat(i, j, cell), bottom_corner(tfree[k]));
        }
      }
      // Valid cut from |z| <= 1: sum_cell Tr[K2] <= sum_cell Tr[G] = d.
      // Gives the moment blocks a rigorous trace cap for safe rounding.
      auto& c = p.add_constraint("zcap:" + ij, ConstraintKind::GreaterEqual, 0.0);
      c.slack_cap = d;
      for (int cell = 0; cell < ncells; ++cell) {
        c.coeffs.emplace_back(gidx[cell], id);
        c.coeffs.emplace_back(yat(i, j, cell), bottom_corner(-id));
      }
    }
  }

  p.block_trace_cap = d * (1.0 + 2.0 * ni * nj);
  return info;
}

double max_confidence_sdp(const Ensemble& ensemble, const SolverOptions& solver_opts) {
  const int d = static_cast<int>(ensemble.dim());
  const ComplexMatrix avg = ensemble.average();
  const double lmin = min_eigenvalue(HermitianOperator(avg));
  if (lmin < 1e-9) {
    throw invalid_input("max_confidence_sdp: degenerate ensemble average");
  }
  SDPProblem p;
  p.sense = Sense::Maximize;
  const int blk = p.add_block("M", d);
  p.set_objective(blk, ensemble.priors[0] * ensemble.states[0].op.mat());
  auto& c = p.add_constraint("norm", ConstraintKind::Equality, 1.0);
  c.coeffs.emplace_back(blk, avg);
  p.block_trace_cap = 1.0 / lmin + 1.0;
  const SDPSolution sol = solve(p, solver_opts);
  if (sol.status != SolveStatus::Optimal) {
    throw std::runtime_error("max_confidence_sdp: solver did not reach optimality");
  }
  const DualCertificate cert = verify_certificate(p, sol.dual_multipliers);
  if (!cert.valid) {
    throw std::runtime_error("max_confidence_sdp: certificate verification failed");
  }
  return cert.certified_value;
}

namespace {

EntropyBound finish_bound(BoundKind bkind, Target target, const ProgramInfo& info,
                          const SDPSolution& sol, const DualCertificate& cert,
                          double relax) {
  if (!cert.valid && sol.status != SolveStatus::Optimal) {
    throw std::runtime_error("bound computation failed: solver status " +
                             std::to_string(static_cast<int>(sol.status)) +
                             ", certificate invalid");
  }
  EntropyBound eb;
  eb.kind = bkind;
  eb.target = target;
  eb.certificate = cert;
  eb.primal_value = sol.primal_value;
  eb.dual_value = sol.dual_value;
  eb.gap = sol.gap;
  eb.status = sol.status;
  eb.raw_value = cert.certified_value;

  if (bkind == BoundKind::MinEntropy) {
    eb.guessing_prob = std::clamp(cert.certified_value, 0.0, 1.0);
    eb.value_bits =
        std::max(0.0, -std::log2(std::max(cert.certified_value, kMinGuessProb)));
  } else {
    const auto& y = cert.multipliers;
    TradeoffCoeffs tc;
    tc.c_m = info.c_m;
    const double scale = 1.0 - relax;
    if (info.rate_b >= 0) tc.g_b = -y[info.rate_b] * scale;
    if (info.conf_b >= 0) tc.h_b = -y[info.conf_b] * scale;
    if (info.rate_c >= 0) tc.g_c = -y[info.rate_c] * scale;
    if (info.conf_c >= 0) tc.h_c = -y[info.conf_c] * scale;
    // The free trace term absorbs everything else in the dual objective,
    // including the safe-rounding penalty.
    tc.trace_r = evaluate_tradeoff_raw(
                     TradeoffCoeffs{tc.g_b, tc.h_b, tc.g_c, tc.h_c, 0.0, tc.c_m},
                     info.stats) -
                 cert.certified_value;
    eb.tradeoff = tc;
    eb.value_bits = std::max(0.0, cert.certified_value);
  }
  return eb;
}

}  // namespace

EntropyBound guessing_bound(Target target, const Ensemble& ensemble,
                            const ObservedStats& stats, int x_star,
                            const SolverOptions& solver_opts) {
  BuildOptions opts;
  opts.x_star = x_star;
  ProgramInfo info = build_guessing_program(target, ensemble, stats, opts);
  relax_stats_constraints(info.problem, info, kInteriorRelax);
  const SDPSolution sol = solve(info.problem, solver_opts);
  const DualCertificate cert = verify_certificate(info.problem, sol.dual_multipliers);
  return finish_bound(BoundKind::MinEntropy, target, info, sol, cert, kInteriorRelax);
}

EntropyBound shannon_tradeoff(Target target, const Ensemble& ensemble, int m,
                              const ObservedStats& stats, int x_star,
                              const SolverOptions& solver_opts) {
  if (m < 2 || m > 16) throw invalid_input("shannon_tradeoff: m outside [2,16]");
  const RadauQuadrature quad = radau_quadrature(m);
  BuildOptions opts;
  opts.x_star = x_star;
  ProgramInfo info = build_shannon_program(target, ensemble, quad, stats, opts);
  relax_stats_constraints(info.problem, info, kInteriorRelax);
  const SDPSolution sol = solve(info.problem, solver_opts);
  const DualCertificate cert = verify_certificate(info.problem, sol.dual_multipliers);
  return finish_bound(BoundKind::ShannonMinTradeoff, target, info, sol, cert,
                      kInteriorRelax);
}

double evaluate_tradeoff_raw(const TradeoffCoeffs& coeffs, const ObservedStats& stats) {
  return coeffs.c_m - coeffs.g_b * stats.inc_b -
         coeffs.h_b * stats.conf_b * (1.0 - stats.inc_b) -
         coeffs.g_c * stats.inc_c -
         coeffs.h_c * stats.conf_c * (1.0 - stats.inc_c) - coeffs.trace_r;
}

double evaluate_tradeoff(const TradeoffCoeffs& coeffs, const ObservedStats& stats) {
  return std::max(0.0, evaluate_tradeoff_raw(coeffs, stats));
}

double eat_first_order(const EntropyBound& bound) {
  if (bound.kind != BoundKind::ShannonMinTradeoff || !bound.tradeoff) {
    throw invalid_input("eat_first_order: requires a shannon min-tradeoff bound");
  }
  return bound.value_bits;
}

const char* target_name(Target t) {
  switch (t) {
    case Target::Bob: return "bob";
    case Target::CharlieTrusted: return "charlie-trusted";
    case Target::Charlie: return "charlie";
    case Target::Joint: return "joint";
  }
  return "?";
}

std::optional<Target> target_from_name(const std::string& name) {
  if (name == "bob") return Target::Bob;
  if (name == "charlie-trusted") return Target::CharlieTrusted;
  if (name == "charlie") return Target::Charlie;
  if (name == "joint") return Target::Joint;
  return std::nullopt;
}

}  // namespace seqcert
