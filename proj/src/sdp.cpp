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

#include "sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace seqcert {

int SDPProblem::add_block(const std::string& label, int dim) {
  if (dim < 1) throw invalid_input("add_block: dimension must be positive");
  blocks.emplace_back(label, dim);
  return static_cast<int>(blocks.size()) - 1;
}

SDPConstraint& SDPProblem::add_constraint(const std::string& label,
                                          ConstraintKind kind, double rhs) {
  SDPConstraint c;
  c.label = label;
  c.kind = kind;
  c.rhs = rhs;
  constraints.push_back(std::move(c));
  return constraints.back();
}

void SDPProblem::set_objective(int block, const ComplexMatrix& coeff) {
  objective.emplace_back(block, coeff);
}

int SDPProblem::constraint_index(const std::string& label) const {
  for (size_t i = 0; i < constraints.size(); ++i) {
    if (constraints[i].label == label) return static_cast<int>(i);
  }
  return -1;
}

void SDPProblem::validate() const {
  if (blocks.empty()) throw invalid_input("sdp: no variable blocks");
  if (constraints.empty()) throw invalid_input("sdp: no constraints");
  auto check = [&](int blk, const ComplexMatrix& m, const char* what) {
    if (blk < 0 || blk >= static_cast<int>(blocks.size())) {
      throw invalid_input(std::string("sdp: bad block index in ") + what);
    }
    if (m.rows() != blocks[blk].second || m.cols() != blocks[blk].second) {
      throw invalid_input(std::string("sdp: coefficient size mismatch in ") + what);
    }
    if (hermiticity_residual(m) > 1e-9 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
      throw invalid_input(std::string("sdp: non-Hermitian coefficient in ") + what);
    }
  };
  for (const auto& [blk, m] : objective) check(blk, m, "objective");
  for (const auto& c : constraints) {
    for (const auto& [blk, m] : c.coeffs) check(blk, m, c.label.c_str());
  }
  if (block_trace_cap <= 0.0) throw invalid_input("sdp: block_trace_cap not set");
}

void SDPProblem::dump(std::ostream& os) const {
  char buf[160];
  os << "sdp v1\n";
  os << "sense " << (sense == Sense::Maximize ? "maximize" : "minimize") << "\n";
  os << "blocks " << blocks.size() << "\n";
  for (size_t j = 0; j < blocks.size(); ++j) {
    os << "block " << j << " " << blocks[j].first << " " << blocks[j].second << "\n";
  }
  std::snprintf(buf, sizeof buf, "constant %.17g\ntrace_cap %.17g\n",
                objective_constant, block_trace_cap);
  os << buf;
  auto emit = [&](const char* tag, int blk, const ComplexMatrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        if (m(r, c) != Complex(0.0, 0.0)) {
          std::snprintf(buf, sizeof buf, "%s %d %ld %ld %.17g %.17g\n", tag, blk,
                        static_cast<long>(r), static_cast<long>(c),
                        m(r, c).real(), m(r, c).imag());
          os << buf;
        }
      }
    }
  };
  for (const auto& [blk, m] : objective) emit("obj", blk, m);
  for (size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    std::snprintf(buf, sizeof buf, "constraint %zu %s %s %.17g %.17g\n", i,
                  c.label.c_str(),
                  c.kind == ConstraintKind::Equality ? "eq" : "ge", c.rhs,
                  c.slack_cap);
    os << buf;
    for (const auto& [blk, m] : c.coeffs) emit("coef", blk, m);
  }
}

RealMatrix embed_hermitian(const ComplexMatrix& h) {
  const Eigen::Index d = h.rows();
  RealMatrix e(2 * d, 2 * d);
  e.topLeftCorner(d, d) = h.real();
  e.topRightCorner(d, d) = -h.imag();
  e.bottomLeftCorner(d, d) = h.imag();
  e.bottomRightCorner(d, d) = h.real();
  return e;
}

ComplexMatrix unembed_hermitian(const RealMatrix& e) {
  const Eigen::Index d = e.rows() / 2;
  RealMatrix re = 0.5 * (e.topLeftCorner(d, d) + e.bottomRightCorner(d, d));
  RealMatrix im = 0.5 * (e.bottomLeftCorner(d, d) - e.topRightCorner(d, d));
  return re.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>();
}

namespace {

constexpr double kImagCutoff = 1e-14;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct InternalBlock {
  int dim = 0;
  int orig = -1;  // original block index, -1 for inequality slacks
  bool embedded = false;
  Mat<Scalar> C;
  std::vector<std::pair<int, Mat<Scalar>>> rows;  // (constraint index, coeff)
};

template <typename Scalar>
struct Internal {
  // Always a minimization. sign = +1 for Minimize input, -1 for Maximize.
  Scalar sign = 1;
  std::vector<InternalBlock<Scalar>> blocks;
  Vec<Scalar> b;
  int total_dim = 0;  // sum of block dims (barrier parameter)
};

bool block_is_real(const SDPProblem& p, int blk) {
  auto has_imag = [](const ComplexMatrix& m) {
    return m.imag().cwiseAbs().maxCoeff() > kImagCutoff;
  };
  for (const auto& [j, m] : p.objective) {
    if (j == blk && has_imag(m)) return false;
  }
  for (const auto& c : p.constraints) {
    for (const auto& [j, m] : c.coeffs) {
      if (j == blk && has_imag(m)) return false;
    }
  }
  return true;
}

// Embedded coefficients carry a factor 1/2 so that real inner products
// reproduce the complex-side values.
template <typename Scalar>
Mat<Scalar> to_internal(const ComplexMatrix& m, bool embedded) {
  if (!embedded) return m.real().cast<Scalar>();
  return (0.5 * embed_hermitian(m)).cast<Scalar>();
}

template <typename Scalar>
Internal<Scalar> build_internal(const SDPProblem& p) {
  Internal<Scalar> in;
  in.sign = (p.sense == Sense::Minimize) ? Scalar(1) : Scalar(-1);
  const int nb = static_cast<int>(p.blocks.size());
  const int m = p.num_constraints();

  in.blocks.resize(nb);
  for (int j = 0; j < nb; ++j) {
    auto& ib = in.blocks[j];
    ib.orig = j;
    ib.embedded = !block_is_real(p, j);
    ib.dim = p.blocks[j].second * (ib.embedded ? 2 : 1);
    ib.C = Mat<Scalar>::Zero(ib.dim, ib.dim);
  }
  for (const auto& [j, mcoef] : p.objective) {
    in.blocks[j].C += in.sign * to_internal<Scalar>(mcoef, in.blocks[j].embedded);
  }

  in.b.resize(m);
  for (int i = 0; i < m; ++i) {
    const auto& c = p.constraints[i];
    in.b(i) = Scalar(c.rhs);
    for (const auto& [j, mcoef] : c.coeffs) {
      in.blocks[j].rows.emplace_back(i, to_internal<Scalar>(mcoef, in.blocks[j].embedded));
    }
    if (c.kind == ConstraintKind::GreaterEqual) {
      InternalBlock<Scalar> slack;
      slack.dim = 1;
      slack.orig = -1;
      slack.C = Mat<Scalar>::Zero(1, 1);
      Mat<Scalar> minus_one(1, 1);
      minus_one(0, 0) = Scalar(-1);
      slack.rows.emplace_back(i, minus_one);
      in.blocks.push_back(std::move(slack));
    }
  }
  // Merge duplicate (constraint, block) pairs so Schur assembly sees one
  // coefficient per pair.
  for (auto& ib : in.blocks) {
    std::sort(ib.rows.begin(), ib.rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int, Mat<Scalar>>> merged;
    for (auto& row : ib.rows) {
      if (!merged.empty() && merged.back().first == row.first) {
        merged.back().second += row.second;
      } else {
        merged.push_back(std::move(row));
      }
    }
    ib.rows = std::move(merged);
  }
  in.total_dim = 0;
  for (const auto& ib : in.blocks) in.total_dim += ib.dim;
  return in;
}

template <typename Scalar>
Scalar inner(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  return (a.array() * b.array()).sum();
}

// sup {alpha : p + alpha*d >= 0} given the Cholesky factor of p.
template <typename Scalar>
Scalar max_step(const Eigen::LLT<Mat<Scalar>>& llt, const Mat<Scalar>& d) {
  const Mat<Scalar> l = llt.matrixL();
  Mat<Scalar> t = l.template triangularView<Eigen::Lower>().solve(d);
  t = l.template triangularView<Eigen::Lower>().solve(t.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(
      (Scalar(0.5) * (t + t.transpose())).eval(), Eigen::EigenvaluesOnly);
  const Scalar lmin = es.eigenvalues().minCoeff();
  if (lmin >= Scalar(-1e-18)) return std::numeric_limits<Scalar>::infinity();
  return Scalar(-1) / lmin;
}

template <typename Scalar>
SDPSolution solve_impl(const SDPProblem& problem, const SolverOptions& opts) {
  Internal<Scalar> in = build_internal<Scalar>(problem);
  const int m = problem.num_constraints();
  const int nb = static_cast<int>(in.blocks.size());
  const Scalar tol = Scalar(opts.tolerance);

  Scalar cnorm = 1, bnorm = 1;
  for (const auto& ib : in.blocks) {
    cnorm = std::max(cnorm, ib.C.cwiseAbs().maxCoeff());
  }
  for (int i = 0; i < m; ++i) bnorm = std::max(bnorm, abs(in.b(i)));

  std::vector<Mat<Scalar>> X(nb), S(nb);
  for (int j = 0; j < nb; ++j) {
    X[j] = Scalar(10) * bnorm * Mat<Scalar>::Identity(in.blocks[j].dim, in.blocks[j].dim);
    S[j] = Scalar(10) * cnorm * Mat<Scalar>::Identity(in.blocks[j].dim, in.blocks[j].dim);
  }
  Vec<Scalar> y = Vec<Scalar>::Zero(m);

  SDPSolution out;
  out.dual_multipliers.assign(m, 0.0);

  Mat<Scalar> schur(m, m);
  std::vector<Mat<Scalar>> W(nb), Whalf(nb), Wihalf(nb), lam(nb), Sinv(nb);
  std::vector<Mat<Scalar>> Rd(nb), V(nb), dX(nb), dS(nb), WRW(nb);
  Vec<Scalar> ax(m), rp(m), rhs(m), dy(m);

  auto apply_adjoint = [&](const Vec<Scalar>& yy, std::vector<Mat<Scalar>>& outm) {
    for (int j = 0; j < nb; ++j) {
      outm[j].setZero(in.blocks[j].dim, in.blocks[j].dim);
      for (const auto& [i, a] : in.blocks[j].rows) outm[j] += yy(i) * a;
    }
  };

  struct BestIterate {
    Scalar err = std::numeric_limits<Scalar>::infinity();
    std::vector<Mat<Scalar>> X, S;
    Vec<Scalar> y;
    int iter = 0;
  } best;

  auto eval_err = [&]() {
    ax.setZero();
    for (int j = 0; j < nb; ++j) {
      for (const auto& [i, a] : in.blocks[j].rows) ax(i) += inner<Scalar>(a, X[j]);
    }
    Scalar pobj = 0, dres = 0, gap_num = 0;
    for (int j = 0; j < nb; ++j) pobj += inner<Scalar>(in.blocks[j].C, X[j]);
    const Scalar dobj = in.b.dot(y);
    const Vec<Scalar> resid = in.b - ax;
    std::vector<Mat<Scalar>> ay(nb);
    apply_adjoint(y, ay);
    for (int j = 0; j < nb; ++j) {
      const Mat<Scalar> rdj = in.blocks[j].C - ay[j] - S[j];
      dres = std::max(dres, rdj.cwiseAbs().maxCoeff());
      gap_num += abs(inner<Scalar>(X[j], S[j])) + abs(inner<Scalar>(rdj, X[j]));
    }
    for (int i = 0; i < m; ++i) gap_num += abs(y(i) * resid(i));
    const Scalar pres = resid.cwiseAbs().maxCoeff() / (Scalar(1) + bnorm);
    const Scalar relgap =
        gap_num / std::max({Scalar(1), abs(pobj), abs(dobj)});
    return std::max({pres, dres / (Scalar(1) + cnorm), relgap});
  };

  auto finalize = [&](SolveStatus status, int iter) {
    if (best.err < eval_err()) {
      X = best.X;
      S = best.S;
      y = best.y;
    }
    out.status = status;
    out.iterations = iter;
    Scalar pobj = 0;
    for (int j = 0; j < nb; ++j) pobj += inner<Scalar>(in.blocks[j].C, X[j]);
    const Scalar dobj = in.b.dot(y);
    out.primal_value =
        static_cast<double>(in.sign * pobj) + problem.objective_constant;
    out.dual_value =
        static_cast<double>(in.sign * dobj) + problem.objective_constant;
    out.gap = static_cast<double>(
        abs(pobj - dobj) / std::max({Scalar(1), abs(pobj), abs(dobj)}));
    out.primal_blocks.clear();
    for (int j = 0; j < nb; ++j) {
      if (in.blocks[j].orig < 0) continue;
      const RealMatrix xd = X[j].template cast<double>();
      out.primal_blocks.push_back(in.blocks[j].embedded ? unembed_hermitian(xd)
                                                        : xd.cast<Complex>());
    }
    for (int i = 0; i < m; ++i) out.dual_multipliers[i] = static_cast<double>(y(i));
    return out;
  };

  int no_improve = 0;

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    ax.setZero();
    for (int j = 0; j < nb; ++j) {
      for (const auto& [i, a] : in.blocks[j].rows) ax(i) += inner<Scalar>(a, X[j]);
    }
    rp = in.b - ax;
    apply_adjoint(y, Rd);
    Scalar dres = 0;
    for (int j = 0; j < nb; ++j) {
      Rd[j] = in.blocks[j].C - Rd[j] - S[j];
      dres = std::max(dres, Rd[j].cwiseAbs().maxCoeff());
    }
    Scalar mu = 0;
    for (int j = 0; j < nb; ++j) mu += inner<Scalar>(X[j], S[j]);
    mu /= Scalar(in.total_dim);

    Scalar pobj = 0;
    for (int j = 0; j < nb; ++j) pobj += inner<Scalar>(in.blocks[j].C, X[j]);
    const Scalar dobj = in.b.dot(y);
    const Scalar pres = rp.cwiseAbs().maxCoeff() / (Scalar(1) + bnorm);
    const Scalar dresrel = dres / (Scalar(1) + cnorm);
    // Cancellation-proof gap surrogate: |pobj-dobj| can vanish mid-path
    // when y'r_p happens to offset <X,S>.
    Scalar gap_num = 0;
    for (int j = 0; j < nb; ++j) {
      gap_num += abs(inner<Scalar>(X[j], S[j])) + abs(inner<Scalar>(Rd[j], X[j]));
    }
    for (int i = 0; i < m; ++i) gap_num += abs(y(i) * rp(i));
    const Scalar relgap =
        gap_num / std::max({Scalar(1), abs(pobj), abs(dobj)});

    if (opts.verbose) {
      std::fprintf(stderr, "it %3d  mu %.3e  pres %.3e  dres %.3e  gap %.3e\n",
                   iter, (double)mu, (double)pres, (double)dresrel, (double)relgap);
    }
    const Scalar err = std::max({pres, dresrel, relgap});
    if (err < best.err) {
      best.err = err;
      best.X = X;
      best.S = S;
      best.y = y;
      best.iter = iter;
    }
    if (err <= tol) {
      return finalize(SolveStatus::Optimal, iter);
    }

    // Farkas-style primal infeasibility: A*(y) strongly negative while the
    // dual objective diverges.
    if (dobj > Scalar(1e7) * bnorm) {
      std::vector<Mat<Scalar>> ay(nb);
      apply_adjoint(y, ay);
      Scalar lmax = -std::numeric_limits<Scalar>::infinity();
      for (int j = 0; j < nb; ++j) {
        Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(ay[j], Eigen::EigenvaluesOnly);
        lmax = std::max(lmax, es.eigenvalues().maxCoeff());
      }
      if (lmax < Scalar(1e-7) * dobj) return finalize(SolveStatus::Infeasible, iter);
    }
    if (err < Scalar(0.99) * best.err || best.iter == iter) {
      no_improve = 0;
    } else if (++no_improve >= 80) {
      return finalize(SolveStatus::NumericalTrouble, iter);
    }

    // Nesterov-Todd scaling per block: W S W = X.
    std::vector<Eigen::LLT<Mat<Scalar>>> lltX(nb), lltS(nb);
    bool scaling_ok = true;
    for (int j = 0; j < nb; ++j) {
      lltX[j].compute(X[j]);
      lltS[j].compute(S[j]);
      if (lltX[j].info() != Eigen::Success || lltS[j].info() != Eigen::Success) {
        scaling_ok = false;
        break;
      }
      Eigen::SelfAdjointEigenSolver<Mat<Scalar>> ex(X[j]);
      Vec<Scalar> lx = ex.eigenvalues().cwiseMax(Scalar(1e-300));
      Mat<Scalar> xh = ex.eigenvectors() * lx.cwiseSqrt().asDiagonal() *
                       ex.eigenvectors().transpose();
      Mat<Scalar> mid = xh * S[j] * xh;
      mid = Scalar(0.5) * (mid + mid.transpose()).eval();
      Eigen::SelfAdjointEigenSolver<Mat<Scalar>> em(mid);
      Vec<Scalar> lm = em.eigenvalues().cwiseMax(Scalar(1e-300));
      Mat<Scalar> mih = em.eigenvectors() *
                        lm.cwiseSqrt().cwiseInverse().asDiagonal() *
                        em.eigenvectors().transpose();
      W[j] = xh * mih * xh;
      W[j] = Scalar(0.5) * (W[j] + W[j].transpose()).eval();
      Eigen::SelfAdjointEigenSolver<Mat<Scalar>> ew(W[j]);
      Vec<Scalar> lw = ew.eigenvalues().cwiseMax(Scalar(1e-300));
      Whalf[j] = ew.eigenvectors() * lw.cwiseSqrt().asDiagonal() *
                 ew.eigenvectors().transpose();
      Wihalf[j] = ew.eigenvectors() * lw.cwiseSqrt().cwiseInverse().asDiagonal() *
                  ew.eigenvectors().transpose();
      lam[j] = Wihalf[j] * X[j] * Wihalf[j];
      lam[j] = Scalar(0.5) * (lam[j] + lam[j].transpose()).eval();
      const int dj = in.blocks[j].dim;
      Sinv[j] = lltS[j].solve(Mat<Scalar>::Identity(dj, dj));
      Sinv[j] = Scalar(0.5) * (Sinv[j] + Sinv[j].transpose()).eval();
    }
    if (!scaling_ok) return finalize(SolveStatus::NumericalTrouble, iter);

    // Schur complement M(i,k) = <A_i, W A_k W>.
    schur.setZero();
    for (int j = 0; j < nb; ++j) {
      const auto& rows = in.blocks[j].rows;
      for (size_t kk = 0; kk < rows.size(); ++kk) {
        const Mat<Scalar> t = W[j] * rows[kk].second * W[j];
        for (size_t ii = 0; ii <= kk; ++ii) {
          schur(rows[ii].first, rows[kk].first) += inner<Scalar>(rows[ii].second, t);
        }
      }
    }
    schur = schur.template selfadjointView<Eigen::Upper>();

    Eigen::LLT<Mat<Scalar>> fact(schur);
    Scalar ridge = Scalar(1e-14) * std::max(Scalar(1), schur.diagonal().maxCoeff());
    while (fact.info() != Eigen::Success && ridge < Scalar(1e-4)) {
      fact.compute(schur + ridge * Mat<Scalar>::Identity(m, m));
      ridge *= Scalar(100);
    }
    if (fact.info() != Eigen::Success) {
      return finalize(SolveStatus::NumericalTrouble, iter);
    }

    for (int j = 0; j < nb; ++j) {
      WRW[j] = W[j] * Rd[j] * W[j];
    }

    // One direction for a given centering target V; reuses the factorization.
    // The Schur system turns ill-conditioned as mu shrinks, so refine until
    // the residual stops improving.
    auto direction = [&](const std::vector<Mat<Scalar>>& vtarget) {
      rhs = rp;
      for (int j = 0; j < nb; ++j) {
        for (const auto& [i, a] : in.blocks[j].rows) {
          rhs(i) += inner<Scalar>(a, WRW[j]) - inner<Scalar>(a, vtarget[j]);
        }
      }
      dy = fact.solve(rhs);
      const Scalar rhs_norm = std::max(Scalar(1e-300), rhs.cwiseAbs().maxCoeff());
      Scalar best_res = std::numeric_limits<Scalar>::infinity();
      Vec<Scalar> best_dy = dy;
      for (int pass = 0; pass < 8; ++pass) {
        Vec<Scalar> res = rhs - schur * dy;
        const Scalar rn = res.cwiseAbs().maxCoeff() / rhs_norm;
        if (rn < best_res) {
          best_res = rn;
          best_dy = dy;
        }
        if (rn < Scalar(1e-16)) break;
        dy += fact.solve(res);
      }
      dy = best_dy;
      apply_adjoint(dy, dS);
      for (int j = 0; j < nb; ++j) {
        dS[j] = Rd[j] - dS[j];
        dX[j] = vtarget[j] - W[j] * dS[j] * W[j];
        dX[j] = Scalar(0.5) * (dX[j] + dX[j].transpose()).eval();
        dS[j] = Scalar(0.5) * (dS[j] + dS[j].transpose()).eval();
      }
    };

    auto step_lengths = [&](Scalar& ap, Scalar& ad) {
      ap = 1;
      ad = 1;
      for (int j = 0; j < nb; ++j) {
        ap = std::min(ap, max_step<Scalar>(lltX[j], dX[j]));
        ad = std::min(ad, max_step<Scalar>(lltS[j], dS[j]));
      }
    };

    // Predictor (affine direction) fixes the centering weight.
    for (int j = 0; j < nb; ++j) V[j] = -X[j];
    direction(V);
    Scalar ap, ad;
    step_lengths(ap, ad);
    Scalar mu_aff = 0;
    for (int j = 0; j < nb; ++j) {
      mu_aff += inner<Scalar>((X[j] + ap * dX[j]).eval(), (S[j] + ad * dS[j]).eval());
    }
    mu_aff = std::max(Scalar(0), mu_aff / Scalar(in.total_dim));
    Scalar sigma = mu_aff / mu;
    sigma = std::clamp(sigma * sigma * sigma, Scalar(1e-12), Scalar(1));

    // Combined step with the second-order correction, assembled in the
    // scaled frame where X and S share the spectrum lambda:
    // V = sigma mu S^-1 - X - W^1/2 L_lambda^-1(sym(dXhat dShat)) W^1/2.
    for (int j = 0; j < nb; ++j) {
      const Mat<Scalar> dxh = Wihalf[j] * dX[j] * Wihalf[j];
      const Mat<Scalar> dsh = Whalf[j] * dS[j] * Whalf[j];
      Mat<Scalar> prod = Scalar(0.5) * (dxh * dsh + dsh * dxh);
      Eigen::SelfAdjointEigenSolver<Mat<Scalar>> el(lam[j]);
      const Vec<Scalar> ll = el.eigenvalues().cwiseMax(Scalar(1e-300));
      Mat<Scalar> t = el.eigenvectors().transpose() * prod * el.eigenvectors();
      for (Eigen::Index a = 0; a < t.rows(); ++a) {
        for (Eigen::Index b = 0; b < t.cols(); ++b) {
          t(a, b) /= Scalar(0.5) * (ll(a) + ll(b));
        }
      }
      const Mat<Scalar> corr =
          Whalf[j] * (el.eigenvectors() * t * el.eigenvectors().transpose()) *
          Whalf[j];
      V[j] = sigma * mu * Sinv[j] - X[j] -
             Scalar(0.5) * (corr + corr.transpose());
    }
    direction(V);
    step_lengths(ap, ad);
    ap = std::min(Scalar(1), Scalar(0.98) * ap);
    ad = std::min(Scalar(1), Scalar(0.98) * ad);
    if (ap < Scalar(1e-10) && ad < Scalar(1e-10)) {
      return finalize(SolveStatus::NumericalTrouble, iter);
    }

    for (int j = 0; j < nb; ++j) {
      X[j] += ap * dX[j];
      S[j] += ad * dS[j];
      if (in.blocks[j].embedded) {
        // Project back onto the embedded subalgebra (average with the
        // conjugation by E(i)); keeps X and S faithful to complex points.
        const int d2 = in.blocks[j].dim;
        const int d = d2 / 2;
        Mat<Scalar> jmat = Mat<Scalar>::Zero(d2, d2);
        jmat.topRightCorner(d, d) = -Mat<Scalar>::Identity(d, d);
        jmat.bottomLeftCorner(d, d) = Mat<Scalar>::Identity(d, d);
        X[j] = Scalar(0.5) * (X[j] + jmat * X[j] * jmat.transpose()).eval();
        S[j] = Scalar(0.5) * (S[j] + jmat * S[j] * jmat.transpose()).eval();
      }
    }
    y += ad * dy;

    // Primal feasibility restoration. The W products contaminate A(dX) at
    // the scaled-roundoff level, which the large multipliers of degenerate
    // instances amplify into a duality-gap floor. Measure the true residual
    // and correct through the already-factored Schur metric; each pass
    // observes A(X) exactly, so the contamination does not accumulate. Any
    // slight PSD dip from the correction is repaired by a mu-scaled clamp.
    for (int pass = 0; pass < 3; ++pass) {
      ax.setZero();
      for (int j = 0; j < nb; ++j) {
        for (const auto& [i, a] : in.blocks[j].rows) ax(i) += inner<Scalar>(a, X[j]);
      }
      Vec<Scalar> resid = in.b - ax;
      if (resid.cwiseAbs().maxCoeff() <= Scalar(1e-17) * (Scalar(1) + bnorm)) break;
      Vec<Scalar> v = fact.solve(resid);
      v += fact.solve(resid - schur * v);
      for (int j = 0; j < nb; ++j) {
        dX[j].setZero(in.blocks[j].dim, in.blocks[j].dim);
        for (const auto& [i, a] : in.blocks[j].rows) dX[j] += v(i) * a;
        dX[j] = W[j] * dX[j] * W[j];
        X[j] += Scalar(0.5) * (dX[j] + dX[j].transpose());
      }
    }
    for (int j = 0; j < nb; ++j) {
      Eigen::LLT<Mat<Scalar>> lx(X[j]);
      if (lx.info() == Eigen::Success) continue;
      Eigen::SelfAdjointEigenSolver<Mat<Scalar>> ex(X[j]);
      const Scalar floor_val =
          std::max(Scalar(1e-30), Scalar(1e-4) * mu / Scalar(in.total_dim));
      X[j] = ex.eigenvectors() *
             ex.eigenvalues().cwiseMax(floor_val).asDiagonal() *
             ex.eigenvectors().transpose();
    }
  }
  return finalize(SolveStatus::NumericalTrouble, opts.max_iterations);
}

}  // namespace

SDPSolution solve(const SDPProblem& problem, const SolverOptions& opts) {
  problem.validate();
  // The extended-precision core keeps the late-stage scaled systems accurate
  // enough for 1e-8 gaps on degenerate instances.
  return solve_impl<long double>(problem, opts);
}

DualCertificate verify_certificate(const SDPProblem& problem,
                                   const std::vector<double>& multipliers) {
  problem.validate();
  const int m = problem.num_constraints();
  if (static_cast<int>(multipliers.size()) != m) {
    throw invalid_input("verify_certificate: multiplier count mismatch");
  }
  const double sign = (problem.sense == Sense::Minimize) ? 1.0 : -1.0;
  const int nb = static_cast<int>(problem.blocks.size());

  // Z_j = C_int_j - sum_i y_i A_ij, recomputed on the complex side.
  std::vector<ComplexMatrix> z(nb);
  for (int j = 0; j < nb; ++j) {
    const int d = problem.blocks[j].second;
    z[j] = ComplexMatrix::Zero(d, d);
  }
  for (const auto& [j, mcoef] : problem.objective) z[j] += sign * mcoef;
  for (int i = 0; i < m; ++i) {
    for (const auto& [j, mcoef] : problem.constraints[i].coeffs) {
      z[j] -= multipliers[i] * mcoef;
    }
  }

  DualCertificate cert;
  cert.multipliers = multipliers;
  double violation = -std::numeric_limits<double>::infinity();
  double penalty = 0.0;
  for (int j = 0; j < nb; ++j) {
    violation = std::max(violation, -min_eigenvalue(z[j], 1e-7));
  }
  penalty += std::max(0.0, violation) * problem.block_trace_cap;
  double dobj = 0.0;
  for (int i = 0; i < m; ++i) {
    const auto& c = problem.constraints[i];
    dobj += multipliers[i] * c.rhs;
    if (c.kind == ConstraintKind::GreaterEqual && multipliers[i] < 0.0) {
      violation = std::max(violation, -multipliers[i]);
      penalty += -multipliers[i] * c.slack_cap;
    }
  }

  cert.slack_margin = violation;
  const double lower = dobj - penalty;  // bound on the internal minimum
  cert.certified_value = sign * lower + problem.objective_constant;
  cert.valid = violation <= 1e-4;
  return cert;
}

DualCertificate verify_certificate(const SDPProblem& problem,
                                   const DualCertificate& candidate) {
  return verify_certificate(problem, candidate.multipliers);
}

}  // namespace seqcert
