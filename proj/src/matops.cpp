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

#include "matops.hpp"

#include <cmath>

namespace seqcert {

double hermiticity_residual(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(const ComplexMatrix& raw, double tol) {
  if (raw.rows() != raw.cols() || raw.rows() == 0) {
    throw invalid_input("HermitianOperator: matrix must be square and nonempty");
  }
  const double scale = std::max(1.0, raw.cwiseAbs().maxCoeff());
  const double res = hermiticity_residual(raw);
  if (res > tol * scale) {
    throw invalid_input("HermitianOperator: symmetry violation " + std::to_string(res));
  }
  mat_ = 0.5 * (raw + raw.adjoint());
}

HermitianOperator HermitianOperator::identity(Eigen::Index dim) {
  HermitianOperator h;
  h.mat_ = ComplexMatrix::Identity(dim, dim);
  return h;
}

HermitianOperator HermitianOperator::zero(Eigen::Index dim) {
  HermitianOperator h;
  h.mat_ = ComplexMatrix::Zero(dim, dim);
  return h;
}

double min_eigenvalue(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.mat(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("min_eigenvalue: eigensolver failed to converge");
  }
  return es.eigenvalues().minCoeff();
}

double min_eigenvalue(const ComplexMatrix& h, double tol) {
  return min_eigenvalue(HermitianOperator(h, tol));
}

double frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw invalid_input("frobenius_inner: dimension mismatch");
  }
  const Complex t = (a * b).trace();
  const double scale = std::max(1.0, std::abs(t));
  if (std::abs(t.imag()) > 1e-12 * scale) {
    throw std::runtime_error("frobenius_inner: non-real trace, inputs not Hermitian");
  }
  return t.real();
}

double frobenius_inner(const HermitianOperator& a, const HermitianOperator& b) {
  return frobenius_inner(a.mat(), b.mat());
}

}  // namespace seqcert
