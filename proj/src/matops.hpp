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

#ifndef SEQCERT_MATOPS_HPP
#define SEQCERT_MATOPS_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace seqcert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

/// Thrown when an input violates a documented precondition.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense Hermitian operator. Construction symmetrizes (H + H†)/2 and
/// rejects inputs whose anti-Hermitian residual exceeds `tol`.
class HermitianOperator {
 public:
  /// Empty placeholder so the type works inside aggregates; any real use
  /// goes through the checking constructor.
  HermitianOperator() = default;
  explicit HermitianOperator(const ComplexMatrix& raw, double tol = 1e-9);

  /// Hermitian by construction, no residual check.
  static HermitianOperator identity(Eigen::Index dim);
  static HermitianOperator zero(Eigen::Index dim);

  Eigen::Index dim() const { return mat_.rows(); }
  const ComplexMatrix& mat() const { return mat_; }

  double trace() const { return mat_.trace().real(); }

 private:
  ComplexMatrix mat_;
};

/// Smallest eigenvalue of a Hermitian operator, via a self-adjoint
/// eigensolve. This is the independent verification path for dual
/// certificates, so it must not share code with the SDP solver's
/// internal factorizations.
double min_eigenvalue(const HermitianOperator& h);

/// Smallest eigenvalue of a raw matrix after the same Hermiticity check.
double min_eigenvalue(const ComplexMatrix& h, double tol = 1e-9);

/// Tr[A B] for Hermitian A, B. Real by symmetry; the imaginary residue is
/// checked against 1e-12 (relative) and discarded.
double frobenius_inner(const HermitianOperator& a, const HermitianOperator& b);
double frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Anti-Hermitian residual max |H - H†|_ij, used by the constructors and
/// directly by validation code.
double hermiticity_residual(const ComplexMatrix& m);

}  // namespace seqcert

#endif
