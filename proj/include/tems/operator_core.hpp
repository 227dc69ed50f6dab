// Copyright 2026 The temsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "tems/rng.hpp"
#include "tems/tolerances.hpp"

namespace tems {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

//=============================================================================
// Entrywise helpers
//=============================================================================

// ||M||_max, the largest entry modulus.
double max_abs(const Matrix& m);

bool all_finite(const Matrix& m);

// ||M - M^dag||_max (0 for non-square by convention of the caller's check).
double hermiticity_defect(const Matrix& m);

// ||U^dag U - 1||_max.
double unitarity_defect(const Matrix& u);

Matrix identity(Eigen::Index dim);

//=============================================================================
// Validated operator types
//=============================================================================

// Square matrix with ||M - M^dag||_max <= tol * ||M||_max.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix m, double tol = tol::hermitian);
  const Matrix& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

// Square matrix with ||U^dag U - 1||_max <= tol.
class UnitaryOperator {
 public:
  explicit UnitaryOperator(Matrix u, double tol = tol::unitary);
  const Matrix& mat() const { return u_; }
  Eigen::Index dim() const { return u_.rows(); }

 private:
  Matrix u_;
};

// Hermitian, positive semidefinite (eigenvalues >= -psd_tol), with trace
// pinned either to 1 (normalized) or to any value in [0, 1] (subnormalized
// post-measurement states).
class DensityMatrix {
 public:
  static DensityMatrix normalized(Matrix m, double trace_tol = tol::density,
                                  double psd_tol = tol::psd);
  static DensityMatrix subnormalized(Matrix m, double trace_tol = tol::density,
                                     double psd_tol = tol::psd);
  const Matrix& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  double trace() const { return m_.trace().real(); }

 private:
  explicit DensityMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

//=============================================================================
// Spectral routines
//=============================================================================

struct EigenSystem {
  RealVector values;  // ascending
  Matrix vectors;     // columns; M = V diag(values) V^dag
};

// Hermitian eigendecomposition. Rejects inputs violating the Hermitian
// invariant, reporting the max asymmetry.
EigenSystem hermitian_eig(const HermitianOperator& m);

// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const HermitianOperator& m);

// min eig >= -tol * max(1, ||M||_max).
bool is_psd(const HermitianOperator& m, double tol = tol::psd);

// Hermitian square root of a PSD matrix (negative eigenvalues within psd_tol
// are clipped to zero).
Matrix psd_sqrt(const HermitianOperator& m, double psd_tol = tol::psd);

// exp(-i H t / hbar) through the eigendecomposition of H.
UnitaryOperator evolve_unitary(const HermitianOperator& h, double t,
                               double hbar = 1.0);

// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of
// the R diagonal absorbed into Q. Deterministic per seed.
UnitaryOperator haar_unitary(int dim, std::uint64_t seed);
UnitaryOperator haar_unitary(int dim, RngStream& rng);

// Entries independent CN: re, im ~ N(0,1).
Matrix ginibre(int dim, RngStream& rng);

//=============================================================================
// Choi matrices
//=============================================================================
//
// Convention: J(phi) = (phi x id)(|Omega><Omega|) with |Omega> = sum_i |ii> /
// sqrt(D), the output factor indexed first (slow). Concretely
//   J[(i,j),(i',j')] = (1/D) sum_l B_l(i,j) conj(B_l(i',j')),
// i.e. J = (1/D) sum_l vec(B_l) vec(B_l)^dag with vec stacking matrix rows.
// Consequences: trace(J) = 1 for trace-preserving maps; the map is TP iff
// partial_trace_first(J) = 1/D; CP iff J >= 0.

// Choi matrix of the CP map given by its Kraus operators. Rejects mismatched
// or non-square Kraus dimensions.
Matrix choi_from_kraus(std::span<const Matrix> kraus);

// Canonical Kraus set from a PSD Choi matrix: eigenvectors scaled by
// sqrt(D * eigenvalue); eigenvalues below cutoff * max(1, ||J||_max) dropped.
// Rejects matrices with an eigenvalue under the PSD floor
// -tol::psd * max(1, ||J||_max).
std::vector<Matrix> kraus_from_choi(const Matrix& choi,
                                    double cutoff = tol::kraus_cutoff);

// Partial traces of a (D*D)x(D*D) bipartite matrix in the convention above.
Matrix partial_trace_first(const Matrix& j, int dim);
Matrix partial_trace_second(const Matrix& j, int dim);

}  // namespace tems
