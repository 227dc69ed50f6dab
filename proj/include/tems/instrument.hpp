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

#include <string>
#include <vector>

#include "tems/hamiltonian.hpp"
#include "tems/operator_core.hpp"
#include "tems/tolerances.hpp"

namespace tems {

// Completely positive, trace-nonincreasing map in Kraus form: the effect
// sum_l B_l^dag B_l must not exceed the identity (within tol).
class QuantumOperation {
 public:
  explicit QuantumOperation(std::vector<Matrix> kraus,
                            double tol = tol::completeness);
  const std::vector<Matrix>& kraus() const { return kraus_; }
  Eigen::Index dim() const { return kraus_.front().rows(); }

 private:
  std::vector<Matrix> kraus_;
};

// Trace-preserving operation: sum_l B_l^dag B_l = 1 within tol.
class Channel {
 public:
  explicit Channel(QuantumOperation op, double tol = tol::completeness);
  const QuantumOperation& op() const { return op_; }
  const std::vector<Matrix>& kraus() const { return op_.kraus(); }
  Eigen::Index dim() const { return op_.dim(); }

 private:
  QuantumOperation op_;
};

struct InstrumentOutcome {
  int label;
  QuantumOperation op;
};

// Outcome-indexed family of operations whose effects sum to the identity
// within tol (completeness).
class Instrument {
 public:
  explicit Instrument(std::vector<InstrumentOutcome> outcomes,
                      double tol = tol::completeness);
  const std::vector<InstrumentOutcome>& outcomes() const { return outcomes_; }
  const QuantumOperation& operation(int m) const { return outcomes_[m].op; }
  int size() const { return static_cast<int>(outcomes_.size()); }
  Eigen::Index dim() const { return outcomes_.front().op.dim(); }

 private:
  std::vector<InstrumentOutcome> outcomes_;
};

// sum_l B_l rho B_l^dag (subnormalized post-measurement state).
DensityMatrix apply(const QuantumOperation& op, const DensityMatrix& rho);

// sum_l B_l^dag B_l. Satisfies Tr[effect * rho] = Tr apply(op, rho).
HermitianOperator effect(const QuantumOperation& op);

// Choi matrix of the operation (see operator_core.hpp for the convention).
HermitianOperator choi(const QuantumOperation& op);

// p(m|n) = Tr phi_m(Pi_n / d_n): probability of outcome m given the state is
// the normalized projection onto level n. Columns sum to 1 within 1e-10.
// Rejects instruments whose outcome count differs from the level count.
RealMatrix error_matrix(const Instrument& instr, const SpectralHamiltonian& h);

// True iff ||error_matrix - 1||_max <= tol. When true, also asserts the
// equivalent effect condition effect(phi_m) = Pi_m at tol and throws if the
// two disagree (they cannot for CP instruments).
bool is_error_free(const Instrument& instr, const SpectralHamiltonian& h,
                   double tol = tol::completeness);

// Concatenation of all outcome Kraus lists; trace-preserving by instrument
// completeness.
Channel nonselective(const Instrument& instr);

// ||Phi(1) - 1||_max <= tol.
bool is_unital(const Channel& ch, double tol = tol::completeness);

// Kraus-wise complex conjugation in the computational basis (the antiunitary
// theta is fixed to conjugation; see README). Involutive.
Instrument time_reverse_instrument(const Instrument& instr);

// Outcome n has the single Kraus operator Pi_n.
Instrument build_projective(const SpectralHamiltonian& h);

// Outcome m has Kraus set {C_l Pi_m : C_l Kraus of channels[m]}: projective
// measurement followed by a trace-preserving channel. Error-free by
// construction. Requires one channel per level.
Instrument build_error_free(const SpectralHamiltonian& h,
                            const std::vector<Channel>& channels);

// rho -> (1 - alpha)(Tr rho / D) 1 + alpha rho. CP iff
// -(D^2-1)^{-1} <= alpha <= 1; out-of-range alpha is rejected with the
// negative Choi eigenvalue named.
Channel depolarizing(double alpha, int dim);

// rho -> (1 - alpha)(Tr rho / D) 1 + alpha rho^T. CP iff
// -(D-1)^{-1} <= alpha <= (D+1)^{-1}; checked via the Choi spectrum.
Channel transpose_depolarizing(double alpha, int dim);

enum class CrooksVariant {
  // Per-outcome maps phi_n(rho) = (1-alpha)(Tr Pi_n rho / D) 1
  //                              + alpha Pi_n rho Pi_n, each CP on its own.
  // Valid range depends on the level degeneracies; for nondegenerate spectra
  // it is -(D-1)^{-1} <= alpha <= 1.
  instrument_form,
  // build_error_free(h, depolarizing(alpha)): projective measurement followed
  // by one universal depolarizing channel. Valid range
  // -(D^2-1)^{-1} <= alpha <= 1.
  universal_channel,
};

// Instrument with phi_n(rho) = (1-alpha)(Tr Pi_n rho / D) 1
//                             + alpha Pi_n rho Pi_n for every outcome n.
// Out-of-range alpha (per variant) is rejected with Choi eigenvalue evidence.
Instrument build_crooks(const SpectralHamiltonian& h, double alpha,
                        CrooksVariant variant = CrooksVariant::instrument_form);

// Outcome m has the single Kraus sqrt(d_m / D) * 1, so every effect is the
// scaled identity (d_m / D) 1.
Instrument build_jii(const SpectralHamiltonian& h);

// Outcome m has the single Kraus sqrt(E_m), E_m = sum_i Q(m,i) |psi_i><psi_i|
// with psi_i the columns of basis. Q must be column-stochastic within 1e-12
// and each row sum must be a positive integer d_m within 1e-12 (the effect
// traces); violations are rejected naming the failing row/column.
Instrument build_ji_erroneous(const Matrix& basis, const RealMatrix& q);

// Projective measurement with classical outcome mixing: outcome m keeps its
// projection with weight 1 - epsilon and reports m on the other levels with
// weight epsilon / (N - 1) each. Not error-free for epsilon > 0.
Instrument build_mixed_projective(const SpectralHamiltonian& h,
                                  double epsilon);

// Operations are equal iff their Choi matrices agree within tol (Kraus lists
// are non-unique).
bool operations_equal(const QuantumOperation& a, const QuantumOperation& b,
                      double tol);
bool instruments_equal(const Instrument& a, const Instrument& b, double tol);

}  // namespace tems
