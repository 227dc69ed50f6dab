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

#include <cstdint>
#include <optional>

#include "tems/verifier.hpp"

namespace tems {

// Sampled statistics of a real scalar over a unitary ensemble, with the
// unitaries achieving the extremes.
struct EnsembleStats {
  std::size_t count = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  Matrix witness_min;
  Matrix witness_max;
};

// Tr[U^dag A U B] over n_haar Haar unitaries plus n_structured phase
// unitaries U_x = sum_k e^{i x phi_k} |f_k><f_k| (x log-spaced, phases with
// nondegenerate differences, eigenbases alternating between A's, B's, and
// Haar frames). The trace is real for Hermitian A, B.
EnsembleStats lemma3_trace_scan(const HermitianOperator& a,
                                const HermitianOperator& b, int n_haar,
                                int n_structured, std::uint64_t seed);

struct Lemma3Verdict {
  // True iff A or B is within tol of a scalar multiple of the identity or of
  // zero; exactly the inputs making Tr[U^dag A U B] U-independent.
  bool constant_compatible = false;
  // The constant value when compatible (a Tr B or b Tr A).
  double constant_value = 0.0;
  double scan_spread = 0.0;
  // For non-constant verdicts: a unitary whose trace value deviates from the
  // ensemble mean by more than tol.
  std::optional<Matrix> witness_unitary;
  double witness_deviation = 0.0;
};

Lemma3Verdict lemma3_classify(const HermitianOperator& a,
                              const HermitianOperator& b, double tol,
                              std::uint64_t seed = 7);

// |<a|U^dag rho U|a> - <b|U sigma U^dag|b>| over Haar unitaries plus the
// structured ones from the constancy argument (unitaries mapping |a> onto
// eigenvectors of rho, composed with diagonal phases).
EnsembleStats lemma4_check(const DensityMatrix& rho, const DensityMatrix& sigma,
                           const Vector& a, const Vector& b, int ensemble,
                           std::uint64_t seed);

struct Lemma4Fit {
  double alpha = 0.0;
  // Joint Frobenius distance to the fitted pair
  // rho = (1-alpha)/D 1 + alpha |b><b|, sigma = (1-alpha)/D 1 + alpha |a><a|:
  // sqrt(||rho - rho_alpha||_F^2 + ||sigma - sigma_alpha||_F^2). The
  // least-squares alpha minimizes exactly this distance.
  double residual = 0.0;
  bool in_range = false;  // -(D-1)^{-1} <= alpha <= 1
};

Lemma4Fit lemma4_fit(const DensityMatrix& rho, const DensityMatrix& sigma,
                     const Vector& a, const Vector& b);

// Verifies the biconditional: error_matrix = identity at tol on one side,
// effect(phi_m) = Pi_m for all m at tol on the other, and reports whether
// the two sides agree. Residual is 0 when they agree, 1 when they split.
CheckReport appendixA_effect_check(const Instrument& instr,
                                   const SpectralHamiltonian& h, double tol);

}  // namespace tems
