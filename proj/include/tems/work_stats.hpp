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

#include <vector>

#include "tems/instrument.hpp"
#include "tems/protocol.hpp"

namespace tems {

// Joint outcome probabilities of the two-measurement scheme together with
// the spectra that give the outcomes their energies. p(m, n) is the raw
// computed value: entries may dip to -1e-12 from rounding and are clipped
// only when building distributions, never here.
struct JointOutcomeTable {
  RealMatrix p;  // rows m (final outcome), columns n (initial outcome)
  SpectralHamiltonian h_initial;
  SpectralHamiltonian h_final;
};

struct WorkPoint {
  double w;
  double p;
};

// Finite point-mass work distribution: support ascending, no two points
// closer than the merge tolerance, masses summing to 1.
struct WorkDistribution {
  std::vector<WorkPoint> support;
};

// p(m, n) = Tr phi^tau_m(U phi^0_n(rho_beta) U^dag). The initial state is
// the Gibbs state of p.h_initial() at beta. Normalization holds within 1e-10
// for any complete instruments. Rejects outcome counts that do not match the
// respective level counts.
JointOutcomeTable joint_table(const Protocol& p, const Instrument& instr0,
                              const Instrument& instr_tau, double beta);

// p(m, n | k) = Tr phi^tau_m(U phi^0_n(Pi_k) U^dag) / d_k, one matrix per
// initial level k (rows m, columns n). Each matrix sums to 1 within 1e-10.
std::vector<RealMatrix> conditional_table(const Protocol& p,
                                          const Instrument& instr0,
                                          const Instrument& instr_tau);

// Point mass at w = e_m(final) - e_n(initial), aggregated over all (m, n)
// whose work values agree within work_tol. work_tol <= 0 selects the default
// 1e-9 * max(1, largest energy magnitude). Negative probabilities above
// -1e-12 are clipped to 0; anything lower is rejected. Zero-mass pairs
// contribute no support point.
WorkDistribution work_distribution(const JointOutcomeTable& table,
                                   double work_tol = 0.0);

// sum_k p_k e^{-beta w_k}.
double exp_average(const WorkDistribution& dist, double beta);

// p2p(m | n) = Tr[Pi_m(final) U Pi_n(initial) U^dag] / d_n: transition
// probabilities of the bare projective scheme under the protocol's unitary.
// Columns sum to 1 within 1e-10. Rejects channel dynamics.
RealMatrix two_point_conditional(const Protocol& p);

}  // namespace tems
