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

#include <optional>

#include "tems/hamiltonian.hpp"
#include "tems/instrument.hpp"
#include "tems/operator_core.hpp"

namespace tems {

// Force protocol: initial and final Hamiltonians plus the net dynamics
// between the two measurements. Dynamics is either a unitary or a unital
// channel; arbitrary time-ordered drivings enter through their net unitary.
class Protocol {
 public:
  Protocol(SpectralHamiltonian h_initial, SpectralHamiltonian h_final,
           UnitaryOperator u);
  // Channel dynamics must be unital within tol.
  Protocol(SpectralHamiltonian h_initial, SpectralHamiltonian h_final,
           Channel unital_channel, double tol = tol::completeness);

  const SpectralHamiltonian& h_initial() const { return h_initial_; }
  const SpectralHamiltonian& h_final() const { return h_final_; }
  bool has_unitary_dynamics() const { return unitary_.has_value(); }
  const UnitaryOperator& unitary() const;
  const Channel& channel() const;
  Eigen::Index dim() const { return h_initial_.dim(); }

 private:
  SpectralHamiltonian h_initial_;
  SpectralHamiltonian h_final_;
  std::optional<UnitaryOperator> unitary_;
  std::optional<Channel> channel_;
};

// Sudden quench to h_mid, free evolution for time tau (hbar = 1), sudden
// quench to the final Hamiltonian: dynamics = e^{-i tau h_mid}. The quenches
// themselves contribute no evolution. Rejects tau < 0.
Protocol quench_protocol(const SpectralHamiltonian& h0,
                         const SpectralHamiltonian& h_tau,
                         const HermitianOperator& h_mid, double tau);

// Hermitian G with e^{-iG} = U (principal branch: eigenphases in (-pi, pi]).
// quench_protocol(h0, h_tau, G, 1) then reproduces U.
HermitianOperator quench_generator(const UnitaryOperator& u);

// Reversed protocol: H_initial -> conj(H_final), H_final -> conj(H_initial),
// U -> U^T (theta = conjugation). Involutive. Rejects channel dynamics.
Protocol time_reversed(const Protocol& p);

// U rho U^dag, or the channel applied to rho. Trace-preserving.
DensityMatrix evolve(const Protocol& p, const DensityMatrix& rho);

}  // namespace tems
