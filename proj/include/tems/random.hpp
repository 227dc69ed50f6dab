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

#include "tems/hamiltonian.hpp"
#include "tems/instrument.hpp"
#include "tems/operator_core.hpp"
#include "tems/rng.hpp"

namespace tems {

// GUE-style Hermitian matrix: (Z + Z^dag) / 2 with Ginibre Z, scaled.
HermitianOperator random_hermitian(int dim, RngStream& rng,
                                   double scale = 1.0);

// Full-rank random state: normalized G G^dag with Ginibre G.
DensityMatrix random_density(int dim, RngStream& rng);

// Haar-random unit vector.
Vector random_unit_vector(int dim, RngStream& rng);

// Random spectral Hamiltonian of the given dimension. Degeneracies are drawn
// uniformly among the compositions of dim when allow_degenerate, else all 1.
// Energies ascending with gaps >= 0.1, eigenbasis Haar-rotated.
SpectralHamiltonian random_spectral_hamiltonian(int dim, RngStream& rng,
                                                bool allow_degenerate = false);

// Mixed-unitary channel sum_k p_k U_k rho U_k^dag with Haar U_k and random
// weights; unital and trace-preserving by construction.
Channel random_unital_channel(int dim, int n_unitaries, RngStream& rng);

// Convex mixture of n_perms random permutation matrices (doubly stochastic;
// row and column sums 1 up to rounding in the weight normalization).
RealMatrix random_doubly_stochastic(int n, int n_perms, RngStream& rng);

}  // namespace tems
