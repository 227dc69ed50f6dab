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
#include <vector>

#include "tems/operator_core.hpp"
#include "tems/tolerances.hpp"

namespace tems {

// One eigenspace: energy, its orthogonal projector, and the multiplicity.
struct EnergyLevel {
  double energy;
  Matrix projector;
  int degeneracy;
};

// Hamiltonian in spectral form. Invariants (validated on construction):
// energies strictly increasing, projectors mutually orthogonal and complete,
// degeneracy = Tr projector, sum of degeneracies = D.
class SpectralHamiltonian {
 public:
  // Eigenvalues closer than group_tol * max(1, ||M||_max) are merged into one
  // degenerate level; the level projector spans the merged eigenvectors.
  static SpectralHamiltonian from_matrix(const HermitianOperator& m,
                                         double group_tol = tol::group);

  // Diagonal in the computational basis: consecutive basis vectors grouped by
  // degeneracy, in the order given. Energies must be strictly increasing.
  static SpectralHamiltonian from_levels(const std::vector<double>& energies,
                                         const std::vector<int>& degeneracies);

  // Nondegenerate diagonal Hamiltonian, one level per basis vector.
  static SpectralHamiltonian from_levels(const std::vector<double>& energies);

  // Explicit levels; validates all invariants.
  static SpectralHamiltonian from_parts(std::vector<EnergyLevel> levels,
                                        double tol = tol::completeness);

  const std::vector<EnergyLevel>& levels() const { return levels_; }
  Eigen::Index dim() const { return dim_; }
  int level_count() const { return static_cast<int>(levels_.size()); }
  double energy(int n) const { return levels_[n].energy; }
  const Matrix& projector(int n) const { return levels_[n].projector; }
  int degeneracy(int n) const { return levels_[n].degeneracy; }

  // Sum_n e_n Pi_n as a dense matrix.
  Matrix matrix() const;

  // Same eigenspaces, energies multiplied by x (x != 0; x < 0 reverses the
  // level order to keep energies ascending).
  SpectralHamiltonian scaled(double x) const;

  // Same eigenspaces, energies shifted by c.
  SpectralHamiltonian shifted(double c) const;

  // Entrywise complex conjugate of every projector; energies unchanged.
  SpectralHamiltonian conjugated() const;

 private:
  SpectralHamiltonian(std::vector<EnergyLevel> levels, Eigen::Index dim)
      : levels_(std::move(levels)), dim_(dim) {}
  std::vector<EnergyLevel> levels_;
  Eigen::Index dim_;
};

// Z(beta) = sum_n d_n e^{-beta e_n}. Rejects beta <= 0.
double partition_function(const SpectralHamiltonian& h, double beta);

// Z^{-1} sum_n e^{-beta e_n} Pi_n. Rejects beta <= 0.
DensityMatrix gibbs_state(const SpectralHamiltonian& h, double beta);

// True iff all ordered pairwise differences e_n - e_m (n != m) are distinct
// at the given absolute tolerance (exhaustive double loop).
bool has_nondegenerate_differences(const std::vector<double>& energies,
                                   double tol = tol::difference);

// Random ascending energies whose pairwise differences are all distinct at
// tolerance 1e-9, deterministic per seed. Draws from [0, n_levels) and
// redraws until the exhaustive check passes with a minimum gap of 0.01.
std::vector<double> nondegenerate_difference_spectrum(int n_levels,
                                                      std::uint64_t seed);

}  // namespace tems
