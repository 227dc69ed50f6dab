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

#include "tems/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "tems/rng.hpp"

namespace tems {

std::uint64_t RngStream::uniform_index(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
  const std::uint64_t bound = (UINT64_MAX / n) * n;
  std::uint64_t r = gen_();
  while (r >= bound) r = gen_();
  return r % n;
}

double RngStream::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

std::uint64_t RngStream::derive(std::uint64_t seed, std::uint64_t index) {
  // SplitMix64 finalizer over (seed, index); distinct indexes give
  // statistically independent streams.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

HermitianOperator random_hermitian(int dim, RngStream& rng, double scale) {
  const Matrix z = ginibre(dim, rng);
  return HermitianOperator(0.5 * scale * (z + z.adjoint()));
}

DensityMatrix random_density(int dim, RngStream& rng) {
  const Matrix g = ginibre(dim, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::normalized(0.5 * (rho + rho.adjoint()));
}

Vector random_unit_vector(int dim, RngStream& rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.complex_gaussian();
  return v / v.norm();
}

SpectralHamiltonian random_spectral_hamiltonian(int dim, RngStream& rng,
                                                bool allow_degenerate) {
  if (dim < 1)
    throw std::invalid_argument(
        "random_spectral_hamiltonian: dim must be positive");
  std::vector<int> degs;
  int remaining = dim;
  while (remaining > 0) {
    int d = 1;
    if (allow_degenerate) {
      const auto cap = static_cast<std::uint64_t>(std::min(remaining, 3));
      d = 1 + static_cast<int>(rng.uniform_index(cap));
    }
    degs.push_back(d);
    remaining -= d;
  }
  std::vector<double> energies(degs.size());
  double e = rng.uniform(-1.0, 1.0);
  for (std::size_t k = 0; k < degs.size(); ++k) {
    energies[k] = e;
    e += 0.1 + rng.uniform(0.0, 1.9);
  }
  const Matrix v = haar_unitary(dim, rng).mat();
  std::vector<EnergyLevel> levels;
  int offset = 0;
  for (std::size_t k = 0; k < degs.size(); ++k) {
    const Matrix block = v.middleCols(offset, degs[k]);
    levels.push_back({energies[k], block * block.adjoint(), degs[k]});
    offset += degs[k];
  }
  return SpectralHamiltonian::from_parts(std::move(levels));
}

Channel random_unital_channel(int dim, int n_unitaries, RngStream& rng) {
  if (n_unitaries < 1)
    throw std::invalid_argument(
        "random_unital_channel: need at least one unitary");
  std::vector<double> w(n_unitaries);
  for (double& x : w) x = -std::log(1.0 - rng.uniform());
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<Matrix> kraus;
  kraus.reserve(n_unitaries);
  for (int k = 0; k < n_unitaries; ++k) {
    kraus.push_back(std::sqrt(w[k] / total) * haar_unitary(dim, rng).mat());
  }
  return Channel(QuantumOperation(std::move(kraus)));
}

RealMatrix random_doubly_stochastic(int n, int n_perms, RngStream& rng) {
  if (n < 1 || n_perms < 1)
    throw std::invalid_argument("random_doubly_stochastic: bad sizes");
  std::vector<double> w(n_perms);
  for (double& x : w) x = -std::log(1.0 - rng.uniform());
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  RealMatrix q = RealMatrix::Zero(n, n);
  std::vector<int> perm(n);
  for (int k = 0; k < n_perms; ++k) {
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) {
      const auto j = static_cast<int>(
          rng.uniform_index(static_cast<std::uint64_t>(i) + 1));
      std::swap(perm[i], perm[j]);
    }
    for (int i = 0; i < n; ++i) q(perm[i], i) += w[k] / total;
  }
  return q;
}

}  // namespace tems
