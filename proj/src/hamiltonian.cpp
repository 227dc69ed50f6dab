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

#include "tems/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tems/rng.hpp"

namespace tems {

SpectralHamiltonian SpectralHamiltonian::from_matrix(
    const HermitianOperator& m, double group_tol) {
  const EigenSystem es = hermitian_eig(m);
  const double gap = group_tol * std::max(1.0, max_abs(m.mat()));
  const Eigen::Index d = m.dim();
  std::vector<EnergyLevel> levels;
  Eigen::Index start = 0;
  while (start < d) {
    Eigen::Index stop = start + 1;
    while (stop < d && es.values(stop) - es.values(stop - 1) <= gap) ++stop;
    const Eigen::Index count = stop - start;
    const Matrix block = es.vectors.middleCols(start, count);
    const double energy =
        es.values.segment(start, count).sum() / static_cast<double>(count);
    levels.push_back(
        {energy, block * block.adjoint(), static_cast<int>(count)});
    start = stop;
  }
  return SpectralHamiltonian(std::move(levels), d);
}

SpectralHamiltonian SpectralHamiltonian::from_levels(
    const std::vector<double>& energies, const std::vector<int>& degeneracies) {
  if (energies.empty() || energies.size() != degeneracies.size()) {
    throw std::invalid_argument(
        "SpectralHamiltonian: energies and degeneracies must be nonempty and "
        "equal-length");
  }
  Eigen::Index dim = 0;
  for (std::size_t k = 0; k < energies.size(); ++k) {
    if (degeneracies[k] < 1)
      throw std::invalid_argument(
          "SpectralHamiltonian: degeneracies must be positive");
    if (k > 0 && energies[k] <= energies[k - 1])
      throw std::invalid_argument(
          "SpectralHamiltonian: energies must be strictly increasing");
    if (!std::isfinite(energies[k]))
      throw std::invalid_argument("SpectralHamiltonian: non-finite energy");
    dim += degeneracies[k];
  }
  std::vector<EnergyLevel> levels;
  Eigen::Index offset = 0;
  for (std::size_t k = 0; k < energies.size(); ++k) {
    Matrix pi = Matrix::Zero(dim, dim);
    for (int i = 0; i < degeneracies[k]; ++i) pi(offset + i, offset + i) = 1.0;
    levels.push_back({energies[k], std::move(pi), degeneracies[k]});
    offset += degeneracies[k];
  }
  return SpectralHamiltonian(std::move(levels), dim);
}

SpectralHamiltonian SpectralHamiltonian::from_levels(
    const std::vector<double>& energies) {
  return from_levels(energies, std::vector<int>(energies.size(), 1));
}

SpectralHamiltonian SpectralHamiltonian::from_parts(
    std::vector<EnergyLevel> levels, double tol) {
  if (levels.empty())
    throw std::invalid_argument("SpectralHamiltonian: no levels");
  const Eigen::Index dim = levels.front().projector.rows();
  Matrix sum = Matrix::Zero(dim, dim);
  Eigen::Index total_deg = 0;
  for (std::size_t n = 0; n < levels.size(); ++n) {
    const EnergyLevel& ln = levels[n];
    if (!std::isfinite(ln.energy))
      throw std::invalid_argument("SpectralHamiltonian: non-finite energy");
    if (n > 0 && ln.energy <= levels[n - 1].energy)
      throw std::invalid_argument(
          "SpectralHamiltonian: energies must be strictly increasing");
    if (ln.projector.rows() != dim || ln.projector.cols() != dim)
      throw std::invalid_argument(
          "SpectralHamiltonian: projector dimensions mismatch");
    const double tr = ln.projector.trace().real();
    if (std::abs(tr - ln.degeneracy) > 1e-10 || ln.degeneracy < 1) {
      std::ostringstream os;
      os << "SpectralHamiltonian: level " << n << " degeneracy "
         << ln.degeneracy << " does not match projector trace " << tr;
      throw std::invalid_argument(os.str());
    }
    for (std::size_t m = 0; m < levels.size(); ++m) {
      const Matrix prod = ln.projector * levels[m].projector;
      const Matrix expect = (m == n) ? ln.projector : Matrix::Zero(dim, dim);
      if (max_abs(prod - expect) > tol) {
        std::ostringstream os;
        os << "SpectralHamiltonian: projectors " << n << ", " << m
           << " violate orthogonality by " << max_abs(prod - expect);
        throw std::invalid_argument(os.str());
      }
    }
    sum += ln.projector;
    total_deg += ln.degeneracy;
  }
  if (max_abs(sum - identity(dim)) > tol)
    throw std::invalid_argument(
        "SpectralHamiltonian: projectors do not sum to the identity");
  if (total_deg != dim)
    throw std::invalid_argument(
        "SpectralHamiltonian: degeneracies do not sum to the dimension");
  return SpectralHamiltonian(std::move(levels), dim);
}

Matrix SpectralHamiltonian::matrix() const {
  Matrix m = Matrix::Zero(dim_, dim_);
  for (const EnergyLevel& l : levels_) m += l.energy * l.projector;
  return m;
}

SpectralHamiltonian SpectralHamiltonian::scaled(double x) const {
  if (x == 0.0 || !std::isfinite(x))
    throw std::invalid_argument(
        "SpectralHamiltonian::scaled: x must be nonzero and finite");
  std::vector<EnergyLevel> levels = levels_;
  for (EnergyLevel& l : levels) l.energy *= x;
  if (x < 0.0) std::reverse(levels.begin(), levels.end());
  return SpectralHamiltonian(std::move(levels), dim_);
}

SpectralHamiltonian SpectralHamiltonian::shifted(double c) const {
  if (!std::isfinite(c))
    throw std::invalid_argument("SpectralHamiltonian::shifted: non-finite c");
  std::vector<EnergyLevel> levels = levels_;
  for (EnergyLevel& l : levels) l.energy += c;
  return SpectralHamiltonian(std::move(levels), dim_);
}

SpectralHamiltonian SpectralHamiltonian::conjugated() const {
  std::vector<EnergyLevel> levels = levels_;
  for (EnergyLevel& l : levels) l.projector = l.projector.conjugate();
  return SpectralHamiltonian(std::move(levels), dim_);
}

namespace {

void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("beta must be positive and finite");
}

}  // namespace

double partition_function(const SpectralHamiltonian& h, double beta) {
  require_beta(beta);
  // Factor out the ground energy so the sum never overflows.
  const double e0 = h.levels().front().energy;
  double s = 0.0;
  for (const EnergyLevel& l : h.levels())
    s += l.degeneracy * std::exp(-beta * (l.energy - e0));
  return std::exp(-beta * e0) * s;
}

DensityMatrix gibbs_state(const SpectralHamiltonian& h, double beta) {
  require_beta(beta);
  const double e0 = h.levels().front().energy;
  double z = 0.0;
  for (const EnergyLevel& l : h.levels())
    z += l.degeneracy * std::exp(-beta * (l.energy - e0));
  Matrix rho = Matrix::Zero(h.dim(), h.dim());
  for (const EnergyLevel& l : h.levels())
    rho += (std::exp(-beta * (l.energy - e0)) / z) * l.projector;
  return DensityMatrix::normalized(std::move(rho));
}

bool has_nondegenerate_differences(const std::vector<double>& energies,
                                   double tol) {
  std::vector<double> diffs;
  const std::size_t n = energies.size();
  diffs.reserve(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) diffs.push_back(energies[a] - energies[b]);
  for (std::size_t i = 0; i < diffs.size(); ++i)
    for (std::size_t j = i + 1; j < diffs.size(); ++j)
      if (std::abs(diffs[i] - diffs[j]) <= tol) return false;
  return true;
}

std::vector<double> nondegenerate_difference_spectrum(int n_levels,
                                                      std::uint64_t seed) {
  if (n_levels < 1)
    throw std::invalid_argument(
        "nondegenerate_difference_spectrum: n_levels must be positive");
  RngStream rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<double> e(n_levels);
    for (double& x : e) x = rng.uniform(0.0, static_cast<double>(n_levels));
    std::sort(e.begin(), e.end());
    bool gaps_ok = true;
    for (int k = 1; k < n_levels; ++k)
      if (e[k] - e[k - 1] < 0.01) gaps_ok = false;
    if (gaps_ok && has_nondegenerate_differences(e, tol::difference)) return e;
  }
  throw std::runtime_error(
      "nondegenerate_difference_spectrum: no candidate found (unreachable at "
      "sane sizes)");
}

}  // namespace tems
