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

#include "tems/work_stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tems {

namespace {

void require_scheme_dims(const Protocol& p, const Instrument& instr0,
                         const Instrument& instr_tau) {
  if (instr0.size() != p.h_initial().level_count() ||
      instr_tau.size() != p.h_final().level_count())
    throw std::invalid_argument(
        "work_stats: instrument outcome counts must match the level counts");
  if (instr0.dim() != p.dim() || instr_tau.dim() != p.dim())
    throw std::invalid_argument("work_stats: dimension mismatch");
}

void check_total(double total, const char* who) {
  if (std::abs(total - 1.0) > 1e-10) {
    std::ostringstream os;
    os << who << ": probabilities sum to " << total
       << " (instrument completeness or dynamics trace preservation broke)";
    throw std::logic_error(os.str());
  }
}

}  // namespace

JointOutcomeTable joint_table(const Protocol& p, const Instrument& instr0,
                              const Instrument& instr_tau, double beta) {
  require_scheme_dims(p, instr0, instr_tau);
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument(
        "joint_table: beta must be positive and finite");
  // Mix the per-level conditional tables with exact Gibbs weights instead of
  // propagating the Gibbs state itself: each entry then keeps the relative
  // accuracy of its own level weight rather than inheriting absolute rounding
  // noise from the heavy levels, which matters once beta spreads the weights
  // over many decades.
  const std::vector<RealMatrix> cond =
      conditional_table(p, instr0, instr_tau);
  const SpectralHamiltonian& h = p.h_initial();
  const double e0 = h.levels().front().energy;
  double z = 0.0;
  for (const EnergyLevel& l : h.levels())
    z += l.degeneracy * std::exp(-beta * (l.energy - e0));
  RealMatrix table = RealMatrix::Zero(instr_tau.size(), instr0.size());
  for (int k = 0; k < h.level_count(); ++k)
    table += h.degeneracy(k) * std::exp(-beta * (h.energy(k) - e0)) / z *
             cond[static_cast<std::size_t>(k)];
  check_total(table.sum(), "joint_table");
  return {std::move(table), p.h_initial(), p.h_final()};
}

std::vector<RealMatrix> conditional_table(const Protocol& p,
                                          const Instrument& instr0,
                                          const Instrument& instr_tau) {
  require_scheme_dims(p, instr0, instr_tau);
  const int n0 = instr0.size();
  const int n1 = instr_tau.size();
  std::vector<Matrix> final_effects(n1);
  for (int m = 0; m < n1; ++m)
    final_effects[m] = effect(instr_tau.operation(m)).mat();
  std::vector<RealMatrix> tables;
  tables.reserve(n0);
  for (int k = 0; k < n0; ++k) {
    const DensityMatrix rho_k = DensityMatrix::normalized(
        p.h_initial().projector(k) /
        static_cast<double>(p.h_initial().degeneracy(k)));
    RealMatrix t(n1, n0);
    for (int n = 0; n < n0; ++n) {
      const DensityMatrix after_first = apply(instr0.operation(n), rho_k);
      const DensityMatrix evolved = evolve(p, after_first);
      for (int m = 0; m < n1; ++m)
        t(m, n) = (final_effects[m] * evolved.mat()).trace().real();
    }
    check_total(t.sum(), "conditional_table");
    tables.push_back(std::move(t));
  }
  return tables;
}

WorkDistribution work_distribution(const JointOutcomeTable& table,
                                   double work_tol) {
  if (work_tol <= 0.0) {
    double scale = 1.0;
    for (const EnergyLevel& l : table.h_initial.levels())
      scale = std::max(scale, std::abs(l.energy));
    for (const EnergyLevel& l : table.h_final.levels())
      scale = std::max(scale, std::abs(l.energy));
    work_tol = 1e-9 * scale;
  }
  struct RawPoint {
    double w;
    double p;
  };
  std::vector<RawPoint> points;
  points.reserve(static_cast<std::size_t>(table.p.size()));
  for (int m = 0; m < table.p.rows(); ++m) {
    for (int n = 0; n < table.p.cols(); ++n) {
      const double mass = table.p(m, n);
      if (mass < -1e-12) {
        std::ostringstream os;
        os << "work_distribution: probability p(" << m << ", " << n
           << ") = " << mass << " is negative beyond rounding";
        throw std::invalid_argument(os.str());
      }
      const double clipped = std::max(mass, 0.0);
      if (clipped == 0.0) continue;  // zero-mass pairs carry no support point
      points.push_back(
          {table.h_final.energy(m) - table.h_initial.energy(n), clipped});
    }
  }
  std::sort(points.begin(), points.end(),
            [](const RawPoint& a, const RawPoint& b) { return a.w < b.w; });
  WorkDistribution dist;
  std::size_t start = 0;
  double total = 0.0;
  while (start < points.size()) {
    std::size_t stop = start + 1;
    while (stop < points.size() &&
           points[stop].w - points[stop - 1].w <= work_tol)
      ++stop;
    double mass = 0.0;
    double weighted = 0.0;
    for (std::size_t i = start; i < stop; ++i) {
      mass += points[i].p;
      weighted += points[i].p * points[i].w;
    }
    dist.support.push_back({weighted / mass, mass});
    total += mass;
    start = stop;
  }
  check_total(total, "work_distribution");
  return dist;
}

double exp_average(const WorkDistribution& dist, double beta) {
  if (beta < 0.0 || !std::isfinite(beta))
    throw std::invalid_argument("exp_average: beta must be >= 0");
  double s = 0.0;
  for (const WorkPoint& pt : dist.support)
    s += pt.p * std::exp(-beta * pt.w);
  return s;
}

RealMatrix two_point_conditional(const Protocol& p) {
  if (!p.has_unitary_dynamics())
    throw std::invalid_argument(
        "two_point_conditional: requires unitary dynamics");
  const Matrix& u = p.unitary().mat();
  const int n0 = p.h_initial().level_count();
  const int n1 = p.h_final().level_count();
  RealMatrix t(n1, n0);
  for (int n = 0; n < n0; ++n) {
    const Matrix evolved =
        u * p.h_initial().projector(n) * u.adjoint() /
        static_cast<double>(p.h_initial().degeneracy(n));
    for (int m = 0; m < n1; ++m)
      t(m, n) = (p.h_final().projector(m) * evolved).trace().real();
  }
  return t;
}

}  // namespace tems
