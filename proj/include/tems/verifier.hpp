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
#include <string>
#include <vector>

#include "tems/work_stats.hpp"

namespace tems {

// Complete two-measurement experiment: protocol, the two instruments, and
// the inverse temperature of the initial Gibbs state.
struct Scenario {
  Protocol protocol;
  Instrument instr0;
  Instrument instr_tau;
  double beta;
};

struct CheckDiagnostic {
  std::string label;
  double expected;
  double actual;
  double residual;
};

// Result of one check. pass <=> residual <= tolerance, where residual is the
// check's headline metric (relative for scalar equalities, max per-point for
// tables).
struct CheckReport {
  std::string check;
  double expected = 0.0;
  double actual = 0.0;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<CheckDiagnostic> diagnostics;
};

// <e^{-beta w}> against Z(final)/Z(initial); relative residual.
CheckReport check_jarzynski(const Scenario& s, double tol);

// Same for the time-reversed scenario (reversed protocol, time-reversed
// instruments in swapped roles) against Z(initial)/Z(final).
CheckReport check_backward_jarzynski(const Scenario& s, double tol);

// Per-point comparison p_fwd(w) = e^{-beta(dF - w)} p_bwd(-w). Support
// points are matched within work_tol (<= 0 selects the work_distribution
// default); unmatched points with relative mass above tol fail. Residual is
// the max per-point relative deviation. Requires unitary dynamics.
CheckReport check_crooks(const Scenario& s, double tol, double work_tol = 0.0);

// p_fwd(m, n | n) d_n(initial) = p_bwd(n, m | m) d_m(final) for all m, n;
// residual is the max absolute deviation. Requires unitary dynamics.
CheckReport check_detailed_balance(const Scenario& s, double tol);

// Three sub-checks (reported as diagnostics): the first instrument is
// error-free, its nonselective channel is unital, and every second-stage
// effect trace equals the final degeneracy d_m.
CheckReport check_condition_Ji(const Instrument& instr0,
                               const Instrument& instr_tau,
                               const SpectralHamiltonian& h0,
                               const SpectralHamiltonian& h_tau, double tol);

// ||effect(phi_m) - (d_m / D) 1||_max <= tol for every outcome m.
CheckReport check_condition_Jii(const Instrument& instr_tau,
                                const SpectralHamiltonian& h_tau, int dim,
                                double tol);

struct AlphaFit {
  double alpha = 0.0;
  // Max over outcomes of the Frobenius distance between the outcome's Choi
  // matrix and the fitted family member.
  double residual = 0.0;
  bool in_instrument_range = false;
  bool in_universal_range = false;
  // False when the instrument is not error-free (the family presumes it);
  // the fit is still performed.
  bool error_free_precondition = true;
};

// Least-squares fit of all per-outcome Choi matrices to the one-parameter
// projective-plus-depolarizing family.
AlphaFit fit_depolarizing_alpha(const Instrument& instr,
                                const SpectralHamiltonian& h);

enum class CheckKind {
  jarzynski,
  backward_jarzynski,
  crooks,
  detailed_balance,
};

// Adversarial search space: a base scenario with the dynamics and/or the
// initial spectrum scale freed. When free_x is set, the initial energies are
// scaled by x over a log grid on [x_min, x_max] (the instruments depend only
// on the projectors and are unaffected).
struct SearchTemplate {
  Scenario base;
  CheckKind target = CheckKind::jarzynski;
  bool free_dynamics = true;
  bool free_x = false;
  double x_min = 0.1;
  double x_max = 10.0;
  int x_points = 50;
};

struct SearchResult {
  double worst_violation = 0.0;
  Scenario witness;
  double x = 1.0;  // spectrum scale of the witness (1 when not freed)
  std::uint64_t evaluations = 0;
};

// Maximizes the target check's residual over Haar-restarted dynamics with
// derivative-free simplex refinement over a Hermitian-generator chart, and
// over the x grid when freed. Deterministic per seed for any worker count.
// Rejects budget = 0.
SearchResult adversarial_search(const SearchTemplate& tmpl, int budget,
                                std::uint64_t seed, int workers = 1);

// Residual of the target check on a concrete scenario (the scalar the search
// maximizes).
double violation_of(const Scenario& s, CheckKind target);

}  // namespace tems
