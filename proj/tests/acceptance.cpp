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

// Acceptance gate. Each criterion prints exactly one [PASS]/[FAIL] line with
// its headline numbers; the process exits 0 iff every criterion passed.
// Tolerances are pinned inline and are not configurable.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tems/cli.hpp"
#include "tems/hamiltonian.hpp"
#include "tems/instrument.hpp"
#include "tems/lemma_lab.hpp"
#include "tems/operator_core.hpp"
#include "tems/protocol.hpp"
#include "tems/random.hpp"
#include "tems/rng.hpp"
#include "tems/serialization.hpp"
#include "tems/verifier.hpp"
#include "tems/work_stats.hpp"

namespace fs = std::filesystem;
using namespace tems;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

// Random Hamiltonian with an exact target spread (max - min energy), a
// minimum relative gap, and a Haar-random eigenframe. Degenerate draws keep
// at least two levels, with multiplicities up to 3.
SpectralHamiltonian draw_spectrum(int dim, double spread, bool allow_degenerate,
                                  RngStream& rng) {
  std::vector<int> degs;
  int rest = dim;
  while (rest > 0) {
    int cap = std::min(rest, 3);
    if (degs.empty()) cap = std::min(cap, dim - 1);
    const int d =
        allow_degenerate ? 1 + static_cast<int>(rng.uniform_index(cap)) : 1;
    degs.push_back(d);
    rest -= d;
  }
  const int n = static_cast<int>(degs.size());
  std::vector<double> e(n);
  e[0] = 0.0;
  for (int i = 1; i < n; ++i) e[i] = e[i - 1] + rng.uniform(0.3, 1.0);
  const double scale = spread / e[n - 1];
  const double base = rng.uniform(-0.6, 0.4);
  for (double& v : e) v = base + v * scale;

  const Matrix frame = haar_unitary(dim, rng).mat();
  std::vector<EnergyLevel> levels;
  int off = 0;
  for (int i = 0; i < n; ++i) {
    const Matrix cols = frame.middleCols(off, degs[i]);
    levels.push_back({e[i], cols * cols.adjoint(), degs[i]});
    off += degs[i];
  }
  return SpectralHamiltonian::from_parts(std::move(levels));
}

// Two diagonal spectra whose combined energy list has all pairwise
// differences distinct, so every (m, n) transition has a unique work value.
std::pair<SpectralHamiltonian, SpectralHamiltonian> distinct_work_pair(
    int dim, std::uint64_t seed) {
  for (std::uint64_t k = 0;; ++k) {
    std::vector<double> e0 = nondegenerate_difference_spectrum(dim, seed + 2 * k);
    std::vector<double> et =
        nondegenerate_difference_spectrum(dim, seed + 2 * k + 1);
    std::vector<double> all = e0;
    all.insert(all.end(), et.begin(), et.end());
    if (has_nondegenerate_differences(all, 1e-6)) {
      return {SpectralHamiltonian::from_levels(e0),
              SpectralHamiltonian::from_levels(et)};
    }
  }
}

double gibbs_weight(const SpectralHamiltonian& h, double beta, int n) {
  const double e0 = h.levels().front().energy;
  double z = 0.0;
  for (const EnergyLevel& l : h.levels())
    z += l.degeneracy * std::exp(-beta * (l.energy - e0));
  return h.degeneracy(n) * std::exp(-beta * (h.energy(n) - e0)) / z;
}

//-----------------------------------------------------------------------------
// 1. Projective exactness: Jarzynski <= 1e-10 (relative) and Crooks <= 1e-9
//    (per-point relative) on 200 random scenarios, D in {2,3,4,6} including
//    degenerate spectra, Haar dynamics, beta in [0.1, 5]; runtime <= 60 s.
//-----------------------------------------------------------------------------
Outcome criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  RngStream rng(101);
  const int dims[] = {2, 3, 4, 6};
  double max_jz = 0.0;
  double max_ck = 0.0;
  bool ok = true;
  for (int i = 0; i < 200; ++i) {
    const int dim = dims[i % 4];
    const bool degenerate = dim > 2 && (i % 2 == 1);
    const double beta = 0.1 + 4.9 * rng.uniform();
    // The exponential reweighting amplifies rounding noise by roughly
    // e^{beta * spread}; capping the product keeps the floor below 1e-12.
    const double spread = std::min(1.4, 3.6 / beta);
    const SpectralHamiltonian h0 = draw_spectrum(dim, spread, degenerate, rng);
    const SpectralHamiltonian ht = draw_spectrum(dim, spread, degenerate, rng);
    const Scenario s{Protocol(h0, ht, haar_unitary(dim, rng)),
                     build_projective(h0), build_projective(ht), beta};
    const CheckReport jz = check_jarzynski(s, 1e-10);
    const CheckReport ck = check_crooks(s, 1e-9);
    max_jz = std::max(max_jz, jz.residual);
    max_ck = std::max(max_ck, ck.residual);
    ok = ok && jz.pass && ck.pass;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::ostringstream d;
  d << "200 scenarios, max jarzynski " << sci(max_jz) << ", max crooks "
    << sci(max_ck) << ", " << sci(secs) << " s (limit 60)";
  return {ok && secs <= 60.0, d.str()};
}

//-----------------------------------------------------------------------------
// 2. Crooks family sufficiency: matched build_crooks(alpha) on both ends,
//    alpha in {-(D-1)^-1, -(D^2-1)^-1, 0, 0.5, 1}, D in {2,3,4}, 20 Haar
//    protocols each; Crooks <= 1e-9, detailed balance <= 1e-10, every
//    per-outcome Choi eigenvalue >= -1e-10.
//-----------------------------------------------------------------------------
Outcome criterion_2() {
  RngStream rng(202);
  double max_ck = 0.0;
  double max_db = 0.0;
  double min_eig = 0.0;
  bool ok = true;
  for (const int dim : {2, 3, 4}) {
    const double alphas[] = {-1.0 / (dim - 1), -1.0 / (dim * dim - 1), 0.0,
                             0.5, 1.0};
    for (const double alpha : alphas) {
      for (int rep = 0; rep < 20; ++rep) {
        const double beta = rng.uniform(0.4, 1.6);
        const SpectralHamiltonian h0 = draw_spectrum(dim, 1.2, false, rng);
        const SpectralHamiltonian ht = draw_spectrum(dim, 1.2, false, rng);
        const Scenario s{Protocol(h0, ht, haar_unitary(dim, rng)),
                         build_crooks(h0, alpha), build_crooks(ht, alpha),
                         beta};
        for (const Instrument* instr : {&s.instr0, &s.instr_tau}) {
          for (int m = 0; m < instr->size(); ++m)
            min_eig =
                std::min(min_eig, min_eigenvalue(choi(instr->operation(m))));
        }
        const CheckReport ck = check_crooks(s, 1e-9);
        const CheckReport db = check_detailed_balance(s, 1e-10);
        max_ck = std::max(max_ck, ck.residual);
        max_db = std::max(max_db, db.residual);
        ok = ok && ck.pass && db.pass;
      }
    }
  }
  ok = ok && min_eig >= -1e-10;
  std::ostringstream d;
  d << "300 scenarios, max crooks " << sci(max_ck) << ", max db "
    << sci(max_db) << ", min choi eig " << sci(min_eig);
  return {ok, d.str()};
}

//-----------------------------------------------------------------------------
// 3. Crooks necessity: an error-free first instrument whose channel is not
//    depolarizing (constant-output channel, D=3) yields an adversarial Crooks
//    violation >= 1e-3 at budget 2000; mismatched depolarizing strengths
//    (0.2 first, 0.8 second) yield >= 1e-4.
//-----------------------------------------------------------------------------
Outcome criterion_3() {
  const int dim = 3;
  const SpectralHamiltonian h0 =
      SpectralHamiltonian::from_levels({0.0, 0.45, 1.0});
  const SpectralHamiltonian ht =
      SpectralHamiltonian::from_levels({0.1, 0.6, 1.2});
  std::vector<Matrix> kraus;
  for (int i = 0; i < dim; ++i) {
    Matrix k = Matrix::Zero(dim, dim);
    k(0, i) = 1.0;
    kraus.push_back(std::move(k));
  }
  const Channel constant(QuantumOperation(std::move(kraus)));
  const Scenario base_const{
      Protocol(h0, ht, haar_unitary(dim, 31)),
      build_error_free(h0, std::vector<Channel>(h0.level_count(), constant)),
      build_projective(ht), 1.0};
  const SearchResult r1 = adversarial_search(
      {.base = base_const, .target = CheckKind::crooks}, 2000, 77);

  const Scenario base_mismatch{Protocol(h0, ht, haar_unitary(dim, 32)),
                               build_crooks(h0, 0.2), build_crooks(ht, 0.8),
                               1.0};
  const SearchResult r2 = adversarial_search(
      {.base = base_mismatch, .target = CheckKind::crooks}, 2000, 78);

  const bool ok = r1.worst_violation >= 1e-3 && r2.worst_violation >= 1e-4;
  std::ostringstream d;
  d << "constant-channel violation " << sci(r1.worst_violation)
    << " (>= 1e-3), mismatched-alpha violation " << sci(r2.worst_violation)
    << " (>= 1e-4)";
  return {ok, d.str()};
}

//-----------------------------------------------------------------------------
// 4. Erroneous second measurement: doubly stochastic confusion with a random
//    basis, error-free unital first; 50 Haar protocols, D in {2,3,4};
//    Jarzynski <= 1e-10 while is_error_free(second) is false.
//-----------------------------------------------------------------------------
Outcome criterion_4() {
  RngStream rng(404);
  const int dims[] = {2, 3, 4};
  double max_jz = 0.0;
  bool ok = true;
  for (int i = 0; i < 50; ++i) {
    const int dim = dims[i % 3];
    const double beta = rng.uniform(0.5, 1.5);
    const SpectralHamiltonian h0 = draw_spectrum(dim, 1.2, false, rng);
    const SpectralHamiltonian ht = draw_spectrum(dim, 1.2, false, rng);
    // One shared channel keeps the nonselective first map unital.
    const Channel shared = random_unital_channel(dim, 3, rng);
    const Instrument first = build_error_free(
        h0, std::vector<Channel>(h0.level_count(), shared));
    const Instrument second = build_ji_erroneous(
        haar_unitary(dim, rng).mat(), random_doubly_stochastic(dim, 4, rng));
    const Scenario s{Protocol(h0, ht, haar_unitary(dim, rng)), first, second,
                     beta};
    const CheckReport jz = check_jarzynski(s, 1e-10);
    max_jz = std::max(max_jz, jz.residual);
    ok = ok && jz.pass && !is_error_free(second, ht, 1e-10);
  }
  std::ostringstream d;
  d << "50 scenarios, max jarzynski " << sci(max_jz)
    << ", every second instrument erroneous";
  return {ok, d.str()};
}

//-----------------------------------------------------------------------------
// 5. Scaled-identity-effect second measurement: the joint table factorizes,
//    |p(m,n) - (d_m / D) p0(n)| <= 1e-12 on 50 scenarios, and Jarzynski
//    <= 1e-10.
//-----------------------------------------------------------------------------
Outcome criterion_5() {
  RngStream rng(505);
  const int dims[] = {2, 3, 4, 6};
  double max_fact = 0.0;
  double max_jz = 0.0;
  bool ok = true;
  for (int i = 0; i < 50; ++i) {
    const int dim = dims[i % 4];
    const double beta = rng.uniform(0.3, 2.0);
    const SpectralHamiltonian h0 = draw_spectrum(dim, 1.2, false, rng);
    const SpectralHamiltonian ht = draw_spectrum(dim, 1.2, dim > 2, rng);
    Instrument first = build_projective(h0);
    if (i % 3 == 1) first = build_crooks(h0, 0.4);
    if (i % 3 == 2)
      first = build_error_free(
          h0, std::vector<Channel>(h0.level_count(),
                                   random_unital_channel(dim, 3, rng)));
    const Scenario s{Protocol(h0, ht, haar_unitary(dim, rng)),
                     std::move(first), build_jii(ht), beta};
    const JointOutcomeTable table =
        joint_table(s.protocol, s.instr0, s.instr_tau, beta);
    for (int m = 0; m < ht.level_count(); ++m) {
      for (int n = 0; n < h0.level_count(); ++n) {
        const double expected = static_cast<double>(ht.degeneracy(m)) / dim *
                                gibbs_weight(h0, beta, n);
        max_fact = std::max(max_fact, std::abs(table.p(m, n) - expected));
      }
    }
    const CheckReport jz = check_jarzynski(s, 1e-10);
    max_jz = std::max(max_jz, jz.residual);
    ok = ok && jz.pass;
  }
  ok = ok && max_fact <= 1e-12;
  std::ostringstream d;
  d << "50 scenarios, max factorization deviation " << sci(max_fact)
    << ", max jarzynski " << sci(max_jz);
  return {ok, d.str()};
}

//-----------------------------------------------------------------------------
// 6. First-measurement error necessity: 5% outcome-mixed projective first,
//    D=2; adversarial search over x-scaled spectra (50 points, budget 500)
//    finds a Jarzynski violation >= 1e-4.
//-----------------------------------------------------------------------------
Outcome criterion_6() {
  const SpectralHamiltonian h0 = SpectralHamiltonian::from_levels({0.0, 0.9});
  const SpectralHamiltonian ht = SpectralHamiltonian::from_levels({0.0, 1.3});
  const Scenario base{Protocol(h0, ht, haar_unitary(2, 61)),
                      build_mixed_projective(h0, 0.05), build_projective(ht),
                      1.0};
  const SearchResult r = adversarial_search(
      {.base = base, .target = CheckKind::jarzynski, .free_x = true}, 500, 62);
  std::ostringstream d;
  d << "violation " << sci(r.worst_violation) << " (>= 1e-4) at x = "
    << sci(r.x) << ", " << r.evaluations << " evaluations";
  return {r.worst_violation >= 1e-4, d.str()};
}

//-----------------------------------------------------------------------------
// 7. Unital-channel dynamics: 50 scenarios whose dynamics are random unital
//    channels and whose instruments pass the first-condition certificate;
//    Jarzynski <= 1e-10.
//-----------------------------------------------------------------------------
Outcome criterion_7() {
  RngStream rng(707);
  const int dims[] = {2, 3, 4};
  double max_jz = 0.0;
  bool ok = true;
  for (int i = 0; i < 50; ++i) {
    const int dim = dims[i % 3];
    const double beta = rng.uniform(0.3, 2.0);
    const SpectralHamiltonian h0 = draw_spectrum(dim, 1.2, false, rng);
    const SpectralHamiltonian ht = draw_spectrum(dim, 1.2, dim > 2, rng);
    Instrument first = build_projective(h0);
    if (i % 2 == 1)
      first = build_error_free(
          h0, std::vector<Channel>(h0.level_count(),
                                   random_unital_channel(dim, 3, rng)));
    const Instrument second =
        (i % 3 == 2) ? build_jii(ht) : build_projective(ht);
    const Scenario s{Protocol(h0, ht, random_unital_channel(dim, 4, rng)),
                     std::move(first), second, beta};
    const CheckReport cert =
        check_condition_Ji(s.instr0, s.instr_tau, h0, ht, 1e-10);
    const CheckReport jz = check_jarzynski(s, 1e-10);
    max_jz = std::max(max_jz, jz.residual);
    ok = ok && cert.pass && jz.pass;
  }
  std::ostringstream d;
  d << "50 certified scenarios, max jarzynski " << sci(max_jz);
  return {ok, d.str()};
}

//-----------------------------------------------------------------------------
// 8. Error-free biconditional: across 7 builder families and D in {2,3,4},
//    the delta error matrix and effects-equal-projectors verdicts agree, both
//    at 1e-10.
//-----------------------------------------------------------------------------
Outcome criterion_8() {
  RngStream rng(808);
  int checked = 0;
  bool ok = true;
  for (const int dim : {2, 3, 4}) {
    const SpectralHamiltonian h = draw_spectrum(dim, 1.0, false, rng);
    std::vector<Channel> per_level;
    for (int k = 0; k < h.level_count(); ++k)
      per_level.push_back(random_unital_channel(dim, 2, rng));
    const struct {
      Instrument instr;
      bool error_free;
    } families[] = {
        {build_projective(h), true},
        {build_error_free(h, per_level), true},
        {build_crooks(h, 0.45), true},
        {build_crooks(h, -1.0 / (dim * dim - 1),
                      CrooksVariant::universal_channel),
         true},
        {build_jii(h), false},
        {build_ji_erroneous(haar_unitary(dim, rng).mat(),
                            random_doubly_stochastic(dim, 4, rng)),
         false},
        {build_mixed_projective(h, 0.1), false},
    };
    for (const auto& f : families) {
      const CheckReport agree = appendixA_effect_check(f.instr, h, 1e-10);
      ok = ok && agree.pass && is_error_free(f.instr, h, 1e-10) == f.error_free;
      ++checked;
    }
  }
  std::ostringstream d;
  d << checked << " instruments (7 families x 3 dims), verdicts agree";
  return {ok, d.str()};
}

//-----------------------------------------------------------------------------
// 9. Scalar-compatibility of trace products: scalar-or-zero operand pairs
//    give spread <= 1e-12 over 1000 unitaries; 50 generic pairs (D in
//    {2,3,5}) yield a witness deviating >= 1e-6 ||A||_F ||B||_F within 200
//    structured + 200 Haar samples.
//-----------------------------------------------------------------------------
Outcome criterion_9() {
  RngStream rng(909);
  double max_spread = 0.0;
  double min_margin = 1e300;
  bool ok = true;
  const int dims[] = {2, 3, 5};
  for (const int dim : dims) {
    const Matrix id = Matrix::Identity(dim, dim);
    const HermitianOperator b(random_hermitian(dim, rng).mat());
    const HermitianOperator scalars[] = {HermitianOperator(1.3 * id),
                                         HermitianOperator(-0.4 * id),
                                         HermitianOperator(Matrix::Zero(dim, dim))};
    for (const HermitianOperator& a : scalars) {
      const EnsembleStats s =
          lemma3_trace_scan(a, b, 500, 500, rng.next_u64());
      max_spread = std::max(max_spread, s.max - s.min);
      const EnsembleStats swapped =
          lemma3_trace_scan(b, a, 500, 500, rng.next_u64());
      max_spread = std::max(max_spread, swapped.max - swapped.min);
    }
  }
  ok = ok && max_spread <= 1e-12;
  for (int i = 0; i < 50; ++i) {
    const int dim = dims[i % 3];
    const HermitianOperator a = random_hermitian(dim, rng);
    const HermitianOperator b2 = random_hermitian(dim, rng);
    const EnsembleStats s = lemma3_trace_scan(a, b2, 200, 200, rng.next_u64());
    const double dev =
        std::max(s.max - s.mean, s.mean - s.min);
    const double floor = 1e-6 * a.mat().norm() * b2.mat().norm();
    min_margin = std::min(min_margin, dev / floor);
    ok = ok && dev >= floor;
  }
  std::ostringstream d;
  d << "scalar spread " << sci(max_spread)
    << ", generic witness/floor ratio >= " << sci(min_margin);
  return {ok, d.str()};
}

//-----------------------------------------------------------------------------
// 10. Depolarized pure-state pairs: family members (alpha grid including both
//     endpoints, D in {2,3,4}) give max discrepancy <= 1e-10 over 1000
//     unitaries and fit residual <= 1e-10; rank-one perturbations of size
//     1e-2 give discrepancy >= 1e-4 within 2000 samples.
//-----------------------------------------------------------------------------
Outcome criterion_10() {
  RngStream rng(1010);
  double max_member = 0.0;
  double max_fit = 0.0;
  double min_perturbed = 1e300;
  bool ok = true;
  for (const int dim : {2, 3, 4}) {
    const double lo = -1.0 / (dim - 1);
    const double alphas[] = {lo, 0.5 * lo, 0.0, 0.4, 0.8, 1.0};
    for (const double alpha : alphas) {
      const Vector a = random_unit_vector(dim, rng);
      const Vector b = random_unit_vector(dim, rng);
      const Matrix id = Matrix::Identity(dim, dim);
      const DensityMatrix rho = DensityMatrix::normalized(
          (1.0 - alpha) / dim * id + alpha * (b * b.adjoint()));
      const DensityMatrix sigma = DensityMatrix::normalized(
          (1.0 - alpha) / dim * id + alpha * (a * a.adjoint()));
      const EnsembleStats member =
          lemma4_check(rho, sigma, a, b, 1000, rng.next_u64());
      const Lemma4Fit fit = lemma4_fit(rho, sigma, a, b);
      max_member = std::max(max_member, member.max);
      max_fit = std::max(max_fit, fit.residual);

      Vector t = random_unit_vector(dim, rng);
      while (std::norm(t.dot(b)) > 0.5) t = random_unit_vector(dim, rng);
      const double delta = 1e-2;
      const DensityMatrix perturbed = DensityMatrix::normalized(
          (1.0 - delta) * rho.mat() + delta * (t * t.adjoint()));
      const EnsembleStats broken =
          lemma4_check(perturbed, sigma, a, b, 2000, rng.next_u64());
      min_perturbed = std::min(min_perturbed, broken.max);
    }
  }
  ok = ok && max_member <= 1e-10 && max_fit <= 1e-10 && min_perturbed >= 1e-4;
  std::ostringstream d;
  d << "18 members: max discrepancy " << sci(max_member) << ", max fit "
    << sci(max_fit) << "; perturbed min discrepancy " << sci(min_perturbed);
  return {ok, d.str()};
}

//-----------------------------------------------------------------------------
// 11. Detailed balance and Crooks agree in pass/fail on 100 scenarios with
//     all-distinct work values, at matched tolerance 1e-9.
//-----------------------------------------------------------------------------
Outcome criterion_11() {
  RngStream rng(1111);
  int agreements = 0;
  bool ok = true;
  for (int i = 0; i < 100; ++i) {
    const int dim = 2 + static_cast<int>(i % 2);
    const auto [h0, ht] = distinct_work_pair(dim, 3000 + 7 * i);
    Scenario s{Protocol(h0, ht, haar_unitary(dim, rng)), build_projective(h0),
               build_projective(ht), 0.8};
    bool conforming = true;
    switch (i % 4) {
      case 0:
        s.instr0 = build_crooks(h0, 0.5);
        s.instr_tau = build_crooks(ht, 0.5);
        break;
      case 1:
        break;  // projective on both ends
      case 2:
        s.instr0 = build_crooks(h0, 0.2);
        s.instr_tau = build_crooks(ht, 0.8);
        conforming = false;
        break;
      case 3:
        s.instr0 = build_mixed_projective(h0, 0.05);
        conforming = false;
        break;
    }
    const CheckReport db = check_detailed_balance(s, 1e-9);
    const CheckReport ck = check_crooks(s, 1e-9);
    ok = ok && db.pass == ck.pass && db.pass == conforming;
    agreements += db.pass == ck.pass;
  }
  std::ostringstream d;
  d << agreements << "/100 scenarios agree (50 conforming, 50 violating)";
  return {ok, d.str()};
}

//-----------------------------------------------------------------------------
// 12. Determinism: repeated verify and scan runs with a fixed seed produce
//     identical outputs (timestamp excluded), independent of worker count.
//-----------------------------------------------------------------------------
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("tems_accept_" + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

// Runs the CLI with stdout parked on /dev/null; the report files are the
// subject here, not the console echo.
int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("temsim");
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::cout.flush();
  std::fflush(stdout);
  const int saved = dup(STDOUT_FILENO);
  FILE* sink = std::fopen("/dev/null", "w");
  dup2(fileno(sink), STDOUT_FILENO);
  const int code = run_cli(static_cast<int>(argv.size()), argv.data());
  std::cout.flush();
  std::fflush(stdout);
  dup2(saved, STDOUT_FILENO);
  close(saved);
  std::fclose(sink);
  return code;
}

// Every output file, with the timestamp field stripped from JSON reports.
std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ifstream in(entry.path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string content = ss.str();
    if (entry.path().extension() == ".json") {
      Json j = Json::parse(content);
      j.erase("timestamp");
      content = j.dump(2);
    }
    out[entry.path().filename().string()] = std::move(content);
  }
  return out;
}

Outcome criterion_12() {
  TempDir root("c12");
  const Json scenario = {
      {"h_initial", {{"energies", Json::array({0.0, 0.8})}}},
      {"h_final", {{"energies", Json::array({0.0, 1.1})}}},
      {"beta", 0.8},
      {"dynamics", {{"type", "haar"}, {"seed", 21}}},
      {"instrument_initial", {{"builder", "projective"}}},
      {"instrument_final", {{"builder", "projective"}}},
  };
  const Json verify_cfg = {
      {"scenario", scenario},
      {"seed", 11},
      {"adversarial", {{"target", "jarzynski"}, {"budget", 60}}},
  };
  const Json scan_cfg = {
      {"scan",
       {{"dimension", 3},
        {"alpha", Json::array({1.0, 0.4})},
        {"beta", {{"min", 0.5}, {"max", 1.5}, {"points", 3}}},
        {"protocols", 2}}},
      {"seed", 9},
  };
  const fs::path vcfg = root.path / "verify.json";
  const fs::path scfg = root.path / "scan.json";
  write_text_file(vcfg, verify_cfg.dump(2));
  write_text_file(scfg, scan_cfg.dump(2));

  bool ok = true;
  std::map<std::string, std::string> reference;
  int repeats = 0;
  const struct {
    std::string cmd;
    fs::path cfg;
    std::string workers;
  } runs[] = {
      {"verify", vcfg, "1"}, {"verify", vcfg, "1"}, {"verify", vcfg, "3"},
      {"scan", scfg, "1"},   {"scan", scfg, "1"},   {"scan", scfg, "4"},
  };
  std::map<std::string, std::map<std::string, std::string>> first;
  for (const auto& r : runs) {
    TempDir out("c12_" + r.cmd + "_" + std::to_string(repeats++));
    const int code = run({r.cmd, "--config", r.cfg.string(), "--out-dir",
                          out.path.string(), "--workers", r.workers});
    ok = ok && code == kExitPass;
    const auto snap = snapshot(out.path);
    ok = ok && !snap.empty();
    auto [it, inserted] = first.try_emplace(r.cmd, snap);
    if (!inserted) ok = ok && snap == it->second;
  }
  std::ostringstream d;
  d << "verify x3 and scan x3 (workers 1/1/" << 3 << " and 1/1/4): outputs "
    << (ok ? "identical" : "diverged");
  return {ok, d.str()};
}

}  // namespace

int main() {
  const struct {
    const char* name;
    Outcome (*fn)();
  } criteria[] = {
      {"projective exactness", criterion_1},
      {"crooks family sufficiency", criterion_2},
      {"crooks necessity", criterion_3},
      {"erroneous second measurement", criterion_4},
      {"scaled-identity-effect factorization", criterion_5},
      {"first-error necessity", criterion_6},
      {"unital channel dynamics", criterion_7},
      {"error-free biconditional", criterion_8},
      {"trace-product scalar compatibility", criterion_9},
      {"depolarized pure-state pairs", criterion_10},
      {"detailed balance matches crooks", criterion_11},
      {"deterministic reports", criterion_12},
  };
  int failures = 0;
  int id = 0;
  for (const auto& c : criteria) {
    ++id;
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, c.name,
                o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  if (failures == 0) {
    std::printf("acceptance: all 12 criteria passed\n");
  } else {
    std::printf("acceptance: %d of 12 criteria FAILED\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
