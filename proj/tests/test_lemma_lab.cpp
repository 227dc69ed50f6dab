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

#include "tems/lemma_lab.hpp"

#include <cmath>

#include "doctest.h"
#include "tems/random.hpp"

using namespace tems;

namespace {

Matrix family_matrix(double alpha, const Vector& v) {
  const auto d = v.size();
  return (1.0 - alpha) / static_cast<double>(d) * Matrix::Identity(d, d) +
         alpha * (v * v.adjoint());
}

DensityMatrix family_state(double alpha, const Vector& v) {
  return DensityMatrix::normalized(family_matrix(alpha, v));
}

// Dense 1-D minimizer of the joint Frobenius distance, independent of the
// closed-form fit: coarse grid then golden-section refinement.
double golden_section_alpha(const DensityMatrix& rho,
                            const DensityMatrix& sigma, const Vector& a,
                            const Vector& b) {
  const auto dist = [&](double alpha) {
    const Matrix dr = rho.mat() - family_matrix(alpha, b);
    const Matrix ds = sigma.mat() - family_matrix(alpha, a);
    return std::sqrt(dr.squaredNorm() + ds.squaredNorm());
  };
  double lo = -2.0, hi = 2.0;
  double best = lo;
  for (int i = 0; i <= 400; ++i) {
    const double x = lo + (hi - lo) * i / 400.0;
    if (dist(x) < dist(best)) best = x;
  }
  lo = best - 0.02;
  hi = best + 0.02;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - phi * (hi - lo);
  double d = lo + phi * (hi - lo);
  for (int i = 0; i < 80; ++i) {
    if (dist(c) < dist(d)) {
      hi = d;
    } else {
      lo = c;
    }
    c = hi - phi * (hi - lo);
    d = lo + phi * (hi - lo);
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("lemma3_trace_scan is constant for scalar operands") {
  RngStream rng(90);
  const HermitianOperator a(2.0 * Matrix::Identity(3, 3));
  const HermitianOperator b = random_hermitian(3, rng);
  const EnsembleStats s = lemma3_trace_scan(a, b, 200, 200, 17);
  CHECK(s.count == 400);
  CHECK(s.max - s.min <= 1e-12);
  const double expected = 2.0 * b.mat().trace().real();
  CHECK(s.mean == doctest::Approx(expected).epsilon(1e-12));
  CHECK(s.min <= s.mean);
  CHECK(s.mean <= s.max);
}

TEST_CASE("lemma3_trace_scan spans at least [-1, 0] for the qubit "
          "diag(1,2) / flip pair") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  Matrix b = Matrix::Zero(2, 2);
  b(0, 1) = 1.0;
  b(1, 0) = 1.0;
  const EnsembleStats s =
      lemma3_trace_scan(HermitianOperator(a), HermitianOperator(b), 300, 100,
                        23);
  // U = identity gives 0; U = Hadamard gives -1. The scan must reach both
  // signs, so its spread certifies non-constancy.
  CHECK(s.min <= -0.99);
  CHECK(s.max >= -1e-6);
  CHECK(s.max - s.min >= 1.0 - 1e-9);
}

TEST_CASE("lemma3_trace_scan with a zero operand is identically zero") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  const EnsembleStats s = lemma3_trace_scan(
      HermitianOperator(a), HermitianOperator(Matrix::Zero(2, 2)), 100, 100,
      29);
  CHECK(std::abs(s.min) <= 1e-12);
  CHECK(std::abs(s.max) <= 1e-12);
}

TEST_CASE("lemma3_classify labels scalar and zero operands "
          "constant-compatible") {
  RngStream rng(91);
  const HermitianOperator b = random_hermitian(3, rng);

  const Lemma3Verdict scalar_a =
      lemma3_classify(HermitianOperator(2.0 * Matrix::Identity(3, 3)), b,
                      1e-10);
  CHECK(scalar_a.constant_compatible);
  CHECK(scalar_a.constant_value ==
        doctest::Approx(2.0 * b.mat().trace().real()).epsilon(1e-12));
  CHECK(scalar_a.scan_spread <= 1e-9);
  CHECK_FALSE(scalar_a.witness_unitary.has_value());

  const HermitianOperator a = random_hermitian(3, rng);
  const Lemma3Verdict scalar_b =
      lemma3_classify(a, HermitianOperator(3.0 * Matrix::Identity(3, 3)),
                      1e-10);
  CHECK(scalar_b.constant_compatible);
  CHECK(scalar_b.constant_value ==
        doctest::Approx(3.0 * a.mat().trace().real()).epsilon(1e-12));

  const Lemma3Verdict zero_b =
      lemma3_classify(a, HermitianOperator(Matrix::Zero(3, 3)), 1e-10);
  CHECK(zero_b.constant_compatible);
  CHECK(zero_b.constant_value == doctest::Approx(0.0));
}

TEST_CASE("lemma3_classify produces a deviating witness for generic pairs") {
  RngStream rng(92);
  for (const int d : {2, 3, 5}) {
    const HermitianOperator a = random_hermitian(d, rng);
    const HermitianOperator b = random_hermitian(d, rng);
    const Lemma3Verdict v = lemma3_classify(a, b, 1e-10);
    CHECK_FALSE(v.constant_compatible);
    REQUIRE(v.witness_unitary.has_value());
    const Matrix& u = *v.witness_unitary;
    CHECK((u.adjoint() * u - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <=
          1e-12);
    CHECK(v.witness_deviation > 1e-6 * a.mat().norm() * b.mat().norm());
    CHECK(v.scan_spread >= v.witness_deviation);
  }
}

TEST_CASE("lemma4_check vanishes on the one-parameter family") {
  RngStream rng(93);
  const Vector a = random_unit_vector(3, rng);
  const Vector b = random_unit_vector(3, rng);
  const DensityMatrix rho = family_state(0.6, b);
  const DensityMatrix sigma = family_state(0.6, a);
  const EnsembleStats s = lemma4_check(rho, sigma, a, b, 400, 37);
  CHECK(s.count >= 400);
  CHECK(s.max <= 1e-12);
}

TEST_CASE("lemma4_check vanishes for the pure-state pair") {
  RngStream rng(94);
  const Vector a = random_unit_vector(2, rng);
  const Vector b = random_unit_vector(2, rng);
  const EnsembleStats s =
      lemma4_check(family_state(1.0, b), family_state(1.0, a), a, b, 300, 41);
  CHECK(s.max <= 1e-12);
}

TEST_CASE("lemma4_check flags a rank-one perturbation of size 1e-2") {
  RngStream rng(95);
  const Vector a = random_unit_vector(3, rng);
  const Vector b = random_unit_vector(3, rng);
  const Vector t = random_unit_vector(3, rng);
  const double delta = 1e-2;
  const Matrix perturbed =
      (1.0 - delta) * family_state(0.5, b).mat() + delta * (t * t.adjoint());
  const EnsembleStats s =
      lemma4_check(DensityMatrix::normalized(perturbed), family_state(0.5, a),
                   a, b, 2000, 43);
  CHECK(s.max >= 1e-4);
}

TEST_CASE("lemma4_fit round-trips family members including the lower "
          "endpoint") {
  RngStream rng(96);
  const Vector a2 = random_unit_vector(2, rng);
  const Vector b2 = random_unit_vector(2, rng);
  const Lemma4Fit low = lemma4_fit(family_state(-1.0, b2),
                                   family_state(-1.0, a2), a2, b2);
  CHECK(std::abs(low.alpha - (-1.0)) <= 1e-12);
  CHECK(low.residual <= 1e-12);
  CHECK(low.in_range);

  const Vector a3 = random_unit_vector(3, rng);
  const Vector b3 = random_unit_vector(3, rng);
  const Lemma4Fit mid =
      lemma4_fit(family_state(0.35, b3), family_state(0.35, a3), a3, b3);
  CHECK(std::abs(mid.alpha - 0.35) <= 1e-12);
  CHECK(mid.residual <= 1e-12);

  // Maximally mixed pair sits at alpha = 0.
  const DensityMatrix mixed =
      DensityMatrix::normalized(Matrix::Identity(3, 3) / 3.0);
  const Lemma4Fit zero = lemma4_fit(mixed, mixed, a3, b3);
  CHECK(std::abs(zero.alpha) <= 1e-12);
  CHECK(zero.residual <= 1e-12);

  const Lemma4Fit out =
      lemma4_fit(family_state(1.0, b3), family_state(1.0, a3), a3, b3);
  CHECK(out.in_range);
}

TEST_CASE("lemma4_fit matches a dense golden-section minimizer on random "
          "states") {
  RngStream rng(97);
  for (int trial = 0; trial < 5; ++trial) {
    const int d = 2 + trial % 3;
    const Vector a = random_unit_vector(d, rng);
    const Vector b = random_unit_vector(d, rng);
    const DensityMatrix rho = random_density(d, rng);
    const DensityMatrix sigma = random_density(d, rng);
    const Lemma4Fit fit = lemma4_fit(rho, sigma, a, b);
    const double oracle = golden_section_alpha(rho, sigma, a, b);
    CHECK(std::abs(fit.alpha - oracle) <= 1e-6);
    const Matrix dr = rho.mat() - family_matrix(fit.alpha, b);
    const Matrix ds = sigma.mat() - family_matrix(fit.alpha, a);
    const double dist = std::sqrt(dr.squaredNorm() + ds.squaredNorm());
    CHECK(fit.residual == doctest::Approx(dist).epsilon(1e-12));
  }
}

TEST_CASE("lemma4_fit residual and lemma4_check discrepancy agree on "
          "membership") {
  RngStream rng(98);
  for (int trial = 0; trial < 12; ++trial) {
    const int d = 2 + trial % 3;
    const Vector a = random_unit_vector(d, rng);
    const Vector b = random_unit_vector(d, rng);
    const bool member = trial % 2 == 0;
    DensityMatrix rho = family_state(0.4, b);
    DensityMatrix sigma = family_state(0.4, a);
    if (!member) {
      const Vector t = random_unit_vector(d, rng);
      rho = DensityMatrix::normalized(0.9 * rho.mat() +
                                      0.1 * (t * t.adjoint()));
    }
    const Lemma4Fit fit = lemma4_fit(rho, sigma, a, b);
    const EnsembleStats s =
        lemma4_check(rho, sigma, a, b, 600, 100 + trial);
    if (member) {
      CHECK(fit.residual <= 1e-12);
      CHECK(s.max <= 1e-10);
    } else {
      CHECK(fit.residual > 1e-12);
      CHECK(s.max > 1e-10);
    }
  }
}

TEST_CASE("appendixA_effect_check reports agreeing sides for every builder "
          "family") {
  RngStream rng(99);
  const SpectralHamiltonian h = random_spectral_hamiltonian(3, rng, true);
  const std::vector<Channel> channels(
      static_cast<std::size_t>(h.level_count()),
      random_unital_channel(3, 2, rng));

  const CheckReport error_free =
      appendixA_effect_check(build_error_free(h, channels), h, 1e-10);
  CHECK(error_free.pass);
  CHECK(error_free.residual == 0.0);

  const CheckReport projective =
      appendixA_effect_check(build_projective(h), h, 1e-10);
  CHECK(projective.pass);

  const SpectralHamiltonian hq =
      SpectralHamiltonian::from_levels({0.0, 1.0, 2.5});
  const CheckReport mixed =
      appendixA_effect_check(build_mixed_projective(hq, 0.02), hq, 1e-10);
  CHECK(mixed.pass);  // both sides false: biconditional still holds

  const CheckReport jii = appendixA_effect_check(build_jii(hq), hq, 1e-10);
  CHECK(jii.pass);
}
