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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tems/rng.hpp"

namespace tems {

namespace {

class StatsAccumulator {
 public:
  void add(double value, const Matrix& witness) {
    if (count_ == 0 || value < min_) {
      min_ = value;
      witness_min_ = witness;
    }
    if (count_ == 0 || value > max_) {
      max_ = value;
      witness_max_ = witness;
    }
    sum_ += value;
    sum_sq_ += value * value;
    ++count_;
  }

  EnsembleStats finish() const {
    if (count_ == 0) throw std::logic_error("empty ensemble");
    EnsembleStats s;
    s.count = count_;
    s.min = min_;
    s.max = max_;
    s.mean = sum_ / static_cast<double>(count_);
    const double var =
        std::max(0.0, sum_sq_ / static_cast<double>(count_) - s.mean * s.mean);
    s.stddev = std::sqrt(var);
    s.witness_min = witness_min_;
    s.witness_max = witness_max_;
    return s;
  }

 private:
  std::size_t count_ = 0;
  double min_ = 0.0;
  double max_ = 0.0;
  double sum_ = 0.0;
  double sum_sq_ = 0.0;
  Matrix witness_min_;
  Matrix witness_max_;
};

// Phase unitary U_x = F diag(e^{i x phi_k}) F^dag.
Matrix phase_unitary(const Matrix& frame, const std::vector<double>& phases,
                     double x) {
  Vector d(frame.cols());
  for (Eigen::Index k = 0; k < frame.cols(); ++k) {
    const double angle = x * phases[k];
    d(k) = Complex(std::cos(angle), std::sin(angle));
  }
  return frame * d.asDiagonal() * frame.adjoint();
}

}  // namespace

EnsembleStats lemma3_trace_scan(const HermitianOperator& a,
                                const HermitianOperator& b, int n_haar,
                                int n_structured, std::uint64_t seed) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("lemma3_trace_scan: dimension mismatch");
  if (n_haar < 0 || n_structured < 0 || n_haar + n_structured == 0)
    throw std::invalid_argument("lemma3_trace_scan: empty ensemble");
  const auto d = static_cast<int>(a.dim());
  StatsAccumulator acc;

  RngStream haar_rng(RngStream::derive(seed, 0));
  for (int i = 0; i < n_haar; ++i) {
    const Matrix u = haar_unitary(d, haar_rng).mat();
    acc.add((u.adjoint() * a.mat() * u * b.mat()).trace().real(), u);
  }

  if (n_structured > 0) {
    const std::vector<double> phases =
        nondegenerate_difference_spectrum(d, RngStream::derive(seed, 1));
    std::vector<Matrix> frames;
    frames.push_back(hermitian_eig(a).vectors);
    frames.push_back(hermitian_eig(b).vectors);
    RngStream frame_rng(RngStream::derive(seed, 2));
    frames.push_back(haar_unitary(d, frame_rng).mat());
    const double lo = 0.1;
    const double hi = 10.0;
    for (int i = 0; i < n_structured; ++i) {
      const double t = n_structured == 1
                           ? 0.0
                           : static_cast<double>(i) / (n_structured - 1);
      const double x = lo * std::exp(t * std::log(hi / lo));
      const Matrix u = phase_unitary(frames[i % frames.size()], phases, x);
      acc.add((u.adjoint() * a.mat() * u * b.mat()).trace().real(), u);
    }
  }
  return acc.finish();
}

namespace {

// Distance from a scalar multiple of the identity, relative scale
// max(1, ||M||_max); also reports the scalar.
double scalar_defect(const Matrix& m, double* scalar) {
  const auto d = m.rows();
  *scalar = m.trace().real() / static_cast<double>(d);
  return max_abs(m - *scalar * Matrix::Identity(d, d));
}

}  // namespace

Lemma3Verdict lemma3_classify(const HermitianOperator& a,
                              const HermitianOperator& b, double tol,
                              std::uint64_t seed) {
  Lemma3Verdict verdict;
  double sa = 0.0;
  double sb = 0.0;
  const double defect_a = scalar_defect(a.mat(), &sa);
  const double defect_b = scalar_defect(b.mat(), &sb);
  const double scale_a = std::max(1.0, max_abs(a.mat()));
  const double scale_b = std::max(1.0, max_abs(b.mat()));
  const bool a_scalar = defect_a <= tol * scale_a;
  const bool b_scalar = defect_b <= tol * scale_b;
  const bool a_zero = max_abs(a.mat()) <= tol;
  const bool b_zero = max_abs(b.mat()) <= tol;

  const EnsembleStats stats = lemma3_trace_scan(a, b, 200, 200, seed);
  verdict.scan_spread = stats.max - stats.min;

  if (a_zero || b_zero) {
    verdict.constant_compatible = true;
    verdict.constant_value = 0.0;
    return verdict;
  }
  if (a_scalar || b_scalar) {
    verdict.constant_compatible = true;
    verdict.constant_value =
        a_scalar ? sa * b.mat().trace().real() : sb * a.mat().trace().real();
    return verdict;
  }

  verdict.constant_compatible = false;
  const double dev_max = std::abs(stats.max - stats.mean);
  const double dev_min = std::abs(stats.min - stats.mean);
  verdict.witness_deviation = std::max(dev_max, dev_min);
  verdict.witness_unitary =
      dev_max >= dev_min ? stats.witness_max : stats.witness_min;
  return verdict;
}

namespace {

// Unitary with column0 mapped: U|from> = |to>, completed arbitrarily but
// deterministically on the complement.
Matrix mapping_unitary(const Vector& from, const Vector& to) {
  const auto d = from.size();
  const auto complete = [d](const Vector& v) {
    Matrix m = Matrix::Zero(d, 1);
    m.col(0) = v;
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix q = qr.householderQ();
    const Complex r = qr.matrixQR()(0, 0);
    const double ra = std::abs(r);
    q.col(0) *= (ra > 0.0) ? r / ra : Complex(1.0, 0.0);
    return q;
  };
  return complete(to) * complete(from).adjoint();
}

void require_unit(const Vector& v, const char* name) {
  if (std::abs(v.norm() - 1.0) > 1e-10)
    throw std::invalid_argument(std::string("lemma4: ") + name +
                                " is not a unit vector");
}

}  // namespace

EnsembleStats lemma4_check(const DensityMatrix& rho,
                           const DensityMatrix& sigma, const Vector& a,
                           const Vector& b, int ensemble, std::uint64_t seed) {
  const auto d = rho.dim();
  if (sigma.dim() != d || a.size() != d || b.size() != d)
    throw std::invalid_argument("lemma4_check: dimension mismatch");
  require_unit(a, "a");
  require_unit(b, "b");
  if (ensemble < 1)
    throw std::invalid_argument("lemma4_check: empty ensemble");

  const auto discrepancy = [&](const Matrix& u) {
    const Vector ua = u * a;
    const Vector ub = u.adjoint() * b;
    const double lhs = ua.dot(rho.mat() * ua).real();
    const double rhs = ub.dot(sigma.mat() * ub).real();
    return std::abs(lhs - rhs);
  };

  StatsAccumulator acc;
  // Structured part: unitaries sending |a> onto eigenvectors of rho and the
  // adjoints of unitaries sending eigenvectors of sigma onto |b>, each with a
  // few random diagonal phase dressings.
  const Matrix v_rho = hermitian_eig(HermitianOperator(rho.mat())).vectors;
  const Matrix v_sigma = hermitian_eig(HermitianOperator(sigma.mat())).vectors;
  RngStream phase_rng(RngStream::derive(seed, 0));
  int structured = 0;
  const int max_structured = std::min<int>(ensemble / 2, 4 * static_cast<int>(d));
  while (structured < max_structured) {
    const auto k = static_cast<Eigen::Index>(structured / 2 % d);
    Matrix u;
    if (structured % 2 == 0) {
      u = mapping_unitary(a, v_rho.col(k));
    } else {
      u = mapping_unitary(v_sigma.col(k), b).adjoint();
    }
    // Dress with a diagonal phase in the mapped frame to vary the ensemble.
    Vector phases(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      const double t = phase_rng.uniform(0.0, 2.0 * std::numbers::pi);
      phases(i) = Complex(std::cos(t), std::sin(t));
    }
    const Matrix dressed = u * phases.asDiagonal();
    acc.add(discrepancy(dressed), dressed);
    ++structured;
  }

  RngStream haar_rng(RngStream::derive(seed, 1));
  for (int i = structured; i < ensemble; ++i) {
    const Matrix u = haar_unitary(static_cast<int>(d), haar_rng).mat();
    acc.add(discrepancy(u), u);
  }
  return acc.finish();
}

Lemma4Fit lemma4_fit(const DensityMatrix& rho, const DensityMatrix& sigma,
                     const Vector& a, const Vector& b) {
  const auto d = rho.dim();
  if (d < 2)
    throw std::invalid_argument("lemma4_fit: dimension must be >= 2");
  if (sigma.dim() != d || a.size() != d || b.size() != d)
    throw std::invalid_argument("lemma4_fit: dimension mismatch");
  require_unit(a, "a");
  require_unit(b, "b");
  const Matrix eye_over_d = Matrix::Identity(d, d) / static_cast<double>(d);
  const Matrix p = b * b.adjoint() - eye_over_d;
  const Matrix q = a * a.adjoint() - eye_over_d;
  const Matrix x = rho.mat() - eye_over_d;
  const Matrix y = sigma.mat() - eye_over_d;
  Lemma4Fit fit;
  fit.alpha = ((p.adjoint() * x).trace().real() +
               (q.adjoint() * y).trace().real()) /
              (p.squaredNorm() + q.squaredNorm());
  fit.residual = std::sqrt((x - fit.alpha * p).squaredNorm() +
                           (y - fit.alpha * q).squaredNorm());
  const double lower = -1.0 / (static_cast<double>(d) - 1.0);
  fit.in_range = fit.alpha >= lower - 1e-12 && fit.alpha <= 1.0 + 1e-12;
  return fit;
}

CheckReport appendixA_effect_check(const Instrument& instr,
                                   const SpectralHamiltonian& h, double tol) {
  const RealMatrix p = error_matrix(instr, h);
  double em_defect = 0.0;
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j)
      em_defect = std::max(em_defect, std::abs(p(i, j) - (i == j ? 1.0 : 0.0)));

  double eff_defect = 0.0;
  for (int m = 0; m < instr.size(); ++m)
    eff_defect = std::max(
        eff_defect, max_abs(effect(instr.operation(m)).mat() - h.projector(m)));

  const bool error_free_side = em_defect <= tol;
  const bool projector_side = eff_defect <= tol;

  CheckReport r;
  r.check = "appendix_a_effect";
  r.tolerance = 0.5;  // residual is the 0/1 disagreement indicator
  r.diagnostics.push_back(
      {"error_matrix_defect", 0.0, em_defect, em_defect});
  r.diagnostics.push_back({"effect_defect", 0.0, eff_defect, eff_defect});
  r.expected = error_free_side ? 1.0 : 0.0;
  r.actual = projector_side ? 1.0 : 0.0;
  r.residual = (error_free_side == projector_side) ? 0.0 : 1.0;
  r.abs_residual = r.residual;
  r.rel_residual = r.residual;
  r.pass = r.residual <= r.tolerance;
  return r;
}

}  // namespace tems
