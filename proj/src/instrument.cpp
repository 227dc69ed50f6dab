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

#include "tems/instrument.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace tems {

QuantumOperation::QuantumOperation(std::vector<Matrix> kraus, double tol)
    : kraus_(std::move(kraus)) {
  if (kraus_.empty())
    throw std::invalid_argument("QuantumOperation: empty Kraus list");
  const Eigen::Index d = kraus_.front().rows();
  for (const Matrix& b : kraus_) {
    if (b.rows() != d || b.cols() != d)
      throw std::invalid_argument(
          "QuantumOperation: Kraus operators must be square with a common "
          "dimension");
    if (!all_finite(b))
      throw std::invalid_argument("QuantumOperation: non-finite Kraus entry");
  }
  Matrix e = Matrix::Zero(d, d);
  for (const Matrix& b : kraus_) e.noalias() += b.adjoint() * b;
  // Trace-nonincreasing: largest eigenvalue of the effect at most 1.
  const EigenSystem es = hermitian_eig(HermitianOperator(0.5 * (e + e.adjoint())));
  const double top = es.values(es.values.size() - 1);
  if (top > 1.0 + tol) {
    std::ostringstream os;
    os << "QuantumOperation: effect eigenvalue " << top
       << " exceeds 1 (trace-nonincreasing violated)";
    throw std::invalid_argument(os.str());
  }
}

Channel::Channel(QuantumOperation op, double tol) : op_(std::move(op)) {
  const Eigen::Index d = op_.dim();
  Matrix e = Matrix::Zero(d, d);
  for (const Matrix& b : op_.kraus()) e.noalias() += b.adjoint() * b;
  const double defect = max_abs(e - identity(d));
  if (defect > tol) {
    std::ostringstream os;
    os << "Channel: ||sum B^dag B - 1||_max = " << defect
       << " (not trace-preserving)";
    throw std::invalid_argument(os.str());
  }
}

Instrument::Instrument(std::vector<InstrumentOutcome> outcomes, double tol)
    : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty())
    throw std::invalid_argument("Instrument: no outcomes");
  const Eigen::Index d = outcomes_.front().op.dim();
  Matrix sum = Matrix::Zero(d, d);
  for (const InstrumentOutcome& o : outcomes_) {
    if (o.op.dim() != d)
      throw std::invalid_argument("Instrument: outcome dimension mismatch");
    sum += effect(o.op).mat();
  }
  const double defect = max_abs(sum - identity(d));
  if (defect > tol) {
    std::ostringstream os;
    os << "Instrument: effects sum defect ||sum E - 1||_max = " << defect;
    throw std::invalid_argument(os.str());
  }
}

DensityMatrix apply(const QuantumOperation& op, const DensityMatrix& rho) {
  if (op.dim() != rho.dim())
    throw std::invalid_argument("apply: dimension mismatch");
  const Eigen::Index d = op.dim();
  Matrix out = Matrix::Zero(d, d);
  for (const Matrix& b : op.kraus())
    out.noalias() += b * rho.mat() * b.adjoint();
  return DensityMatrix::subnormalized(0.5 * (out + out.adjoint()));
}

HermitianOperator effect(const QuantumOperation& op) {
  const Eigen::Index d = op.dim();
  Matrix e = Matrix::Zero(d, d);
  for (const Matrix& b : op.kraus()) e.noalias() += b.adjoint() * b;
  return HermitianOperator(0.5 * (e + e.adjoint()));
}

HermitianOperator choi(const QuantumOperation& op) {
  Matrix j = choi_from_kraus(op.kraus());
  return HermitianOperator(0.5 * (j + j.adjoint()), 1e-10);
}

RealMatrix error_matrix(const Instrument& instr, const SpectralHamiltonian& h) {
  if (instr.size() != h.level_count())
    throw std::invalid_argument(
        "error_matrix: outcome count does not match level count");
  if (instr.dim() != h.dim())
    throw std::invalid_argument("error_matrix: dimension mismatch");
  const int n_levels = h.level_count();
  RealMatrix p(n_levels, n_levels);
  for (int m = 0; m < n_levels; ++m) {
    const Matrix em = effect(instr.operation(m)).mat();
    for (int n = 0; n < n_levels; ++n) {
      p(m, n) = (em * h.projector(n)).trace().real() / h.degeneracy(n);
    }
  }
  return p;
}

bool is_error_free(const Instrument& instr, const SpectralHamiltonian& h,
                   double tol) {
  const RealMatrix p = error_matrix(instr, h);
  const int n = h.level_count();
  double defect = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      defect = std::max(defect, std::abs(p(i, j) - (i == j ? 1.0 : 0.0)));
  if (defect > tol) return false;
  // Error-free forces projector effects (PSD effects summing to 1 with
  // Tr E_m Pi_n = delta_mn d_n pin E_m = Pi_m); a violation here means the
  // instrument broke CP or completeness, not a mere measurement error.
  for (int m = 0; m < n; ++m) {
    const double eff_defect =
        max_abs(effect(instr.operation(m)).mat() - h.projector(m));
    if (eff_defect > 10.0 * static_cast<double>(h.dim()) * tol) {
      std::ostringstream os;
      os << "is_error_free: error matrix is within " << tol
         << " of the identity but effect " << m
         << " deviates from its projector by " << eff_defect;
      throw std::logic_error(os.str());
    }
  }
  return true;
}

Channel nonselective(const Instrument& instr) {
  std::vector<Matrix> kraus;
  for (const InstrumentOutcome& o : instr.outcomes())
    for (const Matrix& b : o.op.kraus()) kraus.push_back(b);
  return Channel(QuantumOperation(std::move(kraus)));
}

bool is_unital(const Channel& ch, double tol) {
  const Eigen::Index d = ch.dim();
  Matrix out = Matrix::Zero(d, d);
  for (const Matrix& b : ch.kraus()) out.noalias() += b * b.adjoint();
  return max_abs(out - identity(d)) <= tol;
}

Instrument time_reverse_instrument(const Instrument& instr) {
  std::vector<InstrumentOutcome> outcomes;
  outcomes.reserve(instr.outcomes().size());
  for (const InstrumentOutcome& o : instr.outcomes()) {
    std::vector<Matrix> kraus;
    kraus.reserve(o.op.kraus().size());
    for (const Matrix& b : o.op.kraus()) kraus.push_back(b.conjugate());
    outcomes.push_back({o.label, QuantumOperation(std::move(kraus))});
  }
  return Instrument(std::move(outcomes));
}

Instrument build_projective(const SpectralHamiltonian& h) {
  std::vector<InstrumentOutcome> outcomes;
  for (int n = 0; n < h.level_count(); ++n)
    outcomes.push_back({n, QuantumOperation({h.projector(n)})});
  return Instrument(std::move(outcomes));
}

Instrument build_error_free(const SpectralHamiltonian& h,
                            const std::vector<Channel>& channels) {
  if (static_cast<int>(channels.size()) != h.level_count())
    throw std::invalid_argument("build_error_free: one channel per level");
  std::vector<InstrumentOutcome> outcomes;
  for (int m = 0; m < h.level_count(); ++m) {
    if (channels[m].dim() != h.dim())
      throw std::invalid_argument("build_error_free: channel dimension "
                                  "mismatch");
    std::vector<Matrix> kraus;
    for (const Matrix& c : channels[m].kraus())
      kraus.push_back(c * h.projector(m));
    outcomes.push_back({m, QuantumOperation(std::move(kraus))});
  }
  return Instrument(std::move(outcomes));
}

namespace {

// Maximally entangled (unnormalized) |v> = sum_a |a a| as a D^2 vector in
// the row-major Choi indexing.
Vector entangled_vector(Eigen::Index d) {
  Vector v = Vector::Zero(d * d);
  for (Eigen::Index a = 0; a < d; ++a) v(a * d + a) = 1.0;
  return v;
}

Channel channel_from_choi(const Matrix& j, Eigen::Index d, const char* who) {
  const HermitianOperator jh(0.5 * (j + j.adjoint()), 1e-10);
  if (!is_psd(jh, tol::psd)) {
    std::ostringstream os;
    os << who << ": Choi matrix has negative eigenvalue " << min_eigenvalue(jh)
       << " (map not completely positive)";
    throw std::invalid_argument(os.str());
  }
  std::vector<Matrix> kraus = kraus_from_choi(jh.mat());
  (void)d;
  return Channel(QuantumOperation(std::move(kraus)));
}

}  // namespace

Channel depolarizing(double alpha, int dim) {
  if (dim < 2)
    throw std::invalid_argument("depolarizing: dimension must be >= 2");
  const auto d = static_cast<Eigen::Index>(dim);
  const Vector v = entangled_vector(d);
  const Matrix j = (alpha / dim) * (v * v.adjoint()) +
                   ((1.0 - alpha) / (dim * dim)) *
                       Matrix::Identity(d * d, d * d);
  return channel_from_choi(j, d, "depolarizing");
}

Channel transpose_depolarizing(double alpha, int dim) {
  if (dim < 2)
    throw std::invalid_argument(
        "transpose_depolarizing: dimension must be >= 2");
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix swap = Matrix::Zero(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) swap(a * d + b, b * d + a) = 1.0;
  const Matrix j =
      (alpha / dim) * swap + ((1.0 - alpha) / (dim * dim)) *
                                 Matrix::Identity(d * d, d * d);
  return channel_from_choi(j, d, "transpose_depolarizing");
}

namespace {

// Choi matrix of phi_n(rho) = (1-alpha)(Tr Pi_n rho / D) 1
//                            + alpha Pi_n rho Pi_n:
// (1-alpha)/D^2 (1 x Pi_n^T) + (alpha/D) |v_n><v_n|, v_n = (Pi_n x 1)|v>.
Matrix crooks_outcome_choi(const Matrix& pi, double alpha, Eigen::Index d) {
  const Matrix pit = pi.transpose();
  Matrix j = Matrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    j.block(i * d, i * d, d, d) = ((1.0 - alpha) / (d * d)) * pit;
  Vector vn = Vector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index a = 0; a < d; ++a) vn(i * d + a) = pi(i, a);
  j.noalias() += (alpha / d) * (vn * vn.adjoint());
  return j;
}

// Orthonormal basis of range(Pi): eigenvectors with eigenvalue near 1.
std::vector<Vector> range_basis(const Matrix& pi) {
  const EigenSystem es = hermitian_eig(HermitianOperator(pi, 1e-9));
  std::vector<Vector> basis;
  for (Eigen::Index k = 0; k < es.values.size(); ++k)
    if (es.values(k) > 0.5) basis.push_back(es.vectors.col(k));
  return basis;
}

}  // namespace

Instrument build_crooks(const SpectralHamiltonian& h, double alpha,
                        CrooksVariant variant) {
  const Eigen::Index d = h.dim();
  if (variant == CrooksVariant::universal_channel) {
    const Channel dep = depolarizing(alpha, static_cast<int>(d));
    return build_error_free(
        h, std::vector<Channel>(h.level_count(), dep));
  }
  std::vector<InstrumentOutcome> outcomes;
  for (int n = 0; n < h.level_count(); ++n) {
    const Matrix& pi = h.projector(n);
    const Matrix j = crooks_outcome_choi(pi, alpha, d);
    const HermitianOperator jh(0.5 * (j + j.adjoint()), 1e-10);
    if (!is_psd(jh, tol::psd)) {
      std::ostringstream os;
      os << "build_crooks: outcome " << n << " Choi eigenvalue "
         << min_eigenvalue(jh) << " is negative (alpha = " << alpha
         << " outside the instrument-form range)";
      throw std::invalid_argument(os.str());
    }
    std::vector<Matrix> kraus;
    if (alpha >= 0.0) {
      if (alpha > 0.0) kraus.push_back(std::sqrt(alpha) * pi);
      if (alpha < 1.0) {
        const double w = std::sqrt((1.0 - alpha) / static_cast<double>(d));
        for (const Vector& u : range_basis(pi))
          for (Eigen::Index i = 0; i < d; ++i) {
            Matrix b = Matrix::Zero(d, d);
            b.row(i) = w * u.adjoint();
            kraus.push_back(std::move(b));
          }
      }
    } else {
      kraus = kraus_from_choi(jh.mat());
    }
    outcomes.push_back({n, QuantumOperation(std::move(kraus))});
  }
  return Instrument(std::move(outcomes));
}

Instrument build_jii(const SpectralHamiltonian& h) {
  const Eigen::Index d = h.dim();
  std::vector<InstrumentOutcome> outcomes;
  for (int m = 0; m < h.level_count(); ++m) {
    const double w = std::sqrt(static_cast<double>(h.degeneracy(m)) /
                               static_cast<double>(d));
    outcomes.push_back({m, QuantumOperation({w * identity(d)})});
  }
  return Instrument(std::move(outcomes));
}

Instrument build_ji_erroneous(const Matrix& basis, const RealMatrix& q) {
  const Eigen::Index d = basis.rows();
  if (basis.cols() != d)
    throw std::invalid_argument(
        "build_ji_erroneous: basis must be a square matrix of column vectors");
  if (unitarity_defect(basis) > 1e-10)
    throw std::invalid_argument(
        "build_ji_erroneous: basis columns are not orthonormal");
  if (q.cols() != d)
    throw std::invalid_argument(
        "build_ji_erroneous: Q must have one column per basis vector");
  for (Eigen::Index i = 0; i < d; ++i) {
    double col = 0.0;
    for (Eigen::Index m = 0; m < q.rows(); ++m) {
      if (q(m, i) < -1e-12 || q(m, i) > 1.0 + 1e-12) {
        std::ostringstream os;
        os << "build_ji_erroneous: Q(" << m << ", " << i
           << ") = " << q(m, i) << " is not a probability";
        throw std::invalid_argument(os.str());
      }
      col += q(m, i);
    }
    if (std::abs(col - 1.0) > 1e-12) {
      std::ostringstream os;
      os << "build_ji_erroneous: column " << i << " sums to " << col;
      throw std::invalid_argument(os.str());
    }
  }
  // Row sums are the effect traces d_m; they must sit on positive integers.
  std::vector<InstrumentOutcome> outcomes;
  for (Eigen::Index m = 0; m < q.rows(); ++m) {
    const double row = q.row(m).sum();
    const double nearest = std::round(row);
    if (std::abs(row - nearest) > 1e-12 || nearest < 1.0) {
      std::ostringstream os;
      os << "build_ji_erroneous: row " << m << " sums to " << row
         << ", not a positive integer degeneracy";
      throw std::invalid_argument(os.str());
    }
    // sqrt(E_m) = V diag(sqrt(Q(m, :))) V^dag, exact in the given basis.
    Vector roots(d);
    for (Eigen::Index i = 0; i < d; ++i)
      roots(i) = std::sqrt(std::max(q(m, i), 0.0));
    Matrix b = basis * roots.asDiagonal() * basis.adjoint();
    outcomes.push_back(
        {static_cast<int>(m), QuantumOperation({std::move(b)})});
  }
  return Instrument(std::move(outcomes));
}

Instrument build_mixed_projective(const SpectralHamiltonian& h,
                                  double epsilon) {
  if (epsilon < 0.0 || epsilon > 1.0 || !std::isfinite(epsilon))
    throw std::invalid_argument(
        "build_mixed_projective: epsilon must lie in [0, 1]");
  const int n_levels = h.level_count();
  if (epsilon > 0.0 && n_levels < 2)
    throw std::invalid_argument(
        "build_mixed_projective: mixing needs at least two levels");
  std::vector<InstrumentOutcome> outcomes;
  for (int m = 0; m < n_levels; ++m) {
    std::vector<Matrix> kraus;
    kraus.push_back(std::sqrt(1.0 - epsilon) * h.projector(m));
    if (epsilon > 0.0) {
      const double w = std::sqrt(epsilon / (n_levels - 1));
      for (int n = 0; n < n_levels; ++n)
        if (n != m) kraus.push_back(w * h.projector(n));
    }
    outcomes.push_back({m, QuantumOperation(std::move(kraus))});
  }
  return Instrument(std::move(outcomes));
}

bool operations_equal(const QuantumOperation& a, const QuantumOperation& b,
                      double tol) {
  if (a.dim() != b.dim()) return false;
  return max_abs(choi(a).mat() - choi(b).mat()) <= tol;
}

bool instruments_equal(const Instrument& a, const Instrument& b, double tol) {
  if (a.size() != b.size()) return false;
  for (int m = 0; m < a.size(); ++m) {
    if (a.outcomes()[m].label != b.outcomes()[m].label) return false;
    if (!operations_equal(a.operation(m), b.operation(m), tol)) return false;
  }
  return true;
}

}  // namespace tems
