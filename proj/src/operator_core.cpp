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

#include "tems/operator_core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tems {

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

double hermiticity_defect(const Matrix& m) {
  return max_abs(m - m.adjoint());
}

double unitarity_defect(const Matrix& u) {
  return max_abs(u.adjoint() * u - identity(u.rows()));
}

Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

namespace {

void require_square_finite(const Matrix& m, const char* who) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << who << ": matrix must be square, got " << m.rows() << "x" << m.cols();
    throw std::invalid_argument(os.str());
  }
  if (m.size() == 0) {
    throw std::invalid_argument(std::string(who) + ": empty matrix");
  }
  if (!all_finite(m)) {
    throw std::invalid_argument(std::string(who) + ": non-finite entries");
  }
}

}  // namespace

HermitianOperator::HermitianOperator(Matrix m, double tol) : m_(std::move(m)) {
  require_square_finite(m_, "HermitianOperator");
  const double defect = hermiticity_defect(m_);
  if (defect > tol * max_abs(m_)) {
    std::ostringstream os;
    os << "HermitianOperator: not Hermitian, max asymmetry " << defect
       << " exceeds " << tol << " * ||M||_max = " << tol * max_abs(m_);
    throw std::invalid_argument(os.str());
  }
}

UnitaryOperator::UnitaryOperator(Matrix u, double tol) : u_(std::move(u)) {
  require_square_finite(u_, "UnitaryOperator");
  const double defect = unitarity_defect(u_);
  if (defect > tol) {
    std::ostringstream os;
    os << "UnitaryOperator: ||U^dag U - 1||_max = " << defect << " exceeds "
       << tol;
    throw std::invalid_argument(os.str());
  }
}

DensityMatrix DensityMatrix::normalized(Matrix m, double trace_tol,
                                        double psd_tol) {
  require_square_finite(m, "DensityMatrix");
  HermitianOperator h(m, 1e-10);
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > trace_tol) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << tr << " deviates from 1 by more than "
       << trace_tol;
    throw std::invalid_argument(os.str());
  }
  if (!is_psd(h, psd_tol)) {
    std::ostringstream os;
    os << "DensityMatrix: negative eigenvalue " << min_eigenvalue(h);
    throw std::invalid_argument(os.str());
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::subnormalized(Matrix m, double trace_tol,
                                           double psd_tol) {
  require_square_finite(m, "DensityMatrix");
  HermitianOperator h(m, 1e-10);
  const double tr = m.trace().real();
  if (tr < -trace_tol || tr > 1.0 + trace_tol) {
    std::ostringstream os;
    os << "DensityMatrix: subnormalized trace " << tr << " outside [0, 1]";
    throw std::invalid_argument(os.str());
  }
  if (!is_psd(h, psd_tol)) {
    std::ostringstream os;
    os << "DensityMatrix: negative eigenvalue " << min_eigenvalue(h);
    throw std::invalid_argument(os.str());
  }
  return DensityMatrix(std::move(m));
}

EigenSystem hermitian_eig(const HermitianOperator& m) {
  // Eigen's solver assumes exact Hermiticity; symmetrize the residual noise
  // allowed by the type invariant so V diag V^dag reproduces the symmetric
  // part to machine precision.
  const Matrix sym = 0.5 * (m.mat() + m.mat().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const HermitianOperator& m) {
  return hermitian_eig(m).values(0);
}

bool is_psd(const HermitianOperator& m, double tol) {
  return min_eigenvalue(m) >= -tol * std::max(1.0, max_abs(m.mat()));
}

Matrix psd_sqrt(const HermitianOperator& m, double psd_tol) {
  const EigenSystem es = hermitian_eig(m);
  const double floor = -psd_tol * std::max(1.0, max_abs(m.mat()));
  RealVector roots(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double v = es.values(i);
    if (v < floor) {
      std::ostringstream os;
      os << "psd_sqrt: eigenvalue " << v << " below PSD floor " << floor;
      throw std::invalid_argument(os.str());
    }
    roots(i) = std::sqrt(std::max(v, 0.0));
  }
  return es.vectors * roots.asDiagonal() * es.vectors.adjoint();
}

UnitaryOperator evolve_unitary(const HermitianOperator& h, double t,
                               double hbar) {
  if (hbar == 0.0 || !std::isfinite(hbar) || !std::isfinite(t)) {
    throw std::invalid_argument("evolve_unitary: bad t or hbar");
  }
  const EigenSystem es = hermitian_eig(h);
  Vector phases(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double angle = -es.values(i) * t / hbar;
    phases(i) = Complex(std::cos(angle), std::sin(angle));
  }
  return UnitaryOperator(es.vectors * phases.asDiagonal() *
                         es.vectors.adjoint());
}

Matrix ginibre(int dim, RngStream& rng) {
  Matrix z(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) z(i, j) = rng.complex_gaussian();
  return z;
}

UnitaryOperator haar_unitary(int dim, RngStream& rng) {
  if (dim < 1) throw std::invalid_argument("haar_unitary: dim must be >= 1");
  const Matrix z = ginibre(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Phase correction: without it the QR map is not Haar.
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    const double a = std::abs(d);
    q.col(k) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
  }
  return UnitaryOperator(std::move(q));
}

UnitaryOperator haar_unitary(int dim, std::uint64_t seed) {
  RngStream rng(seed);
  return haar_unitary(dim, rng);
}

Matrix choi_from_kraus(std::span<const Matrix> kraus) {
  if (kraus.empty()) {
    throw std::invalid_argument("choi_from_kraus: empty Kraus list");
  }
  const Eigen::Index dim = kraus.front().rows();
  for (const Matrix& b : kraus) {
    if (b.rows() != dim || b.cols() != dim) {
      std::ostringstream os;
      os << "choi_from_kraus: Kraus dimensions mismatch, expected " << dim
         << "x" << dim << ", got " << b.rows() << "x" << b.cols();
      throw std::invalid_argument(os.str());
    }
  }
  Matrix j = Matrix::Zero(dim * dim, dim * dim);
  Vector v(dim * dim);
  for (const Matrix& b : kraus) {
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index k = 0; k < dim; ++k) v(i * dim + k) = b(i, k);
    j.noalias() += v * v.adjoint();
  }
  return j / static_cast<double>(dim);
}

std::vector<Matrix> kraus_from_choi(const Matrix& choi, double cutoff) {
  if (choi.rows() != choi.cols()) {
    throw std::invalid_argument("kraus_from_choi: Choi matrix must be square");
  }
  const auto side = choi.rows();
  const auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(
      static_cast<double>(side))));
  if (dim * dim != side) {
    throw std::invalid_argument(
        "kraus_from_choi: side is not a perfect square");
  }
  const EigenSystem es = hermitian_eig(HermitianOperator(choi, 1e-9));
  const double norm_scale = std::max(1.0, max_abs(choi));
  if (es.values(0) < -tol::psd * norm_scale) {
    throw std::invalid_argument(
        "kraus_from_choi: Choi matrix is not PSD; min eigenvalue = " +
        std::to_string(es.values(0)));
  }
  const double cut = cutoff * norm_scale;
  std::vector<Matrix> kraus;
  for (Eigen::Index k = es.values.size() - 1; k >= 0; --k) {
    const double mu = es.values(k);
    if (mu <= cut) continue;
    const double scale = std::sqrt(static_cast<double>(dim) * mu);
    Matrix b(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index l = 0; l < dim; ++l)
        b(i, l) = scale * es.vectors(i * dim + l, k);
    kraus.push_back(std::move(b));
  }
  if (kraus.empty()) {
    // Zero map: keep one explicit zero Kraus so downstream code has a dim.
    kraus.push_back(Matrix::Zero(dim, dim));
  }
  return kraus;
}

Matrix partial_trace_first(const Matrix& j, int dim) {
  Matrix out = Matrix::Zero(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int i = 0; i < dim; ++i) out(a, b) += j(i * dim + a, i * dim + b);
  return out;
}

Matrix partial_trace_second(const Matrix& j, int dim) {
  Matrix out = Matrix::Zero(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int i = 0; i < dim; ++i) out(a, b) += j(a * dim + i, b * dim + i);
  return out;
}

}  // namespace tems
