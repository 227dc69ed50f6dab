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

#include "tems/protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace tems {

namespace {

void require_same_dim(const SpectralHamiltonian& h0,
                      const SpectralHamiltonian& h1, Eigen::Index dyn_dim) {
  if (h0.dim() != h1.dim() || h0.dim() != dyn_dim)
    throw std::invalid_argument(
        "Protocol: Hamiltonians and dynamics must share one dimension");
}

}  // namespace

Protocol::Protocol(SpectralHamiltonian h_initial, SpectralHamiltonian h_final,
                   UnitaryOperator u)
    : h_initial_(std::move(h_initial)),
      h_final_(std::move(h_final)),
      unitary_(std::move(u)) {
  require_same_dim(h_initial_, h_final_, unitary_->dim());
}

Protocol::Protocol(SpectralHamiltonian h_initial, SpectralHamiltonian h_final,
                   Channel unital_channel, double tol)
    : h_initial_(std::move(h_initial)),
      h_final_(std::move(h_final)),
      channel_(std::move(unital_channel)) {
  require_same_dim(h_initial_, h_final_, channel_->dim());
  if (!is_unital(*channel_, tol))
    throw std::invalid_argument("Protocol: channel dynamics must be unital");
}

const UnitaryOperator& Protocol::unitary() const {
  if (!unitary_)
    throw std::logic_error("Protocol: dynamics is a channel, not a unitary");
  return *unitary_;
}

const Channel& Protocol::channel() const {
  if (!channel_)
    throw std::logic_error("Protocol: dynamics is a unitary, not a channel");
  return *channel_;
}

Protocol quench_protocol(const SpectralHamiltonian& h0,
                         const SpectralHamiltonian& h_tau,
                         const HermitianOperator& h_mid, double tau) {
  if (tau < 0.0 || !std::isfinite(tau))
    throw std::invalid_argument("quench_protocol: tau must be >= 0");
  if (h_mid.dim() != h0.dim())
    throw std::invalid_argument("quench_protocol: dimension mismatch");
  return Protocol(h0, h_tau, evolve_unitary(h_mid, tau));
}

HermitianOperator quench_generator(const UnitaryOperator& u) {
  // U is normal, so its Schur form is diagonal: U = Q diag(e^{i theta}) Q^dag
  // and G = Q diag(-theta) Q^dag satisfies e^{-iG} = U.
  Eigen::ComplexSchur<Matrix> schur(u.mat());
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("quench_generator: Schur decomposition failed");
  const Matrix& q = schur.matrixU();
  const Eigen::Index d = u.dim();
  RealVector minus_theta(d);
  for (Eigen::Index k = 0; k < d; ++k)
    minus_theta(k) = -std::arg(schur.matrixT()(k, k));
  const Matrix g = q * minus_theta.asDiagonal() * q.adjoint();
  return HermitianOperator(0.5 * (g + g.adjoint()));
}

Protocol time_reversed(const Protocol& p) {
  if (!p.has_unitary_dynamics())
    throw std::invalid_argument(
        "time_reversed: channel dynamics has no reversed counterpart");
  return Protocol(p.h_final().conjugated(), p.h_initial().conjugated(),
                  UnitaryOperator(p.unitary().mat().transpose()));
}

DensityMatrix evolve(const Protocol& p, const DensityMatrix& rho) {
  if (rho.dim() != p.dim())
    throw std::invalid_argument("evolve: dimension mismatch");
  if (p.has_unitary_dynamics()) {
    const Matrix& u = p.unitary().mat();
    Matrix out = u * rho.mat() * u.adjoint();
    return DensityMatrix::subnormalized(0.5 * (out + out.adjoint()));
  }
  return apply(p.channel().op(), rho);
}

}  // namespace tems
