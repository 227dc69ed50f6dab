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

namespace tems::tol {

// Central defaults. Every routine takes its tolerance as a parameter and
// only falls back to these; nothing is hard-coded at call sites.
inline constexpr double hermitian = 1e-12;     // relative to ||M||_max
inline constexpr double unitary = 1e-10;       // ||U^dag U - 1||_max
inline constexpr double psd = 1e-10;           // relative, eigenvalue floor
inline constexpr double density = 1e-10;       // trace deviation
inline constexpr double completeness = 1e-10;  // effect sum / TP defect
inline constexpr double group = 1e-9;          // eigenvalue grouping, relative
inline constexpr double difference = 1e-9;     // spectral-gap distinctness
inline constexpr double work = 1e-9;           // work support merging, per unit energy
inline constexpr double duality = 1e-12;       // Tr phi(rho) vs Tr E rho
inline constexpr double kraus_cutoff = 1e-12;  // Choi eigenvalue -> Kraus rank cut

}  // namespace tems::tol
