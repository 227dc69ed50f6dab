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

#include "json.hpp"
#include <string>

#include "tems/lemma_lab.hpp"
#include "tems/verifier.hpp"
#include "tems/work_stats.hpp"

namespace tems {

using Json = nlohmann::ordered_json;

// Complex entries serialize as [re, im]; matrices as row-major nested arrays.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json real_matrix_to_json(const RealMatrix& m);

// {dimension, levels: [{energy, degeneracy, projector}]}.
Json hamiltonian_to_json(const SpectralHamiltonian& h);

// {outcomes: [{label, kraus: [matrix, ...]}]}.
Json instrument_to_json(const Instrument& instr);
Instrument instrument_from_json(const Json& j);

// {outcomes: [{label, choi: matrix}]}, for external tomography tools.
Json instrument_choi_to_json(const Instrument& instr);

// Explicit, config-compatible scenario form: matrix Hamiltonians, explicit
// dynamics, explicit instrument outcomes.
Json scenario_to_json(const Scenario& s);

Json check_report_to_json(const CheckReport& r);
Json ensemble_stats_to_json(const EnsembleStats& s);
Json alpha_fit_to_json(const AlphaFit& f);
Json work_distribution_to_json(const WorkDistribution& d);
std::string work_distribution_to_csv(const WorkDistribution& d);

// Atomic write: the file appears complete or not at all (tmp file + rename).
void write_text_file(const std::string& path, const std::string& content);

}  // namespace tems
