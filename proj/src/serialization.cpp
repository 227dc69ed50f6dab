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

#include "tems/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tems {

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrix: expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.at(0).size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw std::invalid_argument("matrix: ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& e = row.at(static_cast<std::size_t>(c));
      if (!e.is_array() || e.size() != 2 || !e.at(0).is_number() ||
          !e.at(1).is_number())
        throw std::invalid_argument(
            "matrix: entries must be [re, im] number pairs");
      m(i, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

Json real_matrix_to_json(const RealMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json hamiltonian_to_json(const SpectralHamiltonian& h) {
  Json levels = Json::array();
  for (const EnergyLevel& l : h.levels()) {
    levels.push_back(Json{{"energy", l.energy},
                          {"degeneracy", l.degeneracy},
                          {"projector", matrix_to_json(l.projector)}});
  }
  return Json{{"dimension", h.dim()}, {"levels", std::move(levels)}};
}

Json instrument_to_json(const Instrument& instr) {
  Json outcomes = Json::array();
  for (const InstrumentOutcome& o : instr.outcomes()) {
    Json kraus = Json::array();
    for (const Matrix& b : o.op.kraus()) kraus.push_back(matrix_to_json(b));
    outcomes.push_back(Json{{"label", o.label}, {"kraus", std::move(kraus)}});
  }
  return Json{{"outcomes", std::move(outcomes)}};
}

Instrument instrument_from_json(const Json& j) {
  if (!j.contains("outcomes") || !j.at("outcomes").is_array() ||
      j.at("outcomes").empty())
    throw std::invalid_argument(
        "instrument: expected a nonempty outcomes array");
  std::vector<InstrumentOutcome> outcomes;
  for (const Json& o : j.at("outcomes")) {
    if (!o.contains("label") || !o.at("label").is_number_integer())
      throw std::invalid_argument("instrument: outcome needs integer label");
    if (!o.contains("kraus") || !o.at("kraus").is_array() ||
        o.at("kraus").empty())
      throw std::invalid_argument(
          "instrument: outcome needs a nonempty kraus array");
    std::vector<Matrix> kraus;
    for (const Json& b : o.at("kraus")) kraus.push_back(matrix_from_json(b));
    outcomes.push_back(
        {o.at("label").get<int>(), QuantumOperation(std::move(kraus))});
  }
  return Instrument(std::move(outcomes));
}

Json instrument_choi_to_json(const Instrument& instr) {
  Json outcomes = Json::array();
  for (const InstrumentOutcome& o : instr.outcomes()) {
    outcomes.push_back(Json{{"label", o.label},
                            {"choi", matrix_to_json(choi(o.op).mat())}});
  }
  return Json{{"outcomes", std::move(outcomes)}};
}

Json scenario_to_json(const Scenario& s) {
  Json dynamics;
  if (s.protocol.has_unitary_dynamics()) {
    dynamics = Json{{"type", "unitary"},
                    {"matrix", matrix_to_json(s.protocol.unitary().mat())}};
  } else {
    Json kraus = Json::array();
    for (const Matrix& b : s.protocol.channel().kraus())
      kraus.push_back(matrix_to_json(b));
    dynamics = Json{{"type", "channel"}, {"kraus", std::move(kraus)}};
  }
  return Json{
      {"h_initial", Json{{"matrix",
                          matrix_to_json(s.protocol.h_initial().matrix())}}},
      {"h_final",
       Json{{"matrix", matrix_to_json(s.protocol.h_final().matrix())}}},
      {"dynamics", std::move(dynamics)},
      {"instrument_initial", instrument_to_json(s.instr0)},
      {"instrument_final", instrument_to_json(s.instr_tau)},
      {"beta", s.beta}};
}

Json check_report_to_json(const CheckReport& r) {
  Json diagnostics = Json::array();
  for (const CheckDiagnostic& d : r.diagnostics) {
    diagnostics.push_back(Json{{"label", d.label},
                               {"expected", d.expected},
                               {"actual", d.actual},
                               {"residual", d.residual}});
  }
  return Json{{"check", r.check},
              {"expected", r.expected},
              {"actual", r.actual},
              {"abs_residual", r.abs_residual},
              {"rel_residual", r.rel_residual},
              {"residual", r.residual},
              {"tolerance", r.tolerance},
              {"pass", r.pass},
              {"diagnostics", std::move(diagnostics)}};
}

Json ensemble_stats_to_json(const EnsembleStats& s) {
  return Json{{"count", s.count},
              {"min", s.min},
              {"max", s.max},
              {"mean", s.mean},
              {"stddev", s.stddev},
              {"witness_min", matrix_to_json(s.witness_min)},
              {"witness_max", matrix_to_json(s.witness_max)}};
}

Json alpha_fit_to_json(const AlphaFit& f) {
  return Json{{"alpha", f.alpha},
              {"residual", f.residual},
              {"in_instrument_range", f.in_instrument_range},
              {"in_universal_range", f.in_universal_range},
              {"error_free_precondition", f.error_free_precondition}};
}

Json work_distribution_to_json(const WorkDistribution& d) {
  Json support = Json::array();
  for (const WorkPoint& pt : d.support)
    support.push_back(Json{{"w", pt.w}, {"p", pt.p}});
  return Json{{"support", std::move(support)}};
}

std::string work_distribution_to_csv(const WorkDistribution& d) {
  std::ostringstream os;
  os.precision(17);
  os << "w,p\n";
  for (const WorkPoint& pt : d.support) os << pt.w << "," << pt.p << "\n";
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("write_text_file: cannot open " + tmp);
    out << content;
    if (!out)
      throw std::runtime_error("write_text_file: write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("write_text_file: cannot move into place: " +
                             path);
  }
}

}  // namespace tems
