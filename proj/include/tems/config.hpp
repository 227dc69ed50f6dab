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

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tems/serialization.hpp"
#include "tems/verifier.hpp"

namespace tems {

// Config rejection carrying the JSON path of the failing field, e.g.
// "scenario.dynamics.tau".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Hamiltonian config: {"matrix": [[..]]} or
// {"energies": [..], "degeneracies": [..]} (degeneracies optional, all 1).
SpectralHamiltonian hamiltonian_from_config(const Json& j,
                                            const std::string& path);

// Channel config: {"kraus": [matrix, ..]} or builder form
// {"type": "depolarizing" | "transpose_depolarizing", "alpha": x} or
// {"type": "random_unital", "unitaries": k, "seed": s}.
Channel channel_from_config(const Json& j, int dim, const std::string& path);

// Instrument config: explicit {"outcomes": [{label, kraus}]} or builder form
// {"builder": "projective" | "crooks" | "jii" | "mixed_projective" |
//  "error_free" | "ji_erroneous", ...params}. h supplies projectors and
// degeneracies to the builders.
Instrument instrument_from_config(const Json& j, const SpectralHamiltonian& h,
                                  const std::string& path);

// Scenario config:
// {"h_initial", "h_final", "dynamics", "instrument_initial",
//  "instrument_final", "beta"}. Dynamics config: {"type": "unitary",
// "matrix": ..} | {"type": "haar", "seed": s} | {"type": "quench",
//  "h_mid": matrix, "tau": t, "hbar": optional, default 1} |
// {"type": "channel", ..channel config}.
Scenario scenario_from_config(const Json& j, const std::string& path);

struct AdversarialConfig {
  CheckKind target = CheckKind::jarzynski;
  int budget = 500;
  bool free_dynamics = true;
  bool free_x = false;
  double x_min = 0.1;
  double x_max = 10.0;
  int x_points = 50;
};

struct VerifyConfig {
  Scenario scenario;
  std::vector<std::string> checks;  // validated check names, in config order
  std::optional<AdversarialConfig> adversarial;
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 1;
};

struct ScanConfig {
  int dimension = 2;
  std::vector<double> alpha_values;
  std::vector<double> beta_values;
  std::vector<double> x_values;
  int protocols = 1;  // Haar protocols per grid point
  std::uint64_t seed = 1;
};

struct Lemma3Config {
  // Operators: explicit matrix, "scalar" (value * identity), "zero", or
  // "random" (GUE draw from the experiment seed).
  Matrix a;
  Matrix b;
  int n_haar = 200;
  int n_structured = 200;
};

struct Lemma4Config {
  int dim = 2;
  double alpha = 0.5;          // family member parameter
  double perturbation = 0.0;   // rank-one off-family perturbation size
  int ensemble = 1000;
};

struct LemmaExperiment {
  std::string type;  // "lemma3" | "lemma4" | "appendix_a"
  std::optional<Lemma3Config> lemma3;
  std::optional<Lemma4Config> lemma4;
  // appendix_a: instrument + Hamiltonian
  std::optional<SpectralHamiltonian> hamiltonian;
  std::optional<Instrument> instrument;
  double tol = 1e-10;
};

struct LemmaConfig {
  std::vector<LemmaExperiment> experiments;
  std::uint64_t seed = 1;
};

VerifyConfig verify_config_from_json(const Json& j);
ScanConfig scan_config_from_json(const Json& j);
LemmaConfig lemma_config_from_json(const Json& j);

// Named tolerance with config/CLI override; falls back to fallback.
double tolerance_or(const std::map<std::string, double>& overrides,
                    const std::string& name, double fallback);

}  // namespace tems
