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

#include "tems/config.hpp"

#include <set>

#include "tems/random.hpp"
#include "tems/rng.hpp"

namespace tems {

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const Json& field(const Json& j, const std::string& key,
                  const std::string& path) {
  if (!j.is_object())
    throw ConfigError(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ConfigError(join(path, key), "missing");
  return *it;
}

double number_at(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

double number_field(const Json& j, const std::string& key,
                    const std::string& path) {
  return number_at(field(j, key, path), join(path, key));
}

int int_field(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_number_integer())
    throw ConfigError(join(path, key), "expected an integer");
  return v.get<int>();
}

std::uint64_t seed_field(const Json& j, const std::string& key,
                         const std::string& path, std::uint64_t fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw ConfigError(join(path, key), "expected a nonnegative integer seed");
  return v.get<std::uint64_t>();
}

std::string string_field(const Json& j, const std::string& key,
                         const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_string()) throw ConfigError(join(path, key), "expected a string");
  return v.get<std::string>();
}

Matrix matrix_field(const Json& j, const std::string& key,
                    const std::string& path) {
  try {
    return matrix_from_json(field(j, key, path));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(join(path, key), e.what());
  }
}

}  // namespace

SpectralHamiltonian hamiltonian_from_config(const Json& j,
                                            const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  if (j.contains("matrix")) {
    const Matrix m = matrix_field(j, "matrix", path);
    try {
      return SpectralHamiltonian::from_matrix(HermitianOperator(m));
    } catch (const std::exception& e) {
      throw ConfigError(join(path, "matrix"), e.what());
    }
  }
  if (!j.contains("energies"))
    throw ConfigError(path, "need either \"matrix\" or \"energies\"");
  const Json& ejs = j.at("energies");
  if (!ejs.is_array() || ejs.empty())
    throw ConfigError(join(path, "energies"),
                      "expected a nonempty number array");
  std::vector<double> energies;
  for (std::size_t i = 0; i < ejs.size(); ++i)
    energies.push_back(
        number_at(ejs.at(i), join(path, "energies[" + std::to_string(i) + "]")));
  std::vector<int> degs(energies.size(), 1);
  if (j.contains("degeneracies")) {
    const Json& djs = j.at("degeneracies");
    if (!djs.is_array() || djs.size() != energies.size())
      throw ConfigError(join(path, "degeneracies"),
                        "expected an integer array matching energies");
    for (std::size_t i = 0; i < djs.size(); ++i) {
      if (!djs.at(i).is_number_integer())
        throw ConfigError(
            join(path, "degeneracies[" + std::to_string(i) + "]"),
            "expected an integer");
      degs[i] = djs.at(i).get<int>();
    }
  }
  try {
    return SpectralHamiltonian::from_levels(energies, degs);
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

Channel channel_from_config(const Json& j, int dim, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  try {
    if (j.contains("kraus")) {
      const Json& ks = j.at("kraus");
      if (!ks.is_array() || ks.empty())
        throw ConfigError(join(path, "kraus"), "expected a nonempty array");
      std::vector<Matrix> kraus;
      for (const Json& b : ks) kraus.push_back(matrix_from_json(b));
      return Channel(QuantumOperation(std::move(kraus)));
    }
    const std::string type = string_field(j, "type", path);
    if (type == "depolarizing")
      return depolarizing(number_field(j, "alpha", path), dim);
    if (type == "transpose_depolarizing")
      return transpose_depolarizing(number_field(j, "alpha", path), dim);
    if (type == "random_unital") {
      const int units = int_field(j, "unitaries", path);
      RngStream rng(seed_field(j, "seed", path, 1));
      return random_unital_channel(dim, units, rng);
    }
    throw ConfigError(join(path, "type"), "unknown channel type " + type);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

Instrument instrument_from_config(const Json& j, const SpectralHamiltonian& h,
                                  const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  try {
    if (j.contains("outcomes")) return instrument_from_json(j);
    const std::string builder = string_field(j, "builder", path);
    if (builder == "projective") return build_projective(h);
    if (builder == "jii") return build_jii(h);
    if (builder == "crooks") {
      const double alpha = number_field(j, "alpha", path);
      CrooksVariant variant = CrooksVariant::instrument_form;
      if (j.contains("variant")) {
        const std::string v = string_field(j, "variant", path);
        if (v == "universal")
          variant = CrooksVariant::universal_channel;
        else if (v != "instrument")
          throw ConfigError(join(path, "variant"),
                            "expected \"instrument\" or \"universal\"");
      }
      return build_crooks(h, alpha, variant);
    }
    if (builder == "mixed_projective")
      return build_mixed_projective(h, number_field(j, "epsilon", path));
    if (builder == "error_free") {
      const Json& chs = field(j, "channels", path);
      if (!chs.is_array() ||
          static_cast<int>(chs.size()) != h.level_count())
        throw ConfigError(join(path, "channels"),
                          "expected one channel per level");
      std::vector<Channel> channels;
      for (std::size_t i = 0; i < chs.size(); ++i)
        channels.push_back(channel_from_config(
            chs.at(i), static_cast<int>(h.dim()),
            join(path, "channels[" + std::to_string(i) + "]")));
      return build_error_free(h, channels);
    }
    if (builder == "ji_erroneous") {
      const Matrix basis = matrix_field(j, "basis", path);
      const Matrix qc = matrix_field(j, "q", path);
      if (qc.size() > 0 && qc.imag().cwiseAbs().maxCoeff() > 0.0)
        throw ConfigError(join(path, "q"), "expected a real matrix");
      return build_ji_erroneous(basis, qc.real());
    }
    throw ConfigError(join(path, "builder"),
                      "unknown builder " + builder);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

Scenario scenario_from_config(const Json& j, const std::string& path) {
  const SpectralHamiltonian h0 =
      hamiltonian_from_config(field(j, "h_initial", path),
                              join(path, "h_initial"));
  const SpectralHamiltonian ht =
      hamiltonian_from_config(field(j, "h_final", path),
                              join(path, "h_final"));
  const double beta = number_field(j, "beta", path);
  if (!(beta > 0.0))
    throw ConfigError(join(path, "beta"), "must be positive");

  const Json& dj = field(j, "dynamics", path);
  const std::string dpath = join(path, "dynamics");
  if (!dj.is_object()) throw ConfigError(dpath, "expected an object");
  const std::string type = string_field(dj, "type", dpath);

  const Instrument instr0 = instrument_from_config(
      field(j, "instrument_initial", path), h0,
      join(path, "instrument_initial"));
  const Instrument instr_tau =
      instrument_from_config(field(j, "instrument_final", path), ht,
                             join(path, "instrument_final"));

  try {
    if (type == "unitary") {
      return {Protocol(h0, ht,
                       UnitaryOperator(matrix_field(dj, "matrix", dpath))),
              instr0, instr_tau, beta};
    }
    if (type == "haar") {
      if (!dj.contains("seed"))
        throw ConfigError(join(dpath, "seed"),
                          "haar dynamics needs an explicit seed");
      const std::uint64_t s = seed_field(dj, "seed", dpath, 0);
      return {Protocol(h0, ht, haar_unitary(static_cast<int>(h0.dim()), s)),
              instr0, instr_tau, beta};
    }
    if (type == "quench") {
      const HermitianOperator h_mid(matrix_field(dj, "h_mid", dpath));
      const double tau = number_field(dj, "tau", dpath);
      // hbar override folds into the quench time: e^{-iHt/hbar}.
      double hbar = 1.0;
      if (dj.contains("hbar")) {
        hbar = number_field(dj, "hbar", dpath);
        if (!(hbar > 0.0))
          throw ConfigError(join(dpath, "hbar"), "must be positive");
      }
      return {quench_protocol(h0, ht, h_mid, tau / hbar), instr0, instr_tau,
              beta};
    }
    if (type == "channel") {
      return {Protocol(h0, ht,
                       channel_from_config(dj, static_cast<int>(h0.dim()),
                                           dpath)),
              instr0, instr_tau, beta};
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(dpath, e.what());
  }
  throw ConfigError(join(dpath, "type"), "unknown dynamics type " + type);
}

namespace {

CheckKind check_kind_from(const std::string& name, const std::string& path) {
  if (name == "jarzynski") return CheckKind::jarzynski;
  if (name == "backward_jarzynski") return CheckKind::backward_jarzynski;
  if (name == "crooks") return CheckKind::crooks;
  if (name == "detailed_balance") return CheckKind::detailed_balance;
  throw ConfigError(path, "unknown check " + name);
}

}  // namespace

VerifyConfig verify_config_from_json(const Json& j) {
  VerifyConfig cfg{scenario_from_config(field(j, "scenario", ""), "scenario"),
                   {}, {}, {}, seed_field(j, "seed", "", 1)};

  static const std::set<std::string> known = {
      "jarzynski",  "backward_jarzynski", "crooks",
      "detailed_balance", "condition_Ji", "condition_Jii"};
  if (j.contains("checks")) {
    const Json& cj = j.at("checks");
    if (!cj.is_array() || cj.empty())
      throw ConfigError("checks", "expected a nonempty array of check names");
    for (std::size_t i = 0; i < cj.size(); ++i) {
      if (!cj.at(i).is_string())
        throw ConfigError("checks[" + std::to_string(i) + "]",
                          "expected a string");
      const std::string name = cj.at(i).get<std::string>();
      if (known.find(name) == known.end())
        throw ConfigError("checks[" + std::to_string(i) + "]",
                          "unknown check " + name);
      cfg.checks.push_back(name);
    }
  } else {
    cfg.checks = {"jarzynski", "backward_jarzynski", "crooks",
                  "detailed_balance"};
  }

  if (j.contains("tolerances")) {
    const Json& tj = j.at("tolerances");
    if (!tj.is_object()) throw ConfigError("tolerances", "expected an object");
    for (const auto& [key, value] : tj.items()) {
      if (!value.is_number())
        throw ConfigError("tolerances." + key, "expected a number");
      cfg.tolerances[key] = value.get<double>();
    }
  }

  if (j.contains("adversarial")) {
    const Json& aj = j.at("adversarial");
    AdversarialConfig adv;
    adv.target = check_kind_from(string_field(aj, "target", "adversarial"),
                                 "adversarial.target");
    adv.budget = int_field(aj, "budget", "adversarial");
    if (adv.budget <= 0)
      throw ConfigError("adversarial.budget", "must be positive");
    if (aj.contains("free_dynamics")) {
      if (!aj.at("free_dynamics").is_boolean())
        throw ConfigError("adversarial.free_dynamics", "expected a boolean");
      adv.free_dynamics = aj.at("free_dynamics").get<bool>();
    }
    if (aj.contains("free_x")) {
      if (!aj.at("free_x").is_boolean())
        throw ConfigError("adversarial.free_x", "expected a boolean");
      adv.free_x = aj.at("free_x").get<bool>();
    }
    if (aj.contains("x_min"))
      adv.x_min = number_field(aj, "x_min", "adversarial");
    if (aj.contains("x_max"))
      adv.x_max = number_field(aj, "x_max", "adversarial");
    if (aj.contains("x_points"))
      adv.x_points = int_field(aj, "x_points", "adversarial");
    if (adv.free_x && (adv.x_min <= 0.0 || adv.x_max < adv.x_min ||
                       adv.x_points < 1))
      throw ConfigError("adversarial.x_min", "bad x grid");
    cfg.adversarial = adv;
  }
  return cfg;
}

ScanConfig scan_config_from_json(const Json& j) {
  ScanConfig cfg;
  cfg.seed = seed_field(j, "seed", "", 1);
  const Json& sj = field(j, "scan", "");
  cfg.dimension = int_field(sj, "dimension", "scan");
  if (cfg.dimension < 2) throw ConfigError("scan.dimension", "must be >= 2");

  const auto values_of = [&](const std::string& key,
                             std::vector<double> fallback) {
    if (!sj.contains(key)) return fallback;
    const Json& vj = sj.at(key);
    const std::string path = "scan." + key;
    if (vj.is_array()) {
      std::vector<double> out;
      for (std::size_t i = 0; i < vj.size(); ++i)
        out.push_back(
            number_at(vj.at(i), path + "[" + std::to_string(i) + "]"));
      if (out.empty()) throw ConfigError(path, "empty grid");
      return out;
    }
    if (vj.is_object()) {
      const double lo = number_field(vj, "min", path);
      const double hi = number_field(vj, "max", path);
      const int points = int_field(vj, "points", path);
      if (points < 1 || hi < lo) throw ConfigError(path, "bad range");
      std::vector<double> out;
      for (int i = 0; i < points; ++i)
        out.push_back(points == 1 ? lo
                                  : lo + (hi - lo) * i / (points - 1.0));
      return out;
    }
    throw ConfigError(path, "expected an array or a {min, max, points} range");
  };

  cfg.alpha_values = values_of("alpha", {1.0});
  cfg.beta_values = values_of("beta", {1.0});
  cfg.x_values = values_of("x", {1.0});
  if (sj.contains("protocols")) {
    cfg.protocols = int_field(sj, "protocols", "scan");
    if (cfg.protocols < 1) throw ConfigError("scan.protocols", "must be >= 1");
  }
  for (double b : cfg.beta_values)
    if (!(b > 0.0)) throw ConfigError("scan.beta", "values must be positive");
  for (double x : cfg.x_values)
    if (x == 0.0) throw ConfigError("scan.x", "values must be nonzero");
  return cfg;
}

LemmaConfig lemma_config_from_json(const Json& j) {
  LemmaConfig cfg;
  cfg.seed = seed_field(j, "seed", "", 1);
  const Json& ej = field(j, "experiments", "");
  if (!ej.is_array() || ej.empty())
    throw ConfigError("experiments", "expected a nonempty array");
  for (std::size_t i = 0; i < ej.size(); ++i) {
    const std::string path = "experiments[" + std::to_string(i) + "]";
    const Json& xj = ej.at(i);
    LemmaExperiment exp;
    exp.type = string_field(xj, "type", path);
    if (xj.contains("tol")) exp.tol = number_field(xj, "tol", path);

    if (exp.type == "lemma3") {
      Lemma3Config l3;
      const auto operand = [&](const std::string& key) -> Matrix {
        const Json& oj = field(xj, key, path);
        const std::string opath = join(path, key);
        if (oj.is_object() && oj.contains("matrix"))
          return matrix_field(oj, "matrix", opath);
        if (oj.is_object() && oj.contains("scalar")) {
          const double value = number_field(oj, "scalar", opath);
          const int dim = int_field(oj, "dim", opath);
          return value * Matrix::Identity(dim, dim);
        }
        if (oj.is_object() && oj.contains("zero")) {
          const int dim = int_field(oj, "dim", opath);
          return Matrix::Zero(dim, dim);
        }
        if (oj.is_object() && oj.contains("random")) {
          const int dim = int_field(oj, "dim", opath);
          RngStream rng(RngStream::derive(cfg.seed, 31 * i + (key == "a")));
          return random_hermitian(dim, rng).mat();
        }
        throw ConfigError(
            opath, "expected {matrix}, {scalar, dim}, {zero, dim} or "
                   "{random, dim}");
      };
      l3.a = operand("a");
      l3.b = operand("b");
      if (l3.a.rows() != l3.b.rows())
        throw ConfigError(path, "operands a and b differ in dimension");
      if (xj.contains("n_haar")) l3.n_haar = int_field(xj, "n_haar", path);
      if (xj.contains("n_structured"))
        l3.n_structured = int_field(xj, "n_structured", path);
      exp.lemma3 = std::move(l3);
    } else if (exp.type == "lemma4") {
      Lemma4Config l4;
      l4.dim = int_field(xj, "dim", path);
      if (l4.dim < 2) throw ConfigError(join(path, "dim"), "must be >= 2");
      l4.alpha = number_field(xj, "alpha", path);
      if (xj.contains("perturbation"))
        l4.perturbation = number_field(xj, "perturbation", path);
      if (xj.contains("ensemble"))
        l4.ensemble = int_field(xj, "ensemble", path);
      exp.lemma4 = l4;
    } else if (exp.type == "appendix_a") {
      exp.hamiltonian = hamiltonian_from_config(
          field(xj, "hamiltonian", path), join(path, "hamiltonian"));
      exp.instrument = instrument_from_config(
          field(xj, "instrument", path), *exp.hamiltonian,
          join(path, "instrument"));
    } else {
      throw ConfigError(join(path, "type"),
                        "unknown experiment type " + exp.type);
    }
    cfg.experiments.push_back(std::move(exp));
  }
  return cfg;
}

double tolerance_or(const std::map<std::string, double>& overrides,
                    const std::string& name, double fallback) {
  const auto it = overrides.find(name);
  return it == overrides.end() ? fallback : it->second;
}

}  // namespace tems
