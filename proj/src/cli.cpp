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

#include "tems/cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tems/config.hpp"
#include "tems/lemma_lab.hpp"
#include "tems/random.hpp"
#include "tems/serialization.hpp"

namespace tems {

namespace {

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

// The one field excluded from the byte-stability contract.
std::string utc_timestamp() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Shortest round-trip formatting, identical to the JSON emitter's.
std::string num(double v) { return Json(v).dump(); }

std::string out_path(const CliOptions& opt, const std::string& name) {
  return (std::filesystem::path(opt.out_dir) / name).string();
}

void ensure_out_dir(const CliOptions& opt) {
  std::error_code ec;
  std::filesystem::create_directories(opt.out_dir, ec);
  if (ec) throw ConfigError(opt.out_dir, "cannot create output directory");
}

double default_tol(const std::string& check) {
  if (check == "crooks") return 1e-9;
  return 1e-10;  // jarzynski, backward_jarzynski, detailed_balance, Ji, Jii
}

std::string check_kind_name(CheckKind kind) {
  switch (kind) {
    case CheckKind::jarzynski: return "jarzynski";
    case CheckKind::backward_jarzynski: return "backward_jarzynski";
    case CheckKind::crooks: return "crooks";
    case CheckKind::detailed_balance: return "detailed_balance";
  }
  throw std::logic_error("check_kind_name: unknown kind");
}

CheckReport run_check(const std::string& name, const Scenario& s, double tol) {
  if (name == "jarzynski") return check_jarzynski(s, tol);
  if (name == "backward_jarzynski") return check_backward_jarzynski(s, tol);
  if (name == "crooks") return check_crooks(s, tol);
  if (name == "detailed_balance") return check_detailed_balance(s, tol);
  if (name == "condition_Ji")
    return check_condition_Ji(s.instr0, s.instr_tau, s.protocol.h_initial(),
                              s.protocol.h_final(), tol);
  if (name == "condition_Jii")
    return check_condition_Jii(s.instr_tau, s.protocol.h_final(),
                               static_cast<int>(s.protocol.dim()), tol);
  throw std::logic_error("run_check: unknown check " + name);
}

std::map<std::string, double> merged_tolerances(const VerifyConfig& cfg,
                                                const CliOptions& opt) {
  std::map<std::string, double> tols = cfg.tolerances;
  for (const auto& [name, value] : opt.tol_overrides) tols[name] = value;
  return tols;
}

}  // namespace

int cmd_verify(const CliOptions& opt) {
  try {
    const Json config = load_config(opt.config_path);
    VerifyConfig cfg = verify_config_from_json(config);
    if (opt.seed) cfg.seed = *opt.seed;
    const std::map<std::string, double> tols = merged_tolerances(cfg, opt);

    std::vector<CheckReport> reports;
    bool all_pass = true;
    for (const std::string& name : cfg.checks) {
      CheckReport r = run_check(name, cfg.scenario,
                                tolerance_or(tols, name, default_tol(name)));
      all_pass = all_pass && r.pass;
      reports.push_back(std::move(r));
    }

    Json adversarial;
    if (cfg.adversarial) {
      const AdversarialConfig& adv = *cfg.adversarial;
      const SearchTemplate tmpl{.base = cfg.scenario,
                                .target = adv.target,
                                .free_dynamics = adv.free_dynamics,
                                .free_x = adv.free_x,
                                .x_min = adv.x_min,
                                .x_max = adv.x_max,
                                .x_points = adv.x_points};
      const SearchResult res =
          adversarial_search(tmpl, adv.budget, cfg.seed, opt.workers);
      const std::string target = check_kind_name(adv.target);
      const double tol = tolerance_or(tols, target, default_tol(target));
      const bool pass = res.worst_violation <= tol;
      all_pass = all_pass && pass;
      adversarial = Json{{"target", target},
                         {"budget", adv.budget},
                         {"evaluations", res.evaluations},
                         {"worst_violation", res.worst_violation},
                         {"x", res.x},
                         {"tolerance", tol},
                         {"pass", pass},
                         {"witness", scenario_to_json(res.witness)}};
    }

    // Assemble everything before the first write so a failure leaves no
    // partial files.
    Json report{{"command", "verify"},
                {"seed", cfg.seed},
                {"timestamp", utc_timestamp()},
                {"config", config}};
    Json checks = Json::array();
    std::ostringstream csv;
    csv << "check,residual,tolerance,pass\n";
    Json echo = Json::array();
    for (const CheckReport& r : reports) {
      checks.push_back(check_report_to_json(r));
      csv << r.check << ',' << num(r.residual) << ',' << num(r.tolerance)
          << ',' << (r.pass ? 1 : 0) << '\n';
      echo.push_back(Json{{"check", r.check},
                          {"residual", r.residual},
                          {"tolerance", r.tolerance},
                          {"pass", r.pass}});
    }
    report["checks"] = std::move(checks);
    if (!adversarial.is_null()) {
      csv << "adversarial_" << adversarial["target"].get<std::string>() << ','
          << num(adversarial["worst_violation"].get<double>()) << ','
          << num(adversarial["tolerance"].get<double>()) << ','
          << (adversarial["pass"].get<bool>() ? 1 : 0) << '\n';
      echo.push_back(Json{{"check", "adversarial"},
                          {"residual", adversarial["worst_violation"]},
                          {"tolerance", adversarial["tolerance"]},
                          {"pass", adversarial["pass"]}});
      report["adversarial"] = std::move(adversarial);
    }
    report["pass"] = all_pass;

    ensure_out_dir(opt);
    write_text_file(out_path(opt, "report.json"), report.dump(2) + "\n");
    write_text_file(out_path(opt, "summary.csv"), csv.str());

    if (opt.format == "csv")
      std::cout << csv.str();
    else
      std::cout << echo.dump() << '\n';
    return all_pass ? kExitPass : kExitCheckFailed;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

namespace {

struct ScanRow {
  double alpha = 0.0;
  double beta = 0.0;
  double x = 1.0;
  int protocol = 0;
  bool rejected = false;
  double jarzynski = 0.0;
  double backward_jarzynski = 0.0;
  double crooks = 0.0;
  double detailed_balance = 0.0;
};

}  // namespace

int cmd_scan(const CliOptions& opt) {
  try {
    const Json config = load_config(opt.config_path);
    ScanConfig cfg = scan_config_from_json(config);
    if (opt.seed) cfg.seed = *opt.seed;

    const int d = cfg.dimension;
    const SpectralHamiltonian h0_base = SpectralHamiltonian::from_levels(
        nondegenerate_difference_spectrum(d, RngStream::derive(cfg.seed, 1)));
    const SpectralHamiltonian h_tau = SpectralHamiltonian::from_levels(
        nondegenerate_difference_spectrum(d, RngStream::derive(cfg.seed, 2)));
    std::vector<UnitaryOperator> unitaries;
    for (int p = 0; p < cfg.protocols; ++p)
      unitaries.push_back(haar_unitary(d, RngStream::derive(cfg.seed, 100 + p)));

    std::vector<ScanRow> rows;
    for (double alpha : cfg.alpha_values)
      for (double beta : cfg.beta_values)
        for (double x : cfg.x_values)
          for (int p = 0; p < cfg.protocols; ++p)
            rows.push_back(ScanRow{.alpha = alpha, .beta = beta, .x = x,
                                   .protocol = p});

    const auto compute = [&](ScanRow& row) {
      const SpectralHamiltonian h0 =
          row.x == 1.0 ? h0_base : h0_base.scaled(row.x);
      try {
        const Scenario s{Protocol(h0, h_tau, unitaries[row.protocol]),
                         build_crooks(h0, row.alpha),
                         build_crooks(h_tau, row.alpha), row.beta};
        row.jarzynski = violation_of(s, CheckKind::jarzynski);
        row.backward_jarzynski =
            violation_of(s, CheckKind::backward_jarzynski);
        row.crooks = violation_of(s, CheckKind::crooks);
        row.detailed_balance = violation_of(s, CheckKind::detailed_balance);
      } catch (const std::invalid_argument&) {
        row.rejected = true;
      }
    };

    if (opt.workers > 1 && rows.size() > 1) {
      const int n_workers =
          std::min<int>(opt.workers, static_cast<int>(rows.size()));
      std::vector<std::future<void>> futures;
      for (int w = 0; w < n_workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&, w]() {
          for (std::size_t r = w; r < rows.size(); r += n_workers)
            compute(rows[r]);
        }));
      }
      for (auto& f : futures) f.get();
    } else {
      for (ScanRow& row : rows) compute(row);
    }

    std::ostringstream csv;
    csv << "alpha,beta,x,protocol,status,jarzynski_residual,"
           "backward_jarzynski_residual,crooks_residual,"
           "detailed_balance_residual\n";
    std::size_t rejected = 0;
    for (const ScanRow& row : rows) {
      csv << num(row.alpha) << ',' << num(row.beta) << ',' << num(row.x)
          << ',' << row.protocol << ',';
      if (row.rejected) {
        ++rejected;
        csv << "rejected,,,,\n";
      } else {
        csv << "ok," << num(row.jarzynski) << ','
            << num(row.backward_jarzynski) << ',' << num(row.crooks) << ','
            << num(row.detailed_balance) << '\n';
      }
    }

    ensure_out_dir(opt);
    write_text_file(out_path(opt, "scan.csv"), csv.str());

    if (opt.format == "csv")
      std::cout << "rows,rejected\n" << rows.size() << ',' << rejected << '\n';
    else
      std::cout << Json{{"rows", rows.size()}, {"rejected", rejected}}.dump()
                << '\n';
    return kExitPass;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

namespace {

Json run_lemma3(const LemmaExperiment& exp, std::uint64_t seed) {
  const Lemma3Config& l3 = *exp.lemma3;
  const HermitianOperator a(l3.a);
  const HermitianOperator b(l3.b);
  const Lemma3Verdict verdict = lemma3_classify(a, b, exp.tol, seed);
  const EnsembleStats stats =
      lemma3_trace_scan(a, b, l3.n_haar, l3.n_structured, seed);
  const double spread = stats.max - stats.min;
  // The dichotomy: scalar-compatible operands give a U-independent trace;
  // anything else must expose a deviating unitary.
  const bool pass = verdict.constant_compatible
                        ? spread <= exp.tol
                        : verdict.witness_deviation > exp.tol;
  Json record{{"type", "lemma3"},
              {"seed", seed},
              {"tol", exp.tol},
              {"constant_compatible", verdict.constant_compatible},
              {"constant_value", verdict.constant_value},
              {"scan_spread", verdict.scan_spread},
              {"witness_deviation", verdict.witness_deviation},
              {"ensemble_spread", spread},
              {"ensemble", ensemble_stats_to_json(stats)},
              {"pass", pass}};
  if (verdict.witness_unitary)
    record["witness_unitary"] = matrix_to_json(*verdict.witness_unitary);
  return record;
}

Json run_lemma4(const LemmaExperiment& exp, std::uint64_t seed) {
  const Lemma4Config& l4 = *exp.lemma4;
  RngStream rng(seed);
  const Vector a = random_unit_vector(l4.dim, rng);
  const Vector b = random_unit_vector(l4.dim, rng);
  const Matrix eye =
      Matrix::Identity(l4.dim, l4.dim) / static_cast<double>(l4.dim);
  Matrix rho_m = (1.0 - l4.alpha) * eye + l4.alpha * b * b.adjoint();
  const Matrix sigma_m = (1.0 - l4.alpha) * eye + l4.alpha * a * a.adjoint();
  if (l4.perturbation != 0.0) {
    const Vector u = random_unit_vector(l4.dim, rng);
    rho_m = (1.0 - l4.perturbation) * rho_m +
            l4.perturbation * u * u.adjoint();
  }
  const DensityMatrix rho = DensityMatrix::normalized(rho_m);
  const DensityMatrix sigma = DensityMatrix::normalized(sigma_m);
  const EnsembleStats stats = lemma4_check(rho, sigma, a, b, l4.ensemble, seed);
  const Lemma4Fit fit = lemma4_fit(rho, sigma, a, b);
  // On-family pairs are invisible to every unitary; off-family ones must show
  // a discrepancy somewhere in the ensemble.
  const bool on_family = l4.perturbation == 0.0;
  const bool pass = on_family
                        ? stats.max <= exp.tol && fit.residual <= exp.tol
                        : stats.max > exp.tol;
  return Json{{"type", "lemma4"},
              {"seed", seed},
              {"tol", exp.tol},
              {"dim", l4.dim},
              {"alpha", l4.alpha},
              {"perturbation", l4.perturbation},
              {"max_discrepancy", stats.max},
              {"fit_alpha", fit.alpha},
              {"fit_residual", fit.residual},
              {"fit_in_range", fit.in_range},
              {"ensemble", ensemble_stats_to_json(stats)},
              {"pass", pass}};
}

Json run_appendix_a(const LemmaExperiment& exp) {
  const CheckReport r =
      appendixA_effect_check(*exp.instrument, *exp.hamiltonian, exp.tol);
  Json record = check_report_to_json(r);
  record["type"] = "appendix_a";
  return record;
}

}  // namespace

int cmd_lemma(const CliOptions& opt) {
  try {
    const Json config = load_config(opt.config_path);
    LemmaConfig cfg = lemma_config_from_json(config);
    if (opt.seed) cfg.seed = *opt.seed;

    Json records = Json::array();
    bool all_pass = true;
    for (std::size_t i = 0; i < cfg.experiments.size(); ++i) {
      const LemmaExperiment& exp = cfg.experiments[i];
      const std::uint64_t seed = RngStream::derive(cfg.seed, i);
      Json record;
      if (exp.type == "lemma3")
        record = run_lemma3(exp, seed);
      else if (exp.type == "lemma4")
        record = run_lemma4(exp, seed);
      else
        record = run_appendix_a(exp);
      all_pass = all_pass && record["pass"].get<bool>();
      records.push_back(std::move(record));
    }

    const Json report{{"command", "lemma"},
                      {"seed", cfg.seed},
                      {"timestamp", utc_timestamp()},
                      {"experiments", records}};

    ensure_out_dir(opt);
    write_text_file(out_path(opt, "lemma.json"), report.dump(2) + "\n");

    if (opt.format == "csv") {
      std::cout << "experiment,type,pass\n";
      for (std::size_t i = 0; i < records.size(); ++i)
        std::cout << i << ',' << records[i]["type"].get<std::string>() << ','
                  << (records[i]["pass"].get<bool>() ? 1 : 0) << '\n';
    } else {
      Json echo = Json::array();
      for (const Json& r : records)
        echo.push_back(Json{{"type", r["type"]}, {"pass", r["pass"]}});
      std::cout << echo.dump() << '\n';
    }
    return all_pass ? kExitPass : kExitCheckFailed;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Two-measurement work statistics checker"};
  app.require_subcommand(1);

  CliOptions opt;
  std::uint64_t seed_value = 0;
  std::vector<std::string> tol_args;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config_path, "JSON config file")
        ->required();
    cmd->add_option("--seed", seed_value, "Seed override")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--workers", opt.workers, "Worker pool size")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol-overrides", tol_args,
                    "Tolerance overrides, name=value");
    cmd->add_option("--out-dir", opt.out_dir, "Output directory");
    cmd->add_option("--format", opt.format, "Console summary format")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* verify = app.add_subcommand("verify", "Run scenario checks");
  CLI::App* scan = app.add_subcommand("scan", "Sweep a parameter grid");
  CLI::App* lemma = app.add_subcommand("lemma", "Run lemma experiments");
  add_common(verify);
  add_common(scan);
  add_common(lemma);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  const CLI::App* active = verify->parsed() ? verify
                           : scan->parsed() ? scan
                                            : lemma;
  if (active->count("--seed") > 0) opt.seed = seed_value;
  for (const std::string& arg : tol_args) {
    const auto eq = arg.find('=');
    double value = 0.0;
    std::size_t used = 0;
    bool ok = eq != std::string::npos && eq > 0;
    if (ok) {
      try {
        value = std::stod(arg.substr(eq + 1), &used);
        ok = used == arg.size() - eq - 1;
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok) {
      std::cerr << "config error: --tol-overrides expects name=value, got \""
                << arg << "\"\n";
      return kExitConfigError;
    }
    opt.tol_overrides[arg.substr(0, eq)] = value;
  }

  if (verify->parsed()) return cmd_verify(opt);
  if (scan->parsed()) return cmd_scan(opt);
  return cmd_lemma(opt);
}

}  // namespace tems
