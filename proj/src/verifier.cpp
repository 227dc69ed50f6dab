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

#include "tems/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "tems/rng.hpp"

namespace tems {

namespace {

Scenario backward_scenario(const Scenario& s) {
  // Reversed protocol with the time-reversed instruments in swapped roles:
  // the final measurement of the forward process opens the backward one.
  return {time_reversed(s.protocol), time_reverse_instrument(s.instr_tau),
          time_reverse_instrument(s.instr0), s.beta};
}

double default_work_tol(const Scenario& s) {
  double scale = 1.0;
  for (const EnergyLevel& l : s.protocol.h_initial().levels())
    scale = std::max(scale, std::abs(l.energy));
  for (const EnergyLevel& l : s.protocol.h_final().levels())
    scale = std::max(scale, std::abs(l.energy));
  return 1e-9 * scale;
}

CheckReport scalar_report(const std::string& name, double expected,
                          double actual, double tol) {
  CheckReport r;
  r.check = name;
  r.expected = expected;
  r.actual = actual;
  r.abs_residual = std::abs(actual - expected);
  r.rel_residual = r.abs_residual / std::abs(expected);
  r.residual = r.rel_residual;
  r.tolerance = tol;
  r.pass = std::isfinite(r.residual) && r.residual <= tol;
  return r;
}

}  // namespace

CheckReport check_jarzynski(const Scenario& s, double tol) {
  const WorkDistribution dist =
      work_distribution(joint_table(s.protocol, s.instr0, s.instr_tau, s.beta));
  const double expected = partition_function(s.protocol.h_final(), s.beta) /
                          partition_function(s.protocol.h_initial(), s.beta);
  return scalar_report("jarzynski", expected, exp_average(dist, s.beta), tol);
}

CheckReport check_backward_jarzynski(const Scenario& s, double tol) {
  const Scenario b = backward_scenario(s);
  const WorkDistribution dist =
      work_distribution(joint_table(b.protocol, b.instr0, b.instr_tau, b.beta));
  // For the reversed process the reference is Z(initial)/Z(final) of the
  // forward protocol (conjugation preserves spectra).
  const double expected = partition_function(s.protocol.h_initial(), s.beta) /
                          partition_function(s.protocol.h_final(), s.beta);
  return scalar_report("backward_jarzynski", expected,
                       exp_average(dist, s.beta), tol);
}

CheckReport check_crooks(const Scenario& s, double tol, double work_tol) {
  if (!s.protocol.has_unitary_dynamics())
    throw std::invalid_argument("check_crooks: requires unitary dynamics");
  if (work_tol <= 0.0) work_tol = default_work_tol(s);
  const WorkDistribution fwd = work_distribution(
      joint_table(s.protocol, s.instr0, s.instr_tau, s.beta), work_tol);
  const Scenario b = backward_scenario(s);
  const WorkDistribution bwd = work_distribution(
      joint_table(b.protocol, b.instr0, b.instr_tau, b.beta), work_tol);
  // p_fwd(w) = e^{-beta(dF - w)} p_bwd(-w), with e^{-beta dF} = Z_f / Z_i.
  const double ratio = partition_function(s.protocol.h_final(), s.beta) /
                       partition_function(s.protocol.h_initial(), s.beta);

  struct Side {
    double w;
    double p_fwd = 0.0;
    double p_bwd = 0.0;
  };
  std::vector<Side> points;
  for (const WorkPoint& pt : fwd.support) points.push_back({pt.w, pt.p, 0.0});
  for (const WorkPoint& pt : bwd.support) {
    const double w = -pt.w;
    bool matched = false;
    for (Side& side : points) {
      if (std::abs(side.w - w) <= work_tol) {
        side.p_bwd = pt.p;
        matched = true;
        break;
      }
    }
    if (!matched) points.push_back({w, 0.0, pt.p});
  }
  std::sort(points.begin(), points.end(),
            [](const Side& a, const Side& b) { return a.w < b.w; });

  CheckReport r;
  r.check = "crooks";
  r.tolerance = tol;
  double worst = 0.0;
  double worst_abs = 0.0;
  for (const Side& side : points) {
    const double rhs = ratio * std::exp(s.beta * side.w) * side.p_bwd;
    const double top = std::max(side.p_fwd, rhs);
    if (top <= tol) continue;  // mass below tolerance on both sides
    const double rel = std::abs(side.p_fwd - rhs) / top;
    worst = std::max(worst, rel);
    worst_abs = std::max(worst_abs, std::abs(side.p_fwd - rhs));
    std::ostringstream label;
    label << "w=" << side.w;
    r.diagnostics.push_back({label.str(), rhs, side.p_fwd, rel});
  }
  r.expected = 0.0;
  r.actual = worst;
  r.abs_residual = worst_abs;
  r.rel_residual = worst;
  r.residual = worst;
  r.pass = std::isfinite(worst) && worst <= tol;
  return r;
}

CheckReport check_detailed_balance(const Scenario& s, double tol) {
  if (!s.protocol.has_unitary_dynamics())
    throw std::invalid_argument(
        "check_detailed_balance: requires unitary dynamics");
  const std::vector<RealMatrix> fwd =
      conditional_table(s.protocol, s.instr0, s.instr_tau);
  const Scenario b = backward_scenario(s);
  const std::vector<RealMatrix> bwd =
      conditional_table(b.protocol, b.instr0, b.instr_tau);
  const SpectralHamiltonian& h0 = s.protocol.h_initial();
  const SpectralHamiltonian& ht = s.protocol.h_final();

  CheckReport r;
  r.check = "detailed_balance";
  r.tolerance = tol;
  double worst = 0.0;
  for (int m = 0; m < ht.level_count(); ++m) {
    for (int n = 0; n < h0.level_count(); ++n) {
      const double lhs = fwd[n](m, n) * h0.degeneracy(n);
      const double rhs = bwd[m](n, m) * ht.degeneracy(m);
      const double dev = std::abs(lhs - rhs);
      worst = std::max(worst, dev);
      std::ostringstream label;
      label << "m=" << m << ",n=" << n;
      r.diagnostics.push_back({label.str(), rhs, lhs, dev});
    }
  }
  r.expected = 0.0;
  r.actual = worst;
  r.abs_residual = worst;
  r.rel_residual = worst;
  r.residual = worst;
  r.pass = std::isfinite(worst) && worst <= tol;
  return r;
}

CheckReport check_condition_Ji(const Instrument& instr0,
                               const Instrument& instr_tau,
                               const SpectralHamiltonian& h0,
                               const SpectralHamiltonian& h_tau, double tol) {
  CheckReport r;
  r.check = "condition_Ji";
  r.tolerance = tol;

  const RealMatrix p = error_matrix(instr0, h0);
  double em_defect = 0.0;
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j)
      em_defect = std::max(em_defect, std::abs(p(i, j) - (i == j ? 1.0 : 0.0)));
  r.diagnostics.push_back({"first_error_free", 0.0, em_defect, em_defect});

  const Channel phi0 = nonselective(instr0);
  Matrix one_out = Matrix::Zero(h0.dim(), h0.dim());
  for (const Matrix& bk : phi0.kraus()) one_out.noalias() += bk * bk.adjoint();
  const double unital_defect = max_abs(one_out - identity(h0.dim()));
  r.diagnostics.push_back(
      {"first_nonselective_unital", 0.0, unital_defect, unital_defect});

  if (instr_tau.size() != h_tau.level_count())
    throw std::invalid_argument(
        "check_condition_Ji: second instrument outcome count mismatch");
  double trace_defect = 0.0;
  for (int m = 0; m < instr_tau.size(); ++m) {
    const double tr = effect(instr_tau.operation(m)).mat().trace().real();
    const double dev = std::abs(tr - h_tau.degeneracy(m));
    trace_defect = std::max(trace_defect, dev);
    std::ostringstream label;
    label << "second_effect_trace[" << m << "]";
    r.diagnostics.push_back(
        {label.str(), static_cast<double>(h_tau.degeneracy(m)), tr, dev});
  }

  r.residual = std::max({em_defect, unital_defect, trace_defect});
  r.expected = 0.0;
  r.actual = r.residual;
  r.abs_residual = r.residual;
  r.rel_residual = r.residual;
  r.pass = std::isfinite(r.residual) && r.residual <= tol;
  return r;
}

CheckReport check_condition_Jii(const Instrument& instr_tau,
                                const SpectralHamiltonian& h_tau, int dim,
                                double tol) {
  if (dim != h_tau.dim())
    throw std::invalid_argument(
        "check_condition_Jii: dim does not match the Hamiltonian");
  if (instr_tau.size() != h_tau.level_count())
    throw std::invalid_argument(
        "check_condition_Jii: outcome count mismatch");
  CheckReport r;
  r.check = "condition_Jii";
  r.tolerance = tol;
  double worst = 0.0;
  for (int m = 0; m < instr_tau.size(); ++m) {
    const double w =
        static_cast<double>(h_tau.degeneracy(m)) / static_cast<double>(dim);
    const double dev =
        max_abs(effect(instr_tau.operation(m)).mat() - w * identity(dim));
    worst = std::max(worst, dev);
    std::ostringstream label;
    label << "effect[" << m << "]";
    r.diagnostics.push_back({label.str(), 0.0, dev, dev});
  }
  r.residual = worst;
  r.expected = 0.0;
  r.actual = worst;
  r.abs_residual = worst;
  r.rel_residual = worst;
  r.pass = std::isfinite(worst) && worst <= tol;
  return r;
}

namespace {

// Choi matrix of the one-parameter outcome family at alpha (same form as in
// build_crooks).
Matrix family_choi(const Matrix& pi, double alpha, Eigen::Index d) {
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

}  // namespace

AlphaFit fit_depolarizing_alpha(const Instrument& instr,
                                const SpectralHamiltonian& h) {
  if (instr.size() != h.level_count() || instr.dim() != h.dim())
    throw std::invalid_argument("fit_depolarizing_alpha: shape mismatch");
  const Eigen::Index d = h.dim();
  double num = 0.0;
  double den = 0.0;
  std::vector<Matrix> chois;
  for (int n = 0; n < instr.size(); ++n) {
    const Matrix j = choi(instr.operation(n)).mat();
    const Matrix c0 = family_choi(h.projector(n), 0.0, d);
    const Matrix dir = family_choi(h.projector(n), 1.0, d) - c0;
    num += ((j - c0).adjoint() * dir).trace().real();
    den += dir.squaredNorm();
    chois.push_back(j);
  }
  AlphaFit fit;
  fit.alpha = num / den;
  for (int n = 0; n < instr.size(); ++n) {
    const double dist =
        (chois[n] - family_choi(h.projector(n), fit.alpha, d)).norm();
    fit.residual = std::max(fit.residual, dist);
  }
  double lower_instr = -std::numeric_limits<double>::infinity();
  for (int n = 0; n < h.level_count(); ++n) {
    lower_instr = std::max(
        lower_instr, -1.0 / (h.degeneracy(n) * static_cast<double>(d) - 1.0));
  }
  const double slack = 1e-12;
  fit.in_instrument_range =
      fit.alpha >= lower_instr - slack && fit.alpha <= 1.0 + slack;
  fit.in_universal_range =
      fit.alpha >= -1.0 / (static_cast<double>(d) * d - 1.0) - slack &&
      fit.alpha <= 1.0 + slack;
  fit.error_free_precondition = is_error_free(instr, h, tol::completeness);
  return fit;
}

double violation_of(const Scenario& s, CheckKind target) {
  switch (target) {
    case CheckKind::jarzynski:
      return check_jarzynski(s, 1.0).residual;
    case CheckKind::backward_jarzynski:
      return check_backward_jarzynski(s, 1.0).residual;
    case CheckKind::crooks:
      return check_crooks(s, 1e-12).residual;
    case CheckKind::detailed_balance:
      return check_detailed_balance(s, 1.0).residual;
  }
  throw std::logic_error("violation_of: unknown check kind");
}

namespace {

Scenario scenario_with(const Scenario& base,
                       const std::optional<UnitaryOperator>& u, double x) {
  SpectralHamiltonian h0 = (x == 1.0) ? base.protocol.h_initial()
                                      : base.protocol.h_initial().scaled(x);
  std::optional<Protocol> p;
  if (u.has_value()) {
    p.emplace(std::move(h0), base.protocol.h_final(), *u);
  } else if (base.protocol.has_unitary_dynamics()) {
    p.emplace(std::move(h0), base.protocol.h_final(), base.protocol.unitary());
  } else {
    p.emplace(std::move(h0), base.protocol.h_final(), base.protocol.channel());
  }
  return {std::move(*p), base.instr0, base.instr_tau, base.beta};
}

double safe_violation(const Scenario& s, CheckKind target) {
  const double v = violation_of(s, target);
  return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> xs;
  if (points <= 1) {
    xs.push_back(lo);
    return xs;
  }
  const double step = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) xs.push_back(lo * std::exp(step * i));
  return xs;
}

struct RestartOutcome {
  double violation = -std::numeric_limits<double>::infinity();
  double x = 1.0;
  std::optional<UnitaryOperator> u;
};

// Hermitian generator chart around u0: U(theta) = e^{i G(theta)} u0 with
// theta packing the diagonal and the re/im off-diagonal entries of G.
Matrix generator_from(const std::vector<double>& theta, Eigen::Index d) {
  Matrix g = Matrix::Zero(d, d);
  std::size_t idx = 0;
  for (Eigen::Index k = 0; k < d; ++k) g(k, k) = theta[idx++];
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const double re = theta[idx++];
      const double im = theta[idx++];
      g(i, j) = Complex(re, im);
      g(j, i) = Complex(re, -im);
    }
  return g;
}

UnitaryOperator chart_unitary(const std::vector<double>& theta,
                              const UnitaryOperator& u0) {
  const Eigen::Index d = u0.dim();
  const HermitianOperator g(generator_from(theta, d));
  // e^{iG} = evolve_unitary(G, -1).
  return UnitaryOperator(evolve_unitary(g, -1.0).mat() * u0.mat());
}

}  // namespace

SearchResult adversarial_search(const SearchTemplate& tmpl, int budget,
                                std::uint64_t seed, int workers) {
  if (budget <= 0)
    throw std::invalid_argument("adversarial_search: budget must be positive");
  if (tmpl.free_x && (tmpl.x_min <= 0.0 || tmpl.x_max < tmpl.x_min ||
                      tmpl.x_points < 1))
    throw std::invalid_argument("adversarial_search: bad x grid");

  const std::vector<double> xs =
      tmpl.free_x ? log_grid(tmpl.x_min, tmpl.x_max, tmpl.x_points)
                  : std::vector<double>{1.0};
  const Eigen::Index d = tmpl.base.protocol.dim();
  std::uint64_t used = 0;

  SearchResult result{.worst_violation =
                          -std::numeric_limits<double>::infinity(),
                      .witness = tmpl.base};

  const auto evaluate_grid = [&](const std::optional<UnitaryOperator>& u,
                                 std::uint64_t allowance) -> RestartOutcome {
    RestartOutcome out;
    out.u = u;
    for (const double x : xs) {
      if (allowance == 0) break;
      --allowance;
      const double v = safe_violation(scenario_with(tmpl.base, u, x),
                                      tmpl.target);
      if (v > out.violation) {
        out.violation = v;
        out.x = x;
      }
    }
    return out;
  };

  if (!tmpl.free_dynamics) {
    const std::uint64_t allowance =
        std::min<std::uint64_t>(budget, xs.size());
    const RestartOutcome out = evaluate_grid(std::nullopt, allowance);
    used = allowance;
    result.worst_violation = out.violation;
    result.x = out.x;
    result.witness = scenario_with(tmpl.base, std::nullopt, out.x);
    result.evaluations = used;
    return result;
  }

  // Restart phase: split roughly 60/40 between Haar restarts and simplex
  // refinement, with at least one full grid pass.
  const auto grid_cost = static_cast<std::uint64_t>(xs.size());
  std::uint64_t restart_budget =
      std::max<std::uint64_t>(grid_cost, (static_cast<std::uint64_t>(budget) * 3) / 5);
  restart_budget = std::min<std::uint64_t>(restart_budget, budget);
  const std::uint64_t n_restarts = std::max<std::uint64_t>(
      1, restart_budget / grid_cost);

  const auto run_restart = [&](std::uint64_t r) -> RestartOutcome {
    std::optional<UnitaryOperator> u;
    if (r == 0 && tmpl.base.protocol.has_unitary_dynamics()) {
      u = tmpl.base.protocol.unitary();
    } else {
      RngStream rng(RngStream::derive(seed, r));
      u = haar_unitary(static_cast<int>(d), rng);
    }
    return evaluate_grid(u, grid_cost);
  };

  std::vector<RestartOutcome> outcomes(n_restarts);
  if (workers > 1 && n_restarts > 1) {
    std::vector<std::future<void>> futures;
    const int n_workers = std::min<int>(workers, static_cast<int>(n_restarts));
    for (int w = 0; w < n_workers; ++w) {
      futures.push_back(std::async(std::launch::async, [&, w]() {
        for (std::uint64_t r = w; r < n_restarts; r += n_workers)
          outcomes[r] = run_restart(r);
      }));
    }
    for (auto& f : futures) f.get();
  } else {
    for (std::uint64_t r = 0; r < n_restarts; ++r) outcomes[r] = run_restart(r);
  }
  used += n_restarts * grid_cost;

  // Deterministic reduction: max violation, ties to the lowest restart index.
  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r)
    if (outcomes[r].violation > outcomes[best].violation) best = r;
  RestartOutcome champion = outcomes[best];

  // Refinement phase: derivative-free simplex over the generator chart at the
  // champion's spectrum scale.
  std::uint64_t refine_budget =
      static_cast<std::uint64_t>(budget) > used ? budget - used : 0;
  if (refine_budget > 0 && champion.u.has_value()) {
    const UnitaryOperator u0 = *champion.u;
    const double x0 = champion.x;
    const auto n_params = static_cast<std::size_t>(d * d);
    const auto objective = [&](const std::vector<double>& theta) -> double {
      return safe_violation(
          scenario_with(tmpl.base, chart_unitary(theta, u0), x0), tmpl.target);
    };

    struct Vertex {
      std::vector<double> theta;
      double value;
    };
    std::vector<Vertex> simplex;
    const auto eval_point =
        [&](const std::vector<double>& theta) -> std::optional<double> {
      if (refine_budget == 0) return std::nullopt;
      --refine_budget;
      ++used;
      const double v = objective(theta);
      if (v > champion.violation) {
        champion.violation = v;
        champion.x = x0;
        champion.u = chart_unitary(theta, u0);
      }
      return v;
    };

    std::vector<double> origin(n_params, 0.0);
    if (auto v0 = eval_point(origin)) {
      simplex.push_back({origin, *v0});
      for (std::size_t k = 0; k < n_params; ++k) {
        std::vector<double> theta = origin;
        theta[k] += 0.1;
        if (auto v = eval_point(theta)) {
          simplex.push_back({std::move(theta), *v});
        } else {
          break;
        }
      }
    }

    // Nelder-Mead maximization while the refinement allowance lasts.
    while (simplex.size() == n_params + 1 && refine_budget > 0) {
      std::sort(simplex.begin(), simplex.end(),
                [](const Vertex& a, const Vertex& b) {
                  return a.value > b.value;  // best first
                });
      const Vertex& worst = simplex.back();
      std::vector<double> centroid(n_params, 0.0);
      for (std::size_t v = 0; v + 1 < simplex.size(); ++v)
        for (std::size_t k = 0; k < n_params; ++k)
          centroid[k] += simplex[v].theta[k] / static_cast<double>(n_params);

      const auto blend = [&](double t) {
        std::vector<double> theta(n_params);
        for (std::size_t k = 0; k < n_params; ++k)
          theta[k] = centroid[k] + t * (centroid[k] - worst.theta[k]);
        return theta;
      };

      const std::vector<double> reflected = blend(1.0);
      const auto vr = eval_point(reflected);
      if (!vr) break;
      if (*vr > simplex.front().value) {
        const std::vector<double> expanded = blend(2.0);
        if (const auto ve = eval_point(expanded); ve && *ve > *vr) {
          simplex.back() = {expanded, *ve};
        } else {
          simplex.back() = {reflected, *vr};
        }
      } else if (*vr > simplex[simplex.size() - 2].value) {
        simplex.back() = {reflected, *vr};
      } else {
        const std::vector<double> contracted = blend(-0.5);
        const auto vc = eval_point(contracted);
        if (!vc) break;
        if (*vc > worst.value) {
          simplex.back() = {contracted, *vc};
        } else {
          // Shrink toward the best vertex.
          bool exhausted = false;
          for (std::size_t v = 1; v < simplex.size(); ++v) {
            for (std::size_t k = 0; k < n_params; ++k)
              simplex[v].theta[k] = 0.5 * (simplex[v].theta[k] +
                                           simplex.front().theta[k]);
            if (const auto vs = eval_point(simplex[v].theta)) {
              simplex[v].value = *vs;
            } else {
              exhausted = true;
              break;
            }
          }
          if (exhausted) break;
        }
      }
    }
  }

  result.worst_violation = champion.violation;
  result.x = champion.x;
  result.witness = scenario_with(tmpl.base, champion.u, champion.x);
  result.evaluations = used;
  return result;
}

}  // namespace tems
