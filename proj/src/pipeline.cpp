#include "talentplan/pipeline.hpp"

#include <stdexcept>

namespace talentplan::pipeline {

BuildOutput build_final_milp(const Instance& inst, const SolveOptions& options,
                             const Treatment& treatment) {
  BuildOutput out;
  auto nl = model::build_minlp(inst);
  out.bounds = model::compute_bounds(inst);
  auto [milp_model, expansion] = lin::linearize_model(nl, out.bounds);
  out.model = std::move(milp_model);
  out.expansion = std::move(expansion);
  out.catalog = std::move(nl.catalog);

  const double alpha1 = options.alpha1.value_or(inst.config.alpha1);
  const double alpha2 = options.alpha2.value_or(inst.config.alpha2);
  const Eigen::VectorXd accept = treatment.acceptance
                                     ? *treatment.acceptance
                                     : chance::acceptance_quantiles(inst, alpha1);
  chance::apply_acceptance(out.model, accept);

  switch (treatment.time) {
    case Treatment::Time::Chance: {
      if (options.time_mode == chance::TimeMode::Scenario) {
        const int count = options.scenario_count.value_or(inst.config.sample_size);
        const std::uint64_t seed = options.seed.value_or(inst.config.rng_seed);
        out.scenarios = chance::generate_scenarios(inst, count, seed);
        out.indicators = chance::apply_time_scenarios(out.model, *out.scenarios, alpha2);
      } else {
        chance::apply_time_normal(out.model, inst, alpha2);
      }
      break;
    }
    case Treatment::Time::Fixed:
      chance::apply_time_fixed(out.model, treatment.fixed_doc_time,
                               treatment.fixed_interview_time);
      break;
    case Treatment::Time::Mean: {
      Eigen::VectorXd doc(inst.jobs()), interview(inst.jobs());
      for (int j = 0; j < inst.jobs(); ++j) {
        doc[j] = inst.stochastic[static_cast<std::size_t>(j)].doc_time.mean();
        interview[j] = inst.stochastic[static_cast<std::size_t>(j)].interview_time.mean();
      }
      chance::apply_time_fixed(out.model, doc, interview);
      break;
    }
  }
  return out;
}

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

Plan extract_plan(const Instance& inst, const model::VariableCatalog& catalog,
                  const Eigen::VectorXd& x) {
  Plan p = Plan::zeros(inst);
  const int m = inst.channels(), n = inst.jobs(), T = inst.periods();
  for (int t = 0; t < T; ++t) {
    const auto ts = static_cast<std::size_t>(t);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        // Integer counts come back exactly; the big-M deactivation rows can
        // leak a hair of interview rate where no one applied, so rates on
        // empty channels are cleared.
        const double applications = std::round(x[catalog.a(i, j, t)]);
        p.applications[ts](i, j) = applications;
        p.interview_rate[ts](i, j) =
            applications > 0.0 ? clamp01(x[catalog.x(i, j, t)]) : 0.0;
      }
    for (int j = 0; j < n; ++j) {
      p.offer_rate(j, t) = clamp01(x[catalog.y(j, t)]);
      p.attrition_rate(j, t) = clamp01(x[catalog.phi(j, t)]);
      p.growth_rate(j, t) = std::clamp(x[catalog.g(j, t)], 0.0, inst.max_growth(j, t));
      p.end_headcount(j, t) = std::round(x[catalog.s(j, t)]);
      p.headcount(j, t) = std::round(x[catalog.c(j, t)]);
      p.hired(j, t) = std::round(x[catalog.z(j, t)]);
      p.hires_needed(j, t) = std::round(x[catalog.h(j, t)]);
      p.shortage_flag(j, t) = std::round(x[catalog.p(j, t)]);
    }
    for (std::size_t k = 0; k < catalog.arcs.size(); ++k)
      p.advancement_rate[ts](catalog.arcs[k].first, catalog.arcs[k].second) =
          clamp01(x[catalog.v(static_cast<int>(k), t)]);
  }
  return p;
}

Plan baseline_plan(const Instance& inst) {
  Plan p = Plan::zeros(inst);
  const auto a_upper = model::compute_bounds(inst).a_upper;
  const double eps = inst.config.epsilon;
  for (int t = 0; t < inst.periods(); ++t) {
    const auto ts = static_cast<std::size_t>(t);
    for (int j = 0; j < inst.jobs(); ++j) {
      int widest = 0;
      for (int i = 1; i < inst.channels(); ++i)
        if (a_upper[ts](i, j) > a_upper[ts](widest, j)) widest = i;
      p.applications[ts](widest, j) = 1.0;
      p.interview_rate[ts](widest, j) = eps;
      p.offer_rate(j, t) = std::min(inst.max_offer_rate(j, t), eps);
      p.end_headcount(j, t) = p.headcount(j, t);
      if (t + 1 < inst.periods()) p.headcount(j, t + 1) = p.end_headcount(j, t);
    }
  }
  return p;
}

std::optional<Eigen::VectorXd> lift_plan(const Instance& inst, const BuildOutput& built,
                                         const Plan& plan) {
  const auto& m = built.model;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(m.cols());
  const Eigen::VectorXd originals = model::plan_values(built.catalog, inst, plan);
  z.head(originals.size()) = originals;

  for (const auto& [var, exp] : built.expansion.bits) {
    const long value = std::llround(z[var]);
    if (value < 0 || value > exp.upper) return std::nullopt;
    for (std::size_t r = 0; r < exp.bits.size(); ++r)
      z[exp.bits[r]] = static_cast<double>((value >> r) & 1L);
  }
  for (const auto& blk : built.expansion.abs_blocks) z[blk[0]] = std::abs(z[blk[1]] - z[blk[2]]);
  for (const auto& blk : built.expansion.piecewise) {
    const double x = z[blk.x], y = z[blk.y];
    const double mean = 0.5 * (x + y), diff = 0.5 * (x - y);
    z[blk.mean] = mean;
    z[blk.half_diff] = diff;
    if (mean <= 0.5) {
      z[blk.seg[0]] = 1.0;
      z[blk.lambda[1]] = 2.0 * mean;
      z[blk.lambda[0]] = 1.0 - z[blk.lambda[1]];
    } else {
      z[blk.seg[1]] = 1.0;
      z[blk.lambda[2]] = 2.0 * mean - 1.0;
      z[blk.lambda[1]] = 1.0 - z[blk.lambda[2]];
    }
    if (diff <= 0.0) {
      z[blk.seg_bar[0]] = 1.0;
      z[blk.lambda_bar[0]] = -2.0 * diff;
      z[blk.lambda_bar[1]] = 1.0 - z[blk.lambda_bar[0]];
    } else {
      z[blk.seg_bar[1]] = 1.0;
      z[blk.lambda_bar[2]] = 2.0 * diff;
      z[blk.lambda_bar[1]] = 1.0 - z[blk.lambda_bar[2]];
    }
    z[blk.value] = 0.25 * z[blk.lambda[1]] + z[blk.lambda[2]] - 0.25 * z[blk.lambda_bar[0]] -
                   0.25 * z[blk.lambda_bar[2]];
  }
  for (const auto& blk : built.expansion.products) z[blk.aux] = z[blk.x] * z[blk.b];

  if (built.scenarios && built.indicators) {
    const auto& sc = *built.scenarios;
    for (int t = 0; t < inst.periods(); ++t) {
      const auto ts = static_cast<std::size_t>(t);
      const auto& cols = built.indicators->satisfied_cols[ts];
      for (int l = 0; l < sc.count; ++l) {
        double load = 0.0;
        for (int j = 0; j < inst.jobs(); ++j)
          for (int i = 0; i < inst.channels(); ++i)
            load += (sc.doc_time(l, j) + sc.interview_time(l, j) * plan.interview_rate[ts](i, j)) *
                    plan.applications[ts](i, j);
        z[cols[static_cast<std::size_t>(l)]] =
            load <= inst.config.recruit_time_budget[t] ? 1.0 : 0.0;
      }
    }
  }

  // The extension must sit inside the model it claims to extend.
  for (int j = 0; j < m.cols(); ++j) {
    const auto& v = m.vars[static_cast<std::size_t>(j)];
    if (z[j] < v.lb - 1e-7 || z[j] > v.ub + 1e-7) return std::nullopt;
  }
  for (const auto& row : m.rows) {
    double act = 0.0;
    for (const auto& e : row.entries) act += e.coef * z[e.col];
    if (act < row.lo - 1e-7 || act > row.hi + 1e-7) return std::nullopt;
  }
  return z;
}

namespace {

SolveResult run(const Instance& inst, const SolveOptions& options, const Treatment& treatment) {
  BuildOutput built = build_final_milp(inst, options, treatment);
  const milp::Problem problem = milp::to_problem(built.model);
  milp::Limits limits = options.limits;
  if (!limits.start && options.warm_plan) {
    if (auto start = lift_plan(inst, built, *options.warm_plan)) limits.start = *start;
  }
  if (!limits.start) {
    if (auto start = lift_plan(inst, built, baseline_plan(inst))) limits.start = *start;
  }
  const milp::MilpSolution sol = milp::solve_milp(problem, limits);

  SolveResult out;
  out.status = sol.status;
  out.best_bound = sol.best_bound;
  out.nodes = sol.nodes;
  out.wall_seconds = sol.wall_seconds;
  if (!sol.has_incumbent) return out;

  out.has_plan = true;
  out.objective = sol.objective;
  out.plan = extract_plan(inst, built.catalog, sol.x);
  out.period_profit.resize(inst.periods());
  for (int t = 0; t < inst.periods(); ++t)
    out.period_profit[t] = period_profit(inst, out.plan, t);
  if (built.scenarios) {
    out.scenario_satisfied = chance::count_time_satisfied(inst, out.plan, *built.scenarios);
    out.scenario_required = chance::required_scenarios(
        options.alpha2.value_or(inst.config.alpha2), built.scenarios->count);
  }
  return out;
}

}  // namespace

SolveResult solve_instance(const Instance& inst, const SolveOptions& options) {
  return run(inst, options, Treatment{});
}

SolveResult solve_with_realization(const Instance& inst, const Eigen::VectorXd& doc_time,
                                   const Eigen::VectorXd& interview_time,
                                   const std::optional<Eigen::VectorXd>& acceptance,
                                   const SolveOptions& options) {
  Treatment t;
  t.time = Treatment::Time::Fixed;
  t.fixed_doc_time = doc_time;
  t.fixed_interview_time = interview_time;
  t.acceptance = acceptance;
  return run(inst, options, t);
}

SolveResult solve_mean_value(const Instance& inst, const SolveOptions& options) {
  Treatment t;
  t.time = Treatment::Time::Mean;
  Eigen::VectorXd accept(inst.jobs());
  for (int j = 0; j < inst.jobs(); ++j)
    accept[j] = inst.stochastic[static_cast<std::size_t>(j)].acceptance_rate.mean();
  t.acceptance = accept;
  return run(inst, options, t);
}

}  // namespace talentplan::pipeline
