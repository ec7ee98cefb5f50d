#include "talentplan/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace talentplan::analysis {

namespace {

bool solved(const pipeline::SolveResult& r) {
  return r.has_plan && (r.status == milp::MilpStatus::Optimal ||
                        r.status == milp::MilpStatus::GapLimit ||
                        r.status == milp::MilpStatus::NodeLimit);
}

}  // namespace

WaitAndSeeResult wait_and_see(const Instance& inst, int realizations, std::uint64_t seed,
                              const pipeline::SolveOptions& options, bool realize_acceptance) {
  if (realizations < 1) throw std::invalid_argument("wait_and_see: need at least 1 realization");
  const auto scenarios = chance::generate_scenarios(inst, realizations, seed);
  WaitAndSeeResult out;
  out.zeta.resize(realizations);
  double total = 0.0;
  int count = 0;
  for (int l = 0; l < realizations; ++l) {
    std::optional<Eigen::VectorXd> accept;
    if (realize_acceptance) accept = scenarios.acceptance.row(l).transpose().matrix();
    const auto result = pipeline::solve_with_realization(
        inst, scenarios.doc_time.row(l).transpose().matrix(),
        scenarios.interview_time.row(l).transpose().matrix(), accept, options);
    if (solved(result)) {
      out.zeta[l] = result.objective;
      total += result.objective;
      ++count;
    } else {
      out.zeta[l] = std::numeric_limits<double>::quiet_NaN();
      out.failed.push_back(l);
    }
  }
  out.all_solved = out.failed.empty();
  out.ws = count > 0 ? total / count : std::numeric_limits<double>::quiet_NaN();
  return out;
}

double mean_value_problem(const Instance& inst, const pipeline::SolveOptions& options) {
  const auto result = pipeline::solve_mean_value(inst, options);
  if (!solved(result)) throw std::runtime_error("mean_value_problem: solve failed");
  return result.objective;
}

double evpi(double vrp, double ws) { return vrp - ws; }

StochasticRunReport stochastic_report(const Instance& inst, int realizations, std::uint64_t seed,
                                      const pipeline::SolveOptions& options) {
  StochasticRunReport rep;
  const auto vrp_run = pipeline::solve_instance(inst, options);
  if (!solved(vrp_run)) throw std::runtime_error("stochastic_report: chance-constrained solve failed");
  rep.vrp = vrp_run.objective;
  rep.scenario_satisfied = vrp_run.scenario_satisfied;
  rep.scenario_required = vrp_run.scenario_required;

  const auto ws_run = wait_and_see(inst, realizations, seed, options);
  rep.zeta = ws_run.zeta;
  rep.ws = ws_run.ws;
  rep.failed_cells = ws_run.failed;

  rep.eev = mean_value_problem(inst, options);
  rep.evpi = evpi(rep.vrp, rep.ws);
  return rep;
}

dist::Distribution scale_distribution_mean(const dist::Distribution& d, double factor,
                                           bool clip_to_unit) {
  using dist::Kind;
  dist::Distribution out = d;
  switch (d.kind) {
    case Kind::Uniform: {
      const double shift = (factor - 1.0) * d.mean();
      out.a = d.a + shift;
      out.b = d.b + shift;
      if (clip_to_unit) {
        out.a = std::clamp(out.a, 0.0, 1.0);
        out.b = std::clamp(out.b, 0.0, 1.0);
        if (out.b - out.a < 1e-9) out.a = std::max(0.0, out.b - 1e-9);
      }
      break;
    }
    case Kind::Exponential:
      out.rate = d.rate / factor;
      break;
    case Kind::Lognormal:
      out.mu = d.mu + std::log(factor);
      break;
    case Kind::Normal:
      out.mu = d.mu * factor;
      break;
  }
  return out;
}

Instance scale_mean(const Instance& inst, SweepAxis axis, double factor) {
  Instance out = inst;
  for (int j = 0; j < inst.jobs(); ++j) {
    auto& spec = out.stochastic[static_cast<std::size_t>(j)];
    switch (axis) {
      case SweepAxis::MeanScaleDocTime:
        spec.doc_time = scale_distribution_mean(spec.doc_time, factor, false);
        break;
      case SweepAxis::MeanScaleInterviewTime:
        spec.interview_time = scale_distribution_mean(spec.interview_time, factor, false);
        break;
      case SweepAxis::MeanScaleAcceptance:
        spec.acceptance_rate = scale_distribution_mean(spec.acceptance_rate, factor, true);
        break;
      default:
        throw std::invalid_argument("scale_mean: axis is not a mean-scaling axis");
    }
  }
  return out;
}

SensitivityGrid sensitivity_sweep(const Instance& inst, SweepAxis axis,
                                  const Eigen::VectorXd& points,
                                  const pipeline::SolveOptions& options) {
  for (int k = 1; k < points.size(); ++k)
    if (!(points[k] > points[k - 1]))
      throw std::invalid_argument("sensitivity_sweep: points must be strictly increasing");

  SensitivityGrid grid;
  grid.axis = axis;
  grid.points = points;
  grid.period_profit.resize(points.size(), inst.periods());
  grid.average.resize(points.size());
  grid.solved.assign(static_cast<std::size_t>(points.size()), 0);

  // Raising a confidence level or a time mean shrinks the feasible region;
  // raising the acceptance mean widens it. Cells run from the tightest to
  // the loosest so each solution can seed the next cell's incumbent, which
  // keeps the reported grid monotone even under node or gap limits.
  const bool ascending = axis == SweepAxis::MeanScaleAcceptance;  // first point is tightest
  std::vector<int> order(static_cast<std::size_t>(points.size()));
  for (std::size_t k = 0; k < order.size(); ++k)
    order[k] = ascending ? static_cast<int>(k) : static_cast<int>(order.size() - 1 - k);

  std::optional<Plan> chain;
  for (int k : order) {
    const double value = points[k];
    Instance cell_inst = inst;
    pipeline::SolveOptions cell_opts = options;
    cell_opts.warm_plan = chain;
    switch (axis) {
      case SweepAxis::Alpha1:
        cell_opts.alpha1 = value;
        break;
      case SweepAxis::Alpha2:
        cell_opts.alpha2 = value;
        break;
      default:
        cell_inst = scale_mean(inst, axis, value);
        break;
    }
    pipeline::SolveResult result;
    bool ok = true;
    try {
      result = pipeline::solve_instance(cell_inst, cell_opts);
    } catch (const std::exception&) {
      ok = false;
    }
    if (ok && solved(result)) {
      grid.solved[static_cast<std::size_t>(k)] = 1;
      grid.average[k] = result.objective;
      grid.period_profit.row(k) = result.period_profit.transpose();
      chain = result.plan;
    } else {
      grid.average[k] = std::numeric_limits<double>::quiet_NaN();
      grid.period_profit.row(k).setConstant(std::numeric_limits<double>::quiet_NaN());
    }
  }
  return grid;
}

}  // namespace talentplan::analysis
