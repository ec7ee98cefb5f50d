#include "talentplan/report.hpp"

#include <cmath>
#include <functional>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace talentplan::io {

double round_half_up(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::floor(value * scale + 0.5) / scale;
}

namespace {

std::string fmt(double v, int decimals) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(decimals) << round_half_up(v, decimals);
  return os.str();
}

std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void job_table(std::ostringstream& os, const Instance& inst, const std::string& title,
               const std::function<double(int, int)>& cell, int decimals) {
  os << title << "\n";
  os << std::left << std::setw(18) << "job";
  for (int t = 0; t < inst.periods(); ++t) os << std::right << std::setw(10) << ("t" + std::to_string(t + 1));
  os << "\n";
  for (int j = 0; j < inst.jobs(); ++j) {
    os << std::left << std::setw(18) << inst.job_name(j);
    for (int t = 0; t < inst.periods(); ++t)
      os << std::right << std::setw(10) << fmt(cell(j, t), decimals);
    os << "\n";
  }
  os << "\n";
}

}  // namespace

std::string format_run_report(const Instance& inst, const pipeline::SolveResult& result) {
  std::ostringstream os;
  if (!result.has_plan) {
    os << "no plan available (status "
       << (result.status == milp::MilpStatus::Infeasible ? "infeasible" : "limit reached")
       << ")\n";
    return os.str();
  }
  const Plan& plan = result.plan;

  os << "applications per channel (rounded to persons)\n";
  for (int i = 0; i < inst.channels(); ++i) {
    os << "  " << inst.channel_name(i) << "\n";
    for (int j = 0; j < inst.jobs(); ++j) {
      os << "    " << std::left << std::setw(16) << inst.job_name(j);
      for (int t = 0; t < inst.periods(); ++t)
        os << std::right << std::setw(8)
           << fmt(plan.applications[static_cast<std::size_t>(t)](i, j), 0);
      os << "\n";
    }
  }
  os << "\n";

  os << "interview rates per channel\n";
  for (int i = 0; i < inst.channels(); ++i) {
    os << "  " << inst.channel_name(i) << "\n";
    for (int j = 0; j < inst.jobs(); ++j) {
      os << "    " << std::left << std::setw(16) << inst.job_name(j);
      for (int t = 0; t < inst.periods(); ++t)
        os << std::right << std::setw(8)
           << fmt(plan.interview_rate[static_cast<std::size_t>(t)](i, j), 3);
      os << "\n";
    }
  }
  os << "\n";

  job_table(os, inst, "attrition rate", [&](int j, int t) { return plan.attrition_rate(j, t); },
            3);
  job_table(os, inst, "growth rate", [&](int j, int t) { return plan.growth_rate(j, t); }, 3);
  job_table(os, inst, "offer rate", [&](int j, int t) { return plan.offer_rate(j, t); }, 3);
  job_table(os, inst, "hired", [&](int j, int t) { return plan.hired(j, t); }, 0);
  job_table(os, inst, "hires needed", [&](int j, int t) { return plan.hires_needed(j, t); }, 0);
  job_table(os, inst, "headcount at period end",
            [&](int j, int t) { return plan.end_headcount(j, t); }, 0);

  os << "advancement rates (from -> to, nonzero only)\n";
  bool any = false;
  for (int t = 0; t < inst.periods(); ++t)
    for (int a = 0; a < inst.jobs(); ++a)
      for (int b = 0; b < inst.jobs(); ++b) {
        const double v = plan.advancement_rate[static_cast<std::size_t>(t)](a, b);
        if (v > 5e-4) {
          os << "  t" << t + 1 << "  " << inst.job_name(a) << " -> " << inst.job_name(b) << ": "
             << fmt(v, 3) << "\n";
          any = true;
        }
      }
  if (!any) os << "  none\n";
  os << "\n";

  double total_annual = 0.0;
  os << "profit per hour by period\n";
  for (int t = 0; t < inst.periods(); ++t) {
    const double annual = result.period_profit[t] * kHoursPerYear;
    total_annual += annual;
    os << "  t" << t + 1 << ": " << fmt(result.period_profit[t], 2) << "  (annualized "
       << fmt(annual, 0) << ")\n";
  }
  os << "average profit per hour: " << fmt(result.objective, 2) << "\n";
  os << "annualized total over the horizon: " << fmt(total_annual, 0) << "\n";
  if (result.scenario_satisfied.size() > 0) {
    os << "time-budget scenarios satisfied per period (required "
       << result.scenario_required << "):";
    for (int t = 0; t < result.scenario_satisfied.size(); ++t)
      os << " " << result.scenario_satisfied[t];
    os << "\n";
  }
  return os.str();
}

nlohmann::json run_report_json(const Instance& inst, const pipeline::SolveResult& result,
                               const pipeline::SolveOptions& options) {
  nlohmann::json doc;
  doc["status"] = result.status == milp::MilpStatus::Optimal      ? "optimal"
                  : result.status == milp::MilpStatus::Infeasible ? "infeasible"
                  : result.status == milp::MilpStatus::GapLimit   ? "gap_limit"
                                                                  : "node_limit";
  doc["nodes"] = result.nodes;  // timings stay out so equal runs write equal reports
  doc["best_bound"] = result.best_bound;
  doc["provenance"] = {
      {"seed", static_cast<long long>(options.seed.value_or(inst.config.rng_seed))},
      {"alpha1", options.alpha1.value_or(inst.config.alpha1)},
      {"alpha2", options.alpha2.value_or(inst.config.alpha2)},
      {"scenarios", options.scenario_count.value_or(inst.config.sample_size)},
      {"relative_gap", options.limits.rel_gap},
      {"node_limit", options.limits.max_nodes},
  };
  if (!result.has_plan) return doc;

  doc["objective"] = result.objective;
  std::vector<double> profits, annual;
  for (int t = 0; t < inst.periods(); ++t) {
    profits.push_back(result.period_profit[t]);
    annual.push_back(result.period_profit[t] * kHoursPerYear);
  }
  doc["period_profit_per_hour"] = profits;
  doc["period_profit_annualized"] = annual;
  doc["annualized_total"] =
      result.period_profit.sum() * kHoursPerYear;

  const Plan& p = result.plan;
  auto matrix = [](const Eigen::MatrixXd& m) {
    std::vector<std::vector<double>> out;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      std::vector<double> row;
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
      out.push_back(row);
    }
    return out;
  };
  nlohmann::json plan;
  for (int t = 0; t < inst.periods(); ++t) {
    plan["applications"].push_back(matrix(p.applications[static_cast<std::size_t>(t)]));
    plan["interview_rate"].push_back(matrix(p.interview_rate[static_cast<std::size_t>(t)]));
    plan["advancement_rate"].push_back(matrix(p.advancement_rate[static_cast<std::size_t>(t)]));
  }
  plan["offer_rate"] = matrix(p.offer_rate.matrix());
  plan["attrition_rate"] = matrix(p.attrition_rate.matrix());
  plan["growth_rate"] = matrix(p.growth_rate.matrix());
  plan["end_headcount"] = matrix(p.end_headcount.matrix());
  plan["headcount"] = matrix(p.headcount.matrix());
  plan["hired"] = matrix(p.hired.matrix());
  plan["hires_needed"] = matrix(p.hires_needed.matrix());
  plan["shortage_flag"] = matrix(p.shortage_flag.matrix());
  doc["plan"] = plan;

  if (result.scenario_satisfied.size() > 0) {
    std::vector<int> sat;
    for (int t = 0; t < result.scenario_satisfied.size(); ++t)
      sat.push_back(result.scenario_satisfied[t]);
    doc["scenario_satisfied"] = sat;
    doc["scenario_required"] = result.scenario_required;
  }
  return doc;
}

void write_zeta_csv(const std::string& path, const analysis::StochasticRunReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_zeta_csv: cannot open " + path);
  out << "l,zeta,ws,vrp\n";
  for (Eigen::Index l = 0; l < report.zeta.size(); ++l) {
    out << (l + 1) << ",";
    if (std::isnan(report.zeta[l]))
      out << "failed";
    else
      out << full(report.zeta[l]);
    out << ",,\n";
  }
  out << "summary,," << full(report.ws) << "," << full(report.vrp) << "\n";
}

std::string axis_name(analysis::SweepAxis axis) {
  switch (axis) {
    case analysis::SweepAxis::Alpha1:
      return "alpha1";
    case analysis::SweepAxis::Alpha2:
      return "alpha2";
    case analysis::SweepAxis::MeanScaleDocTime:
      return "mean_scale_doc_time";
    case analysis::SweepAxis::MeanScaleInterviewTime:
      return "mean_scale_interview_time";
    case analysis::SweepAxis::MeanScaleAcceptance:
      return "mean_scale_acceptance";
  }
  return "unknown";
}

void write_sensitivity_csv(const std::string& path, const analysis::SensitivityGrid& grid) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_sensitivity_csv: cannot open " + path);
  out << axis_name(grid.axis) << ",average";
  for (Eigen::Index t = 0; t < grid.period_profit.cols(); ++t) out << ",period" << (t + 1);
  out << "\n";
  for (Eigen::Index k = 0; k < grid.points.size(); ++k) {
    out << full(grid.points[k]) << ",";
    if (!grid.solved[static_cast<std::size_t>(k)]) {
      out << "failed";
      for (Eigen::Index t = 0; t < grid.period_profit.cols(); ++t) out << ",";
    } else {
      out << full(grid.average[k]);
      for (Eigen::Index t = 0; t < grid.period_profit.cols(); ++t)
        out << "," << full(grid.period_profit(k, t));
    }
    out << "\n";
  }
}

}  // namespace talentplan::io
