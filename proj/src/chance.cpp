#include "talentplan/chance.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "talentplan/distribution.hpp"

namespace talentplan::chance {

namespace {

// Stream identifiers keep each (parameter, job) series independent.
enum : std::uint64_t { kDocStream = 1, kInterviewStream = 2, kAcceptStream = 3 };

std::uint64_t stream_id(std::uint64_t param, int job, int jobs) {
  return param * static_cast<std::uint64_t>(jobs) + static_cast<std::uint64_t>(job) + 1;
}

double entry_bound(const lin::MilpModel& m, const std::vector<lin::RowEntry>& entries) {
  double total = 0.0;
  for (const auto& e : entries) {
    const auto& v = m.vars[static_cast<std::size_t>(e.col)];
    const double b = e.coef >= 0.0 ? v.ub : v.lb;
    total += e.coef * b;
  }
  return total;
}

}  // namespace

Eigen::VectorXd acceptance_quantiles(const Instance& inst, double alpha1) {
  if (!(alpha1 > 0.0 && alpha1 < 1.0))
    throw std::domain_error("acceptance_quantiles: alpha1 outside (0,1)");
  Eigen::VectorXd q(inst.jobs());
  for (int j = 0; j < inst.jobs(); ++j)
    q[j] = inst.stochastic[static_cast<std::size_t>(j)].acceptance_rate.quantile(1.0 - alpha1);
  return q;
}

void apply_acceptance(lin::MilpModel& m, const Eigen::VectorXd& rate_per_job) {
  for (const auto& tpl : m.accept_templates) {
    const double q = rate_per_job[tpl.job];
    auto& row = m.add_row(
        "accept[j=" + std::to_string(tpl.job) + ",t=" + std::to_string(tpl.period) + "]",
        -lin::kInf, 0.0, "family 17");
    row.entries.push_back({tpl.hired_col, 1.0});
    for (const auto& e : tpl.accepted)
      if (q * e.coef != 0.0) row.entries.push_back({e.col, -q * e.coef});
  }
  m.accept_templates.clear();
}

ScenarioSet generate_scenarios(const Instance& inst, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("generate_scenarios: count must be >= 1");
  ScenarioSet s;
  s.count = count;
  s.seed = seed;
  const int n = inst.jobs();
  s.doc_time.resize(count, n);
  s.interview_time.resize(count, n);
  s.acceptance.resize(count, n);
  for (int j = 0; j < n; ++j) {
    const auto& spec = inst.stochastic[static_cast<std::size_t>(j)];
    for (int l = 0; l < count; ++l) {
      s.doc_time(l, j) = spec.doc_time.quantile(
          dist::uniform01(seed, stream_id(kDocStream, j, n), static_cast<std::uint64_t>(l)));
      s.interview_time(l, j) = spec.interview_time.quantile(dist::uniform01(
          seed, stream_id(kInterviewStream, j, n), static_cast<std::uint64_t>(l)));
      s.acceptance(l, j) = spec.acceptance_rate.quantile(dist::uniform01(
          seed, stream_id(kAcceptStream, j, n), static_cast<std::uint64_t>(l)));
    }
  }
  return s;
}

void apply_time_fixed(lin::MilpModel& m, const Eigen::VectorXd& doc_time,
                      const Eigen::VectorXd& interview_time) {
  for (const auto& tpl : m.time_templates) {
    auto& row = m.add_row("time[t=" + std::to_string(tpl.period) + "]", -lin::kInf, tpl.budget,
                          "family 12");
    std::map<int, double> acc;
    for (std::size_t j = 0; j < tpl.doc_terms.size(); ++j) {
      for (const auto& e : tpl.doc_terms[j]) acc[e.col] += doc_time[static_cast<int>(j)] * e.coef;
      for (const auto& e : tpl.interview_terms[j])
        acc[e.col] += interview_time[static_cast<int>(j)] * e.coef;
    }
    for (const auto& [col, coef] : acc)
      if (coef != 0.0) row.entries.push_back({col, coef});
  }
  m.time_templates.clear();
}

void apply_time_normal(lin::MilpModel& m, const Instance& inst, double alpha2) {
  if (!(alpha2 > 0.0 && alpha2 < 1.0))
    throw std::domain_error("apply_time_normal: alpha2 outside (0,1)");
  for (int j = 0; j < inst.jobs(); ++j) {
    const auto& spec = inst.stochastic[static_cast<std::size_t>(j)];
    if (spec.doc_time.kind != dist::Kind::Normal ||
        spec.interview_time.kind != dist::Kind::Normal)
      throw std::invalid_argument(
          "apply_time_normal: closed form requires normal time parameters");
  }
  const double kappa = dist::standard_normal_quantile(alpha2);
  for (const auto& tpl : m.time_templates) {
    // Conservative deviation: variances weighted by the largest attainable
    // application volume per job.
    double var_max = 0.0;
    std::map<int, double> acc;
    for (std::size_t j = 0; j < tpl.doc_terms.size(); ++j) {
      const auto& spec = inst.stochastic[j];
      for (const auto& e : tpl.doc_terms[j]) acc[e.col] += spec.doc_time.mu * e.coef;
      for (const auto& e : tpl.interview_terms[j])
        acc[e.col] += spec.interview_time.mu * e.coef;
      const double volume = entry_bound(m, tpl.doc_terms[j]);
      var_max += (spec.doc_time.variance() + spec.interview_time.variance()) * volume;
    }
    const double sigma_max = std::sqrt(std::max(0.0, var_max));
    auto& row = m.add_row("time_cf[t=" + std::to_string(tpl.period) + "]", -lin::kInf,
                          tpl.budget - kappa * sigma_max, "family 12");
    for (const auto& [col, coef] : acc)
      if (coef != 0.0) row.entries.push_back({col, coef});
  }
  m.time_templates.clear();
}

int required_scenarios(double alpha, int n) {
  return static_cast<int>(std::ceil(alpha * static_cast<double>(n) - 1e-9));
}

ScenarioIndicators apply_time_scenarios(lin::MilpModel& m, const ScenarioSet& scenarios,
                                        double alpha2) {
  ScenarioIndicators out;
  const int required = required_scenarios(alpha2, scenarios.count);
  for (const auto& tpl : m.time_templates) {
    std::vector<int> cols;
    cols.reserve(static_cast<std::size_t>(scenarios.count));
    auto& card = m.add_row("time_card[t=" + std::to_string(tpl.period) + "]",
                           static_cast<double>(required), lin::kInf, "family 12");
    const int card_row = m.num_rows() - 1;
    for (int l = 0; l < scenarios.count; ++l) {
      const int s = m.add_var(
          "S" + std::to_string(tpl.period) + "_" + std::to_string(l), model::VarKind::Binary,
          0.0, 1.0, "scenario_flag:t" + std::to_string(tpl.period));
      cols.push_back(s);
      m.rows[static_cast<std::size_t>(card_row)].entries.push_back({s, 1.0});

      std::map<int, double> acc;
      double load_max = 0.0, load_floor = 0.0;
      for (std::size_t j = 0; j < tpl.doc_terms.size(); ++j) {
        const double k = scenarios.doc_time(l, static_cast<int>(j));
        const double kbar = scenarios.interview_time(l, static_cast<int>(j));
        for (const auto& e : tpl.doc_terms[j]) acc[e.col] += k * e.coef;
        for (const auto& e : tpl.interview_terms[j]) acc[e.col] += kbar * e.coef;
        load_max += (k + kbar) * entry_bound(m, tpl.doc_terms[j]);
        // every job collects at least one applicant, so each scenario load is
        // at least the summed per-applicant review time
        load_floor += k;
      }
      if (!std::isfinite(load_max))
        throw std::invalid_argument("apply_time_scenarios: unbounded scenario load");
      if (load_floor > tpl.budget) {
        // this scenario can never fit the budget; pin its flag
        m.vars[static_cast<std::size_t>(s)].ub = 0.0;
        continue;
      }
      const double big_m = std::max(0.0, load_max - tpl.budget) + 1.0;
      auto& row = m.add_row(
          "time_s[t=" + std::to_string(tpl.period) + ",l=" + std::to_string(l) + "]", -lin::kInf,
          tpl.budget + big_m, "family 12");
      for (const auto& [col, coef] : acc)
        if (coef != 0.0) row.entries.push_back({col, coef});
      row.entries.push_back({s, big_m});
    }
    out.satisfied_cols.push_back(std::move(cols));
    out.required.push_back(required);
  }
  m.time_templates.clear();
  return out;
}

Eigen::VectorXi count_time_satisfied(const Instance& inst, const Plan& plan,
                                     const ScenarioSet& scenarios) {
  Eigen::VectorXi counts = Eigen::VectorXi::Zero(inst.periods());
  for (int t = 0; t < inst.periods(); ++t) {
    const auto ts = static_cast<std::size_t>(t);
    for (int l = 0; l < scenarios.count; ++l) {
      double load = 0.0;
      for (int j = 0; j < inst.jobs(); ++j)
        for (int i = 0; i < inst.channels(); ++i) {
          const double a = plan.applications[ts](i, j);
          const double x = plan.interview_rate[ts](i, j);
          load += (scenarios.doc_time(l, j) + scenarios.interview_time(l, j) * x) * a;
        }
      if (load <= inst.config.recruit_time_budget[t] + 1e-6) ++counts[t];
    }
  }
  return counts;
}

}  // namespace talentplan::chance
