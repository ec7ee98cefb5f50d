#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "talentplan/instance.hpp"
#include "talentplan/milp_model.hpp"
#include "talentplan/plan.hpp"

namespace talentplan::chance {

/// How the probabilistic time-budget restriction is made solvable.
enum class TimeMode {
  NormalClosedForm,  // valid only for normal, independent time parameters
  Scenario,          // sampled reformulation with indicator binaries
};

struct ChanceSpec {
  TimeMode time_mode = TimeMode::Scenario;
  double alpha1 = 0.7;
  double alpha2 = 0.95;
  int scenario_count = 60;
  std::uint64_t seed = 1;
};

/// Joint draws of the uncertain parameters, one row per scenario. Every cell
/// is a pure function of (seed, scenario index, parameter, job).
struct ScenarioSet {
  int count = 0;
  std::uint64_t seed = 0;
  Eigen::ArrayXXd doc_time;        // count x jobs
  Eigen::ArrayXXd interview_time;  // count x jobs
  Eigen::ArrayXXd acceptance;      // count x jobs
};

/// q_j = F_j^{-1}(1 - alpha1) for the per-job acceptance-rate distribution;
/// the hiring cap becomes hired <= q_j * accepted-sum.
Eigen::VectorXd acceptance_quantiles(const Instance& inst, double alpha1);

/// Instantiates every pending acceptance template with the given per-job
/// multiplier (a quantile, a mean, or a realized draw).
void apply_acceptance(lin::MilpModel& m, const Eigen::VectorXd& rate_per_job);

ScenarioSet generate_scenarios(const Instance& inst, int count, std::uint64_t seed);

/// Instantiates the time templates at fixed per-job time values (means or a
/// realized draw): one deterministic row per period.
void apply_time_fixed(lin::MilpModel& m, const Eigen::VectorXd& doc_time,
                      const Eigen::VectorXd& interview_time);

/// Closed-form treatment for normal, independent time parameters: mean load
/// plus the alpha2 normal quantile times a worst-case standard deviation must
/// fit the budget. Conservative in the deviation term. Throws when any time
/// distribution is not normal.
void apply_time_normal(lin::MilpModel& m, const Instance& inst, double alpha2);

struct ScenarioIndicators {
  std::vector<std::vector<int>> satisfied_cols;  // per period, per scenario
  std::vector<int> required;                     // per period: ceil(alpha2 * count)
};

/// Sampled reformulation: per (period, scenario) the realized load must fit
/// the budget unless that scenario's indicator is off, and per period at
/// least ceil(alpha2 * N) indicators must be on.
ScenarioIndicators apply_time_scenarios(lin::MilpModel& m, const ScenarioSet& scenarios,
                                        double alpha2);

/// Fixed-point-safe ceil(alpha * n).
int required_scenarios(double alpha, int n);

/// Per-period count of scenarios whose realized load fits the budget under
/// the plan (direct evaluation, independent of the solver).
Eigen::VectorXi count_time_satisfied(const Instance& inst, const Plan& plan,
                                     const ScenarioSet& scenarios);

}  // namespace talentplan::chance
