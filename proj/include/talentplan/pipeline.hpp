#pragma once

#include <optional>

#include "talentplan/branch_and_bound.hpp"
#include "talentplan/chance.hpp"
#include "talentplan/instance.hpp"
#include "talentplan/linearizer.hpp"
#include "talentplan/plan.hpp"

namespace talentplan::pipeline {

struct SolveOptions {
  chance::TimeMode time_mode = chance::TimeMode::Scenario;
  std::optional<double> alpha1;          // instance config when unset
  std::optional<double> alpha2;
  std::optional<int> scenario_count;
  std::optional<std::uint64_t> seed;
  milp::Limits limits;
  /// Feasible plan used to seed the incumbent (falls back to the built-in
  /// baseline when absent or not liftable into the final model).
  std::optional<Plan> warm_plan;
};

/// How the two uncertain restrictions are instantiated for one solve.
struct Treatment {
  enum class Time { Chance, Fixed, Mean };
  Time time = Time::Chance;  // Chance follows SolveOptions::time_mode
  Eigen::VectorXd fixed_doc_time, fixed_interview_time;  // for Time::Fixed
  /// Per-job acceptance multiplier override (realized draw or mean);
  /// the alpha1 quantile when unset.
  std::optional<Eigen::VectorXd> acceptance;
};

struct BuildOutput {
  lin::MilpModel model;
  lin::ExpansionMap expansion;
  model::VariableCatalog catalog;
  model::Bounds bounds;
  std::optional<chance::ScenarioSet> scenarios;          // scenario treatment only
  std::optional<chance::ScenarioIndicators> indicators;  // scenario treatment only
};

/// topsis weights are already part of the instance here; this runs
/// model -> reformulation -> chance treatment and returns the solvable MILP.
BuildOutput build_final_milp(const Instance& inst, const SolveOptions& options,
                             const Treatment& treatment = {});

struct SolveResult {
  milp::MilpStatus status = milp::MilpStatus::Infeasible;
  bool has_plan = false;
  Plan plan;
  double objective = 0.0;      // solver objective at the incumbent
  double best_bound = 0.0;
  long nodes = 0;
  double wall_seconds = 0.0;
  Eigen::VectorXd period_profit;        // from the extracted plan
  Eigen::VectorXi scenario_satisfied;   // per period, scenario treatment only
  int scenario_required = 0;
};

/// Full chance-constrained run (the stochastic program's solution).
SolveResult solve_instance(const Instance& inst, const SolveOptions& options);

/// Deterministic run at fixed time draws; acceptance uses the given draws
/// when provided, else the alpha1 quantiles.
SolveResult solve_with_realization(const Instance& inst, const Eigen::VectorXd& doc_time,
                                   const Eigen::VectorXd& interview_time,
                                   const std::optional<Eigen::VectorXd>& acceptance,
                                   const SolveOptions& options);

/// Deterministic run with every stochastic parameter at its mean.
SolveResult solve_mean_value(const Instance& inst, const SolveOptions& options);

/// Reads the plan variables out of a solver point (original catalog columns).
Plan extract_plan(const Instance& inst, const model::VariableCatalog& catalog,
                  const Eigen::VectorXd& x);

/// A do-nothing staffing plan: one applicant per job and period through the
/// widest channel, activation-level interview and offer rates, no hires, no
/// turnover. Feasible for any instance whose time budget admits it.
Plan baseline_plan(const Instance& inst);

/// Extends a feasible plan to a complete point of the built model: binary
/// digits, product and piecewise auxiliaries, mismatch variables and scenario
/// flags. Returns nothing when the extension fails the model's rows (for
/// example when the plan misses the scenario quorum).
std::optional<Eigen::VectorXd> lift_plan(const Instance& inst, const BuildOutput& built,
                                         const Plan& plan);

}  // namespace talentplan::pipeline
