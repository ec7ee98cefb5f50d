#pragma once

#include <vector>

#include "talentplan/pipeline.hpp"

namespace talentplan::analysis {

struct WaitAndSeeResult {
  Eigen::ArrayXd zeta;           // objective per realization; NaN for failed cells
  double ws = 0.0;               // mean over solved cells
  std::vector<int> failed;       // realization indices whose solve failed
  bool all_solved = false;
};

/// Solves one deterministic problem per joint realization of the uncertain
/// parameters and averages the optima. realize_acceptance controls whether
/// the acceptance rate is revealed too (default) or kept at its quantile.
WaitAndSeeResult wait_and_see(const Instance& inst, int realizations, std::uint64_t seed,
                              const pipeline::SolveOptions& options,
                              bool realize_acceptance = true);

/// Optimum with every stochastic parameter replaced by its mean.
double mean_value_problem(const Instance& inst, const pipeline::SolveOptions& options);

/// Difference between the stochastic program's optimum and the wait-and-see
/// mean, reported as-is (no sign clamp).
double evpi(double vrp, double ws);

struct StochasticRunReport {
  Eigen::ArrayXd zeta;
  double ws = 0.0;
  double vrp = 0.0;
  double eev = 0.0;
  double evpi = 0.0;
  Eigen::VectorXi scenario_satisfied;  // per period, from the VRP run
  int scenario_required = 0;
  std::vector<int> failed_cells;
};

/// VRP + wait-and-see + mean-value problem in one pass.
StochasticRunReport stochastic_report(const Instance& inst, int realizations, std::uint64_t seed,
                                      const pipeline::SolveOptions& options);

enum class SweepAxis {
  Alpha1,
  Alpha2,
  MeanScaleDocTime,
  MeanScaleInterviewTime,
  MeanScaleAcceptance,
};

struct SensitivityGrid {
  SweepAxis axis = SweepAxis::Alpha1;
  Eigen::VectorXd points;        // strictly increasing
  Eigen::MatrixXd period_profit; // points x periods
  Eigen::VectorXd average;       // per point; NaN when unsolved
  std::vector<char> solved;      // per point
};

/// One full chance-constrained solve per grid point. Mean scaling preserves
/// the distribution family: uniforms shift, exponentials rescale the rate,
/// lognormals shift the location, normals scale the mean.
SensitivityGrid sensitivity_sweep(const Instance& inst, SweepAxis axis,
                                  const Eigen::VectorXd& points,
                                  const pipeline::SolveOptions& options);

/// The instance with the chosen stochastic family's mean multiplied by
/// factor; acceptance-rate supports are clipped to [0,1].
Instance scale_mean(const Instance& inst, SweepAxis axis, double factor);

/// Family-preserving mean scaling of one distribution.
dist::Distribution scale_distribution_mean(const dist::Distribution& d, double factor,
                                           bool clip_to_unit);

}  // namespace talentplan::analysis
