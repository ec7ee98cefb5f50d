#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "talentplan/distribution.hpp"

namespace talentplan {

struct Horizon {
  int channels = 0;  // recruitment channels, index i
  int jobs = 0;      // job positions, index j
  int periods = 0;   // planning periods, index t
};

/// Distributions of the per-job uncertain parameters.
struct StochasticSpec {
  dist::Distribution doc_time;         // hours per applicant for document review
  dist::Distribution interview_time;   // hours per interviewee
  dist::Distribution acceptance_rate;  // fraction of offers accepted, support in [0,1]
};

struct Config {
  double epsilon = 1e-3;                 // activation threshold for interview/offer rates
  double big_m = 1e4;                    // deactivation constant for the rate couplings
  Eigen::VectorXd recruit_time_budget;   // person-hours per period
  double alpha1 = 0.7;                   // confidence level on the acceptance constraint
  double alpha2 = 0.95;                  // confidence level on the time-budget constraint
  int sample_size = 60;                  // default scenario count
  std::uint64_t rng_seed = 1;
};

/// Cap on per-period headcount changes: either a fixed person count per
/// (job, period) or a fraction of the current headcount.
enum class ChangeCapMode { Constant, FractionOfCurrent };

/// All deterministic and stochastic inputs of one planning problem.
/// Job-indexed arrays are jobs x periods; channel-indexed arrays are
/// channels x periods.
struct Instance {
  Horizon horizon;
  std::vector<std::string> job_names;      // optional, sized jobs or empty
  std::vector<std::string> channel_names;  // optional, sized channels or empty

  Eigen::VectorXd initial_headcount;   // per job, integral and >= 0
  Eigen::ArrayXXd excess_cost;         // cost/hour of surplus hires
  Eigen::ArrayXXd shortage_cost;       // cost/hour of missing hires
  Eigen::ArrayXXd max_applications;    // cap on applicants per job over all channels
  Eigen::ArrayXXd job_interview_cap;   // cap on the summed interview rate per job
  Eigen::ArrayXXd max_offer_rate;      // cap on the offer rate per job
  Eigen::ArrayXXd max_growth;          // cap on the growth rate per job
  Eigen::ArrayXXd revenue;             // revenue/hour per employee
  Eigen::ArrayXXd salary;              // salary/hour per employee
  Eigen::ArrayXXd interview_cost;      // cost/hour of interviewing

  ChangeCapMode change_cap_mode = ChangeCapMode::Constant;
  Eigen::ArrayXXd change_cap;          // persons, used in Constant mode
  double change_cap_fraction = 0.0;    // rho, used in FractionOfCurrent mode

  Eigen::ArrayXXd channel_capacity;       // applicants per channel
  Eigen::ArrayXXd channel_interview_cap;  // summed interview rate per channel
  Eigen::VectorXd channel_weight;         // relative closeness w_i in (0,1]

  Eigen::MatrixXi transfer;  // jobs x jobs promotion adjacency; diagonal ignored

  std::vector<StochasticSpec> stochastic;  // per job

  Config config;

  int channels() const { return horizon.channels; }
  int jobs() const { return horizon.jobs; }
  int periods() const { return horizon.periods; }

  std::string job_name(int j) const;
  std::string channel_name(int i) const;

  /// Resolved change cap for (j, t) given the current headcount c.
  double change_cap_at(int j, int t, double c) const;

  /// Directed promotion arcs (from, to) with transfer(from, to) == 1, ordered
  /// lexicographically. The diagonal is never included.
  std::vector<std::pair<int, int>> transfer_arcs() const;
};

struct Violation {
  std::string field;    // e.g. "channel_interview_cap"
  std::string index;    // e.g. "[i=1,t=2]"
  std::string message;  // rule that was broken
};

/// Checks every structural invariant and dimension against the horizon.
/// Returns an empty list exactly when the instance is well formed.
std::vector<Violation> validate_instance(const Instance& instance);

}  // namespace talentplan
