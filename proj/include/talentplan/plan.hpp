#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "talentplan/instance.hpp"

namespace talentplan {

/// A full staffing decision over the horizon. Headcount-like fields hold real
/// numbers; rounding happens only when reports are formatted.
struct Plan {
  // Per period, channels x jobs.
  std::vector<Eigen::MatrixXd> applications;    // A, integral persons
  std::vector<Eigen::MatrixXd> interview_rate;  // X, fractions

  // Per period, jobs x jobs; (from, to) entries, nonzero only on transfer arcs.
  std::vector<Eigen::MatrixXd> advancement_rate;  // V

  // Jobs x periods.
  Eigen::ArrayXXd offer_rate;      // Y
  Eigen::ArrayXXd attrition_rate;  // Phi
  Eigen::ArrayXXd growth_rate;     // G
  Eigen::ArrayXXd end_headcount;   // S, integral persons
  Eigen::ArrayXXd headcount;       // C, integral persons; column 0 equals initial headcount
  Eigen::ArrayXXd hired;           // Z, integral persons
  Eigen::ArrayXXd hires_needed;    // H, integral persons
  Eigen::ArrayXXd shortage_flag;   // P, binary: 1 when hires fall short

  /// Zero-initialized plan with dimensions matching the instance.
  static Plan zeros(const Instance& inst);

  std::string check_dimensions(const Instance& inst) const;  // empty when they match
};

/// Hires needed per job for one period:
///   H_j = C_j (G_j + Phi_j + sum_k u(j,k) V(j,k)) - sum_l u(l,j) C_l V(l,j).
/// Throws std::invalid_argument on dimension mismatch.
Eigen::VectorXd hires_needed(const Eigen::VectorXd& headcount, const Eigen::VectorXd& growth,
                             const Eigen::VectorXd& attrition,
                             const Eigen::MatrixXd& advancement,
                             const Eigen::MatrixXi& transfer);

/// Employees available at the end of one period:
///   S_j = Z_j + C_j (1 - Phi_j - sum_k u(j,k) V(j,k)) + sum_l u(l,j) C_l V(l,j).
Eigen::VectorXd end_headcount(const Eigen::VectorXd& headcount, const Eigen::VectorXd& hired,
                              const Eigen::VectorXd& attrition,
                              const Eigen::MatrixXd& advancement,
                              const Eigen::MatrixXi& transfer);

/// Profit per hour of one period before averaging: half-sum staffing margin
/// minus interview costs minus shortage/excess penalties.
double period_profit(const Instance& inst, const Plan& plan, int t);

/// Average profit per hour over the horizon (the model objective).
double evaluate_objective(const Instance& inst, const Plan& plan);

struct CheckOptions {
  /// How the acceptance cap is evaluated: with the true product Y*X*A, or with
  /// the three-breakpoint approximation the solvable model enforces.
  enum class AcceptanceRoute { TrueProduct, PiecewiseProduct };
  AcceptanceRoute acceptance_route = AcceptanceRoute::TrueProduct;

  /// Values at which the per-job time parameters are evaluated in the
  /// time-budget check; distribution means when unset.
  std::optional<Eigen::VectorXd> doc_time;
  std::optional<Eigen::VectorXd> interview_time;

  /// Confidence level for the acceptance quantile; instance config when unset.
  std::optional<double> alpha1;
};

struct ConstraintReport {
  int family = 0;           // constraint family identifier, 12..29
  std::string name;         // e.g. "flow_hires"
  double max_violation = 0;
  std::string worst_index;  // index tuple of the largest violation
};

struct FeasibilityReport {
  std::vector<ConstraintReport> families;
  bool feasible = false;
  double tolerance = 0.0;

  double max_violation() const;
  const ConstraintReport* family(const std::string& name) const;
};

/// Evaluates every constraint family at the plan and reports the largest
/// violation per family; feasible iff all of them are within tolerance.
FeasibilityReport check_feasibility(const Instance& inst, const Plan& plan, double tolerance,
                                    const CheckOptions& options = {});

}  // namespace talentplan
