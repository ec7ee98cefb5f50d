#pragma once

#include <optional>
#include <vector>

#include "talentplan/simplex.hpp"

namespace talentplan::milp {

struct Limits {
  long max_nodes = 1'000'000;
  double rel_gap = 1e-6;
  bool record_history = false;  // keep the best-bound trace for diagnostics
  /// Known-feasible point used as the starting incumbent; ignored (with no
  /// other effect) when it fails the feasibility or integrality check.
  std::optional<Eigen::VectorXd> start;
};

enum class MilpStatus { Optimal, Infeasible, GapLimit, NodeLimit };

struct MilpSolution {
  MilpStatus status = MilpStatus::Infeasible;
  bool has_incumbent = false;
  Eigen::VectorXd x;           // incumbent values (structural columns)
  double objective = 0.0;      // incumbent objective
  double best_bound = 0.0;     // proven upper bound (maximization)
  long nodes = 0;              // LP relaxations solved
  double wall_seconds = 0.0;
  std::vector<double> bound_history;  // per node when record_history is set
};

/// Best-bound branch and bound with depth-first dives after each branching,
/// most-fractional variable selection, and warm-started LP relaxations.
/// Deterministic: all ties break on creation index. Requires a bounded
/// relaxation; throws std::runtime_error when the root LP is unbounded.
MilpSolution solve_milp(const Problem& p, const Limits& limits = {});

}  // namespace talentplan::milp
