#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Sparse>

#include "talentplan/milp_model.hpp"

namespace talentplan::milp {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// maximize obj.x subject to row_lo <= A x <= row_hi and lb <= x <= ub.
struct Problem {
  Eigen::SparseMatrix<double> A;  // rows x cols, column major
  Eigen::VectorXd obj;
  Eigen::VectorXd lb, ub;          // per column
  Eigen::VectorXd row_lo, row_hi;  // per row
  std::vector<std::uint8_t> is_integer;
  double objective_constant = 0.0;

  int rows() const { return static_cast<int>(A.rows()); }
  int cols() const { return static_cast<int>(A.cols()); }
};

/// Drops the model's names and builds the numeric problem; requires every
/// stochastic template to have been instantiated first.
Problem to_problem(const lin::MilpModel& m);

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit, Numerical };

// Nonbasic-at-lower, nonbasic-at-upper, basic, nonbasic-free (value 0).
enum BasisCode : std::int8_t { kAtLower = 0, kAtUpper = 1, kBasic = 2, kFreeNB = 3 };

/// One entry per structural column followed by one per row (the logical).
using BasisState = std::vector<std::int8_t>;

struct LpSolution {
  LpStatus status = LpStatus::Numerical;
  Eigen::VectorXd x;              // structural values
  double objective = 0.0;         // includes the problem's constant
  Eigen::VectorXd duals;          // per row
  Eigen::VectorXd reduced_costs;  // per structural column
  BasisState basis;
  long iterations = 0;
};

struct SimplexOptions {
  double feas_tol = 1e-7;
  double opt_tol = 1e-7;
  long max_iters = 2'000'000;
  bool scale = true;
  int refactor_every = 100;
};

/// Bounded-variable revised simplex with a periodically refreshed sparse LU
/// basis factorization and product-form updates in between. Dantzig pricing
/// with an automatic Bland's-rule fallback when the objective stalls.
LpSolution solve_lp(const Problem& p, const SimplexOptions& options = {},
                    const BasisState* warm_start = nullptr);

/// Reusable solver state for sequences of LPs that share the constraint
/// matrix and objective but vary the variable bounds (branch and bound).
/// The matrix, scaling and basis factorization persist across solves.
class SimplexEngine {
 public:
  explicit SimplexEngine(const Problem& p, const SimplexOptions& options = {});
  ~SimplexEngine();
  SimplexEngine(SimplexEngine&&) noexcept;
  SimplexEngine& operator=(SimplexEngine&&) noexcept;

  /// Solves with the given structural bounds. A null basis continues from the
  /// engine's current state (cheap after a single bound change); otherwise
  /// the given basis is installed and refactorized first.
  LpSolution solve(const Eigen::VectorXd& lb, const Eigen::VectorXd& ub,
                   const BasisState* basis);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace talentplan::milp
