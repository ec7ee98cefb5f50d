#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "talentplan/instance.hpp"
#include "talentplan/plan.hpp"

namespace talentplan::model {

enum class VarKind { Continuous, Integer, Binary };

struct VarInfo {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lb = 0.0, ub = 0.0;
  std::string family;  // "A", "X", "Y", ...
};

/// Typed handles for every decision variable of the staffing model, in a
/// fixed order so downstream transformations can share column indices.
struct VariableCatalog {
  int channels = 0, jobs = 0, periods = 0;
  std::vector<std::pair<int, int>> arcs;  // promotion arcs (from, to)
  std::vector<VarInfo> vars;

  int a(int i, int j, int t) const { return a0_ + offset3(i, j, t); }
  int x(int i, int j, int t) const { return x0_ + offset3(i, j, t); }
  int y(int j, int t) const { return y0_ + offset2(j, t); }
  int phi(int j, int t) const { return phi0_ + offset2(j, t); }
  int g(int j, int t) const { return g0_ + offset2(j, t); }
  int s(int j, int t) const { return s0_ + offset2(j, t); }
  int c(int j, int t) const { return c0_ + offset2(j, t); }
  int z(int j, int t) const { return z0_ + offset2(j, t); }
  int h(int j, int t) const { return h0_ + offset2(j, t); }
  int p(int j, int t) const { return p0_ + offset2(j, t); }
  int v(int arc, int t) const { return v0_ + arc * periods + t; }
  /// -1 when (from, to) is not a promotion arc.
  int v_between(int from, int to, int t) const;
  int arc_index(int from, int to) const;

  int size() const { return static_cast<int>(vars.size()); }

  // layout bookkeeping, filled by build_minlp
  int a0_ = 0, x0_ = 0, y0_ = 0, phi0_ = 0, v0_ = 0, g0_ = 0, s0_ = 0, c0_ = 0, z0_ = 0, h0_ = 0,
      p0_ = 0;

 private:
  int offset3(int i, int j, int t) const { return (i * jobs + j) * periods + t; }
  int offset2(int j, int t) const { return j * periods + t; }
};

/// Marks a coefficient as multiplied by one of the uncertain per-job
/// parameters; numeric only after a substitution is chosen.
struct StochRef {
  enum class Param { None, DocTime, InterviewTime, Acceptance };
  Param param = Param::None;
  int job = -1;
};

/// coef * v1 [* v2 [* v3]] with an optional stochastic multiplier.
struct Term {
  double coef = 0.0;
  int v1 = -1, v2 = -1, v3 = -1;
  StochRef stoch;

  int degree() const { return v1 < 0 ? 0 : (v2 < 0 ? 1 : (v3 < 0 ? 2 : 3)); }
};

struct Expr {
  double constant = 0.0;
  std::vector<Term> terms;

  Expr& add(double coef, int v1 = -1, int v2 = -1, int v3 = -1, StochRef stoch = {});
};

/// Per (job, period) staffing mismatch penalty:
///   -(P * shortage + (1 - P) * excess) * |H - Z|.
struct MismatchCost {
  int h = -1, z = -1, p = -1;
  double shortage_cost = 0.0, excess_cost = 0.0;
  int job = -1, period = -1;
};

enum class Sense { LE, GE, EQ };
enum class ConstraintKind { Plain, MaxOfTwoLeq };

struct Constraint {
  int family = 0;  // constraint family identifier, 12..29
  std::string label;
  ConstraintKind kind = ConstraintKind::Plain;
  Expr lhs;
  Expr lhs_alt;  // second branch of a MaxOfTwoLeq
  Sense sense = Sense::LE;
  double rhs = 0.0;
  bool stochastic = false;
};

/// The multi-period staffing model in symbolic form: a linear/bilinear/
/// trilinear objective with absolute-value mismatch costs, and constraints
/// that may still carry stochastic coefficients and max() couplings.
struct NonlinearModel {
  VariableCatalog catalog;
  double objective_scale = 1.0;  // 1 / periods
  Expr objective;                // staffing margin and interview cost terms
  std::vector<MismatchCost> objective_mismatch;
  std::vector<Constraint> constraints;
};

/// Structural upper bounds used by the exact reformulation: application
/// counts, headcounts, hires and the resolved per-period change caps.
struct Bounds {
  std::vector<Eigen::ArrayXXi> a_upper;  // per period: channels x jobs
  Eigen::ArrayXXd theta;                 // resolved change caps, jobs x periods
  Eigen::ArrayXXi c_upper;               // jobs x periods (col 0 = initial headcount)
  Eigen::ArrayXXi s_upper;               // jobs x periods
  Eigen::ArrayXXi h_upper;               // jobs x periods
  Eigen::ArrayXXi z_upper;               // jobs x periods
};

/// In fraction-of-current mode the caps are resolved by the forward
/// recursion theta(t) = rho * c_upper(t), c_upper(t+1) = floor(2 theta(t)).
Bounds compute_bounds(const Instance& inst);

/// Assembles the full symbolic model. Throws std::invalid_argument when the
/// instance fails validation.
NonlinearModel build_minlp(const Instance& inst);

struct DimensionReport {
  std::vector<std::pair<std::string, int>> variable_families;
  std::vector<std::pair<std::string, int>> constraint_families;
  int variables = 0;
  int constraints = 0;
};

/// Counting convention: one variable per scalar index tuple; one constraint
/// per (index tuple, sense) with two-sided couplings counted per side and a
/// max() coupling counted once; pure bound/typing restrictions are variable
/// bounds, not constraints.
DimensionReport dimensions(const NonlinearModel& nl);

/// Values of every catalog variable under a plan, in catalog order.
Eigen::VectorXd plan_values(const VariableCatalog& cat, const Instance& inst, const Plan& plan);

struct Residual {
  int family = 0;
  std::string label;
  double violation = 0.0;
};

/// Evaluates every constraint at the plan with the stochastic coefficients
/// substituted by the given per-job values; returns one violation per
/// constraint (0 when satisfied).
std::vector<Residual> evaluate_constraints(const NonlinearModel& nl, const Instance& inst,
                                           const Plan& plan, const Eigen::VectorXd& doc_time,
                                           const Eigen::VectorXd& interview_time,
                                           const Eigen::VectorXd& acceptance);

}  // namespace talentplan::model
