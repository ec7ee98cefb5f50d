#pragma once

#include <limits>
#include <string>
#include <vector>

#include "talentplan/nonlinear_model.hpp"

namespace talentplan::lin {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct MilpVar {
  std::string name;
  model::VarKind kind = model::VarKind::Continuous;
  double lb = 0.0, ub = kInf;
  std::string provenance;  // source family or reformulation rule
};

struct RowEntry {
  int col = -1;
  double coef = 0.0;
};

/// lo <= sum coef * x <= hi; one-sided rows use +-infinity.
struct MilpRow {
  std::string name;
  std::vector<RowEntry> entries;
  double lo = -kInf, hi = kInf;
  std::string provenance;
};

/// Pending time-budget restriction for one period: the per-job coefficient
/// slots stay symbolic until a treatment (scenario, closed form, fixed
/// realization) instantiates them.
struct TimeTemplate {
  int period = -1;
  double budget = 0.0;
  // For job j: columns whose values are weighted by the document-review time
  // and the interview time respectively.
  std::vector<std::vector<RowEntry>> doc_terms;
  std::vector<std::vector<RowEntry>> interview_terms;
};

/// Pending acceptance restriction for one (job, period): hired <= rate *
/// accepted-sum, where the multiplier comes from the chosen treatment.
struct AcceptTemplate {
  int job = -1, period = -1;
  int hired_col = -1;
  std::vector<RowEntry> accepted;  // the reformulated offered-and-accepted total
};

struct MilpModel {
  std::vector<MilpVar> vars;
  std::vector<MilpRow> rows;
  std::vector<RowEntry> objective;  // maximize
  double objective_constant = 0.0;

  std::vector<TimeTemplate> time_templates;
  std::vector<AcceptTemplate> accept_templates;

  int add_var(std::string name, model::VarKind kind, double lb, double ub,
              std::string provenance);
  MilpRow& add_row(std::string name, double lo, double hi, std::string provenance);
  void add_objective(int col, double coef);

  int cols() const { return static_cast<int>(vars.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  /// True when every template has been instantiated and removed.
  bool resolved() const { return time_templates.empty() && accept_templates.empty(); }
};

}  // namespace talentplan::lin
