#include "talentplan/milp_model.hpp"

namespace talentplan::lin {

int MilpModel::add_var(std::string name, model::VarKind kind, double lb, double ub,
                       std::string provenance) {
  vars.push_back({std::move(name), kind, lb, ub, std::move(provenance)});
  return static_cast<int>(vars.size()) - 1;
}

MilpRow& MilpModel::add_row(std::string name, double lo, double hi, std::string provenance) {
  rows.push_back({std::move(name), {}, lo, hi, std::move(provenance)});
  return rows.back();
}

void MilpModel::add_objective(int col, double coef) {
  if (coef == 0.0) return;
  for (auto& e : objective)
    if (e.col == col) {
      e.coef += coef;
      return;
    }
  objective.push_back({col, coef});
}

}  // namespace talentplan::lin
