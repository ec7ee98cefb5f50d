#include "talentplan/nonlinear_model.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace talentplan::model {

namespace {

std::string idx(int j, int t) {
  return "[j=" + std::to_string(j) + ",t=" + std::to_string(t) + "]";
}

std::string idx3(int i, int j, int t) {
  return "[i=" + std::to_string(i) + ",j=" + std::to_string(j) + ",t=" + std::to_string(t) + "]";
}

}  // namespace

int VariableCatalog::arc_index(int from, int to) const {
  for (std::size_t k = 0; k < arcs.size(); ++k)
    if (arcs[k].first == from && arcs[k].second == to) return static_cast<int>(k);
  return -1;
}

int VariableCatalog::v_between(int from, int to, int t) const {
  const int k = arc_index(from, to);
  return k < 0 ? -1 : v(k, t);
}

Expr& Expr::add(double coef, int v1, int v2, int v3, StochRef stoch) {
  if (coef == 0.0 && stoch.param == StochRef::Param::None) return *this;
  if (v1 < 0) {
    constant += coef;
    return *this;
  }
  terms.push_back({coef, v1, v2, v3, stoch});
  return *this;
}

namespace {

// Floor with a tiny guard so decimal-intended products (0.579 * 1000) do not
// lose a unit to binary representation.
double floor_eps(double v) { return std::floor(v + 1e-9); }

}  // namespace

Bounds compute_bounds(const Instance& inst) {
  const int m = inst.channels(), n = inst.jobs(), T = inst.periods();
  Bounds b;
  b.a_upper.assign(static_cast<std::size_t>(T), Eigen::ArrayXXi::Zero(m, n));
  b.theta = Eigen::ArrayXXd::Zero(n, T);
  b.c_upper = Eigen::ArrayXXi::Zero(n, T);
  b.s_upper = Eigen::ArrayXXi::Zero(n, T);
  b.h_upper = Eigen::ArrayXXi::Zero(n, T);
  b.z_upper = Eigen::ArrayXXi::Zero(n, T);

  for (int t = 0; t < T; ++t)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        const double channel_side = floor_eps(inst.channel_weight[i] * inst.channel_capacity(i, t));
        const double job_side = floor_eps(inst.max_applications(j, t));
        b.a_upper[static_cast<std::size_t>(t)](i, j) =
            static_cast<int>(std::max(0.0, std::min(channel_side, job_side)));
      }

  for (int j = 0; j < n; ++j) {
    double prev_theta = 0.0;
    for (int t = 0; t < T; ++t) {
      const int c_up = t == 0 ? static_cast<int>(std::llround(inst.initial_headcount[j]))
                              : static_cast<int>(floor_eps(2.0 * prev_theta));
      b.c_upper(j, t) = c_up;
      const double theta = inst.change_cap_mode == ChangeCapMode::Constant
                               ? inst.change_cap(j, t)
                               : inst.change_cap_fraction * c_up;
      b.theta(j, t) = theta;
      b.s_upper(j, t) = static_cast<int>(floor_eps(2.0 * theta));
      b.h_upper(j, t) = static_cast<int>(floor_eps(2.0 * prev_theta + theta));
      b.z_upper(j, t) = static_cast<int>(floor_eps(theta));
      prev_theta = theta;
    }
  }
  return b;
}

namespace {

class Builder {
 public:
  explicit Builder(const Instance& inst) : inst_(inst), bounds_(compute_bounds(inst)) {}

  NonlinearModel build() {
    layout_catalog();
    objective();
    time_budget();          // 12
    flow_equations();       // 13, 14
    headcount_link();       // 15
    change_cap();           // 16
    acceptance_cap();       // 17
    shortage_indicator();   // 18
    channel_capacity();     // 19
    application_window();   // 20
    interview_caps();       // 21, 22
    interview_coupling();   // 23
    offer_coupling();       // 24
    promotion_budget();     // 25
    return std::move(nl_);
  }

 private:
  void layout_catalog() {
    auto& cat = nl_.catalog;
    cat.channels = inst_.channels();
    cat.jobs = inst_.jobs();
    cat.periods = inst_.periods();
    cat.arcs = inst_.transfer_arcs();
    const int m = cat.channels, n = cat.jobs, T = cat.periods;

    auto push = [&](const std::string& name, VarKind kind, double lb, double ub,
                    const std::string& family) {
      cat.vars.push_back({name, kind, lb, ub, family});
    };
    auto name3 = [&](const char* s, int i, int j, int t) {
      std::ostringstream os;
      os << s << "_" << i << "_" << j << "_" << t;
      return os.str();
    };
    auto name2 = [&](const char* s, int j, int t) {
      std::ostringstream os;
      os << s << "_" << j << "_" << t;
      return os.str();
    };

    cat.a0_ = 0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        for (int t = 0; t < T; ++t)
          push(name3("A", i, j, t), VarKind::Integer, 0.0,
               bounds_.a_upper[static_cast<std::size_t>(t)](i, j), "A");
    cat.x0_ = cat.size();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        for (int t = 0; t < T; ++t) push(name3("X", i, j, t), VarKind::Continuous, 0.0, 1.0, "X");
    cat.y0_ = cat.size();
    for (int j = 0; j < n; ++j)
      for (int t = 0; t < T; ++t) push(name2("Y", j, t), VarKind::Continuous, 0.0, 1.0, "Y");
    cat.phi0_ = cat.size();
    for (int j = 0; j < n; ++j)
      for (int t = 0; t < T; ++t) push(name2("PHI", j, t), VarKind::Continuous, 0.0, 1.0, "PHI");
    cat.v0_ = cat.size();
    for (std::size_t k = 0; k < cat.arcs.size(); ++k)
      for (int t = 0; t < T; ++t) {
        std::ostringstream os;
        os << "V_" << cat.arcs[k].first << "_" << cat.arcs[k].second << "_" << t;
        push(os.str(), VarKind::Continuous, 0.0, 1.0, "V");
      }
    cat.g0_ = cat.size();
    for (int j = 0; j < n; ++j)
      for (int t = 0; t < T; ++t)
        push(name2("G", j, t), VarKind::Continuous, 0.0, inst_.max_growth(j, t), "G");
    cat.s0_ = cat.size();
    for (int j = 0; j < n; ++j)
      for (int t = 0; t < T; ++t)
        push(name2("S", j, t), VarKind::Integer, 0.0, bounds_.s_upper(j, t), "S");
    cat.c0_ = cat.size();
    for (int j = 0; j < n; ++j)
      for (int t = 0; t < T; ++t) {
        if (t == 0) {
          const double init = inst_.initial_headcount[j];
          push(name2("C", j, t), VarKind::Integer, init, init, "C");
        } else {
          push(name2("C", j, t), VarKind::Integer, 0.0, bounds_.c_upper(j, t), "C");
        }
      }
    cat.z0_ = cat.size();
    for (int j = 0; j < n; ++j)
      for (int t = 0; t < T; ++t)
        push(name2("Z", j, t), VarKind::Integer, 0.0, bounds_.z_upper(j, t), "Z");
    cat.h0_ = cat.size();
    for (int j = 0; j < n; ++j)
      for (int t = 0; t < T; ++t)
        push(name2("H", j, t), VarKind::Integer, 0.0, bounds_.h_upper(j, t), "H");
    cat.p0_ = cat.size();
    for (int j = 0; j < n; ++j)
      for (int t = 0; t < T; ++t) push(name2("P", j, t), VarKind::Binary, 0.0, 1.0, "P");
  }

  Constraint& add(int family, std::string label, Sense sense, double rhs) {
    nl_.constraints.push_back({});
    auto& c = nl_.constraints.back();
    c.family = family;
    c.label = std::move(label);
    c.sense = sense;
    c.rhs = rhs;
    return c;
  }

  void objective() {
    const auto& cat = nl_.catalog;
    nl_.objective_scale = 1.0 / inst_.periods();
    for (int j = 0; j < inst_.jobs(); ++j)
      for (int t = 0; t < inst_.periods(); ++t) {
        const double margin = 0.5 * (inst_.revenue(j, t) - inst_.salary(j, t));
        nl_.objective.add(margin, cat.s(j, t));
        nl_.objective.add(margin, cat.c(j, t));
        for (int i = 0; i < inst_.channels(); ++i)
          nl_.objective.add(-inst_.interview_cost(j, t), cat.x(i, j, t), cat.a(i, j, t));
        nl_.objective_mismatch.push_back({cat.h(j, t), cat.z(j, t), cat.p(j, t),
                                          inst_.shortage_cost(j, t), inst_.excess_cost(j, t), j,
                                          t});
      }
  }

  void time_budget() {
    const auto& cat = nl_.catalog;
    for (int t = 0; t < inst_.periods(); ++t) {
      auto& c = add(12, "time_budget[t=" + std::to_string(t) + "]", Sense::LE,
                    inst_.config.recruit_time_budget[t]);
      c.stochastic = true;
      for (int j = 0; j < inst_.jobs(); ++j)
        for (int i = 0; i < inst_.channels(); ++i) {
          c.lhs.add(1.0, cat.a(i, j, t), -1, -1, {StochRef::Param::DocTime, j});
          c.lhs.add(1.0, cat.x(i, j, t), cat.a(i, j, t), -1,
                    {StochRef::Param::InterviewTime, j});
        }
    }
  }

  // Adds +sign * C_j (G_j + Phi_j + sum_k V_jk) and -sign * inflow terms.
  void add_turnover(Expr& e, int j, int t, double sign, bool with_growth) {
    const auto& cat = nl_.catalog;
    if (with_growth) e.add(sign, cat.c(j, t), cat.g(j, t));
    e.add(sign, cat.c(j, t), cat.phi(j, t));
    for (int k = 0; k < inst_.jobs(); ++k) {
      if (k == j) continue;
      const int out = cat.v_between(j, k, t);
      if (out >= 0) e.add(sign, cat.c(j, t), out);
    }
  }

  void add_inflow(Expr& e, int j, int t, double sign) {
    const auto& cat = nl_.catalog;
    for (int l = 0; l < inst_.jobs(); ++l) {
      if (l == j) continue;
      const int in = cat.v_between(l, j, t);
      if (in >= 0) e.add(sign, cat.c(l, t), in);
    }
  }

  void flow_equations() {
    const auto& cat = nl_.catalog;
    for (int j = 0; j < inst_.jobs(); ++j)
      for (int t = 0; t < inst_.periods(); ++t) {
        auto& hires = add(13, "flow_hires" + idx(j, t), Sense::EQ, 0.0);
        hires.lhs.add(1.0, cat.h(j, t));
        add_turnover(hires.lhs, j, t, -1.0, /*with_growth=*/true);
        add_inflow(hires.lhs, j, t, +1.0);

        auto& avail = add(14, "flow_available" + idx(j, t), Sense::EQ, 0.0);
        avail.lhs.add(1.0, cat.s(j, t));
        avail.lhs.add(-1.0, cat.z(j, t));
        avail.lhs.add(-1.0, cat.c(j, t));
        add_turnover(avail.lhs, j, t, +1.0, /*with_growth=*/false);
        add_inflow(avail.lhs, j, t, -1.0);
      }
  }

  void headcount_link() {
    const auto& cat = nl_.catalog;
    for (int j = 0; j < inst_.jobs(); ++j)
      for (int t = 1; t < inst_.periods(); ++t) {
        auto& c = add(15, "headcount_link" + idx(j, t), Sense::EQ, 0.0);
        c.lhs.add(1.0, cat.s(j, t - 1));
        c.lhs.add(-1.0, cat.c(j, t));
      }
  }

  void change_cap() {
    const auto& cat = nl_.catalog;
    const bool fractional = inst_.change_cap_mode == ChangeCapMode::FractionOfCurrent;
    for (int j = 0; j < inst_.jobs(); ++j)
      for (int t = 0; t < inst_.periods(); ++t) {
        auto& c = add(16, "change_cap" + idx(j, t), Sense::LE,
                      fractional ? 0.0 : inst_.change_cap(j, t));
        c.kind = ConstraintKind::MaxOfTwoLeq;
        // incoming: hires plus promotions in
        c.lhs.add(1.0, cat.z(j, t));
        add_inflow(c.lhs, j, t, +1.0);
        // outgoing: attrition plus promotions out
        add_turnover(c.lhs_alt, j, t, +1.0, /*with_growth=*/false);
        if (fractional) {
          c.lhs.add(-inst_.change_cap_fraction, cat.c(j, t));
          c.lhs_alt.add(-inst_.change_cap_fraction, cat.c(j, t));
        }
      }
  }

  void acceptance_cap() {
    const auto& cat = nl_.catalog;
    for (int j = 0; j < inst_.jobs(); ++j)
      for (int t = 0; t < inst_.periods(); ++t) {
        auto& c = add(17, "acceptance_cap" + idx(j, t), Sense::LE, 0.0);
        c.stochastic = true;
        c.lhs.add(1.0, cat.z(j, t));
        for (int i = 0; i < inst_.channels(); ++i)
          c.lhs.add(-1.0, cat.y(j, t), cat.x(i, j, t), cat.a(i, j, t),
                    {StochRef::Param::Acceptance, j});
      }
  }

  void shortage_indicator() {
    const auto& cat = nl_.catalog;
    for (int j = 0; j < inst_.jobs(); ++j)
      for (int t = 0; t < inst_.periods(); ++t) {
        // (Z - H) P + (H - Z)(1 - P) <= 0, expanded.
        auto& c = add(18, "shortage_indicator" + idx(j, t), Sense::LE, 0.0);
        c.lhs.add(2.0, cat.z(j, t), cat.p(j, t));
        c.lhs.add(-2.0, cat.h(j, t), cat.p(j, t));
        c.lhs.add(1.0, cat.h(j, t));
        c.lhs.add(-1.0, cat.z(j, t));
      }
  }

  void channel_capacity() {
    const auto& cat = nl_.catalog;
    for (int i = 0; i < inst_.channels(); ++i)
      for (int t = 0; t < inst_.periods(); ++t) {
        auto& c =
            add(19, "channel_capacity[i=" + std::to_string(i) + ",t=" + std::to_string(t) + "]",
                Sense::LE, inst_.channel_weight[i] * inst_.channel_capacity(i, t));
        for (int j = 0; j < inst_.jobs(); ++j) c.lhs.add(1.0, cat.a(i, j, t));
      }
  }

  void application_window() {
    const auto& cat = nl_.catalog;
    for (int j = 0; j < inst_.jobs(); ++j)
      for (int t = 0; t < inst_.periods(); ++t) {
        auto& lo = add(20, "application_floor" + idx(j, t), Sense::GE, 1.0);
        auto& hi = add(20, "application_cap" + idx(j, t), Sense::LE, inst_.max_applications(j, t));
        for (int i = 0; i < inst_.channels(); ++i) {
          lo.lhs.add(1.0, cat.a(i, j, t));
          hi.lhs.add(1.0, cat.a(i, j, t));
        }
      }
  }

  void interview_caps() {
    const auto& cat = nl_.catalog;
    for (int i = 0; i < inst_.channels(); ++i)
      for (int t = 0; t < inst_.periods(); ++t) {
        auto& c = add(21,
                      "channel_interview_cap[i=" + std::to_string(i) + ",t=" + std::to_string(t) +
                          "]",
                      Sense::LE, inst_.channel_weight[i] * inst_.channel_interview_cap(i, t));
        for (int j = 0; j < inst_.jobs(); ++j) c.lhs.add(1.0, cat.x(i, j, t));
      }
    for (int j = 0; j < inst_.jobs(); ++j)
      for (int t = 0; t < inst_.periods(); ++t) {
        auto& c = add(22, "job_interview_cap" + idx(j, t), Sense::LE,
                      inst_.job_interview_cap(j, t));
        for (int i = 0; i < inst_.channels(); ++i) c.lhs.add(1.0, cat.x(i, j, t));
      }
  }

  void interview_coupling() {
    const auto& cat = nl_.catalog;
    for (int i = 0; i < inst_.channels(); ++i)
      for (int j = 0; j < inst_.jobs(); ++j)
        for (int t = 0; t < inst_.periods(); ++t) {
          auto& lo = add(23, "interview_activation" + idx3(i, j, t), Sense::LE, 0.0);
          lo.lhs.add(inst_.config.epsilon, cat.a(i, j, t));
          lo.lhs.add(-1.0, cat.x(i, j, t));

          auto& hi = add(23, "interview_deactivation" + idx3(i, j, t), Sense::LE, 0.0);
          hi.lhs.add(1.0, cat.x(i, j, t));
          hi.lhs.add(-inst_.config.big_m, cat.a(i, j, t), cat.y(j, t));
        }
  }

  void offer_coupling() {
    const auto& cat = nl_.catalog;
    for (int j = 0; j < inst_.jobs(); ++j)
      for (int t = 0; t < inst_.periods(); ++t) {
        auto& lo = add(24, "offer_activation" + idx(j, t), Sense::LE, 0.0);
        for (int i = 0; i < inst_.channels(); ++i)
          lo.lhs.add(inst_.config.epsilon, cat.x(i, j, t));
        lo.lhs.add(-1.0, cat.y(j, t));

        // Y <= min(M sum_i X, lambda) as max(Y - M sum X, Y - lambda) <= 0.
        auto& hi = add(24, "offer_cap" + idx(j, t), Sense::LE, 0.0);
        hi.kind = ConstraintKind::MaxOfTwoLeq;
        hi.lhs.add(1.0, cat.y(j, t));
        for (int i = 0; i < inst_.channels(); ++i)
          hi.lhs.add(-inst_.config.big_m, cat.x(i, j, t));
        hi.lhs_alt.add(1.0, cat.y(j, t));
        hi.lhs_alt.constant -= inst_.max_offer_rate(j, t);
      }
  }

  void promotion_budget() {
    const auto& cat = nl_.catalog;
    for (int j = 0; j < inst_.jobs(); ++j)
      for (int t = 0; t < inst_.periods(); ++t) {
        bool any = false;
        Expr e;
        for (int k = 0; k < inst_.jobs(); ++k) {
          if (k == j) continue;
          const int v = cat.v_between(j, k, t);
          if (v >= 0) {
            e.add(1.0, v);
            any = true;
          }
        }
        if (!any) continue;
        auto& c = add(25, "promotion_budget" + idx(j, t), Sense::LE, 1.0);
        c.lhs = std::move(e);
      }
  }

  const Instance& inst_;
  Bounds bounds_;
  NonlinearModel nl_;
};

}  // namespace

NonlinearModel build_minlp(const Instance& inst) {
  const auto violations = validate_instance(inst);
  if (!violations.empty()) {
    std::ostringstream os;
    os << "build_minlp: invalid instance: " << violations.front().field
       << violations.front().index << " " << violations.front().message;
    throw std::invalid_argument(os.str());
  }
  return Builder(inst).build();
}

DimensionReport dimensions(const NonlinearModel& nl) {
  DimensionReport rep;
  std::map<std::string, int> vf, cf;
  for (const auto& v : nl.catalog.vars) ++vf[v.family];
  for (const auto& c : nl.constraints) ++cf["family " + std::to_string(c.family)];
  for (const auto& [k, v] : vf) rep.variable_families.emplace_back(k, v);
  for (const auto& [k, v] : cf) rep.constraint_families.emplace_back(k, v);
  rep.variables = nl.catalog.size();
  rep.constraints = static_cast<int>(nl.constraints.size());
  return rep;
}

Eigen::VectorXd plan_values(const VariableCatalog& cat, const Instance& inst, const Plan& plan) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(cat.size());
  const int m = cat.channels, n = cat.jobs, T = cat.periods;
  for (int t = 0; t < T; ++t) {
    const auto ts = static_cast<std::size_t>(t);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        x[cat.a(i, j, t)] = plan.applications[ts](i, j);
        x[cat.x(i, j, t)] = plan.interview_rate[ts](i, j);
      }
    for (int j = 0; j < n; ++j) {
      x[cat.y(j, t)] = plan.offer_rate(j, t);
      x[cat.phi(j, t)] = plan.attrition_rate(j, t);
      x[cat.g(j, t)] = plan.growth_rate(j, t);
      x[cat.s(j, t)] = plan.end_headcount(j, t);
      x[cat.c(j, t)] = plan.headcount(j, t);
      x[cat.z(j, t)] = plan.hired(j, t);
      x[cat.h(j, t)] = plan.hires_needed(j, t);
      x[cat.p(j, t)] = plan.shortage_flag(j, t);
    }
    for (std::size_t k = 0; k < cat.arcs.size(); ++k)
      x[cat.v(static_cast<int>(k), t)] = plan.advancement_rate[ts](cat.arcs[k].first,
                                                                  cat.arcs[k].second);
  }
  (void)inst;
  return x;
}

namespace {

double stoch_value(const StochRef& s, const Eigen::VectorXd& doc, const Eigen::VectorXd& interview,
                   const Eigen::VectorXd& acceptance) {
  switch (s.param) {
    case StochRef::Param::None:
      return 1.0;
    case StochRef::Param::DocTime:
      return doc[s.job];
    case StochRef::Param::InterviewTime:
      return interview[s.job];
    case StochRef::Param::Acceptance:
      return acceptance[s.job];
  }
  return 1.0;
}

double eval_expr(const Expr& e, const Eigen::VectorXd& x, const Eigen::VectorXd& doc,
                 const Eigen::VectorXd& interview, const Eigen::VectorXd& acceptance) {
  double value = e.constant;
  for (const auto& term : e.terms) {
    double v = term.coef * stoch_value(term.stoch, doc, interview, acceptance);
    if (term.v1 >= 0) v *= x[term.v1];
    if (term.v2 >= 0) v *= x[term.v2];
    if (term.v3 >= 0) v *= x[term.v3];
    value += v;
  }
  return value;
}

}  // namespace

std::vector<Residual> evaluate_constraints(const NonlinearModel& nl, const Instance& inst,
                                           const Plan& plan, const Eigen::VectorXd& doc_time,
                                           const Eigen::VectorXd& interview_time,
                                           const Eigen::VectorXd& acceptance) {
  const Eigen::VectorXd x = plan_values(nl.catalog, inst, plan);
  std::vector<Residual> out;
  out.reserve(nl.constraints.size());
  for (const auto& c : nl.constraints) {
    double lhs = eval_expr(c.lhs, x, doc_time, interview_time, acceptance);
    if (c.kind == ConstraintKind::MaxOfTwoLeq)
      lhs = std::max(lhs, eval_expr(c.lhs_alt, x, doc_time, interview_time, acceptance));
    double violation = 0.0;
    switch (c.sense) {
      case Sense::LE:
        violation = lhs - c.rhs;
        break;
      case Sense::GE:
        violation = c.rhs - lhs;
        break;
      case Sense::EQ:
        violation = std::abs(lhs - c.rhs);
        break;
    }
    out.push_back({c.family, c.label, std::max(0.0, violation)});
  }
  return out;
}

}  // namespace talentplan::model
