#include "talentplan/plan.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "talentplan/piecewise.hpp"

namespace talentplan {

Plan Plan::zeros(const Instance& inst) {
  Plan p;
  const int m = inst.channels(), n = inst.jobs(), T = inst.periods();
  p.applications.assign(static_cast<std::size_t>(T), Eigen::MatrixXd::Zero(m, n));
  p.interview_rate.assign(static_cast<std::size_t>(T), Eigen::MatrixXd::Zero(m, n));
  p.advancement_rate.assign(static_cast<std::size_t>(T), Eigen::MatrixXd::Zero(n, n));
  p.offer_rate = Eigen::ArrayXXd::Zero(n, T);
  p.attrition_rate = Eigen::ArrayXXd::Zero(n, T);
  p.growth_rate = Eigen::ArrayXXd::Zero(n, T);
  p.end_headcount = Eigen::ArrayXXd::Zero(n, T);
  p.headcount = Eigen::ArrayXXd::Zero(n, T);
  p.headcount.col(0) = inst.initial_headcount.array();
  p.hired = Eigen::ArrayXXd::Zero(n, T);
  p.hires_needed = Eigen::ArrayXXd::Zero(n, T);
  p.shortage_flag = Eigen::ArrayXXd::Zero(n, T);
  return p;
}

std::string Plan::check_dimensions(const Instance& inst) const {
  const int m = inst.channels(), n = inst.jobs(), T = inst.periods();
  const auto sz = static_cast<std::size_t>(T);
  if (applications.size() != sz || interview_rate.size() != sz || advancement_rate.size() != sz)
    return "per-period tables must have one entry per period";
  for (int t = 0; t < T; ++t) {
    const auto ts = static_cast<std::size_t>(t);
    if (applications[ts].rows() != m || applications[ts].cols() != n)
      return "applications must be channels x jobs";
    if (interview_rate[ts].rows() != m || interview_rate[ts].cols() != n)
      return "interview_rate must be channels x jobs";
    if (advancement_rate[ts].rows() != n || advancement_rate[ts].cols() != n)
      return "advancement_rate must be jobs x jobs";
  }
  for (const auto* a : {&offer_rate, &attrition_rate, &growth_rate, &end_headcount, &headcount,
                        &hired, &hires_needed, &shortage_flag})
    if (a->rows() != n || a->cols() != T) return "job tables must be jobs x periods";
  return {};
}

namespace {

void require_square(const Eigen::MatrixXd& v, const Eigen::MatrixXi& u, Eigen::Index n) {
  if (v.rows() != n || v.cols() != n || u.rows() != n || u.cols() != n)
    throw std::invalid_argument("advancement/transfer matrices must be jobs x jobs");
}

// Outgoing advancement rate total for job j: sum_k u(j,k) V(j,k), k != j.
double outflow_rate(int j, const Eigen::MatrixXd& v, const Eigen::MatrixXi& u) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < v.cols(); ++k)
    if (k != j && u(j, k) == 1) s += v(j, k);
  return s;
}

// Promotions into job j: sum_l u(l,j) C_l V(l,j), l != j.
double inflow(int j, const Eigen::VectorXd& c, const Eigen::MatrixXd& v,
              const Eigen::MatrixXi& u) {
  double s = 0.0;
  for (Eigen::Index l = 0; l < v.rows(); ++l)
    if (l != j && u(l, j) == 1) s += c[l] * v(l, j);
  return s;
}

}  // namespace

Eigen::VectorXd hires_needed(const Eigen::VectorXd& headcount, const Eigen::VectorXd& growth,
                             const Eigen::VectorXd& attrition,
                             const Eigen::MatrixXd& advancement,
                             const Eigen::MatrixXi& transfer) {
  const Eigen::Index n = headcount.size();
  if (growth.size() != n || attrition.size() != n)
    throw std::invalid_argument("hires_needed: vector sizes disagree");
  require_square(advancement, transfer, n);
  Eigen::VectorXd h(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    h[j] = headcount[j] *
               (growth[j] + attrition[j] + outflow_rate(static_cast<int>(j), advancement, transfer)) -
           inflow(static_cast<int>(j), headcount, advancement, transfer);
  }
  return h;
}

Eigen::VectorXd end_headcount(const Eigen::VectorXd& headcount, const Eigen::VectorXd& hired,
                              const Eigen::VectorXd& attrition,
                              const Eigen::MatrixXd& advancement,
                              const Eigen::MatrixXi& transfer) {
  const Eigen::Index n = headcount.size();
  if (hired.size() != n || attrition.size() != n)
    throw std::invalid_argument("end_headcount: vector sizes disagree");
  require_square(advancement, transfer, n);
  Eigen::VectorXd s(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    s[j] = hired[j] +
           headcount[j] * (1.0 - attrition[j] -
                           outflow_rate(static_cast<int>(j), advancement, transfer)) +
           inflow(static_cast<int>(j), headcount, advancement, transfer);
  }
  return s;
}

double period_profit(const Instance& inst, const Plan& plan, int t) {
  const int m = inst.channels(), n = inst.jobs();
  double margin = 0.0, interview = 0.0, mismatch = 0.0;
  for (int j = 0; j < n; ++j) {
    margin += (inst.revenue(j, t) - inst.salary(j, t)) *
              (plan.end_headcount(j, t) + plan.headcount(j, t));
    for (int i = 0; i < m; ++i)
      interview += inst.interview_cost(j, t) *
                   plan.interview_rate[static_cast<std::size_t>(t)](i, j) *
                   plan.applications[static_cast<std::size_t>(t)](i, j);
    const double p = plan.shortage_flag(j, t);
    const double gap = std::abs(plan.hires_needed(j, t) - plan.hired(j, t));
    mismatch += (p * inst.shortage_cost(j, t) + (1.0 - p) * inst.excess_cost(j, t)) * gap;
  }
  return 0.5 * margin - interview - mismatch;
}

double evaluate_objective(const Instance& inst, const Plan& plan) {
  const std::string err = plan.check_dimensions(inst);
  if (!err.empty()) throw std::invalid_argument("evaluate_objective: " + err);
  double total = 0.0;
  for (int t = 0; t < inst.periods(); ++t) total += period_profit(inst, plan, t);
  return total / inst.periods();
}

double FeasibilityReport::max_violation() const {
  double v = 0.0;
  for (const auto& f : families) v = std::max(v, f.max_violation);
  return v;
}

const ConstraintReport* FeasibilityReport::family(const std::string& name) const {
  for (const auto& f : families)
    if (f.name == name) return &f;
  return nullptr;
}

namespace {

class FeasibilityChecker {
 public:
  FeasibilityChecker(const Instance& inst, const Plan& plan, const CheckOptions& opt)
      : inst_(inst), plan_(plan), opt_(opt) {}

  FeasibilityReport run(double tolerance) {
    time_budget();
    flows();
    headcount_link();
    change_cap();
    acceptance_cap();
    shortage_indicator();
    channel_capacity();
    application_window();
    interview_caps();
    rate_couplings();
    promotion_budget();
    variable_domains();

    FeasibilityReport rep;
    rep.families = std::move(families_);
    rep.tolerance = tolerance;
    rep.feasible = true;
    for (const auto& f : rep.families)
      if (f.max_violation > tolerance) rep.feasible = false;
    return rep;
  }

 private:
  ConstraintReport& family(int id, const std::string& name) {
    for (auto& f : families_)
      if (f.name == name) return f;
    families_.push_back({id, name, 0.0, ""});
    return families_.back();
  }

  void record(int id, const std::string& name, double violation, const std::string& index) {
    auto& f = family(id, name);
    if (violation > f.max_violation) {
      f.max_violation = violation;
      f.worst_index = index;
    }
  }

  static std::string jt(int j, int t) {
    return "[j=" + std::to_string(j) + ",t=" + std::to_string(t) + "]";
  }
  static std::string ijt(int i, int j, int t) {
    return "[i=" + std::to_string(i) + ",j=" + std::to_string(j) + ",t=" + std::to_string(t) + "]";
  }

  void time_budget() {
    Eigen::VectorXd k(inst_.jobs()), kbar(inst_.jobs());
    for (int j = 0; j < inst_.jobs(); ++j) {
      const auto& s = inst_.stochastic[static_cast<std::size_t>(j)];
      k[j] = opt_.doc_time ? (*opt_.doc_time)[j] : s.doc_time.mean();
      kbar[j] = opt_.interview_time ? (*opt_.interview_time)[j] : s.interview_time.mean();
    }
    for (int t = 0; t < inst_.periods(); ++t) {
      double load = 0.0;
      for (int j = 0; j < inst_.jobs(); ++j)
        for (int i = 0; i < inst_.channels(); ++i) {
          const double a = plan_.applications[static_cast<std::size_t>(t)](i, j);
          const double x = plan_.interview_rate[static_cast<std::size_t>(t)](i, j);
          load += (k[j] + kbar[j] * x) * a;
        }
      record(12, "time_budget", load - inst_.config.recruit_time_budget[t],
             "[t=" + std::to_string(t) + "]");
    }
  }

  void flows() {
    for (int t = 0; t < inst_.periods(); ++t) {
      const auto ts = static_cast<std::size_t>(t);
      const Eigen::VectorXd c = plan_.headcount.col(t).matrix();
      const Eigen::VectorXd h = hires_needed(c, plan_.growth_rate.col(t).matrix(),
                                             plan_.attrition_rate.col(t).matrix(),
                                             plan_.advancement_rate[ts], inst_.transfer);
      const Eigen::VectorXd s =
          end_headcount(c, plan_.hired.col(t).matrix(), plan_.attrition_rate.col(t).matrix(),
                        plan_.advancement_rate[ts], inst_.transfer);
      for (int j = 0; j < inst_.jobs(); ++j) {
        record(13, "flow_hires", std::abs(plan_.hires_needed(j, t) - h[j]), jt(j, t));
        record(14, "flow_available", std::abs(plan_.end_headcount(j, t) - s[j]), jt(j, t));
      }
    }
  }

  void headcount_link() {
    for (int j = 0; j < inst_.jobs(); ++j) {
      record(15, "headcount_link", std::abs(plan_.headcount(j, 0) - inst_.initial_headcount[j]),
             jt(j, 0));
      for (int t = 1; t < inst_.periods(); ++t)
        record(15, "headcount_link",
               std::abs(plan_.headcount(j, t) - plan_.end_headcount(j, t - 1)), jt(j, t));
    }
  }

  void change_cap() {
    for (int t = 0; t < inst_.periods(); ++t) {
      const auto ts = static_cast<std::size_t>(t);
      for (int j = 0; j < inst_.jobs(); ++j) {
        const double cap = inst_.change_cap_at(j, t, plan_.headcount(j, t));
        double in = plan_.hired(j, t);
        double out_rate = 0.0;
        for (int l = 0; l < inst_.jobs(); ++l) {
          if (l == j) continue;
          if (inst_.transfer(l, j) == 1)
            in += plan_.headcount(l, t) * plan_.advancement_rate[ts](l, j);
          if (inst_.transfer(j, l) == 1) out_rate += plan_.advancement_rate[ts](j, l);
        }
        const double out = plan_.headcount(j, t) * (plan_.attrition_rate(j, t) + out_rate);
        record(16, "change_cap_in", in - cap, jt(j, t));
        record(16, "change_cap_out", out - cap, jt(j, t));
      }
    }
  }

  void acceptance_cap() {
    const double alpha1 = opt_.alpha1.value_or(inst_.config.alpha1);
    for (int j = 0; j < inst_.jobs(); ++j) {
      const double q =
          inst_.stochastic[static_cast<std::size_t>(j)].acceptance_rate.quantile(1.0 - alpha1);
      for (int t = 0; t < inst_.periods(); ++t) {
        const auto ts = static_cast<std::size_t>(t);
        double accepted = 0.0;
        for (int i = 0; i < inst_.channels(); ++i) {
          const double a = plan_.applications[ts](i, j);
          const double x = plan_.interview_rate[ts](i, j);
          const double y = plan_.offer_rate(j, t);
          accepted += opt_.acceptance_route == CheckOptions::AcceptanceRoute::TrueProduct
                          ? y * x * a
                          : lin::piecewise_product_value(x, y) * a;
        }
        record(17, "acceptance_cap", plan_.hired(j, t) - q * accepted, jt(j, t));
      }
    }
  }

  void shortage_indicator() {
    for (int j = 0; j < inst_.jobs(); ++j)
      for (int t = 0; t < inst_.periods(); ++t) {
        const double p = plan_.shortage_flag(j, t);
        const double z = plan_.hired(j, t), h = plan_.hires_needed(j, t);
        record(18, "shortage_indicator", (z - h) * p + (h - z) * (1.0 - p), jt(j, t));
      }
  }

  void channel_capacity() {
    for (int i = 0; i < inst_.channels(); ++i)
      for (int t = 0; t < inst_.periods(); ++t) {
        const double total = plan_.applications[static_cast<std::size_t>(t)].row(i).sum();
        record(19, "channel_capacity",
               total - inst_.channel_weight[i] * inst_.channel_capacity(i, t),
               "[i=" + std::to_string(i) + ",t=" + std::to_string(t) + "]");
      }
  }

  void application_window() {
    for (int j = 0; j < inst_.jobs(); ++j)
      for (int t = 0; t < inst_.periods(); ++t) {
        const double total = plan_.applications[static_cast<std::size_t>(t)].col(j).sum();
        record(20, "application_floor", 1.0 - total, jt(j, t));
        record(20, "application_cap", total - inst_.max_applications(j, t), jt(j, t));
      }
  }

  void interview_caps() {
    for (int i = 0; i < inst_.channels(); ++i)
      for (int t = 0; t < inst_.periods(); ++t) {
        const double total = plan_.interview_rate[static_cast<std::size_t>(t)].row(i).sum();
        record(21, "channel_interview_cap",
               total - inst_.channel_weight[i] * inst_.channel_interview_cap(i, t),
               "[i=" + std::to_string(i) + ",t=" + std::to_string(t) + "]");
      }
    for (int j = 0; j < inst_.jobs(); ++j)
      for (int t = 0; t < inst_.periods(); ++t) {
        const double total = plan_.interview_rate[static_cast<std::size_t>(t)].col(j).sum();
        record(22, "job_interview_cap", total - inst_.job_interview_cap(j, t), jt(j, t));
      }
  }

  void rate_couplings() {
    const double eps = inst_.config.epsilon, big_m = inst_.config.big_m;
    for (int t = 0; t < inst_.periods(); ++t) {
      const auto ts = static_cast<std::size_t>(t);
      for (int j = 0; j < inst_.jobs(); ++j) {
        double x_total = 0.0;
        for (int i = 0; i < inst_.channels(); ++i) {
          const double a = plan_.applications[ts](i, j);
          const double x = plan_.interview_rate[ts](i, j);
          const double y = plan_.offer_rate(j, t);
          record(23, "interview_activation", eps * a - x, ijt(i, j, t));
          record(23, "interview_deactivation", x - big_m * a * y, ijt(i, j, t));
          x_total += x;
        }
        const double y = plan_.offer_rate(j, t);
        record(24, "offer_activation", eps * x_total - y, jt(j, t));
        record(24, "offer_deactivation", y - big_m * x_total, jt(j, t));
        record(24, "offer_cap", y - inst_.max_offer_rate(j, t), jt(j, t));
      }
    }
  }

  void promotion_budget() {
    for (int t = 0; t < inst_.periods(); ++t)
      for (int j = 0; j < inst_.jobs(); ++j) {
        double out = 0.0;
        for (int k = 0; k < inst_.jobs(); ++k)
          if (k != j && inst_.transfer(j, k) == 1)
            out += plan_.advancement_rate[static_cast<std::size_t>(t)](j, k);
        record(25, "promotion_budget", out - 1.0, jt(j, t));
      }
  }

  void variable_domains() {
    for (int j = 0; j < inst_.jobs(); ++j)
      for (int t = 0; t < inst_.periods(); ++t) {
        const auto ts = static_cast<std::size_t>(t);
        record(26, "growth_bounds",
               std::max(-plan_.growth_rate(j, t), plan_.growth_rate(j, t) - inst_.max_growth(j, t)),
               jt(j, t));
        double unit = std::max(-plan_.attrition_rate(j, t), plan_.attrition_rate(j, t) - 1.0);
        unit = std::max(unit, std::max(-plan_.offer_rate(j, t), plan_.offer_rate(j, t) - 1.0));
        for (int i = 0; i < inst_.channels(); ++i) {
          const double x = plan_.interview_rate[ts](i, j);
          unit = std::max(unit, std::max(-x, x - 1.0));
        }
        for (int k = 0; k < inst_.jobs(); ++k) {
          if (k == j) continue;
          const double v = plan_.advancement_rate[ts](j, k);
          unit = std::max(unit, std::max(-v, v - 1.0));
        }
        record(27, "rate_bounds", unit, jt(j, t));

        double integral = 0.0;
        for (double value :
             {plan_.end_headcount(j, t), plan_.headcount(j, t), plan_.hired(j, t),
              plan_.hires_needed(j, t)}) {
          integral = std::max(integral, std::abs(value - std::round(value)));
          integral = std::max(integral, -value);
        }
        for (int i = 0; i < inst_.channels(); ++i) {
          const double a = plan_.applications[ts](i, j);
          integral = std::max(integral, std::abs(a - std::round(a)));
          integral = std::max(integral, -a);
        }
        record(28, "integrality", integral, jt(j, t));

        const double p = plan_.shortage_flag(j, t);
        record(29, "binary_flag", std::min(std::abs(p), std::abs(p - 1.0)), jt(j, t));
      }
  }

  const Instance& inst_;
  const Plan& plan_;
  const CheckOptions& opt_;
  std::vector<ConstraintReport> families_;
};

}  // namespace

FeasibilityReport check_feasibility(const Instance& inst, const Plan& plan, double tolerance,
                                    const CheckOptions& options) {
  const std::string err = plan.check_dimensions(inst);
  if (!err.empty()) throw std::invalid_argument("check_feasibility: " + err);
  return FeasibilityChecker(inst, plan, options).run(tolerance);
}

}  // namespace talentplan
