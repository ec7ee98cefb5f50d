#include "talentplan/instance.hpp"

#include <cmath>
#include <sstream>

namespace talentplan {

namespace {

std::string jt(int j, int t) {
  std::ostringstream os;
  os << "[j=" << j << ",t=" << t << "]";
  return os.str();
}

std::string it(int i, int t) {
  std::ostringstream os;
  os << "[i=" << i << ",t=" << t << "]";
  return os.str();
}

class Checker {
 public:
  explicit Checker(const Instance& inst) : inst_(inst) {}

  std::vector<Violation> run() {
    const auto& h = inst_.horizon;
    if (h.channels < 1) add("horizon.channels", "", "must be >= 1");
    if (h.jobs < 1) add("horizon.jobs", "", "must be >= 1");
    if (h.periods < 1) add("horizon.periods", "", "must be >= 1");
    if (!out_.empty()) return out_;  // dimension checks below assume a sane horizon

    check_vector("initial_headcount", inst_.initial_headcount, h.jobs);
    check_job_matrix("excess_cost", inst_.excess_cost);
    check_job_matrix("shortage_cost", inst_.shortage_cost);
    check_job_matrix("max_applications", inst_.max_applications);
    check_job_matrix("job_interview_cap", inst_.job_interview_cap);
    check_job_matrix("max_offer_rate", inst_.max_offer_rate);
    check_job_matrix("max_growth", inst_.max_growth);
    check_job_matrix("revenue", inst_.revenue);
    check_job_matrix("salary", inst_.salary);
    check_job_matrix("interview_cost", inst_.interview_cost);
    check_channel_matrix("channel_capacity", inst_.channel_capacity);
    check_channel_matrix("channel_interview_cap", inst_.channel_interview_cap);
    check_vector("channel_weight", inst_.channel_weight, h.channels);
    if (!out_.empty()) return out_;

    for (int j = 0; j < h.jobs; ++j) {
      const double v = inst_.initial_headcount[j];
      if (v < 0.0 || std::abs(v - std::round(v)) > 1e-9)
        add("initial_headcount", "[j=" + std::to_string(j) + "]",
            "must be a nonnegative integer");
    }
    nonneg("excess_cost", inst_.excess_cost);
    nonneg("shortage_cost", inst_.shortage_cost);
    nonneg("revenue", inst_.revenue);
    nonneg("salary", inst_.salary);
    nonneg("interview_cost", inst_.interview_cost);
    rate01("job_interview_cap", inst_.job_interview_cap);
    rate01("max_offer_rate", inst_.max_offer_rate);
    rate01("max_growth", inst_.max_growth);
    for (int j = 0; j < h.jobs; ++j)
      for (int t = 0; t < h.periods; ++t)
        if (inst_.max_applications(j, t) < 1.0)
          add("max_applications", jt(j, t), "must be >= 1");

    if (inst_.change_cap_mode == ChangeCapMode::Constant) {
      check_job_matrix("change_cap", inst_.change_cap);
      if (out_.empty()) nonneg("change_cap", inst_.change_cap);
    } else if (!(inst_.change_cap_fraction > 0.0)) {
      add("change_cap_fraction", "", "must be > 0 in fraction-of-current mode");
    }

    for (int i = 0; i < h.channels; ++i) {
      const double w = inst_.channel_weight.size() > i ? inst_.channel_weight[i] : 0.0;
      if (!(w > 0.0 && w <= 1.0))
        add("channel_weight", "[i=" + std::to_string(i) + "]", "must lie in (0,1]");
      for (int t = 0; t < h.periods; ++t) {
        if (inst_.channel_capacity(i, t) < 0.0)
          add("channel_capacity", it(i, t), "must be >= 0");
        const double beta = inst_.channel_interview_cap(i, t);
        if (!(beta >= 0.0 && beta <= 1.0))
          add("channel_interview_cap", it(i, t), "must lie in [0,1]");
      }
    }

    check_transfer();
    check_stochastic();
    check_config();
    return out_;
  }

 private:
  void add(std::string field, std::string index, std::string message) {
    out_.push_back({std::move(field), std::move(index), std::move(message)});
  }

  void check_vector(const std::string& name, const Eigen::VectorXd& v, int n) {
    if (v.size() != n) {
      std::ostringstream os;
      os << "expected length " << n << ", got " << v.size();
      add(name, "", os.str());
    }
  }

  void check_job_matrix(const std::string& name, const Eigen::ArrayXXd& m) {
    if (m.rows() != inst_.horizon.jobs || m.cols() != inst_.horizon.periods) {
      std::ostringstream os;
      os << "expected " << inst_.horizon.jobs << "x" << inst_.horizon.periods << ", got "
         << m.rows() << "x" << m.cols();
      add(name, "", os.str());
    }
  }

  void check_channel_matrix(const std::string& name, const Eigen::ArrayXXd& m) {
    if (m.rows() != inst_.horizon.channels || m.cols() != inst_.horizon.periods) {
      std::ostringstream os;
      os << "expected " << inst_.horizon.channels << "x" << inst_.horizon.periods << ", got "
         << m.rows() << "x" << m.cols();
      add(name, "", os.str());
    }
  }

  void nonneg(const std::string& name, const Eigen::ArrayXXd& m) {
    for (int j = 0; j < m.rows(); ++j)
      for (int t = 0; t < m.cols(); ++t)
        if (m(j, t) < 0.0) add(name, jt(j, t), "must be >= 0");
  }

  void rate01(const std::string& name, const Eigen::ArrayXXd& m) {
    for (int j = 0; j < m.rows(); ++j)
      for (int t = 0; t < m.cols(); ++t)
        if (!(m(j, t) >= 0.0 && m(j, t) <= 1.0)) add(name, jt(j, t), "must lie in [0,1]");
  }

  void check_transfer() {
    const int n = inst_.horizon.jobs;
    if (inst_.transfer.rows() != n || inst_.transfer.cols() != n) {
      add("transfer", "", "must be jobs x jobs");
      return;
    }
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;  // diagonal is never read
        const int v = inst_.transfer(a, b);
        if (v != 0 && v != 1) {
          add("transfer", "[" + std::to_string(a) + "," + std::to_string(b) + "]",
              "entries must be 0 or 1");
          return;
        }
        if (b > a && inst_.transfer(a, b) != inst_.transfer(b, a)) {
          add("transfer", "[" + std::to_string(a) + "," + std::to_string(b) + "]",
              "promotion/demotion adjacency must be symmetric");
        }
      }
    }
  }

  void check_stochastic() {
    if (static_cast<int>(inst_.stochastic.size()) != inst_.horizon.jobs) {
      add("stochastic", "", "expected one spec per job");
      return;
    }
    for (int j = 0; j < inst_.horizon.jobs; ++j) {
      const auto& s = inst_.stochastic[static_cast<std::size_t>(j)];
      const std::string idx = "[j=" + std::to_string(j) + "]";
      for (const auto& [name, d] :
           {std::pair{"doc_time", &s.doc_time}, {"interview_time", &s.interview_time},
            {"acceptance_rate", &s.acceptance_rate}}) {
        const std::string err = d->validate();
        if (!err.empty()) add(std::string("stochastic.") + name, idx, err);
      }
      // Normal time parameters are admitted despite their unbounded support:
      // the closed-form chance treatment exists exactly for that family.
      if (s.doc_time.kind != dist::Kind::Normal && s.doc_time.support_lo() < 0.0)
        add("stochastic.doc_time", idx, "support must be nonnegative");
      if (s.interview_time.kind != dist::Kind::Normal && s.interview_time.support_lo() < 0.0)
        add("stochastic.interview_time", idx, "support must be nonnegative");
      if (s.acceptance_rate.support_lo() < 0.0 || s.acceptance_rate.support_hi() > 1.0)
        add("stochastic.acceptance_rate", idx, "support must lie in [0,1]");
    }
  }

  void check_config() {
    const auto& c = inst_.config;
    if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) add("config.epsilon", "", "must lie in (0,1)");
    if (!(c.big_m > 1.0)) add("config.big_m", "", "must be > 1");
    if (c.recruit_time_budget.size() != inst_.horizon.periods)
      add("config.recruit_time_budget", "", "expected one value per period");
    else
      for (int t = 0; t < inst_.horizon.periods; ++t)
        if (c.recruit_time_budget[t] < 0.0)
          add("config.recruit_time_budget", "[t=" + std::to_string(t) + "]", "must be >= 0");
    if (!(c.alpha1 > 0.0 && c.alpha1 < 1.0)) add("config.alpha1", "", "must lie in (0,1)");
    if (!(c.alpha2 > 0.0 && c.alpha2 < 1.0)) add("config.alpha2", "", "must lie in (0,1)");
    if (c.sample_size < 1) add("config.sample_size", "", "must be >= 1");
  }

  const Instance& inst_;
  std::vector<Violation> out_;
};

}  // namespace

std::string Instance::job_name(int j) const {
  if (j < static_cast<int>(job_names.size())) return job_names[static_cast<std::size_t>(j)];
  return "job" + std::to_string(j);
}

std::string Instance::channel_name(int i) const {
  if (i < static_cast<int>(channel_names.size()))
    return channel_names[static_cast<std::size_t>(i)];
  return "channel" + std::to_string(i);
}

double Instance::change_cap_at(int j, int t, double c) const {
  return change_cap_mode == ChangeCapMode::Constant ? change_cap(j, t)
                                                    : change_cap_fraction * c;
}

std::vector<std::pair<int, int>> Instance::transfer_arcs() const {
  std::vector<std::pair<int, int>> arcs;
  for (int from = 0; from < horizon.jobs; ++from)
    for (int to = 0; to < horizon.jobs; ++to)
      if (from != to && transfer(from, to) == 1) arcs.emplace_back(from, to);
  return arcs;
}

std::vector<Violation> validate_instance(const Instance& instance) {
  return Checker(instance).run();
}

}  // namespace talentplan
