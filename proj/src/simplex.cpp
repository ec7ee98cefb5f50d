#include "talentplan/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include <Eigen/SparseLU>

namespace talentplan::milp {

Problem to_problem(const lin::MilpModel& m) {
  if (!m.resolved())
    throw std::invalid_argument("to_problem: stochastic templates are still pending");
  Problem p;
  const int rows = m.num_rows(), cols = m.cols();
  p.obj = Eigen::VectorXd::Zero(cols);
  for (const auto& e : m.objective) p.obj[e.col] += e.coef;
  p.lb.resize(cols);
  p.ub.resize(cols);
  p.is_integer.resize(static_cast<std::size_t>(cols), 0);
  for (int j = 0; j < cols; ++j) {
    p.lb[j] = m.vars[static_cast<std::size_t>(j)].lb;
    p.ub[j] = m.vars[static_cast<std::size_t>(j)].ub;
    p.is_integer[static_cast<std::size_t>(j)] =
        m.vars[static_cast<std::size_t>(j)].kind != model::VarKind::Continuous;
  }
  p.row_lo.resize(rows);
  p.row_hi.resize(rows);
  std::vector<Eigen::Triplet<double>> trip;
  for (int r = 0; r < rows; ++r) {
    const auto& row = m.rows[static_cast<std::size_t>(r)];
    p.row_lo[r] = row.lo;
    p.row_hi[r] = row.hi;
    for (const auto& e : row.entries) trip.emplace_back(r, e.col, e.coef);
  }
  p.A.resize(rows, cols);
  p.A.setFromTriplets(trip.begin(), trip.end());
  p.objective_constant = m.objective_constant;
  return p;
}

namespace {
constexpr double kPivotTol = 1e-9;
constexpr double kDropTol = 1e-12;
}  // namespace

struct SimplexEngine::Impl {
  struct Eta {
    int pos = -1;
    double pivot = 0.0;
    std::vector<std::pair<int, double>> nz;
  };

  const Problem& p_;
  SimplexOptions opt_;
  int m_ = 0, n_ = 0, ntot_ = 0;
  double ftol_ = 1e-9;
  double opt_tol_ = 1e-9;

  Eigen::SparseMatrix<double> W_;
  Eigen::VectorXd lower_, upper_, cost_;
  Eigen::VectorXd row_scale_, col_scale_;

  BasisState state_;
  std::vector<int> basic_;
  Eigen::VectorXd values_;

  std::unique_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>>> lu_;
  std::vector<Eta> etas_;
  bool repaired_once_ = false;
  bool initialized_ = false;
  long iterations_ = 0;
  int enter_dir_ = 1;

  Impl(const Problem& p, const SimplexOptions& opt) : p_(p), opt_(opt) {
    m_ = p.rows();
    n_ = p.cols();
    ntot_ = m_ + n_;
    build_scaled();
  }

  // ----- setup ------------------------------------------------------------

  void build_scaled() {
    row_scale_ = Eigen::VectorXd::Ones(m_);
    col_scale_ = Eigen::VectorXd::Ones(n_);
    if (opt_.scale && p_.A.nonZeros() > 0) geometric_scaling();

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(p_.A.nonZeros()) + static_cast<std::size_t>(m_));
    for (int j = 0; j < n_; ++j)
      for (Eigen::SparseMatrix<double>::InnerIterator it(p_.A, j); it; ++it)
        trip.emplace_back(it.row(), j, it.value() * row_scale_[it.row()] * col_scale_[j]);
    for (int r = 0; r < m_; ++r) trip.emplace_back(r, n_ + r, -1.0);
    W_.resize(m_, ntot_);
    W_.setFromTriplets(trip.begin(), trip.end());

    lower_.resize(ntot_);
    upper_.resize(ntot_);
    cost_.setZero(ntot_);
    for (int j = 0; j < n_; ++j) cost_[j] = p_.obj[j] * col_scale_[j];
    for (int r = 0; r < m_; ++r) {
      lower_[n_ + r] = p_.row_lo[r] * row_scale_[r];
      upper_[n_ + r] = p_.row_hi[r] * row_scale_[r];
    }
    apply_bounds(p_.lb, p_.ub);
  }

  void apply_bounds(const Eigen::VectorXd& lb, const Eigen::VectorXd& ub) {
    for (int j = 0; j < n_; ++j) {
      lower_[j] = lb[j] / col_scale_[j];
      upper_[j] = ub[j] / col_scale_[j];
    }
  }

  void geometric_scaling() {
    auto pow2round = [](double s) {
      if (!(s > 0.0) || !std::isfinite(s)) return 1.0;
      return std::exp2(std::round(std::log2(s)));
    };
    for (int sweep = 0; sweep < 2; ++sweep) {
      Eigen::VectorXd rmin = Eigen::VectorXd::Constant(m_, kInf);
      Eigen::VectorXd rmax = Eigen::VectorXd::Zero(m_);
      for (int j = 0; j < n_; ++j)
        for (Eigen::SparseMatrix<double>::InnerIterator it(p_.A, j); it; ++it) {
          const double a = std::abs(it.value()) * row_scale_[it.row()] * col_scale_[j];
          if (a == 0.0) continue;
          rmin[it.row()] = std::min(rmin[it.row()], a);
          rmax[it.row()] = std::max(rmax[it.row()], a);
        }
      for (int r = 0; r < m_; ++r)
        if (rmax[r] > 0.0) row_scale_[r] *= pow2round(1.0 / std::sqrt(rmin[r] * rmax[r]));
      Eigen::VectorXd cmin = Eigen::VectorXd::Constant(n_, kInf);
      Eigen::VectorXd cmax = Eigen::VectorXd::Zero(n_);
      for (int j = 0; j < n_; ++j)
        for (Eigen::SparseMatrix<double>::InnerIterator it(p_.A, j); it; ++it) {
          const double a = std::abs(it.value()) * row_scale_[it.row()] * col_scale_[j];
          if (a == 0.0) continue;
          cmin[j] = std::min(cmin[j], a);
          cmax[j] = std::max(cmax[j], a);
        }
      for (int j = 0; j < n_; ++j)
        if (cmax[j] > 0.0) col_scale_[j] *= pow2round(1.0 / std::sqrt(cmin[j] * cmax[j]));
    }
  }

  void init_basis(const BasisState* warm) {
    state_.assign(static_cast<std::size_t>(ntot_), kAtLower);
    basic_.clear();
    basic_.reserve(static_cast<std::size_t>(m_));

    bool use_warm = warm && static_cast<int>(warm->size()) == ntot_;
    if (use_warm) {
      int count = 0;
      for (int j = 0; j < ntot_; ++j)
        if ((*warm)[static_cast<std::size_t>(j)] == kBasic) ++count;
      if (count > m_) use_warm = false;
    }

    if (use_warm) {
      state_ = *warm;
      for (int j = 0; j < ntot_ && static_cast<int>(basic_.size()) < m_; ++j)
        if (state_[static_cast<std::size_t>(j)] == kBasic) basic_.push_back(j);
      for (int r = 0; r < m_ && static_cast<int>(basic_.size()) < m_; ++r)
        if (state_[static_cast<std::size_t>(n_ + r)] != kBasic) {
          state_[static_cast<std::size_t>(n_ + r)] = kBasic;
          basic_.push_back(n_ + r);
        }
    } else {
      for (int r = 0; r < m_; ++r) {
        basic_.push_back(n_ + r);
        state_[static_cast<std::size_t>(n_ + r)] = kBasic;
      }
    }

    values_.setZero(ntot_);
    rest_nonbasics();
    initialized_ = true;
  }

  void rest_nonbasics() {
    for (int j = 0; j < ntot_; ++j) {
      if (state_[static_cast<std::size_t>(j)] == kBasic) continue;
      values_[j] = nonbasic_resting_value(j);
      state_[static_cast<std::size_t>(j)] = resting_state(j, values_[j]);
    }
  }

  double nonbasic_resting_value(int j) const {
    const double lo = lower_[j], hi = upper_[j];
    const std::int8_t s = state_[static_cast<std::size_t>(j)];
    if (s == kAtUpper && std::isfinite(hi)) return hi;
    if (s == kAtLower && std::isfinite(lo)) return lo;
    if (std::isfinite(lo) && std::isfinite(hi)) return std::abs(lo) <= std::abs(hi) ? lo : hi;
    if (std::isfinite(lo)) return lo;
    if (std::isfinite(hi)) return hi;
    return 0.0;
  }

  std::int8_t resting_state(int j, double v) const {
    if (std::isfinite(lower_[j]) && v == lower_[j]) return kAtLower;
    if (std::isfinite(upper_[j]) && v == upper_[j]) return kAtUpper;
    return kFreeNB;
  }

  // ----- factorization ------------------------------------------------------

  bool refactor() {
    Eigen::SparseMatrix<double> B(m_, m_);
    std::vector<Eigen::Triplet<double>> trip;
    for (int i = 0; i < m_; ++i) {
      const int j = basic_[static_cast<std::size_t>(i)];
      for (Eigen::SparseMatrix<double>::InnerIterator it(W_, j); it; ++it)
        trip.emplace_back(it.row(), i, it.value());
    }
    B.setFromTriplets(trip.begin(), trip.end());
    lu_ = std::make_unique<Eigen::SparseLU<Eigen::SparseMatrix<double>>>();
    lu_->compute(B);
    if (lu_->info() != Eigen::Success) {
      if (repaired_once_) return false;
      repaired_once_ = true;
      init_basis(nullptr);
      return refactor();
    }
    etas_.clear();
    recompute_basics();
    return true;
  }

  void recompute_basics() {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
    for (int j = 0; j < ntot_; ++j) {
      if (state_[static_cast<std::size_t>(j)] == kBasic) continue;
      const double v = values_[j];
      if (v == 0.0) continue;
      for (Eigen::SparseMatrix<double>::InnerIterator it(W_, j); it; ++it)
        rhs[it.row()] -= it.value() * v;
    }
    ftran(rhs);
    for (int i = 0; i < m_; ++i) values_[basic_[static_cast<std::size_t>(i)]] = rhs[i];
  }

  void ftran(Eigen::VectorXd& v) const {
    Eigen::VectorXd tmp = lu_->solve(v);
    v.swap(tmp);
    for (const auto& e : etas_) {
      double vp = v[e.pos];
      if (vp == 0.0) continue;
      vp /= e.pivot;
      for (const auto& [i, val] : e.nz)
        if (i != e.pos) v[i] -= val * vp;
      v[e.pos] = vp;
    }
  }

  void btran(Eigen::VectorXd& y) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double acc = y[it->pos];
      for (const auto& [i, val] : it->nz)
        if (i != it->pos) acc -= val * y[i];
      y[it->pos] = acc / it->pivot;
    }
    Eigen::VectorXd tmp = lu_->adjoint().solve(y);
    y.swap(tmp);
  }

  // ----- feasibility --------------------------------------------------------

  double infeasibility(int j) const {
    const double v = values_[j];
    if (v < lower_[j] - ftol_) return lower_[j] - v;
    if (v > upper_[j] + ftol_) return v - upper_[j];
    return 0.0;
  }

  bool primal_feasible() const {
    for (int i = 0; i < m_; ++i)
      if (infeasibility(basic_[static_cast<std::size_t>(i)]) > 0.0) return false;
    return true;
  }

  // ----- iterations ---------------------------------------------------------

  Eigen::VectorXd phase_costs(bool phase1) const {
    if (!phase1) return cost_;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(ntot_);
    for (int i = 0; i < m_; ++i) {
      const int j = basic_[static_cast<std::size_t>(i)];
      if (values_[j] < lower_[j] - ftol_)
        c[j] = 1.0;
      else if (values_[j] > upper_[j] + ftol_)
        c[j] = -1.0;
    }
    return c;
  }

  double phase_objective(bool phase1) const {
    if (phase1) {
      double total = 0.0;
      for (int i = 0; i < m_; ++i) total += infeasibility(basic_[static_cast<std::size_t>(i)]);
      return -total;
    }
    double obj = 0.0;
    for (int j = 0; j < ntot_; ++j) obj += cost_[j] * values_[j];
    return obj;
  }

  LpStatus phase(bool phase1) {
    int stalled = 0;
    bool bland = false;
    double last_obj = phase_objective(phase1);
    while (true) {
      if (iterations_ >= opt_.max_iters) return LpStatus::IterLimit;
      if (phase1 && primal_feasible()) return LpStatus::Optimal;

      const Eigen::VectorXd c = phase_costs(phase1);
      Eigen::VectorXd y(m_);
      for (int i = 0; i < m_; ++i) y[i] = c[basic_[static_cast<std::size_t>(i)]];
      btran(y);

      int enter = -1;
      double best = 0.0;
      for (int j = 0; j < ntot_; ++j) {
        if (state_[static_cast<std::size_t>(j)] == kBasic) continue;
        if (lower_[j] == upper_[j]) continue;
        double d = c[j];
        for (Eigen::SparseMatrix<double>::InnerIterator it(W_, j); it; ++it)
          d -= it.value() * y[it.row()];
        const std::int8_t s = state_[static_cast<std::size_t>(j)];
        const bool up_ok = (s == kAtLower || s == kFreeNB) && d > opt_tol_;
        const bool down_ok = (s == kAtUpper || s == kFreeNB) && d < -opt_tol_;
        if (!up_ok && !down_ok) continue;
        if (bland) {
          enter = j;
          enter_dir_ = up_ok ? 1 : -1;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          enter = j;
          enter_dir_ = up_ok ? 1 : -1;
        }
      }
      if (enter < 0) {
        if (phase1) return primal_feasible() ? LpStatus::Optimal : LpStatus::Infeasible;
        return LpStatus::Optimal;
      }

      Eigen::VectorXd w = Eigen::VectorXd::Zero(m_);
      for (Eigen::SparseMatrix<double>::InnerIterator it(W_, enter); it; ++it)
        w[it.row()] = it.value();
      ftran(w);
      const int outcome = ratio_and_pivot(enter, w, phase1, bland);
      ++iterations_;
      if (outcome == kUnbounded) return phase1 ? LpStatus::Numerical : LpStatus::Unbounded;
      if (outcome == kNumericalTrouble) {
        if (!refactor()) return LpStatus::Numerical;
        continue;
      }

      const double obj = phase_objective(phase1);
      if (obj > last_obj + 1e-12) {
        stalled = 0;
        bland = false;
        last_obj = obj;
      } else if (++stalled > 200) {
        bland = true;
      }
      if (static_cast<int>(etas_.size()) >= opt_.refactor_every)
        if (!refactor()) return LpStatus::Numerical;
    }
  }

  static constexpr int kPivoted = 0, kFlipped = 1, kUnbounded = 2, kNumericalTrouble = 3;

  int ratio_and_pivot(int enter, const Eigen::VectorXd& w, bool phase1, bool bland) {
    const int dir = enter_dir_;
    double theta = kInf;
    int leave_pos = -1;
    double leave_pivot = 0.0;
    double leave_bound = 0.0;
    std::int8_t leave_state = kAtLower;

    for (int i = 0; i < m_; ++i) {
      const double wi = w[i];
      if (std::abs(wi) < kPivotTol) continue;
      const int j = basic_[static_cast<std::size_t>(i)];
      const double delta = -dir * wi;
      const double v = values_[j];
      double cap = kInf;
      double bound = 0.0;
      std::int8_t new_state = kAtLower;
      if (phase1 && v < lower_[j] - ftol_) {
        if (delta > 0.0) {
          cap = (lower_[j] - v) / delta;
          bound = lower_[j];
          new_state = kAtLower;
        }
      } else if (phase1 && v > upper_[j] + ftol_) {
        if (delta < 0.0) {
          cap = (upper_[j] - v) / delta;
          bound = upper_[j];
          new_state = kAtUpper;
        }
      } else if (delta > 0.0) {
        if (std::isfinite(upper_[j])) {
          cap = (upper_[j] - v) / delta;
          bound = upper_[j];
          new_state = kAtUpper;
        }
      } else {
        if (std::isfinite(lower_[j])) {
          cap = (lower_[j] - v) / delta;
          bound = lower_[j];
          new_state = kAtLower;
        }
      }
      if (cap == kInf) continue;
      cap = std::max(cap, 0.0);
      bool better = cap < theta - 1e-10;
      if (!better && leave_pos >= 0 && cap < theta + 1e-10) {
        better = bland ? j < basic_[static_cast<std::size_t>(leave_pos)]
                       : std::abs(wi) > std::abs(leave_pivot);
      } else if (!better && leave_pos < 0 && cap < theta + 1e-10) {
        better = true;
      }
      if (better) {
        theta = std::min(cap, theta);
        leave_pos = i;
        leave_pivot = wi;
        leave_bound = bound;
        leave_state = new_state;
      }
    }

    double own_cap = kInf;
    if (std::isfinite(lower_[enter]) && std::isfinite(upper_[enter]))
      own_cap = upper_[enter] - lower_[enter];
    if (own_cap < theta - 1e-10) {
      values_[enter] += dir * own_cap;
      for (int i = 0; i < m_; ++i) {
        if (std::abs(w[i]) < kDropTol) continue;
        values_[basic_[static_cast<std::size_t>(i)]] -= dir * own_cap * w[i];
      }
      state_[static_cast<std::size_t>(enter)] =
          state_[static_cast<std::size_t>(enter)] == kAtLower ? kAtUpper : kAtLower;
      return kFlipped;
    }

    if (leave_pos < 0) return kUnbounded;
    if (std::abs(leave_pivot) < kPivotTol) return kNumericalTrouble;

    values_[enter] += dir * theta;
    for (int i = 0; i < m_; ++i) {
      if (std::abs(w[i]) < kDropTol) continue;
      values_[basic_[static_cast<std::size_t>(i)]] -= dir * theta * w[i];
    }
    const int leave = basic_[static_cast<std::size_t>(leave_pos)];
    values_[leave] = leave_bound;
    state_[static_cast<std::size_t>(leave)] = leave_state;
    basic_[static_cast<std::size_t>(leave_pos)] = enter;
    state_[static_cast<std::size_t>(enter)] = kBasic;

    Eta eta;
    eta.pos = leave_pos;
    eta.pivot = w[leave_pos];
    for (int i = 0; i < m_; ++i)
      if (std::abs(w[i]) > kDropTol) eta.nz.emplace_back(i, w[i]);
    etas_.push_back(std::move(eta));
    return kPivoted;
  }

  // ----- output ---------------------------------------------------------------

  LpSolution failure() {
    LpSolution sol;
    sol.status = LpStatus::Numerical;
    sol.iterations = iterations_;
    return sol;
  }

  LpSolution finish(LpStatus status) {
    LpSolution sol;
    sol.status = status;
    sol.iterations = iterations_;
    sol.basis = state_;

    sol.x.resize(n_);
    for (int j = 0; j < n_; ++j) sol.x[j] = values_[j] * col_scale_[j];

    sol.duals = Eigen::VectorXd::Zero(m_);
    sol.reduced_costs = Eigen::VectorXd::Zero(n_);
    if (status == LpStatus::Optimal || status == LpStatus::IterLimit ||
        status == LpStatus::Infeasible) {
      Eigen::VectorXd y(m_);
      for (int i = 0; i < m_; ++i) y[i] = cost_[basic_[static_cast<std::size_t>(i)]];
      btran(y);
      for (int r = 0; r < m_; ++r) sol.duals[r] = y[r] * row_scale_[r];
      for (int j = 0; j < n_; ++j) {
        double d = p_.obj[j];
        for (Eigen::SparseMatrix<double>::InnerIterator it(p_.A, j); it; ++it)
          d -= it.value() * sol.duals[it.row()];
        sol.reduced_costs[j] = d;
      }
    }
    if (status == LpStatus::Optimal) {
      sol.objective = p_.objective_constant;
      for (int j = 0; j < n_; ++j) sol.objective += p_.obj[j] * sol.x[j];
    }
    return sol;
  }

  LpSolution run(const Eigen::VectorXd& lb, const Eigen::VectorXd& ub, const BasisState* basis) {
    apply_bounds(lb, ub);
    iterations_ = 0;
    if (basis || !initialized_ || !lu_) {
      init_basis(basis);
      if (!refactor()) return failure();
    } else {
      // Same basis and factorization as the previous solve; only bounds moved.
      rest_nonbasics();
      recompute_basics();
    }

    LpStatus status = LpStatus::Optimal;
    if (!primal_feasible()) {
      status = phase(/*phase1=*/true);
      if (status != LpStatus::Optimal) return finish(status);
      if (!primal_feasible()) return finish(LpStatus::Infeasible);
    }
    status = phase(/*phase1=*/false);

    if (status == LpStatus::Optimal) {
      // A clean factorization of the final basis removes product-form drift
      // before values are read off and the state is reused downstream.
      if (!refactor()) return failure();
      if (!primal_feasible()) {
        status = phase(/*phase1=*/true);
        if (status == LpStatus::Optimal && primal_feasible())
          status = phase(/*phase1=*/false);
        else
          status = LpStatus::Infeasible;
      }
    }
    return finish(status);
  }
};

SimplexEngine::SimplexEngine(const Problem& p, const SimplexOptions& options)
    : impl_(std::make_unique<Impl>(p, options)) {}
SimplexEngine::~SimplexEngine() = default;
SimplexEngine::SimplexEngine(SimplexEngine&&) noexcept = default;
SimplexEngine& SimplexEngine::operator=(SimplexEngine&&) noexcept = default;

LpSolution SimplexEngine::solve(const Eigen::VectorXd& lb, const Eigen::VectorXd& ub,
                                const BasisState* basis) {
  return impl_->run(lb, ub, basis);
}

LpSolution solve_lp(const Problem& p, const SimplexOptions& options, const BasisState* warm) {
  if (p.rows() == 0) {
    Problem padded = p;
    padded.A.resize(1, p.cols());
    padded.row_lo = Eigen::VectorXd::Constant(1, -kInf);
    padded.row_hi = Eigen::VectorXd::Constant(1, kInf);
    BasisState warm_padded;
    const BasisState* warm_ptr = nullptr;
    if (warm && static_cast<int>(warm->size()) == p.cols()) {
      warm_padded = *warm;
      warm_padded.push_back(kBasic);
      warm_ptr = &warm_padded;
    }
    SimplexEngine engine(padded, options);
    LpSolution sol = engine.solve(padded.lb, padded.ub, warm_ptr);
    if (!sol.basis.empty()) sol.basis.pop_back();
    sol.duals.resize(0);
    return sol;
  }
  SimplexEngine engine(p, options);
  return engine.solve(p.lb, p.ub, warm);
}

}  // namespace talentplan::milp
