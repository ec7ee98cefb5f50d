#include "talentplan/branch_and_bound.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <queue>
#include <stdexcept>

namespace talentplan::milp {

namespace {

constexpr double kIntTol = 1e-6;

struct BranchPath {
  int col = -1;
  double lb = 0.0, ub = 0.0;
  std::shared_ptr<const BranchPath> parent;
  std::shared_ptr<const BasisState> warm;

  // Deep chains die iteratively; naive recursive destruction overflows the
  // stack on long dives.
  ~BranchPath() {
    std::shared_ptr<const BranchPath> p = std::move(parent);
    while (p && p.use_count() == 1) {
      std::shared_ptr<const BranchPath> next =
          std::move(const_cast<BranchPath*>(p.get())->parent);
      p = std::move(next);
    }
  }
};

struct OpenNode {
  double bound = kInf;
  long id = 0;
  std::shared_ptr<const BranchPath> path;
};

struct NodeOrder {
  bool operator()(const OpenNode& a, const OpenNode& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;  // max-heap on bound
    return a.id > b.id;                                // then first-created first
  }
};

// Folds rows with a single structural entry into the variable's bounds.
// Returns false when that proves the problem infeasible.
bool fold_singleton_rows(Problem& p) {
  std::vector<char> keep(static_cast<std::size_t>(p.rows()), 1);
  std::vector<int> count(static_cast<std::size_t>(p.rows()), 0);
  std::vector<int> col_of(static_cast<std::size_t>(p.rows()), -1);
  std::vector<double> coef_of(static_cast<std::size_t>(p.rows()), 0.0);
  for (int j = 0; j < p.cols(); ++j)
    for (Eigen::SparseMatrix<double>::InnerIterator it(p.A, j); it; ++it) {
      ++count[static_cast<std::size_t>(it.row())];
      col_of[static_cast<std::size_t>(it.row())] = j;
      coef_of[static_cast<std::size_t>(it.row())] = it.value();
    }
  bool any = false;
  for (int r = 0; r < p.rows(); ++r) {
    if (count[static_cast<std::size_t>(r)] != 1) continue;
    const int j = col_of[static_cast<std::size_t>(r)];
    const double a = coef_of[static_cast<std::size_t>(r)];
    if (a == 0.0) continue;
    double lo = p.row_lo[r] / a, hi = p.row_hi[r] / a;
    if (a < 0.0) std::swap(lo, hi);
    if (p.is_integer[static_cast<std::size_t>(j)]) {
      if (std::isfinite(lo)) lo = std::ceil(lo - 1e-9);
      if (std::isfinite(hi)) hi = std::floor(hi + 1e-9);
    }
    p.lb[j] = std::max(p.lb[j], lo);
    p.ub[j] = std::min(p.ub[j], hi);
    if (p.lb[j] > p.ub[j] + 1e-9) return false;
    keep[static_cast<std::size_t>(r)] = 0;
    any = true;
  }
  if (!any) return true;

  std::vector<int> new_row(static_cast<std::size_t>(p.rows()), -1);
  int rows = 0;
  for (int r = 0; r < p.rows(); ++r)
    if (keep[static_cast<std::size_t>(r)]) new_row[static_cast<std::size_t>(r)] = rows++;
  std::vector<Eigen::Triplet<double>> trip;
  for (int j = 0; j < p.cols(); ++j)
    for (Eigen::SparseMatrix<double>::InnerIterator it(p.A, j); it; ++it) {
      const int nr = new_row[static_cast<std::size_t>(it.row())];
      if (nr >= 0) trip.emplace_back(nr, j, it.value());
    }
  Eigen::VectorXd lo(rows), hi(rows);
  for (int r = 0; r < p.rows(); ++r) {
    const int nr = new_row[static_cast<std::size_t>(r)];
    if (nr >= 0) {
      lo[nr] = p.row_lo[r];
      hi[nr] = p.row_hi[r];
    }
  }
  p.A.resize(rows, p.cols());
  p.A.setFromTriplets(trip.begin(), trip.end());
  p.row_lo = lo;
  p.row_hi = hi;
  return true;
}

class BranchAndBound {
 public:
  BranchAndBound(const Problem& p, const Limits& limits) : p_(p), limits_(limits) {
    if (!fold_singleton_rows(p_)) presolve_infeasible_ = true;
    if (p_.rows() == 0) {
      // Every row folded into bounds: pad with a vacuous row so the LP
      // machinery keeps a nonempty basis.
      p_.A.resize(1, p_.cols());
      p_.row_lo = Eigen::VectorXd::Constant(1, -kInf);
      p_.row_hi = Eigen::VectorXd::Constant(1, kInf);
    }
    root_lb_ = p_.lb;
    root_ub_ = p_.ub;
  }

  // Rounding dive: pin the most fractional integer to its nearest value and
  // re-solve, repeating until the relaxation is integral (an incumbent) or
  // infeasible. One level of backtracking: a pin that kills the relaxation is
  // retried in the opposite direction. Failures leave the tree untouched.
  void dive_heuristic(const Eigen::VectorXd& lb0, const Eigen::VectorXd& ub0) {
    if (!heuristic_engine_)
      heuristic_engine_ = std::make_unique<SimplexEngine>(p_, lp_options_);
    Eigen::VectorXd lb = lb0, ub = ub0;
    const BasisState* start = nullptr;
    int last_col = -1;
    double last_lb = 0.0, last_ub = 0.0;
    bool retried = false;
    int backtracks_left = 100;
    for (int round = 0; round <= 2 * p_.cols(); ++round) {
      const LpSolution lp = heuristic_engine_->solve(lb, ub, start);
      start = nullptr;
      if (lp.status != LpStatus::Optimal) {
        if (last_col < 0 || retried || --backtracks_left < 0) return;
        // undo the last pin and push the variable the other way
        const double pinned = lb[last_col];  // lb == ub after a pin
        lb[last_col] = last_lb;
        ub[last_col] = last_ub;
        if (pinned + 1.0 <= last_ub)
          lb[last_col] = pinned + 1.0;
        else if (pinned - 1.0 >= last_lb)
          ub[last_col] = pinned - 1.0;
        else
          return;
        retried = true;
        continue;
      }
      if (has_incumbent_ && lp.objective <= incumbent_obj_ + fathom_slack()) return;
      const int fractional = most_fractional(lp.x);
      if (fractional < 0) {
        if (!has_incumbent_ || lp.objective > incumbent_obj_) {
          has_incumbent_ = true;
          incumbent_obj_ = lp.objective;
          incumbent_x_ = lp.x;
        }
        return;
      }
      const double v = std::round(lp.x[fractional]);
      last_col = fractional;
      last_lb = lb[fractional];
      last_ub = ub[fractional];
      retried = false;
      lb[fractional] = std::max(lb[fractional], v);
      ub[fractional] = std::min(ub[fractional], v);
      if (lb[fractional] > ub[fractional]) return;
    }
  }

  // Accepts the user-provided starting point as the incumbent when it is
  // integral and feasible for the (presolved) problem.
  void seed_incumbent(const Eigen::VectorXd& x) {
    if (x.size() != static_cast<Eigen::Index>(p_.cols())) return;
    for (int j = 0; j < p_.cols(); ++j) {
      if (x[j] < p_.lb[j] - 1e-6 || x[j] > p_.ub[j] + 1e-6) return;
      if (p_.is_integer[static_cast<std::size_t>(j)] &&
          std::abs(x[j] - std::round(x[j])) > kIntTol)
        return;
    }
    const Eigen::VectorXd act = p_.A * x;
    for (int r = 0; r < p_.rows(); ++r)
      if (act[r] < p_.row_lo[r] - 1e-6 || act[r] > p_.row_hi[r] + 1e-6) return;
    has_incumbent_ = true;
    incumbent_obj_ = p_.obj.dot(x) + p_.objective_constant;
    incumbent_x_ = x;
  }

  MilpSolution run() {
    const auto t0 = std::chrono::steady_clock::now();
    MilpSolution out;
    if (presolve_infeasible_) {
      out.status = MilpStatus::Infeasible;
      return out;
    }
    if (limits_.start) seed_incumbent(*limits_.start);

    auto engine = std::make_unique<SimplexEngine>(p_, lp_options_);
    std::priority_queue<OpenNode, std::vector<OpenNode>, NodeOrder> open;
    open.push({kInf, next_id_++, nullptr});
    bool have_dive = false;
    OpenNode dive;

    MilpStatus status = MilpStatus::Optimal;
    while (true) {
      if (!have_dive && open.empty()) break;
      if (nodes_ >= limits_.max_nodes) {
        status = MilpStatus::NodeLimit;
        break;
      }
      OpenNode node;
      bool continue_state = false;
      if (have_dive) {
        node = dive;
        have_dive = false;
        // A dive child starts from the state the engine is already in.
        continue_state = true;
      } else {
        node = open.top();
        open.pop();
      }
      // Prune against the incumbent before spending an LP on it.
      if (has_incumbent_ && node.bound <= incumbent_obj_ + fathom_slack()) continue;

      apply_bounds(node.path);
      const BasisState* warm = nullptr;
      if (!continue_state && node.path && node.path->warm) warm = node.path->warm.get();
      LpSolution lp = engine->solve(work_lb_, work_ub_, warm);
      if (lp.status == LpStatus::Numerical || lp.status == LpStatus::IterLimit) {
        engine = std::make_unique<SimplexEngine>(p_, lp_options_);
        lp = engine->solve(work_lb_, work_ub_, nullptr);
      }
      ++nodes_;

      if (lp.status == LpStatus::Unbounded)
        throw std::runtime_error("solve_milp: unbounded relaxation");
      if (lp.status == LpStatus::Numerical || lp.status == LpStatus::IterLimit)
        throw std::runtime_error("solve_milp: LP relaxation failed numerically");

      if (limits_.record_history) {
        const double global =
            std::min(node.bound, std::max(lp.status == LpStatus::Optimal ? lp.objective : -kInf,
                                          peek_bound(open)));
        record_bound(std::isfinite(global) ? global : node.bound);
      }

      if (lp.status == LpStatus::Infeasible) continue;
      const double bound = lp.objective;
      if (has_incumbent_ && bound <= incumbent_obj_ + fathom_slack()) continue;

      // Stop as soon as the proven gap is within the target.
      if (has_incumbent_) {
        const double best = std::max(bound, peek_bound(open));
        if (relative_gap(best) <= limits_.rel_gap) {
          status = relative_gap(best) <= 1e-6 + 1e-12 ? MilpStatus::Optimal
                                                      : MilpStatus::GapLimit;
          final_bound_ = best;
          break;
        }
      }

      // Hunt for an incumbent from this relaxation before branching.
      if (nodes_ == 1 || (nodes_ % 200 == 0 && !continue_state))
        dive_heuristic(work_lb_, work_ub_);
      if (has_incumbent_ && bound <= incumbent_obj_ + fathom_slack()) continue;

      const int branch_col = most_fractional(lp.x);
      if (branch_col < 0) {
        // Integer feasible: a new incumbent.
        if (!has_incumbent_ || bound > incumbent_obj_) {
          has_incumbent_ = true;
          incumbent_obj_ = bound;
          incumbent_x_ = lp.x;
        }
        continue;
      }

      const double v = lp.x[branch_col];
      // Basis snapshots dominate memory on long runs; past a large open set,
      // late nodes re-solve from a fresh basis instead.
      std::shared_ptr<const BasisState> warm_copy;
      if (open.size() < 100000) warm_copy = std::make_shared<const BasisState>(lp.basis);
      auto down = std::make_shared<BranchPath>();
      down->col = branch_col;
      down->lb = work_lb_[branch_col];
      down->ub = std::floor(v);
      down->parent = node.path;
      down->warm = warm_copy;
      auto up = std::make_shared<BranchPath>();
      up->col = branch_col;
      up->lb = std::ceil(v);
      up->ub = work_ub_[branch_col];
      up->parent = node.path;
      up->warm = warm_copy;

      const bool down_first = v - std::floor(v) <= 0.5;
      OpenNode first{bound, next_id_++, down_first ? down : up};
      OpenNode second{bound, next_id_++, down_first ? up : down};
      if (!has_incumbent_ || second.bound > incumbent_obj_ + fathom_slack()) open.push(second);
      dive = first;
      have_dive = true;

      // Global gap check.
      if (has_incumbent_) {
        const double best = std::max(peek_bound(open), dive.bound);
        if (relative_gap(best) <= limits_.rel_gap) {
          status = relative_gap(best) <= 1e-6 + 1e-12 ? MilpStatus::Optimal
                                                      : MilpStatus::GapLimit;
          final_bound_ = best;
          break;
        }
      }
    }

    out.nodes = nodes_;
    out.has_incumbent = has_incumbent_;
    out.bound_history = std::move(history_);
    if (has_incumbent_) {
      out.x = incumbent_x_;
      out.objective = incumbent_obj_;
      if (status == MilpStatus::Optimal) {
        out.best_bound = std::isfinite(final_bound_) ? final_bound_ : incumbent_obj_;
        if (out.best_bound < incumbent_obj_) out.best_bound = incumbent_obj_;
      } else {
        double best = incumbent_obj_;
        if (have_dive) best = std::max(best, dive.bound);
        best = std::max(best, peek_bound_value(open));
        out.best_bound = std::isfinite(final_bound_) ? final_bound_ : best;
      }
      out.status = status;
    } else {
      out.status = status == MilpStatus::Optimal ? MilpStatus::Infeasible : status;
      out.best_bound = peek_bound_value(open);
    }
    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
  }

 private:
  double fathom_slack() const { return 1e-9 * std::max(1.0, std::abs(incumbent_obj_)); }

  double relative_gap(double best_bound) const {
    return (best_bound - incumbent_obj_) / std::max(1.0, std::abs(incumbent_obj_));
  }

  template <class Q>
  static double peek_bound(const Q& open) {
    return open.empty() ? -kInf : open.top().bound;
  }
  template <class Q>
  static double peek_bound_value(const Q& open) {
    return open.empty() ? -kInf : open.top().bound;
  }

  void record_bound(double b) {
    if (!history_.empty()) b = std::min(b, history_.back());
    history_.push_back(b);
  }

  void apply_bounds(const std::shared_ptr<const BranchPath>& path) {
    work_lb_ = root_lb_;
    work_ub_ = root_ub_;
    for (const BranchPath* n = path.get(); n; n = n->parent.get()) {
      work_lb_[n->col] = std::max(work_lb_[n->col], n->lb);
      work_ub_[n->col] = std::min(work_ub_[n->col], n->ub);
    }
  }

  int most_fractional(const Eigen::VectorXd& x) const {
    int best = -1;
    double best_score = kIntTol;
    for (int j = 0; j < p_.cols(); ++j) {
      if (!p_.is_integer[static_cast<std::size_t>(j)]) continue;
      const double f = x[j] - std::floor(x[j]);
      const double score = std::min(f, 1.0 - f);
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  Problem p_;
  Limits limits_;
  Eigen::VectorXd root_lb_, root_ub_;
  Eigen::VectorXd work_lb_, work_ub_;
  SimplexOptions lp_options_;
  bool presolve_infeasible_ = false;

  long next_id_ = 0;
  long nodes_ = 0;
  bool has_incumbent_ = false;
  double incumbent_obj_ = -kInf;
  Eigen::VectorXd incumbent_x_;
  double final_bound_ = kInf;
  std::vector<double> history_;
  std::unique_ptr<SimplexEngine> heuristic_engine_;
};

}  // namespace

MilpSolution solve_milp(const Problem& p, const Limits& limits) {
  BranchAndBound bb(p, limits);
  return bb.run();
}

}  // namespace talentplan::milp
