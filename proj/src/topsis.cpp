#include "talentplan/topsis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace talentplan::topsis {

std::string DecisionMatrix::validate() const {
  std::ostringstream os;
  const auto m = ratings.rows(), n = ratings.cols();
  if (m < 1 || n < 1) return "decision matrix must have at least one row and column";
  if (static_cast<Eigen::Index>(senses.size()) != n) return "senses size must match criteria count";
  if (weights.size() != n) return "weights size must match criteria count";
  if ((weights.array() < 0.0).any()) return "criterion weights must be nonnegative";
  if (std::abs(weights.sum() - 1.0) > 1e-9) {
    os << "criterion weights must sum to 1 (got " << weights.sum() << ")";
    return os.str();
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (ratings.col(j).norm() == 0.0) {
      os << "criterion column " << j << " is all zero";
      return os.str();
    }
  }
  return {};
}

Eigen::MatrixXd normalize_weighted(const DecisionMatrix& m) {
  Eigen::MatrixXd v(m.ratings.rows(), m.ratings.cols());
  for (Eigen::Index j = 0; j < m.ratings.cols(); ++j) {
    const double norm = m.ratings.col(j).norm();
    if (norm == 0.0) throw std::invalid_argument("normalize_weighted: zero-norm criterion column");
    v.col(j) = m.weights[j] * m.ratings.col(j) / norm;
  }
  return v;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> ideal_points(const Eigen::MatrixXd& v,
                                                         const std::vector<Sense>& senses) {
  const auto n = v.cols();
  Eigen::VectorXd best(n), worst(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double hi = v.col(j).maxCoeff();
    const double lo = v.col(j).minCoeff();
    const bool benefit = senses[static_cast<std::size_t>(j)] == Sense::Benefit;
    best[j] = benefit ? hi : lo;
    worst[j] = benefit ? lo : hi;
  }
  return {best, worst};
}

Result closeness(const Eigen::MatrixXd& v, const Eigen::VectorXd& ideal_best,
                 const Eigen::VectorXd& ideal_worst) {
  Result r;
  r.weighted = v;
  r.ideal_best = ideal_best;
  r.ideal_worst = ideal_worst;
  const auto m = v.rows();
  r.dist_best.resize(m);
  r.dist_worst.resize(m);
  r.closeness.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    r.dist_best[i] = (v.row(i).transpose() - ideal_best).norm();
    r.dist_worst[i] = (v.row(i).transpose() - ideal_worst).norm();
    const double total = r.dist_best[i] + r.dist_worst[i];
    // All alternatives identical in some coordinate pattern: score them even.
    r.closeness[i] = total > 0.0 ? r.dist_worst[i] / total : 0.5;
  }
  r.ranking.resize(static_cast<std::size_t>(m));
  std::iota(r.ranking.begin(), r.ranking.end(), 0);
  std::stable_sort(r.ranking.begin(), r.ranking.end(), [&](int a, int b) {
    if (r.closeness[a] != r.closeness[b]) return r.closeness[a] > r.closeness[b];
    return a < b;
  });
  return r;
}

Result evaluate(const DecisionMatrix& m) {
  const std::string err = m.validate();
  if (!err.empty()) throw std::invalid_argument("topsis: " + err);
  const Eigen::MatrixXd v = normalize_weighted(m);
  auto [best, worst] = ideal_points(v, m.senses);
  return closeness(v, best, worst);
}

}  // namespace talentplan::topsis
