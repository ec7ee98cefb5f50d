#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace talentplan::topsis {

enum class Sense { Benefit, Cost };

/// Ratings of m alternatives against n criteria, with per-criterion weights
/// that must sum to one.
struct DecisionMatrix {
  Eigen::MatrixXd ratings;     // m x n
  std::vector<Sense> senses;   // n
  Eigen::VectorXd weights;     // n, nonnegative, sums to 1

  std::string validate() const;  // empty when well formed
};

struct Result {
  Eigen::MatrixXd weighted;      // weighted normalized ratings, m x n
  Eigen::VectorXd ideal_best;    // n
  Eigen::VectorXd ideal_worst;   // n
  Eigen::VectorXd dist_best;     // m
  Eigen::VectorXd dist_worst;    // m
  Eigen::VectorXd closeness;     // m, each in [0,1]
  std::vector<int> ranking;      // alternative indices, best first
};

/// Weighted vector normalization: v(i,j) = w_j * r(i,j) / ||column j||.
/// Throws std::invalid_argument on a zero-norm column.
Eigen::MatrixXd normalize_weighted(const DecisionMatrix& m);

/// Per-criterion best/worst attainable weighted values.
std::pair<Eigen::VectorXd, Eigen::VectorXd> ideal_points(const Eigen::MatrixXd& v,
                                                         const std::vector<Sense>& senses);

/// Euclidean distances to the ideal points and relative closeness; the ranking
/// sorts closeness descending with ties broken by lower alternative index.
Result closeness(const Eigen::MatrixXd& v, const Eigen::VectorXd& ideal_best,
                 const Eigen::VectorXd& ideal_worst);

/// Full pipeline: normalize, locate ideals, score and rank.
Result evaluate(const DecisionMatrix& m);

}  // namespace talentplan::topsis
