#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support/oracles.hpp"
#include "talentplan/branch_and_bound.hpp"

using namespace talentplan::milp;

namespace {

Problem make(int rows, int cols) {
  Problem p;
  p.A.resize(rows, cols);
  p.obj = Eigen::VectorXd::Zero(cols);
  p.lb = Eigen::VectorXd::Zero(cols);
  p.ub = Eigen::VectorXd::Constant(cols, kInf);
  p.row_lo = Eigen::VectorXd::Constant(rows, -kInf);
  p.row_hi = Eigen::VectorXd::Constant(rows, kInf);
  p.is_integer.assign(static_cast<std::size_t>(cols), 1);
  return p;
}

}  // namespace

TEST_CASE("binary knapsack pair") {
  // max 5a + 4b, a + b <= 1, binary
  Problem p = make(1, 2);
  std::vector<Eigen::Triplet<double>> t{{0, 0, 1.0}, {0, 1, 1.0}};
  p.A.setFromTriplets(t.begin(), t.end());
  p.row_hi[0] = 1.0;
  p.ub << 1.0, 1.0;
  p.obj << 5.0, 4.0;
  const auto s = solve_milp(p);
  REQUIRE(s.status == MilpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(5.0));
  CHECK(s.x[0] == doctest::Approx(1.0));
  CHECK(s.x[1] == doctest::Approx(0.0));
}

TEST_CASE("integer infeasibility is detected") {
  // 0.4 <= x <= 0.6 with x integer
  Problem p = make(1, 1);
  std::vector<Eigen::Triplet<double>> t{{0, 0, 1.0}};
  p.A.setFromTriplets(t.begin(), t.end());
  p.row_lo[0] = 0.4;
  p.row_hi[0] = 0.6;
  p.ub[0] = 10.0;
  p.obj[0] = 1.0;
  const auto s = solve_milp(p);
  CHECK(s.status == MilpStatus::Infeasible);
  CHECK_FALSE(s.has_incumbent);
}

TEST_CASE("mixed integer rounding gap") {
  // max x + y, 2x + y <= 5.5, x integer in [0,3], y continuous in [0,1.2]
  Problem p = make(1, 2);
  std::vector<Eigen::Triplet<double>> t{{0, 0, 2.0}, {0, 1, 1.0}};
  p.A.setFromTriplets(t.begin(), t.end());
  p.row_hi[0] = 5.5;
  p.ub << 3.0, 1.2;
  p.obj << 1.0, 1.0;
  p.is_integer = {1, 0};
  const auto s = solve_milp(p);
  REQUIRE(s.status == MilpStatus::Optimal);
  CHECK(s.x[0] == doctest::Approx(2.0));
  CHECK(s.x[1] == doctest::Approx(1.2));
  CHECK(s.objective == doctest::Approx(3.2));
}

TEST_CASE("random small MILPs match brute force") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-5, 5);
  int feasible_count = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const int cols = 2 + static_cast<int>(rng() % 7);  // up to 8 integers
    const int rows = 1 + static_cast<int>(rng() % 5);
    Problem p = make(rows, cols);
    std::vector<Eigen::Triplet<double>> t;
    for (int r = 0; r < rows; ++r)
      for (int j = 0; j < cols; ++j)
        if (rng() % 4 != 0) t.emplace_back(r, j, static_cast<double>(coef(rng)));
    p.A.setFromTriplets(t.begin(), t.end());
    for (int j = 0; j < cols; ++j) {
      p.ub[j] = static_cast<double>(1 + rng() % 3);  // ranges {0..1,0..2,0..3}
      p.obj[j] = static_cast<double>(coef(rng));
    }
    for (int r = 0; r < rows; ++r) {
      const int kind = static_cast<int>(rng() % 3);
      const double b = static_cast<double>(coef(rng) + 3);
      if (kind == 0)
        p.row_hi[r] = b;
      else if (kind == 1)
        p.row_lo[r] = -b;
      else {
        p.row_lo[r] = -b - 4.0;
        p.row_hi[r] = b;
      }
    }
    double oracle = 0.0;
    const bool oracle_feasible = testsupport::brute_force_milp(p, oracle);
    const auto s = solve_milp(p);
    if (oracle_feasible) {
      ++feasible_count;
      REQUIRE(s.status == MilpStatus::Optimal);
      CHECK(s.objective ==
            doctest::Approx(oracle).epsilon(1e-6));
      // the incumbent is integral and satisfies every row
      for (int j = 0; j < cols; ++j)
        CHECK(std::abs(s.x[j] - std::round(s.x[j])) < 1e-6);
      const Eigen::VectorXd act = p.A * s.x;
      for (int r = 0; r < rows; ++r) {
        CHECK(act[r] >= p.row_lo[r] - 1e-6);
        CHECK(act[r] <= p.row_hi[r] + 1e-6);
      }
    } else {
      CHECK(s.status == MilpStatus::Infeasible);
    }
  }
  CHECK(feasible_count >= 50);
}

TEST_CASE("determinism: identical runs give identical nodes and incumbents") {
  std::mt19937 rng(23);
  Problem p = make(4, 6);
  std::vector<Eigen::Triplet<double>> t;
  for (int r = 0; r < 4; ++r)
    for (int j = 0; j < 6; ++j) t.emplace_back(r, j, static_cast<double>((rng() % 11)) - 5.0);
  p.A.setFromTriplets(t.begin(), t.end());
  for (int j = 0; j < 6; ++j) {
    p.ub[j] = 3.0;
    p.obj[j] = static_cast<double>((rng() % 9)) - 4.0;
  }
  for (int r = 0; r < 4; ++r) p.row_hi[r] = 6.0;
  const auto a = solve_milp(p);
  const auto b = solve_milp(p);
  CHECK(a.nodes == b.nodes);
  CHECK(a.objective == b.objective);
  if (a.has_incumbent) CHECK((a.x - b.x).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("best bound decreases monotonically") {
  std::mt19937 rng(5);
  Problem p = make(3, 8);
  std::vector<Eigen::Triplet<double>> t;
  for (int r = 0; r < 3; ++r)
    for (int j = 0; j < 8; ++j) t.emplace_back(r, j, static_cast<double>(rng() % 7) - 3.0);
  p.A.setFromTriplets(t.begin(), t.end());
  for (int j = 0; j < 8; ++j) {
    p.ub[j] = 2.0;
    p.obj[j] = static_cast<double>(rng() % 13) - 6.0;
  }
  for (int r = 0; r < 3; ++r) p.row_hi[r] = 5.0;
  Limits limits;
  limits.record_history = true;
  const auto s = solve_milp(p, limits);
  REQUIRE(s.bound_history.size() > 0);
  for (std::size_t k = 1; k < s.bound_history.size(); ++k)
    CHECK(s.bound_history[k] <= s.bound_history[k - 1] + 1e-9);
  if (s.has_incumbent) CHECK(s.best_bound >= s.objective - 1e-6);
}

TEST_CASE("node limit reports the incumbent found so far") {
  std::mt19937 rng(31);
  Problem p = make(4, 10);
  std::vector<Eigen::Triplet<double>> t;
  for (int r = 0; r < 4; ++r)
    for (int j = 0; j < 10; ++j) t.emplace_back(r, j, static_cast<double>(rng() % 9) - 4.0);
  p.A.setFromTriplets(t.begin(), t.end());
  for (int j = 0; j < 10; ++j) {
    p.ub[j] = 3.0;
    p.obj[j] = static_cast<double>(rng() % 9) - 4.0;
  }
  for (int r = 0; r < 4; ++r) p.row_hi[r] = 7.0;
  Limits limits;
  limits.max_nodes = 3;
  const auto s = solve_milp(p, limits);
  CHECK((s.status == MilpStatus::NodeLimit || s.status == MilpStatus::Optimal));
}

TEST_CASE("singleton rows fold into bounds") {
  // 2x <= 5 as a singleton row on an integer variable: x <= 2 effectively.
  Problem p = make(2, 2);
  std::vector<Eigen::Triplet<double>> t{{0, 0, 2.0}, {1, 0, 1.0}, {1, 1, 1.0}};
  p.A.setFromTriplets(t.begin(), t.end());
  p.row_hi << 5.0, 4.0;
  p.ub << 10.0, 10.0;
  p.obj << 3.0, 1.0;
  const auto s = solve_milp(p);
  REQUIRE(s.status == MilpStatus::Optimal);
  CHECK(s.x[0] == doctest::Approx(2.0));
  CHECK(s.objective == doctest::Approx(8.0));
}
