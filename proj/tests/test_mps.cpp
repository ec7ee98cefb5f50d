#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "talentplan/branch_and_bound.hpp"
#include "talentplan/mps.hpp"

using namespace talentplan;

namespace {

lin::MilpModel tiny_lp() {
  lin::MilpModel m;
  const int x = m.add_var("x", model::VarKind::Continuous, 0.0, lin::kInf, "test");
  auto& row = m.add_row("cap", -lin::kInf, 1.0, "test");
  row.entries = {{x, 1.0}};
  m.add_objective(x, 1.0);
  return m;
}

}  // namespace

TEST_CASE("single-variable LP layout") {
  const std::string text = milp::write_mps(tiny_lp());
  CHECK(text.find("NAME") != std::string::npos);
  CHECK(text.find(" N  COST") != std::string::npos);
  CHECK(text.find(" L  cap") != std::string::npos);
  CHECK(text.find("BOUNDS") != std::string::npos);
  CHECK(text.find("ENDATA") != std::string::npos);
}

TEST_CASE("binary variables get marker blocks") {
  lin::MilpModel m = tiny_lp();
  m.add_var("flag", model::VarKind::Binary, 0.0, 1.0, "test");
  const std::string text = milp::write_mps(m);
  CHECK(text.find("'INTORG'") != std::string::npos);
  CHECK(text.find("'INTEND'") != std::string::npos);
  CHECK(text.find(" BV BND") != std::string::npos);
}

TEST_CASE("byte stability") {
  lin::MilpModel m = tiny_lp();
  CHECK(milp::write_mps(m) == milp::write_mps(m));
}

TEST_CASE("long names are renamed deterministically with an emitted map") {
  lin::MilpModel m;
  const int x = m.add_var("a_rather_long_variable_name", model::VarKind::Continuous, 0.0, 2.0,
                          "test");
  auto& row = m.add_row("an_even_longer_row_name[j=0,t=0]", -lin::kInf, 1.5, "test");
  row.entries = {{x, 1.0}};
  m.add_objective(x, 1.0);
  const std::string text = milp::write_mps(m);
  CHECK(text.find("* RENAME C0000000 = a_rather_long_variable_name") != std::string::npos);
  CHECK(text.find("* RENAME R0000000 = an_even_longer_row_name[j=0,t=0]") != std::string::npos);

  const auto parsed = milp::read_mps(text);
  const auto sol = milp::solve_milp(milp::to_problem(parsed));
  REQUIRE(sol.status == milp::MilpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(1.5));
}

TEST_CASE("round trip preserves the optimum") {
  lin::MilpModel m;
  const int x = m.add_var("x", model::VarKind::Integer, 0.0, 7.0, "test");
  const int y = m.add_var("y", model::VarKind::Continuous, -1.0, 4.0, "test");
  const int b = m.add_var("b", model::VarKind::Binary, 0.0, 1.0, "test");
  auto& r1 = m.add_row("r1", -lin::kInf, 9.0, "test");
  r1.entries = {{x, 1.0}, {y, 2.0}};
  auto& r2 = m.add_row("r2", 1.0, 5.0, "test");  // ranged row
  r2.entries = {{x, 1.0}, {b, 3.0}};
  auto& r3 = m.add_row("r3", 0.5, 0.5, "test");  // equality
  r3.entries = {{y, 1.0}, {b, -0.5}};
  m.add_objective(x, 2.0);
  m.add_objective(y, 1.0);
  m.add_objective(b, 0.5);
  m.objective_constant = 3.25;

  const auto direct = milp::solve_milp(milp::to_problem(m));
  REQUIRE(direct.status == milp::MilpStatus::Optimal);

  const std::string text = milp::write_mps(m);
  const auto parsed = milp::read_mps(text);
  const auto reparsed = milp::solve_milp(milp::to_problem(parsed));
  REQUIRE(reparsed.status == milp::MilpStatus::Optimal);
  CHECK(reparsed.objective == doctest::Approx(direct.objective).epsilon(1e-9));

  // a second trip is byte-identical
  CHECK(milp::write_mps(parsed) == milp::write_mps(milp::read_mps(milp::write_mps(parsed))));
}
