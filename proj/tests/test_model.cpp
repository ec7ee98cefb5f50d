#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "support/fixtures.hpp"
#include "talentplan/chance.hpp"
#include "talentplan/linearizer.hpp"
#include "talentplan/nonlinear_model.hpp"

using namespace talentplan;

TEST_CASE("application bound formula") {
  Instance inst = testsupport::case_instance();
  inst.channel_weight[1] = 0.579;
  const auto bounds = model::compute_bounds(inst);
  // channel 1 (capacity 1000) against the analyst window of 700
  CHECK(bounds.a_upper[0](1, 1) == 579);
  // the tighter job window wins for the senior manager
  CHECK(bounds.a_upper[0](1, 4) == 30);
}

TEST_CASE("change-cap recursion in constant mode") {
  Instance inst = testsupport::reduced_instance();
  inst.change_cap_mode = ChangeCapMode::Constant;
  inst.change_cap = Eigen::ArrayXXd(3, 2);
  inst.change_cap << 10, 7, 4, 3, 2, 1;
  const auto b = model::compute_bounds(inst);
  // first period: previous cap counts as zero
  CHECK(b.h_upper(0, 0) == 10);
  CHECK(b.c_upper(0, 0) == 10);  // initial headcount
  // later: c_hat = 2 * prev cap, h_hat = 2 * prev cap + current cap
  CHECK(b.c_upper(0, 1) == 20);
  CHECK(b.h_upper(0, 1) == 27);
  CHECK(b.z_upper(0, 1) == 7);
}

TEST_CASE("change-cap forward recursion in fraction mode") {
  const Instance inst = testsupport::case_instance();  // rho = 0.5
  const auto b = model::compute_bounds(inst);
  for (int j = 0; j < inst.jobs(); ++j) {
    const double init = inst.initial_headcount[j];
    for (int t = 0; t < inst.periods(); ++t) {
      CHECK(b.c_upper(j, t) == static_cast<int>(init));
      CHECK(b.theta(j, t) == doctest::Approx(0.5 * init));
    }
    CHECK(b.h_upper(j, 0) == static_cast<int>(std::floor(0.5 * init + 1e-9)));
    CHECK(b.h_upper(j, 1) == static_cast<int>(std::floor(1.5 * init + 1e-9)));
  }
}

TEST_CASE("catalog covers every decision variable exactly once") {
  const Instance inst = testsupport::case_instance();
  const auto nl = model::build_minlp(inst);
  std::map<std::string, int> counts;
  for (const auto& v : nl.catalog.vars) ++counts[v.family];
  const int m = inst.channels(), n = inst.jobs(), T = inst.periods();
  CHECK(counts["A"] == m * n * T);
  CHECK(counts["X"] == m * n * T);
  CHECK(counts["Y"] == n * T);
  CHECK(counts["PHI"] == n * T);
  CHECK(counts["V"] == 8 * T);  // eight promotion arcs in the case ladder
  CHECK(counts["G"] == n * T);
  CHECK(counts["S"] == n * T);
  CHECK(counts["C"] == n * T);
  CHECK(counts["Z"] == n * T);
  CHECK(counts["H"] == n * T);
  CHECK(counts["P"] == n * T);
  CHECK(nl.catalog.size() == m * n * T * 2 + 8 * T + 8 * n * T);
}

TEST_CASE("degenerate horizons") {
  Instance inst = testsupport::reduced_instance();
  // single job, single channel, single period, no promotion arcs
  inst.horizon = {1, 1, 1};
  inst.job_names = {"only"};
  inst.channel_names = {"only"};
  inst.initial_headcount = Eigen::VectorXd::Constant(1, 5.0);
  auto one = [&](double v) { return Eigen::ArrayXXd::Constant(1, 1, v); };
  inst.excess_cost = one(1);
  inst.shortage_cost = one(10);
  inst.max_applications = one(6);
  inst.job_interview_cap = one(0.5);
  inst.max_offer_rate = one(0.8);
  inst.max_growth = one(0.5);
  inst.revenue = one(3);
  inst.salary = one(2);
  inst.interview_cost = one(0.5);
  inst.change_cap_mode = ChangeCapMode::Constant;
  inst.change_cap = one(3);
  inst.channel_capacity = one(10);
  inst.channel_interview_cap = one(0.8);
  inst.channel_weight = Eigen::VectorXd::Constant(1, 0.9);
  inst.transfer = Eigen::MatrixXi::Zero(1, 1);
  inst.stochastic.resize(1);
  inst.stochastic[0] = testsupport::reduced_instance().stochastic[0];
  inst.config.recruit_time_budget = Eigen::VectorXd::Constant(1, 50.0);

  const auto nl = model::build_minlp(inst);
  for (const auto& v : nl.catalog.vars) CHECK(v.family != "V");
  CHECK(nl.catalog.arcs.empty());

  // two jobs with one adjacency: exactly two directed series
  Instance pair = inst;
  pair.horizon = {1, 2, 1};
  pair.job_names = {"a", "b"};
  pair.initial_headcount = Eigen::VectorXd::Constant(2, 5.0);
  auto two = [&](double v) { return Eigen::ArrayXXd::Constant(2, 1, v); };
  pair.excess_cost = two(1);
  pair.shortage_cost = two(10);
  pair.max_applications = two(6);
  pair.job_interview_cap = two(0.5);
  pair.max_offer_rate = two(0.8);
  pair.max_growth = two(0.5);
  pair.revenue = two(3);
  pair.salary = two(2);
  pair.interview_cost = two(0.5);
  pair.change_cap = two(3);
  pair.transfer = Eigen::MatrixXi::Zero(2, 2);
  pair.transfer(0, 1) = pair.transfer(1, 0) = 1;
  pair.stochastic.resize(2);
  pair.stochastic[1] = pair.stochastic[0];
  const auto nl2 = model::build_minlp(pair);
  int v_count = 0;
  for (const auto& v : nl2.catalog.vars)
    if (v.family == "V") ++v_count;
  CHECK(v_count == 2);
}

TEST_CASE("constraint families and tags") {
  const Instance inst = testsupport::case_instance();
  const auto nl = model::build_minlp(inst);
  std::map<int, int> families;
  for (const auto& c : nl.constraints) {
    CHECK(c.family >= 12);
    CHECK(c.family <= 29);
    ++families[c.family];
  }
  const int m = inst.channels(), n = inst.jobs(), T = inst.periods();
  CHECK(families[12] == T);
  CHECK(families[13] == n * T);
  CHECK(families[14] == n * T);
  CHECK(families[15] == n * (T - 1));
  CHECK(families[16] == n * T);
  CHECK(families[17] == n * T);
  CHECK(families[18] == n * T);
  CHECK(families[19] == m * T);
  CHECK(families[20] == 2 * n * T);
  CHECK(families[21] == m * T);
  CHECK(families[22] == n * T);
  CHECK(families[23] == 2 * m * n * T);
  CHECK(families[24] == 2 * n * T);
  CHECK(families[25] == n * T);
}

TEST_CASE("symbolic model agrees with the direct checker on the replay plan") {
  const Instance inst = testsupport::case_instance();
  const auto nl = model::build_minlp(inst);
  const Plan plan = testsupport::case_reference_plan(inst);

  Eigen::VectorXd doc(inst.jobs()), interview(inst.jobs());
  const Eigen::VectorXd accept = chance::acceptance_quantiles(inst, inst.config.alpha1);
  for (int j = 0; j < inst.jobs(); ++j) {
    doc[j] = inst.stochastic[static_cast<std::size_t>(j)].doc_time.mean();
    interview[j] = inst.stochastic[static_cast<std::size_t>(j)].interview_time.mean();
  }
  const auto residuals = model::evaluate_constraints(nl, inst, plan, doc, interview, accept);

  std::map<int, double> by_family;
  for (const auto& r : residuals)
    by_family[r.family] = std::max(by_family[r.family], r.violation);

  const auto report = check_feasibility(inst, plan, 0.61);
  std::map<int, double> checker;
  for (const auto& f : report.families)
    if (f.family >= 12 && f.family <= 25)
      checker[f.family] = std::max(checker[f.family], f.max_violation);

  for (const auto& [family, violation] : checker) {
    INFO("family ", family);
    CHECK(by_family[family] == doctest::Approx(violation).epsilon(1e-9));
  }
}

TEST_CASE("dimension report is internally consistent") {
  const Instance inst = testsupport::case_instance();
  const auto nl = model::build_minlp(inst);
  const auto dims = model::dimensions(nl);
  int vars = 0, cons = 0;
  for (const auto& [name, count] : dims.variable_families) vars += count;
  for (const auto& [name, count] : dims.constraint_families) cons += count;
  CHECK(vars == dims.variables);
  CHECK(cons == dims.constraints);
  CHECK(dims.variables == nl.catalog.size());
  CHECK(dims.constraints == static_cast<int>(nl.constraints.size()));

  const auto bounds = model::compute_bounds(inst);
  const auto [milp_model, expansion] = lin::linearize_model(nl, bounds);
  const auto mdims = lin::dimensions(milp_model);
  vars = 0;
  cons = 0;
  for (const auto& [name, count] : mdims.variable_families) vars += count;
  for (const auto& [name, count] : mdims.constraint_families) cons += count;
  CHECK(vars == mdims.variables);
  CHECK(cons == mdims.constraints);
}
