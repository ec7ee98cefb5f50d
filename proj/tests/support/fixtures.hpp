#pragma once

#include <string>

#include "talentplan/instance.hpp"
#include "talentplan/instance_json.hpp"
#include "talentplan/plan.hpp"

namespace testsupport {

inline std::string data_path(const std::string& file) {
  return std::string(TALENTPLAN_DATA_DIR) + "/" + file;
}

inline talentplan::Instance case_instance() {
  return talentplan::io::ingest(data_path("case_study.json"));
}

inline talentplan::Instance reduced_instance() {
  return talentplan::io::ingest(data_path("case_reduced.json"));
}

// The published optimum of the full case (applications, interview and
// operational rates, advancement rates, hires and headcounts), used to replay
// the flow equations and the feasibility checks. Channel order: career fair,
// company website, social media. Job order: coordinator, analyst, senior
// analyst, manager, senior manager.
inline talentplan::Plan case_reference_plan(const talentplan::Instance& inst) {
  talentplan::Plan p = talentplan::Plan::zeros(inst);

  const double A[3][3][5] = {
      // t = 0
      {{0, 0, 15, 0, 0}, {82, 92, 0, 0, 0}, {0, 0, 0, 27, 18}},
      // t = 1
      {{92, 88, 0, 0, 0}, {0, 0, 27, 49, 0}, {0, 0, 0, 0, 14}},
      // t = 2
      {{78, 66, 0, 0, 0}, {0, 0, 21, 56, 0}, {0, 0, 0, 0, 33}},
  };
  const double X[3][3][5] = {
      {{0, 0, 0.187, 0, 0}, {0.198, 0.194, 0, 0, 0}, {0, 0, 0, 0.092, 0.158}},
      {{0.092, 0.198, 0, 0, 0}, {0, 0, 0.104, 0.204, 0}, {0, 0, 0, 0, 0.217}},
      {{0.079, 0.067, 0, 0, 0}, {0, 0, 0.053, 0.223, 0}, {0, 0, 0, 0, 0.237}},
  };
  for (int t = 0; t < 3; ++t)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 5; ++j) {
        p.applications[static_cast<std::size_t>(t)](i, j) = A[t][i][j];
        p.interview_rate[static_cast<std::size_t>(t)](i, j) = X[t][i][j];
      }

  const double Y[5][3] = {{0.90, 0.69, 0.90},
                          {0.90, 0.90, 0.90},
                          {0.66, 0.66, 0.66},
                          {0.50, 0.50, 0.50},
                          {0.40, 0.37, 0.40}};
  const double G[5][3] = {{0, 0, 0},
                          {0.073, 0.049, 0.046},
                          {0, 0, 0},
                          {0.313, 0.286, 0},
                          {0.333, 0.250, 0.500}};
  const double Z[5][3] = {{5, 2, 1}, {6, 5, 1}, {1, 1, 1}, {1, 4, 5}, {1, 1, 2}};
  const double S[5][3] = {
      {125, 125, 125}, {103, 108, 113}, {43, 43, 43}, {21, 27, 27}, {8, 10, 15}};
  for (int j = 0; j < 5; ++j)
    for (int t = 0; t < 3; ++t) {
      p.offer_rate(j, t) = Y[j][t];
      p.growth_rate(j, t) = G[j][t];
      p.hired(j, t) = Z[j][t];
      p.hires_needed(j, t) = Z[j][t];  // the published plan hires exactly what it needs
      p.end_headcount(j, t) = S[j][t];
    }
  for (int j = 0; j < 5; ++j) {
    p.headcount(j, 0) = inst.initial_headcount[j];
    p.headcount(j, 1) = S[j][0];
    p.headcount(j, 2) = S[j][1];
  }

  // advancement rates: (from, to, t, value)
  const double V[][4] = {
      {0, 1, 0, 0.040}, {1, 2, 0, 0.042}, {2, 3, 0, 0.116}, {3, 4, 0, 0.063},
      {0, 1, 1, 0.016}, {1, 2, 1, 0.019}, {2, 3, 1, 0.070}, {3, 4, 1, 0.047},
      {0, 1, 2, 0.008}, {2, 1, 2, 0.069}, {3, 2, 2, 0.074}, {3, 4, 2, 0.111},
  };
  for (const auto& row : V)
    p.advancement_rate[static_cast<std::size_t>(row[2])](static_cast<int>(row[0]),
                                                         static_cast<int>(row[1])) = row[3];
  return p;
}

}  // namespace testsupport
