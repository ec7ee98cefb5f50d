#pragma once

#include <string>

#include <json.hpp>

#include "talentplan/analysis.hpp"
#include "talentplan/pipeline.hpp"

namespace talentplan::io {

/// Hours per year used for annualized figures: 250 business days of 8 hours.
constexpr double kHoursPerYear = 2000.0;

double round_half_up(double value, int decimals);

/// Display tables for a solved plan (applications, interview rates,
/// operational rates with hires, advancement rates), per-period profit and
/// annualization. Rounded for reading; the JSON report keeps raw values.
std::string format_run_report(const Instance& inst, const pipeline::SolveResult& result);

/// Raw full-precision report: plan variables, objective breakdown,
/// annualization and provenance (seed, tolerances, scenario counts).
nlohmann::json run_report_json(const Instance& inst, const pipeline::SolveResult& result,
                               const pipeline::SolveOptions& options);

/// One row per realization plus a summary row carrying the mean and the
/// stochastic program's objective.
void write_zeta_csv(const std::string& path, const analysis::StochasticRunReport& report);

void write_sensitivity_csv(const std::string& path, const analysis::SensitivityGrid& grid);

std::string axis_name(analysis::SweepAxis axis);

}  // namespace talentplan::io
