#pragma once

#include <string>

#include "talentplan/milp_model.hpp"

namespace talentplan::milp {

/// Fixed-format MPS text for the model (maximization sense is recorded in a
/// comment; the objective row is written as-is). Names longer than eight
/// characters or clashing after truncation are renamed deterministically and
/// the mapping is emitted in header comments. Byte-stable for equal models.
std::string write_mps(const lin::MilpModel& m, const std::string& problem_name = "TALENT");

/// Parses fixed-format MPS produced by write_mps (and common conventional
/// files): ROWS/COLUMNS/RHS/RANGES/BOUNDS with INTORG/INTEND markers.
lin::MilpModel read_mps(const std::string& text);

}  // namespace talentplan::milp
