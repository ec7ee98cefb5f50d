#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "talentplan/instance.hpp"

namespace talentplan::io {

/// Instance file problem with the JSON path of the offending field.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string where, const std::string& message)
      : std::runtime_error(where + ": " + message), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Parses and validates an instance document. Unknown keys are rejected.
/// When a topsis section is present the channel weights are computed from it;
/// otherwise every channel must carry a weight.
Instance parse_instance(const nlohmann::json& doc);

nlohmann::json to_json(const Instance& inst);

/// Reads, parses and validates an instance file.
Instance ingest(const std::string& path);

void write_instance(const std::string& path, const Instance& inst);

bool equal(const Instance& a, const Instance& b, double tol = 0.0);

}  // namespace talentplan::io
