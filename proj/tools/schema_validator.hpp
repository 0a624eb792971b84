#pragma once

// Validator for the subset of JSON Schema used by the bundled schemas:
// type, enum, required, properties, additionalProperties (bool), items,
// minItems, minimum, maximum, exclusiveMinimum, pattern and local $ref.

#include "json.hpp"

#include <string>
#include <vector>

namespace mgl::harness {

struct SchemaViolation {
  std::string path;     // JSON pointer of the offending value
  std::string message;
};

std::vector<SchemaViolation> validate(const nlohmann::json& instance, const nlohmann::json& schema);

}  // namespace mgl::harness
