#pragma once

#include <string>
#include <vector>

namespace bjpa {

/// Validates a JSON document against the subset of JSON Schema this project
/// ships (type, properties, required, items, enum, additionalProperties,
/// minimum). Returns one message per violation, empty when valid. Throws
/// ConfigError when either document fails to parse.
std::vector<std::string> validate_json(const std::string& instance_text,
                                       const std::string& schema_text);

}  // namespace bjpa
