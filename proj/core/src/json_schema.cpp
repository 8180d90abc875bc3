#include "bjpa/json_schema.hpp"

#include <nlohmann/json.hpp>

#include "bjpa/errors.hpp"

namespace bjpa {

namespace {

using nlohmann::json;

bool type_matches(const json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "number") return value.is_number();
  if (type == "integer")
    return value.is_number_integer() ||
           (value.is_number_float() && value.get<double>() == static_cast<long long>(value.get<double>()));
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  return false;
}

void check(const json& value, const json& schema, const std::string& path,
           std::vector<std::string>& errors) {
  if (!schema.is_object()) return;

  if (auto it = schema.find("type"); it != schema.end()) {
    bool ok = false;
    if (it->is_string()) {
      ok = type_matches(value, it->get<std::string>());
    } else if (it->is_array()) {
      for (const auto& t : *it)
        if (t.is_string() && type_matches(value, t.get<std::string>())) { ok = true; break; }
    }
    if (!ok) {
      errors.push_back(path + ": expected type " + it->dump());
      return;
    }
  }

  if (auto it = schema.find("enum"); it != schema.end()) {
    bool ok = false;
    for (const auto& candidate : *it)
      if (candidate == value) { ok = true; break; }
    if (!ok) errors.push_back(path + ": value not in enum " + it->dump());
  }

  if (auto it = schema.find("minimum"); it != schema.end() && value.is_number()) {
    if (value.get<double>() < it->get<double>())
      errors.push_back(path + ": below minimum " + it->dump());
  }

  if (value.is_object()) {
    const json* props = nullptr;
    if (auto it = schema.find("properties"); it != schema.end()) props = &*it;

    if (auto it = schema.find("required"); it != schema.end()) {
      for (const auto& key : *it) {
        if (!value.contains(key.get<std::string>()))
          errors.push_back(path + ": missing required key '" + key.get<std::string>() + "'");
      }
    }

    const json* additional = nullptr;
    if (auto it = schema.find("additionalProperties"); it != schema.end()) additional = &*it;

    for (auto it = value.begin(); it != value.end(); ++it) {
      const std::string child_path = path + "." + it.key();
      if (props != nullptr && props->contains(it.key())) {
        check(it.value(), (*props)[it.key()], child_path, errors);
      } else if (additional != nullptr) {
        if (additional->is_boolean()) {
          if (!additional->get<bool>())
            errors.push_back(child_path + ": additional property not allowed");
        } else {
          check(it.value(), *additional, child_path, errors);
        }
      }
    }
  }

  if (value.is_array()) {
    if (auto it = schema.find("items"); it != schema.end()) {
      for (std::size_t i = 0; i < value.size(); ++i)
        check(value[i], *it, path + "[" + std::to_string(i) + "]", errors);
    }
  }
}

}  // namespace

std::vector<std::string> validate_json(const std::string& instance_text,
                                       const std::string& schema_text) {
  json instance, schema;
  try {
    instance = json::parse(instance_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("instance is not valid JSON: ") + e.what());
  }
  try {
    schema = json::parse(schema_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("schema is not valid JSON: ") + e.what());
  }
  std::vector<std::string> errors;
  check(instance, schema, "$", errors);
  return errors;
}

}  // namespace bjpa
