#include "schema_validator.hpp"

#include <regex>

namespace mgl::harness {

namespace {

using nlohmann::json;

bool has_type(const json& v, const std::string& type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "integer") return v.is_number_integer();
  if (type == "number") return v.is_number();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  return false;
}

class Validator {
 public:
  explicit Validator(const json& root) : root_(root) {}

  void check(const json& v, const json& schema, const std::string& path) {
    if (schema.contains("$ref")) {
      const std::string ref = schema["$ref"];
      check(v, root_.at(json::json_pointer(ref.substr(1))), path);
      return;
    }
    if (schema.contains("type")) {
      const json& t = schema["type"];
      bool ok = false;
      if (t.is_string()) {
        ok = has_type(v, t);
      } else {
        for (const auto& each : t) ok = ok || has_type(v, each);
      }
      if (!ok) {
        fail(path, "expected type " + t.dump() + ", got " + v.type_name());
        return;
      }
    }
    if (schema.contains("enum")) {
      bool found = false;
      for (const auto& e : schema["enum"]) found = found || e == v;
      if (!found) fail(path, "value " + v.dump() + " not in " + schema["enum"].dump());
    }
    if (v.is_number()) {
      const double x = v.get<double>();
      if (schema.contains("minimum") && x < schema["minimum"].get<double>())
        fail(path, "must be >= " + schema["minimum"].dump());
      if (schema.contains("maximum") && x > schema["maximum"].get<double>())
        fail(path, "must be <= " + schema["maximum"].dump());
      if (schema.contains("exclusiveMinimum") && x <= schema["exclusiveMinimum"].get<double>())
        fail(path, "must be > " + schema["exclusiveMinimum"].dump());
    }
    if (v.is_string() && schema.contains("pattern")) {
      if (!std::regex_search(v.get<std::string>(), std::regex(schema["pattern"].get<std::string>())))
        fail(path, "does not match " + schema["pattern"].get<std::string>());
    }
    if (v.is_array()) {
      if (schema.contains("minItems") && v.size() < schema["minItems"].get<std::size_t>())
        fail(path, "needs at least " + schema["minItems"].dump() + " items");
      if (schema.contains("items"))
        for (std::size_t i = 0; i < v.size(); ++i) check(v[i], schema["items"], path + "/" + std::to_string(i));
    }
    if (v.is_object()) {
      if (schema.contains("required"))
        for (const auto& key : schema["required"])
          if (!v.contains(key.get<std::string>())) fail(path, "missing required field '" + key.get<std::string>() + "'");
      const json empty = json::object();
      const json& props = schema.contains("properties") ? schema["properties"] : empty;
      const bool closed = schema.contains("additionalProperties") && schema["additionalProperties"] == false;
      for (const auto& [key, value] : v.items()) {
        if (props.contains(key)) {
          check(value, props[key], path + "/" + key);
        } else if (closed) {
          fail(path + "/" + key, "unknown field");
        }
      }
    }
  }

  std::vector<SchemaViolation> violations;

 private:
  void fail(const std::string& path, std::string message) {
    violations.push_back({path.empty() ? "/" : path, std::move(message)});
  }

  const json& root_;
};

}  // namespace

std::vector<SchemaViolation> validate(const nlohmann::json& instance, const nlohmann::json& schema) {
  Validator validator(schema);
  validator.check(instance, schema, "");
  return validator.violations;
}

}  // namespace mgl::harness
