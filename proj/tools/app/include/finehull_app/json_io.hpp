#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "finehull/blaschke.hpp"
#include "finehull/cantor.hpp"
#include "finehull/geometry.hpp"

namespace finehull::app {

using nlohmann::json;

/// Malformed or inconsistent input, with the JSON path of the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Shortest decimal string that reads back to the same double (17 digits).
std::string exact_decimal(double x);
double parse_decimal(const json& j, const std::string& field);

json to_json(const CRule& rule);
CRule crule_from_json(const json& j, const std::string& field = "c_rule");

/// {"a0", "b0", "c_rule", "placement", "N", "gaps": [{"index", "center", "log_length"}]}
/// with the gap fields as exact decimal strings.
json to_json(const CantorSpec& spec);
/// Rebuilds the spec from its parameters; listed gaps must match bit for bit.
CantorSpec cantor_spec_from_json(const json& j, const std::string& field = "spec");

json to_json(const Shape& shape);
Shape shape_from_json(const json& j, const std::string& field);
json to_json(const CompactUnion& set);
CompactUnion union_from_json(const json& j, const std::string& field = "set");

/// {"l", "alpha", "beta", "c_rule", "N", "extra_zeros": [[re, im], ...]} or
/// "extra_generator": count in place of the explicit list.
json to_json(const BlaschkeSpec& spec);
BlaschkeSpec blaschke_spec_from_json(const json& j, const std::string& field = "spec");

json read_json_file(const std::string& path, const std::string& field);

}  // namespace finehull::app
