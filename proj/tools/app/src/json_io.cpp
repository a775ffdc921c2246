#include "finehull_app/json_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "finehull/error.hpp"

namespace finehull::app {

namespace {

const json& require(const json& j, const char* key, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(field + "." + key, "missing field");
  return *it;
}

double number(const json& j, const char* key, const std::string& field) {
  return parse_decimal(require(j, key, field), field + "." + key);
}

int integer(const json& j, const char* key, const std::string& field) {
  const json& v = require(j, key, field);
  if (!v.is_number_integer()) throw ConfigError(field + "." + key, "expected an integer");
  return v.get<int>();
}

}  // namespace

std::string exact_decimal(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_decimal(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    char* end = nullptr;
    errno = 0;
    double x = std::strtod(s.c_str(), &end);
    if (end != s.c_str() && *end == '\0' && errno != EINVAL) return x;
  }
  throw ConfigError(field, "expected a number or a decimal string");
}

json to_json(const CRule& rule) {
  switch (rule.kind()) {
    case CRule::Kind::Affine:
      return {{"kind", "affine"}, {"slope", rule.slope()}, {"intercept", rule.intercept()}};
    case CRule::Kind::Polynomial:
      return {{"kind", "polynomial"}, {"coef", rule.coef()}, {"power", rule.power()}};
    case CRule::Kind::Factorial:
      return {{"kind", "factorial"}, {"shift", rule.shift()}};
    case CRule::Kind::Explicit:
      return {{"kind", "explicit"}, {"values", rule.values()}};
  }
  return {};
}

CRule crule_from_json(const json& j, const std::string& field) {
  const json& kind = require(j, "kind", field);
  if (!kind.is_string()) throw ConfigError(field + ".kind", "expected a string");
  std::string k = kind.get<std::string>();
  try {
    if (k == "affine") {
      double intercept = j.contains("intercept") ? number(j, "intercept", field) : 0.0;
      return CRule::affine(number(j, "slope", field), intercept);
    }
    if (k == "polynomial") return CRule::polynomial(number(j, "coef", field), number(j, "power", field));
    if (k == "factorial") return CRule::factorial(j.contains("shift") ? integer(j, "shift", field) : 2);
    if (k == "explicit") {
      const json& v = require(j, "values", field);
      if (!v.is_array()) throw ConfigError(field + ".values", "expected an array");
      std::vector<double> values;
      for (std::size_t i = 0; i < v.size(); ++i) {
        values.push_back(parse_decimal(v[i], field + ".values[" + std::to_string(i) + "]"));
      }
      return CRule::explicit_values(std::move(values));
    }
  } catch (const Error& e) {
    throw ConfigError(field, e.what());
  }
  throw ConfigError(field + ".kind", "unknown c rule '" + k + "'");
}

json to_json(const CantorSpec& spec) {
  json gaps = json::array();
  for (const auto& g : spec.gaps()) {
    gaps.push_back({{"index", g.index},
                    {"center", exact_decimal(g.center)},
                    {"log_length", exact_decimal(g.log_length)}});
  }
  return {{"a0", spec.a0()},
          {"b0", spec.b0()},
          {"c_rule", to_json(spec.c_rule())},
          {"placement", "bisect"},
          {"N", spec.max_index()},
          {"gaps", gaps}};
}

CantorSpec cantor_spec_from_json(const json& j, const std::string& field) {
  double a0 = number(j, "a0", field);
  double b0 = number(j, "b0", field);
  CRule rule = crule_from_json(require(j, "c_rule", field), field + ".c_rule");
  if (j.contains("placement") && j["placement"] != "bisect") {
    throw ConfigError(field + ".placement", "only 'bisect' placement is supported");
  }
  int n = integer(j, "N", field);
  CantorSpec spec = [&] {
    try {
      return CantorSpec::build(a0, b0, rule, Placement::Bisect, n);
    } catch (const Error& e) {
      if (e.code() == Errc::InvalidArgument) throw ConfigError(field, e.what());
      throw;
    }
  }();
  if (j.contains("gaps")) {
    const json& gaps = j["gaps"];
    if (!gaps.is_array() || static_cast<int>(gaps.size()) != n) {
      throw ConfigError(field + ".gaps", "expected one entry per gap");
    }
    for (int i = 0; i < n; ++i) {
      std::string at = field + ".gaps[" + std::to_string(i) + "]";
      const GapInterval& g = spec.gap(i + 1);
      if (number(gaps[i], "center", at) != g.center ||
          number(gaps[i], "log_length", at) != g.log_length) {
        throw ConfigError(at, "gap does not match the construction rule");
      }
    }
  }
  return spec;
}

json to_json(const Shape& shape) {
  switch (shape.kind()) {
    case Shape::Kind::Interval:
      return {{"kind", "interval"},
              {"center", exact_decimal(shape.center().anchor.real())},
              {"log_length", exact_decimal(shape.log_size())}};
    case Shape::Kind::Disk: {
      const AnchoredPoint& c = shape.center();
      return {{"kind", "disk"},
              {"anchor", {exact_decimal(c.anchor.real()), exact_decimal(c.anchor.imag())}},
              {"offset", {exact_decimal(c.offset.real()), exact_decimal(c.offset.imag())}},
              {"log_radius", exact_decimal(shape.log_size())}};
    }
    case Shape::Kind::Arc:
      return {{"kind", "arc"}, {"theta1", shape.theta1()}, {"theta2", shape.theta2()}};
  }
  return {};
}

namespace {

complex complex_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) throw ConfigError(field, "expected [re, im]");
  return {parse_decimal(j[0], field + "[0]"), parse_decimal(j[1], field + "[1]")};
}

}  // namespace

Shape shape_from_json(const json& j, const std::string& field) {
  const json& kind = require(j, "kind", field);
  std::string k = kind.is_string() ? kind.get<std::string>() : "";
  try {
    if (k == "interval") {
      if (j.contains("lo")) return Shape::interval(number(j, "lo", field), number(j, "hi", field));
      return Shape::interval_log(number(j, "center", field), number(j, "log_length", field));
    }
    if (k == "disk") {
      if (j.contains("radius")) {
        return Shape::disk(complex_from_json(require(j, "center", field), field + ".center"),
                           number(j, "radius", field));
      }
      complex anchor = complex_from_json(require(j, "anchor", field), field + ".anchor");
      complex offset = j.contains("offset") ? complex_from_json(j["offset"], field + ".offset")
                                            : complex{};
      return Shape::disk_log(anchor, offset, number(j, "log_radius", field));
    }
    if (k == "arc") return Shape::arc(number(j, "theta1", field), number(j, "theta2", field));
  } catch (const Error& e) {
    throw ConfigError(field, e.what());
  }
  throw ConfigError(field + ".kind", "expected interval, disk or arc");
}

json to_json(const CompactUnion& set) {
  json shapes = json::array();
  for (const auto& s : set.shapes) shapes.push_back(to_json(s));
  return {{"shapes", shapes}};
}

CompactUnion union_from_json(const json& j, const std::string& field) {
  const json& shapes = require(j, "shapes", field);
  if (!shapes.is_array() || shapes.empty()) {
    throw ConfigError(field + ".shapes", "expected a nonempty array");
  }
  CompactUnion out;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    out.shapes.push_back(shape_from_json(shapes[i], field + ".shapes[" + std::to_string(i) + "]"));
  }
  return out;
}

json to_json(const BlaschkeSpec& spec) {
  json extra = json::array();
  for (complex b : spec.extra_zeros()) extra.push_back({exact_decimal(b.real()), exact_decimal(b.imag())});
  return {{"l", spec.l()},
          {"alpha", spec.alpha()},
          {"beta", spec.beta()},
          {"c_rule", to_json(spec.c_rule())},
          {"N", spec.max_index()},
          {"extra_zeros", extra}};
}

BlaschkeSpec blaschke_spec_from_json(const json& j, const std::string& field) {
  int l = j.contains("l") ? integer(j, "l", field) : 0;
  double alpha = number(j, "alpha", field);
  double beta = number(j, "beta", field);
  CRule rule = crule_from_json(require(j, "c_rule", field), field + ".c_rule");
  int n = integer(j, "N", field);
  std::vector<complex> extra;
  if (j.contains("extra_zeros")) {
    const json& e = j["extra_zeros"];
    if (!e.is_array()) throw ConfigError(field + ".extra_zeros", "expected an array");
    for (std::size_t i = 0; i < e.size(); ++i) {
      extra.push_back(complex_from_json(e[i], field + ".extra_zeros[" + std::to_string(i) + "]"));
    }
  } else if (j.contains("extra_generator")) {
    extra = BlaschkeSpec::extra_zero_generator(integer(j, "extra_generator", field), alpha, beta);
  }
  try {
    return BlaschkeSpec::build(l, alpha, beta, rule, n, std::move(extra));
  } catch (const Error& e) {
    if (e.code() == Errc::InvalidArgument) throw ConfigError(field, e.what());
    throw;
  }
}

json read_json_file(const std::string& path, const std::string& field) {
  std::ifstream in(path);
  if (!in) throw ConfigError(field, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ConfigError(field, std::string("invalid JSON in '") + path + "': " + e.what());
  }
}

}  // namespace finehull::app
