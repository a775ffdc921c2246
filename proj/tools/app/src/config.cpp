#include "finehull_app/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "finehull_app/artifacts.hpp"
#include "finehull_app/json_io.hpp"

namespace finehull::app {

namespace {

enum class Kind { Int, Double, Bool, String, Document };

struct Key {
  const char* name;
  Kind kind;
};

constexpr Key kKeys[] = {
    {"spec", Kind::Document},   {"set", Kind::Document},     {"out", Kind::String},
    {"threads", Kind::Int},     {"N", Kind::Int},            {"tol", Kind::Double},
    {"res", Kind::Int},         {"M", Kind::Int},            {"weights", Kind::String},
    {"sq", Kind::Bool},         {"at", Kind::String},        {"wrect", Kind::String},
    {"branch", Kind::String},   {"sheets", Kind::String},    {"samples", Kind::Int},
    {"leja_n", Kind::Int},
};

const Key* find_key(const std::string& name) {
  for (const auto& k : kKeys) {
    if (name == k.name) return &k;
  }
  return nullptr;
}

json from_env_string(const Key& key, const std::string& text) {
  std::string field = key.name;
  switch (key.kind) {
    case Kind::Int: {
      char* end = nullptr;
      long v = std::strtol(text.c_str(), &end, 10);
      if (end == text.c_str() || *end != '\0') throw ConfigError(field, "expected an integer");
      return v;
    }
    case Kind::Double:
      return parse_decimal(json(text), field);
    case Kind::Bool:
      if (text == "1" || text == "true") return true;
      if (text == "0" || text == "false") return false;
      throw ConfigError(field, "expected true/false");
    case Kind::String:
    case Kind::Document:
      return text;
  }
  return text;
}

void check_type(const Key& key, const json& v, const std::string& field) {
  bool ok = false;
  switch (key.kind) {
    case Kind::Int: ok = v.is_number_integer(); break;
    case Kind::Double: ok = v.is_number(); break;
    case Kind::Bool: ok = v.is_boolean(); break;
    case Kind::String: ok = v.is_string(); break;
    case Kind::Document: ok = v.is_string() || v.is_object(); break;
  }
  if (!ok) throw ConfigError(field, "wrong type for '" + std::string(key.name) + "'");
}

void merge(json& into, const json& layer, const std::string& origin) {
  if (layer.is_null()) return;
  if (!layer.is_object()) throw ConfigError(origin, "expected an object");
  for (auto it = layer.begin(); it != layer.end(); ++it) {
    const Key* key = find_key(it.key());
    if (!key) throw ConfigError(origin + "." + it.key(), "unknown config key");
    check_type(*key, it.value(), origin + "." + it.key());
    into[it.key()] = it.value();
  }
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& k : kKeys) out.emplace_back(k.name);
    return out;
  }();
  return names;
}

std::optional<std::string> process_env(const std::string& name) {
  const char* v = std::getenv(name.c_str());
  if (!v) return std::nullopt;
  return std::string(v);
}

RunConfig load_config(const json& file, const json& cli, const EnvLookup& env) {
  json merged = json::object();
  merge(merged, file, "config");
  json env_layer = json::object();
  for (const auto& k : kKeys) {
    std::string name = "FINEHULL_" + std::string(k.name);
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (auto v = env(name)) env_layer[k.name] = from_env_string(k, *v);
  }
  merge(merged, env_layer, "env");
  merge(merged, cli, "cli");

  RunConfig c;
  auto get = [&](const char* k, auto& dst) {
    if (merged.contains(k)) merged[k].get_to(dst);
  };
  if (merged.contains("spec")) c.spec = merged["spec"];
  if (merged.contains("set")) c.set = merged["set"];
  get("out", c.out);
  get("threads", c.threads);
  get("N", c.N);
  get("tol", c.tol);
  get("res", c.res);
  get("M", c.M);
  get("weights", c.weights);
  get("sq", c.sq);
  get("at", c.at);
  get("wrect", c.wrect);
  get("branch", c.branch);
  get("sheets", c.sheets);
  get("samples", c.samples);
  get("leja_n", c.leja_n);

  if (c.threads < 1) throw ConfigError("threads", "must be >= 1");
  if (!(c.tol > 0.0)) throw ConfigError("tol", "must be positive");
  if (c.res < 2) throw ConfigError("res", "must be >= 2");
  if (c.M < 1) throw ConfigError("M", "must be >= 1");
  if (c.samples < 1) throw ConfigError("samples", "must be >= 1");
  if (c.leja_n < 2) throw ConfigError("leja_n", "must be >= 2");
  if (c.weights != "inverse-square" && c.weights != "unit") {
    throw ConfigError("weights", "expected 'inverse-square' or 'unit'");
  }
  return c;
}

json RunConfig::canonical() const {
  return {{"spec", spec},       {"set", set},         {"N", N},
          {"tol", tol},         {"res", res},         {"M", M},
          {"weights", weights}, {"sq", sq},           {"at", at},
          {"wrect", wrect},     {"branch", branch},   {"sheets", sheets},
          {"samples", samples}, {"leja_n", leja_n}};
}

std::string RunConfig::hash() const { return sha256_hex(canonical().dump()); }

json resolve_document(const json& value, const std::string& field) {
  if (value.is_object()) return value;
  if (value.is_string()) return read_json_file(value.get<std::string>(), field);
  throw ConfigError(field, "missing; pass a file path or an inline object");
}

}  // namespace finehull::app
