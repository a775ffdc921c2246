#pragma once

#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

namespace finehull::app {

using nlohmann::json;

/// Settings shared by all subcommands. Every algorithm is deterministic, so
/// the config alone fixes the output bytes; `threads` and `out` do not enter
/// the config hash.
struct RunConfig {
  json spec;                 // Cantor or Blaschke spec: inline object or file path
  json set;                  // compact union: inline object or file path
  std::string out = "out";
  int threads = 1;
  int N = -1;                // depth; -1 picks a subcommand default
  double tol = 1e-12;
  int res = 128;
  int M = 8;
  std::string weights = "inverse-square";
  bool sq = false;
  std::string at;            // "re,im" points separated by ';'
  std::string wrect = "-2,2,-2,2";
  std::string branch;        // empty: f itself; else D_plus, D_minus, H_plus, H_minus
  std::string sheets;        // "k0..k1"
  int samples = 512;
  int leja_n = 64;

  /// Everything except out and threads, with sorted keys.
  json canonical() const;
  std::string hash() const;
};

/// Names of the config keys; FINEHULL_<KEY> in upper case overrides a key
/// from the environment.
const std::vector<std::string>& config_keys();

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
std::optional<std::string> process_env(const std::string& name);

/// Layers, lowest first: defaults, config file, environment, command line.
/// Throws ConfigError naming the offending key.
RunConfig load_config(const json& file, const json& cli, const EnvLookup& env = process_env);

/// Reads an inline object or a path to a JSON file.
json resolve_document(const json& value, const std::string& field);

}  // namespace finehull::app
