#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "finehull_app/commands.hpp"
#include "finehull_app/config.hpp"
#include "finehull_app/json_io.hpp"

namespace {

using nlohmann::json;
using finehull::app::ConfigError;

struct Options {
  std::string config;
  std::string out;
  int threads = 0;
  std::string spec;
  std::string set;
  std::string at;
  int N = 0;
  double tol = 0.0;
  int res = 0;
  int M = 0;
  std::string weights;
  bool sq = false;
  std::string wrect;
  std::string branch;
  std::string sheets;
  int samples = 0;
  int leja_n = 0;
};

json document_arg(const std::string& text, const std::string& field) {
  if (!text.empty() && text.front() == '{') {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(field, e.what());
    }
  }
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fine-topology tools for Cantor and Blaschke products"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config, "JSON config file");
  auto* out = app.add_option("--out", o.out, "Output directory");
  auto* threads = app.add_option("--threads", o.threads, "Worker threads");

  for (const auto& name : finehull::app::subcommands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->fallthrough();
    sub->add_option("--spec", o.spec, "Spec object or file");
    sub->add_option("--set", o.set, "Compact union object or file");
    sub->add_option("--at", o.at, "Points re,im;re,im");
    sub->add_option("--depth,-N", o.N, "Truncation depth");
    sub->add_option("--tol", o.tol, "Tail tolerance");
    sub->add_option("--res", o.res, "Grid resolution");
    sub->add_option("--M", o.M, "Hull potential depth");
    sub->add_option("--weights", o.weights, "inverse-square or unit");
    sub->add_flag("--sq", o.sq, "Scan w^2 instead of w");
    sub->add_option("--wrect", o.wrect, "x0,x1,y0,y1");
    sub->add_option("--branch", o.branch, "D_plus, D_minus, H_plus or H_minus");
    sub->add_option("--sheets", o.sheets, "k0..k1");
    sub->add_option("--samples", o.samples, "Sample count");
    sub->add_option("--leja-n", o.leja_n, "Leja node count");
  }
  CLI11_PARSE(app, argc, argv);

  std::string subcommand = app.get_subcommands().front()->get_name();
  CLI::App* sub = app.get_subcommands().front();
  auto count = [&](const char* flag) { return sub->count(flag) > 0; };

  try {
    json cli = json::object();
    if (*out) cli["out"] = o.out;
    if (*threads) cli["threads"] = o.threads;
    if (count("--spec")) cli["spec"] = document_arg(o.spec, "spec");
    if (count("--set")) cli["set"] = document_arg(o.set, "set");
    if (count("--at")) cli["at"] = o.at;
    if (count("--depth")) cli["N"] = o.N;
    if (count("--tol")) cli["tol"] = o.tol;
    if (count("--res")) cli["res"] = o.res;
    if (count("--M")) cli["M"] = o.M;
    if (count("--weights")) cli["weights"] = o.weights;
    if (count("--sq")) cli["sq"] = o.sq;
    if (count("--wrect")) cli["wrect"] = o.wrect;
    if (count("--branch")) cli["branch"] = o.branch;
    if (count("--sheets")) cli["sheets"] = o.sheets;
    if (count("--samples")) cli["samples"] = o.samples;
    if (count("--leja-n")) cli["leja_n"] = o.leja_n;

    json file = json::object();
    if (!o.config.empty()) file = finehull::app::read_json_file(o.config, "config");
    finehull::app::RunConfig config = finehull::app::load_config(file, cli);
    return finehull::app::run(subcommand, config, std::cout, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << json{{"error", "InvalidConfig"}, {"message", e.what()}, {"field", e.field()}}.dump()
              << "\n";
    return 1;
  }
}
