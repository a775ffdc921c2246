#include "finehull_app/commands.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "finehull/blaschke.hpp"
#include "finehull/error.hpp"
#include "finehull/hull.hpp"
#include "finehull/potential.hpp"
#include "finehull/product.hpp"
#include "finehull_app/acceptance.hpp"
#include "finehull_app/json_io.hpp"

namespace finehull::app {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> split_numbers(const std::string& text, char sep, const std::string& field) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(parse_decimal(json(item), field));
  return out;
}

std::vector<complex> parse_points(const std::string& text, const std::string& field) {
  if (text.empty()) throw ConfigError(field, "missing; expected re,im[;re,im...]");
  std::vector<complex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    auto v = split_numbers(item, ',', field);
    if (v.size() != 2) throw ConfigError(field, "expected re,im");
    out.emplace_back(v[0], v[1]);
  }
  return out;
}

WRect parse_rect(const std::string& text) {
  auto v = split_numbers(text, ',', "wrect");
  if (v.size() != 4) throw ConfigError("wrect", "expected x0,x1,y0,y1");
  return {v[0], v[1], v[2], v[3]};
}

std::pair<int, int> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) throw ConfigError("sheets", "expected k0..k1");
  try {
    int k0 = std::stoi(text.substr(0, dots));
    int k1 = std::stoi(text.substr(dots + 2));
    if (k0 > k1) throw ConfigError("sheets", "expected k0 <= k1");
    return {k0, k1};
  } catch (const std::logic_error&) {
    throw ConfigError("sheets", "expected integers k0..k1");
  }
}

BranchTag parse_branch(const std::string& text) {
  if (text == "D_plus") return BranchTag::DPlus;
  if (text == "D_minus") return BranchTag::DMinus;
  if (text == "H_plus") return BranchTag::HPlus;
  if (text == "H_minus") return BranchTag::HMinus;
  throw ConfigError("branch", "expected D_plus, D_minus, H_plus or H_minus");
}

bool is_blaschke(const json& spec) { return spec.is_object() && spec.contains("alpha"); }

CantorSpec cantor_of(const RunConfig& c) {
  if (is_blaschke(c.spec)) throw ConfigError("spec", "expected a Cantor spec");
  return cantor_spec_from_json(c.spec);
}

int depth_or(const RunConfig& c, int fallback, int max_index) {
  int N = c.N >= 0 ? c.N : fallback;
  if (N > max_index) throw ConfigError("N", "exceeds the materialised depth");
  return N;
}

double tail_or_inf(const CantorSpec& spec, int N, complex z) {
  try {
    return tail_bound(spec, N, z).bound;
  } catch (const Error& e) {
    if (e.code() == Errc::RegionViolatesEN) return kInf;
    throw;
  }
}

ArtifactSet spec_build(const RunConfig& c, std::ostream& log) {
  ArtifactSet a;
  if (is_blaschke(c.spec)) {
    BlaschkeSpec spec = blaschke_spec_from_json(c.spec);
    a.put_json("spec.json", to_json(spec));
    log << "blaschke spec: " << spec.max_index() << " zeros, sum (1-|a|) = "
        << csv_number(spec.blaschke_sum()) << "\n";
  } else {
    CantorSpec spec = cantor_spec_from_json(c.spec);
    a.put_json("spec.json", to_json(spec));
    log << "cantor spec: " << spec.max_index() << " gaps, length "
        << csv_number(cantor_length(spec, spec.max_index())) << "\n";
  }
  return a;
}

ArtifactSet eval(const RunConfig& c, std::ostream& log) {
  CantorSpec spec = cantor_of(c);
  CsvTable csv({"re", "im", "log_mag", "arg", "err_bound"});
  for (complex z : parse_points(c.at, "at")) {
    LogComplex value;
    double err = 0.0;
    if (!c.branch.empty()) {
      int N = depth_or(c, spec.max_index(), spec.max_index());
      value = sqrt_branch(spec, N, z, parse_branch(c.branch));
      err = tail_or_inf(spec, N, z);
    } else if (c.N >= 0) {
      int N = depth_or(c, 0, spec.max_index());
      value = eval_partial_product(spec, N, z);
      err = tail_or_inf(spec, N, z);
    } else {
      EvalResult r = eval_f(spec, z, c.tol);
      value = r.value;
      err = r.err;
    }
    csv.add(z.real()).add(z.imag()).add(value.log_mag()).add(value.arg()).add(err);
    csv.end_row();
  }
  ArtifactSet a;
  a.put("eval.csv", csv.str());
  log << "evaluated " << parse_points(c.at, "at").size() << " point(s)\n";
  return a;
}

ArtifactSet capacity(const RunConfig& c, std::ostream& log) {
  CompactUnion set = union_from_json(c.set);
  CsvTable csv({"item", "log_cap", "cap"});
  for (std::size_t i = 0; i < set.shapes.size(); ++i) {
    double lc = log_exact_capacity(set.shapes[i]);
    csv.add("shape[" + std::to_string(i) + "]").add(lc).add(std::exp(lc));
    csv.end_row();
  }
  UnionBound ub = union_capacity_bound(set);
  csv.add("union_bound").add(ub.log_bound).add(std::exp(ub.log_bound));
  csv.end_row();
  GreenModel model = leja_points(set, c.leja_n);
  csv.add("leja_estimate").add(model.log_cap).add(model.cap_estimate());
  csv.end_row();
  csv.add("leja_d_n").add(model.log_d_n()).add(std::exp(model.log_d_n()));
  csv.end_row();
  ArtifactSet a;
  a.put("capacity.csv", csv.str());
  log << "leja capacity estimate " << csv_number(model.cap_estimate()) << " (n = " << model.n()
      << "), union bound " << csv_number(std::exp(ub.log_bound)) << "\n";
  return a;
}

ArtifactSet green(const RunConfig& c, std::ostream& log) {
  CompactUnion set = union_from_json(c.set);
  GreenModel model = leja_points(set, c.leja_n);
  CsvTable csv({"re", "im", "green", "green_raw"});
  for (complex z : parse_points(c.at, "at")) {
    csv.add(z.real()).add(z.imag()).add(green_eval(model, z)).add(green_raw(model, z));
    csv.end_row();
  }
  ArtifactSet a;
  a.put("green.csv", csv.str());
  log << "green model: n = " << model.n() << ", cap " << csv_number(model.cap_estimate())
      << ", support tolerance " << csv_number(model.support_tolerance) << "\n";
  return a;
}

ArtifactSet sample_e(const RunConfig& c, std::ostream& log) {
  CantorSpec spec = cantor_of(c);
  if (condition_sum(spec, std::max(spec.max_index(), 1)).verdict != Verdict::Satisfied) {
    throw Error(Errc::PreconditionFailure, "sum 1/(j c_j) < 1/2 is not certified");
  }
  int N = c.N >= 1 ? depth_or(c, 1, spec.max_index())
                   : close_cantor_chain(spec, spec.max_index()).N;
  ESample s = sample_E(spec, N, c.samples, c.leja_n);
  CsvTable csv({"x", "u", "in_EN"});
  for (const auto& p : s.points) {
    csv.add(p.x).add(p.u).add(p.in_en ? 1 : 0);
    csv.end_row();
  }
  ArtifactSet a;
  a.put("e_sample.csv", csv.str());
  a.put_json("e_sample.json", {{"N", s.N},
                               {"candidates", s.candidates},
                               {"certified", s.points.size()},
                               {"failed_en", s.failed_en},
                               {"failed_u", s.failed_u}});
  log << s.points.size() << " of " << s.candidates << " candidates certified at N = " << N << "\n";
  return a;
}

ArtifactSet hull_scan(const RunConfig& c, std::ostream& log) {
  CantorSpec spec = cantor_of(c);
  auto zs = parse_points(c.at, "at");
  if (zs.size() != 1) throw ConfigError("at", "hull-scan takes one z");
  WeightMode mode = c.weights == "unit" ? WeightMode::UnitCoefficient : WeightMode::InverseSquare;
  if (c.M > spec.max_index()) throw ConfigError("M", "exceeds the materialised depth");
  HullPotentialSpec hps = make_hull_spec(spec, c.M, mode);
  HullGrid grid = fiber_scan(hps, zs[0], parse_rect(c.wrect), c.res, c.sq, c.threads);

  CsvTable csv({"re_w", "im_w", "v", "clamped"});
  for (int iy = 0; iy < grid.res; ++iy) {
    for (int ix = 0; ix < grid.res; ++ix) {
      std::size_t k = static_cast<std::size_t>(iy) * grid.res + ix;
      complex w = grid.w(ix, iy);
      csv.add(w.real()).add(w.imag()).add(grid.values[k]).add(grid.clamped[k] ? 1 : 0);
      csv.end_row();
    }
  }
  json dips = json::array();
  for (const auto& d : grid.dips) {
    dips.push_back({{"w", {d.w.real(), d.w.imag()}},
                    {"value", d.value},
                    {"depth", d.depth},
                    {"polished", d.polished}});
  }
  ArtifactSet a;
  a.put("grid.csv", csv.str());
  a.put_json("dips.json", {{"z", {zs[0].real(), zs[0].imag()}},
                           {"res", grid.res},
                           {"sq", grid.sq},
                           {"M", hps.M},
                           {"median", grid.median},
                           {"threshold", kDipThreshold},
                           {"dips", dips}});
  log << grid.dips.size() << " dip(s), grid median " << csv_number(grid.median) << "\n";
  return a;
}

ArtifactSet blaschke(const RunConfig& c, std::ostream& log) {
  if (!is_blaschke(c.spec)) throw ConfigError("spec", "expected a Blaschke spec");
  BlaschkeSpec spec = blaschke_spec_from_json(c.spec);
  int N = depth_or(c, spec.max_index(), spec.max_index());
  auto zs = parse_points(c.at, "at");
  CsvTable csv({"re", "im", "log_mag", "arg", "err_bound"});
  for (complex z : zs) {
    LogComplex b = eval_blaschke(spec, N, z);
    double err = blaschke_in_en(spec, N, z) ? blaschke_tail_bound(spec, N, z) : kInf;
    csv.add(z.real()).add(z.imag()).add(b.log_mag()).add(b.arg()).add(err);
    csv.end_row();
  }
  ArtifactSet a;
  a.put("blaschke.csv", csv.str());
  if (!c.sheets.empty()) {
    auto [k0, k1] = parse_range(c.sheets);
    CsvTable sheets({"re_z", "im_z", "k", "re", "im"});
    for (complex z : zs) {
      Sheets s = fb_sheets(spec, z, N);
      for (int k = k0; k <= k1; ++k) {
        complex v = s.value(k);
        sheets.add(z.real()).add(z.imag()).add(k).add(v.real()).add(v.imag());
        sheets.end_row();
      }
    }
    a.put("sheets.csv", sheets.str());
  }
  log << "evaluated B_" << N << " at " << zs.size() << " point(s)\n";
  return a;
}

RunConfig resolved(RunConfig c, const std::string& subcommand) {
  bool needs_spec = subcommand != "capacity" && subcommand != "green" && subcommand != "reproduce-all";
  bool needs_set = subcommand == "capacity" || subcommand == "green";
  if (needs_spec) c.spec = resolve_document(c.spec, "spec");
  if (needs_set) c.set = resolve_document(c.set, "set");
  return c;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"spec-build", "eval",      "capacity",
                                                 "green",      "sample-e",  "hull-scan",
                                                 "blaschke",   "reproduce-all"};
  return names;
}

ArtifactSet produce(const std::string& subcommand, const RunConfig& config, std::ostream& log) {
  if (subcommand == "spec-build") return spec_build(config, log);
  if (subcommand == "eval") return eval(config, log);
  if (subcommand == "capacity") return capacity(config, log);
  if (subcommand == "green") return green(config, log);
  if (subcommand == "sample-e") return sample_e(config, log);
  if (subcommand == "hull-scan") return hull_scan(config, log);
  if (subcommand == "blaschke") return blaschke(config, log);
  throw ConfigError("subcommand", "unknown subcommand '" + subcommand + "'");
}

int run(const std::string& subcommand, RunConfig config, std::ostream& out, std::ostream& err) {
  auto fail = [&](int code, const std::string& kind, const std::string& message,
                  const std::string& field) {
    err << json{{"error", kind}, {"message", message}, {"field", field}}.dump() << "\n";
    return code;
  };
  try {
    config = resolved(std::move(config), subcommand);
    if (subcommand == "reproduce-all") {
      AcceptanceReport report = reproduce_all(config.threads);
      for (const auto& row : report.rows) out << summary_line(row) << "\n";
      report.artifacts.flush(config.out, subcommand, config.hash());
      return report.all_pass() ? 0 : 2;
    }
    ArtifactSet artifacts = produce(subcommand, config, out);
    artifacts.flush(config.out, subcommand, config.hash());
    return 0;
  } catch (const ConfigError& e) {
    return fail(1, "InvalidConfig", e.what(), e.field());
  } catch (const Error& e) {
    return fail(1, std::string(to_string(e.code())), e.what(), "");
  } catch (const std::exception& e) {
    return fail(2, "Internal", e.what(), "");
  }
}

}  // namespace finehull::app
