#include "finehull_app/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>

#include "finehull/blaschke.hpp"
#include "finehull/error.hpp"
#include "finehull/hull.hpp"
#include "finehull/potential.hpp"
#include "finehull/product.hpp"

namespace finehull::app {

namespace {

using nlohmann::json;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Van der Corput radical inverse; pairs of bases give a Halton sequence.
double halton(unsigned i, unsigned base) {
  double f = 1.0;
  double r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

CantorSpec affine_spec(int max_index) {
  return CantorSpec::build(0.0, 1.0, CRule::affine(5.0), Placement::Bisect, max_index);
}

BlaschkeSpec quarter_arc_spec() {
  return BlaschkeSpec::build(0, 0.0, kPi / 2.0, CRule::affine(5.0), 64);
}

CriterionResult capacity_oracles(ArtifactSet& out) {
  struct Case {
    std::string name;
    CompactUnion set;
    double exact;
    double tol;
  };
  std::vector<Case> cases = {
      {"interval[0,1]", {{Shape::interval(0.0, 1.0)}}, 0.25, 0.05},
      {"unit_circle", {{Shape::disk({0.0, 0.0}, 1.0)}}, 1.0, 0.02},
      {"interval[-2,2]", {{Shape::interval(-2.0, 2.0)}}, 1.0, 0.05},
  };
  CriterionResult r{1, "capacity oracles", true, "", 0.0};
  CsvTable csv({"set", "n", "cap_estimate", "exact", "rel_err", "log_d_n"});
  for (const auto& c : cases) {
    auto t0 = std::chrono::steady_clock::now();
    GreenModel m = leja_points(c.set, 64);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double rel = std::abs(m.cap_estimate() - c.exact) / c.exact;
    r.pass = r.pass && rel < c.tol && secs < 5.0;
    r.seconds = std::max(r.seconds, secs);
    r.detail += c.name + " rel " + fmt(rel) + " (tol " + fmt(c.tol) + "); ";
    csv.add(c.name).add(64).add(m.cap_estimate()).add(c.exact).add(rel).add(m.log_d_n());
    csv.end_row();
  }
  out.put("capacity_oracles.csv", csv.str());
  return r;
}

CriterionResult capacity_chain(ArtifactSet& out) {
  CriterionResult r{2, "union-bound chain and E-sample", false, "", 0.0};
  CantorSpec spec = affine_spec(12);
  ConditionSum cs = condition_sum(spec, 12);
  double upper = cs.certified_upper().value_or(INFINITY);
  bool condition = cs.verdict == Verdict::Satisfied && upper < 0.5;

  CsvTable chain({"N", "log_bound", "bound", "closes"});
  int first_closing = 0;
  for (int N = 1; N <= 12; ++N) {
    FineSets s = cantor_fine_sets(spec, N);
    if (s.closes && first_closing == 0) first_closing = N;
    chain.add(N).add(s.bound.log_bound).add(std::exp(s.bound.log_bound)).add(s.closes ? 1 : 0);
    chain.end_row();
  }
  out.put("chain.csv", chain.str());

  FineWitness w = build_witness(cantor_fine_sets(spec, 6));
  ESample e = sample_E(spec, w, 512);
  CsvTable pts({"x", "u", "in_EN"});
  for (const auto& p : e.points) {
    pts.add(p.x).add(p.u).add(p.in_en ? 1 : 0);
    pts.end_row();
  }
  out.put("e_sample.csv", pts.str());
  double u_inf = w.u_infinity();
  double ratio = w.log_cap_ratio();
  double rel = std::abs(u_inf - ratio) / std::abs(ratio);
  out.put_json("witness.json", {{"N", 6},
                                {"cap_F", w.F.cap_estimate()},
                                {"cap_J", w.J.cap_estimate()},
                                {"u_infinity", u_inf},
                                {"log_cap_ratio", ratio},
                                {"certified_points", e.points.size()},
                                {"candidates", e.candidates}});
  r.pass = condition && first_closing > 0 && !e.points.empty() && rel < 0.05;
  r.detail = "condition sum <= " + fmt(upper) + "; chain closes at N=" +
             std::to_string(first_closing) + "; " + std::to_string(e.points.size()) +
             " E-points at N=6; u(inf) rel err " + fmt(rel);
  return r;
}

CriterionResult branch_system(ArtifactSet& out) {
  CriterionResult r{3, "branch system", false, "", 0.0};
  CantorSpec spec = affine_spec(12);
  int N = spec.max_index();
  const BranchTag tags[] = {BranchTag::DPlus, BranchTag::DMinus, BranchTag::HPlus,
                            BranchTag::HMinus};
  CsvTable csv({"re", "im", "max_rel_err"});
  double worst = 0.0;
  for (unsigned i = 1; i <= 1000; ++i) {
    complex z{-1.0 + 3.0 * halton(i, 2), -1.5 + 3.0 * halton(i, 3)};
    LogComplex f = eval_partial_product(spec, N, z);
    double err = 0.0;
    for (BranchTag t : tags) {
      LogComplex s = sqrt_branch(spec, N, z, t);
      err = std::max(err, std::abs((s * s / f).minus_one()));
    }
    worst = std::max(worst, err);
    csv.add(z.real()).add(z.imag()).add(err);
    csv.end_row();
  }
  out.put("branches.csv", csv.str());
  complex far{1e6, 0.0};
  complex far_up{0.0, 1e6};
  double norm = std::max({std::abs(sqrt_branch(spec, N, far, BranchTag::DPlus).value() - 1.0),
                          std::abs(sqrt_branch(spec, N, far, BranchTag::DMinus).value() + 1.0),
                          std::abs(sqrt_branch(spec, N, far_up, BranchTag::HPlus).value() - 1.0),
                          std::abs(sqrt_branch(spec, N, far_up, BranchTag::HMinus).value() + 1.0)});
  r.pass = worst < 1e-10 && norm < 1e-5;
  r.detail = "max |g^2/f - 1| = " + fmt(worst) + " over 1000 points; normalisation err " + fmt(norm);
  return r;
}

double eps_k(int k) { return 1e-2 * std::pow(4.0, -k); }

double jump(const CantorSpec& spec, double x, double eps) {
  int N = spec.max_index();
  complex up = sqrt_branch(spec, N, {x, eps}, BranchTag::HPlus).value();
  complex down = sqrt_branch(spec, N, {x, -eps}, BranchTag::HPlus).value();
  return std::abs(up - down);
}

CriterionResult fine_continuity(ArtifactSet& out) {
  CriterionResult r{4, "fine continuity vs jump", true, "", 0.0};
  CsvTable csv({"kind", "x", "eps", "jump", "target"});

  CantorSpec spec = affine_spec(12);
  ESample e = sample_E(spec, build_witness(cantor_fine_sets(spec, 6)), 512);
  std::vector<std::pair<double, double>> slope;  // (|g'(x)|, x)
  for (const auto& p : e.points) {
    complex z{p.x, 0.0};
    double g = std::exp(0.5 * eval_partial_product(spec, spec.max_index(), z).log_mag());
    slope.emplace_back(0.5 * g * std::abs(log_derivative(spec, spec.max_index(), z)), p.x);
  }
  std::sort(slope.begin(), slope.end());
  int e_ok = 0;
  double e_worst = 0.0;
  for (std::size_t i = 0; i < 8 && i < slope.size(); ++i) {
    double x = slope[i].second;
    FineValue fv = fine_boundary_value(spec, x, BranchTag::HPlus, 1e-14, 6);
    bool mono = true;
    double prev = INFINITY;
    double last = 0.0;
    for (int k = 0; k <= 8; ++k) {
      last = jump(spec, x, eps_k(k));
      mono = mono && last < prev;
      prev = last;
      csv.add("E").add(x).add(eps_k(k)).add(last).add(0.0);
      csv.end_row();
    }
    double limit = 10.0 * (fv.err + eps_k(8));
    e_worst = std::max(e_worst, last / limit);
    if (mono && last < limit) ++e_ok;
  }

  CantorSpec mild =
      CantorSpec::build(0.0, 1.0, CRule::affine(0.05, 1.0), Placement::Bisect, 8);
  int g_ok = 0;
  double g_worst = 0.0;
  for (int j = 1; j <= 8; ++j) {
    double x = mild.gap(j).center;
    double target = 2.0 * std::exp(0.5 * eval_partial_product(mild, 8, {x, 0.0}).log_mag());
    double last = 0.0;
    for (int k = 0; k <= 8; ++k) {
      last = jump(mild, x, eps_k(k));
      csv.add("gap").add(x).add(eps_k(k)).add(last).add(target);
      csv.end_row();
    }
    double rel = std::abs(last - target) / target;
    g_worst = std::max(g_worst, rel);
    if (rel < 0.01) ++g_ok;
  }
  out.put("fine_continuity.csv", csv.str());
  r.pass = e_ok == 8 && g_ok == 8;
  r.detail = std::to_string(e_ok) + "/8 E-points monotone and below 10(tail+eps) (worst ratio " +
             fmt(e_worst) + "); " + std::to_string(g_ok) + "/8 gap midpoints within 1% of 2|g| (worst " +
             fmt(g_worst) + ")";
  return r;
}

CriterionResult laurent_length(ArtifactSet& out) {
  CriterionResult r{5, "Laurent c_1 and length", true, "", 0.0};
  CantorSpec spec = affine_spec(12);
  CsvTable csv({"N", "formula", "contour", "abs_diff", "minus_length"});
  double worst = 0.0;
  bool exact = true;
  for (int N = 0; N <= 8; ++N) {
    LaurentC1 c;
    try {
      c = laurent_c1(spec, N, 1e-8);
    } catch (const Error&) {
      r.pass = false;
      c = laurent_c1(spec, N, INFINITY);
    }
    double diff = std::abs(c.formula - c.contour);
    double minus_length = -cantor_length(spec, N);
    worst = std::max(worst, diff);
    exact = exact && c.formula == minus_length;
    csv.add(N).add(c.formula).add(c.contour).add(diff).add(minus_length);
    csv.end_row();
  }
  out.put("laurent.csv", csv.str());
  r.pass = r.pass && worst <= 1e-8 && exact;
  r.detail = "max |contour - formula| = " + fmt(worst) + " for N <= 8; c_1 == -length " +
             (exact ? "bit-exact" : "violated");
  return r;
}

CriterionResult lemma_estimates(ArtifactSet& out) {
  CriterionResult r{6, "potential estimates", true, "", 0.0};
  CantorSpec spec = CantorSpec::build(0.0, 1.0, CRule::factorial(), Placement::Bisect, 8);
  WeightSet weights = build_weights(spec.c_rule(), 8);
  FineSets sets = close_cantor_chain(spec, 8);
  ESample e = sample_E(spec, build_witness(sets), 64);

  CsvTable graph({"x", "n", "log_bound", "log_2p"});
  int graph_checks = 0;
  int graph_ok = 0;
  double margin = INFINITY;
  for (const auto& p : e.points) {
    for (int n = 2; n <= 6; ++n) {
      Deviation d = graph_distance(spec, n, {p.x, 0.0});
      double target = kLog2 + log_floor(spec.c_rule(), n);
      ++graph_checks;
      if (d.log_bound <= target) ++graph_ok;
      margin = std::min(margin, target - d.log_bound);
      graph.add(p.x).add(n).add(d.log_bound).add(target);
      graph.end_row();
    }
  }
  out.put("graph_estimates.csv", graph.str());

  CsvTable floor({"x", "delta", "direction", "n", "v_n", "log_delta_minus_nc"});
  int floor_checks = 0;
  int floor_ok = 0;
  for (const auto& p : e.points) {
    complex z{p.x, 0.0};
    complex f = eval_partial_product(spec, spec.max_index(), z).value();
    for (double delta : {0.5, 0.1}) {
      for (int k = 0; k < 8; ++k) {
        complex w = f + std::polar(delta, 0.3 + kTwoPi * k / 8.0);
        for (int n = 1; n <= 6; ++n) {
          double v = v_n(spec, n, z, w);
          double lower = std::log(delta) - spec.c_rule().jc(n);
          ++floor_checks;
          if (v >= lower) ++floor_ok;
          floor.add(p.x).add(delta).add(k).add(n).add(v).add(lower);
          floor.end_row();
        }
      }
    }
  }
  out.put("offgraph_floor.csv", floor.str());
  r.pass = weights.sum_converges && weights.weighted_floor_diverges && graph_checks > 0 &&
           graph_ok == graph_checks && floor_ok == floor_checks;
  r.detail = std::to_string(graph_ok) + "/" + std::to_string(graph_checks) +
             " graph estimates hold (min log margin " + fmt(margin) + ") on " +
             std::to_string(e.points.size()) + " samples; " + std::to_string(floor_ok) + "/" +
             std::to_string(floor_checks) + " off-graph floors hold";
  return r;
}

CriterionResult fiber_structure(ArtifactSet& out, int threads) {
  CriterionResult r{7, "fiber structure", true, "", 0.0};
  CantorSpec spec = affine_spec(12);
  ESample e = sample_E(spec, build_witness(cantor_fine_sets(spec, 6)), 512);
  double x = e.points[e.points.size() / 2].x;

  struct Site {
    std::string name;
    complex z;
    complex g;
  };
  std::vector<Site> sites = {
      {"z2", {2.0, 0.0}, sqrt_branch(spec, spec.max_index(), {2.0, 0.0}, BranchTag::DPlus).value()},
      {"e_point", {x, 0.0},
       fine_boundary_value(spec, x, BranchTag::HPlus, 1e-14, 6).value.value()},
  };
  for (const auto& site : sites) {
    double half = 1.5 * std::max(1.0, std::abs(site.g));
    WRect rect{-half, half, -half, half};
    std::vector<double> depth_plus;
    std::vector<double> depth_minus;
    for (int M : {4, 8}) {
      HullPotentialSpec hps = make_hull_spec(spec, M, WeightMode::UnitCoefficient);
      HullGrid grid = fiber_scan(hps, site.z, rect, 128, true, threads);
      double dp = -INFINITY;
      double dm = -INFINITY;
      json dips = json::array();
      for (const auto& d : grid.dips) {
        bool near_plus = std::abs((d.w - site.g).real()) <= grid.cell_width() &&
                         std::abs((d.w - site.g).imag()) <= grid.cell_height();
        bool near_minus = std::abs((d.w + site.g).real()) <= grid.cell_width() &&
                          std::abs((d.w + site.g).imag()) <= grid.cell_height();
        if (near_plus) dp = d.depth;
        if (near_minus) dm = d.depth;
        dips.push_back({{"w", {d.w.real(), d.w.imag()}}, {"depth", d.depth}, {"value", d.value}});
      }
      bool ok = grid.dips.size() == 2 && dp > -INFINITY && dm > -INFINITY;
      r.pass = r.pass && ok;
      depth_plus.push_back(dp);
      depth_minus.push_back(dm);
      out.put_json("hull_" + site.name + "_M" + std::to_string(M) + ".json",
                   {{"z", {site.z.real(), site.z.imag()}},
                    {"g", {site.g.real(), site.g.imag()}},
                    {"M", M},
                    {"res", 128},
                    {"median", grid.median},
                    {"dips", dips}});
      if (M == 8) {
        CsvTable csv({"re_w", "im_w", "v", "clamped"});
        for (int iy = 0; iy < grid.res; ++iy) {
          for (int ix = 0; ix < grid.res; ++ix) {
            std::size_t k = static_cast<std::size_t>(iy) * grid.res + ix;
            complex w = grid.w(ix, iy);
            csv.add(w.real()).add(w.imag()).add(grid.values[k]).add(grid.clamped[k] ? 1 : 0);
            csv.end_row();
          }
        }
        out.put("hull_" + site.name + "_grid.csv", csv.str());
      }
      r.detail += site.name + " M=" + std::to_string(M) + ": " +
                  std::to_string(grid.dips.size()) + " dips; ";
    }
    double growth = std::min(depth_plus[1] - depth_plus[0], depth_minus[1] - depth_minus[0]);
    r.pass = r.pass && growth >= 20.0;
    r.detail += site.name + " depth growth " + fmt(growth) + "; ";
  }
  return r;
}

CriterionResult blaschke_identities(ArtifactSet& out) {
  CriterionResult r{8, "Blaschke identities", false, "", 0.0};
  BlaschkeSpec spec = quarter_arc_spec();
  int N = spec.max_index();
  CsvTable csv({"kind", "re", "im", "err"});
  double circle = 0.0;
  double reflection = 0.0;
  for (unsigned i = 1; i <= 1000; ++i) {
    complex z = std::polar(1.0, kTwoPi * halton(i, 3));
    double err = std::abs(std::expm1(eval_blaschke(spec, N, z).log_mag()));
    circle = std::max(circle, err);
    csv.add("circle").add(z.real()).add(z.imag()).add(err);
    csv.end_row();
  }
  for (unsigned i = 1; i <= 1000; ++i) {
    complex z = std::polar(0.05 + 0.9 * halton(i, 2), kTwoPi * halton(i, 3));
    LogComplex in = eval_blaschke(spec, N, z);
    LogComplex mirror = eval_blaschke(spec, N, 1.0 / std::conj(z));
    double err = std::abs((mirror * in.conj()).minus_one());
    reflection = std::max(reflection, err);
    csv.add("reflection").add(z.real()).add(z.imag()).add(err);
    csv.end_row();
  }
  out.put("blaschke_identities.csv", csv.str());

  FineSets sets = close_disk_chain(spec, 16);
  ArcSample arc = sample_arc_E(spec, build_witness(sets), 256);
  CsvTable pts({"theta", "u"});
  for (const auto& p : arc.points) {
    pts.add(p.theta).add(p.u);
    pts.end_row();
  }
  out.put("arc_e_sample.csv", pts.str());
  r.pass = circle < 1e-12 && reflection < 1e-10 && sets.N <= 16 && !arc.points.empty();
  r.detail = "max ||B|-1| on circle " + fmt(circle) + "; reflection err " + fmt(reflection) +
             "; chain closes at N=" + std::to_string(sets.N) + "; " +
             std::to_string(arc.points.size()) + " arc E-points";
  return r;
}

CriterionResult sheets(ArtifactSet& out) {
  CriterionResult r{9, "fB sheets", false, "", 0.0};
  BlaschkeSpec spec = quarter_arc_spec();
  complex z{0.3, 0.2};
  Sheets s = fb_sheets(spec, z, 20);
  std::vector<complex> values;
  CsvTable csv({"k", "re", "im"});
  for (int k = -3; k <= 3; ++k) {
    values.push_back(s.value(k));
    csv.add(k).add(values.back().real()).add(values.back().imag());
    csv.end_row();
  }
  out.put("sheets.csv", csv.str());
  double scale = std::abs(s.base) + 3.0 * std::abs(s.step);
  double spacing = 0.0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    spacing = std::max(spacing, std::abs((values[i + 1] - values[i]) - s.step));
  }
  int distinct = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    bool unique = true;
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (i != j && std::abs(values[i] - values[j]) <= 0.5 * std::abs(s.step)) unique = false;
    }
    if (unique) ++distinct;
  }
  bool spacing_ok = spacing <= 8.0 * 0x1p-52 * scale;
  r.pass = !s.b.is_zero() && spacing_ok && distinct >= 7;
  r.detail = "spacing deviation " + fmt(spacing) + " (" + fmt(spacing / (0x1p-52 * scale)) +
             " ulp of scale); " + std::to_string(distinct) + " distinct values; |B_N(z)| = " +
             fmt(std::exp(s.b.log_mag()));
  return r;
}

template <class Fn>
CriterionResult timed(Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = fn();
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.seconds = std::max(r.seconds, secs);
  return r;
}

std::string summary_csv(const std::vector<CriterionResult>& rows) {
  CsvTable csv({"id", "criterion", "result", "detail"});
  for (const auto& row : rows) {
    std::string detail = row.detail;
    std::replace(detail.begin(), detail.end(), ',', ' ');
    csv.add(row.id).add(row.name).add(row.pass ? "PASS" : "FAIL").add(detail);
    csv.end_row();
  }
  return csv.str();
}

}  // namespace

std::vector<CriterionResult> run_criteria(ArtifactSet& artifacts, int threads) {
  const char* names[] = {"",
                         "capacity oracles",
                         "union-bound chain and E-sample",
                         "branch system",
                         "fine continuity vs jump",
                         "Laurent c_1 and length",
                         "potential estimates",
                         "fiber structure",
                         "Blaschke identities",
                         "fB sheets"};
  std::vector<std::function<CriterionResult()>> steps = {
      [&] { return capacity_oracles(artifacts); },
      [&] { return capacity_chain(artifacts); },
      [&] { return branch_system(artifacts); },
      [&] { return fine_continuity(artifacts); },
      [&] { return laurent_length(artifacts); },
      [&] { return lemma_estimates(artifacts); },
      [&] { return fiber_structure(artifacts, threads); },
      [&] { return blaschke_identities(artifacts); },
      [&] { return sheets(artifacts); },
  };
  std::vector<CriterionResult> rows;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    CriterionResult r = timed(steps[i]);
    r.id = static_cast<int>(i) + 1;
    r.name = names[i + 1];
    rows.push_back(std::move(r));
  }
  artifacts.put("criteria.csv", summary_csv(rows));
  return rows;
}

bool AcceptanceReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
}

AcceptanceReport reproduce_all(int threads) {
  AcceptanceReport report;
  report.rows = run_criteria(report.artifacts, threads);

  auto t0 = std::chrono::steady_clock::now();
  ArtifactSet again;
  run_criteria(again, threads == 1 ? 4 : 1);
  std::size_t differing = 0;
  for (const auto& [name, content] : report.artifacts.files()) {
    auto it = again.files().find(name);
    if (it == again.files().end() || it->second != content) ++differing;
  }
  bool same = differing == 0 && again.files().size() == report.artifacts.files().size();
  CriterionResult det{10, "determinism", same,
                      std::to_string(report.artifacts.files().size()) + " artifacts compared; " +
                          std::to_string(differing) + " differ",
                      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
  report.rows.push_back(det);
  report.artifacts.put("summary.csv", summary_csv(report.rows));
  return report;
}

std::string summary_line(const CriterionResult& row) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f s", row.seconds);
  return std::string(row.pass ? "PASS" : "FAIL") + "  #" + std::to_string(row.id) + " " +
         row.name + ": " + row.detail + " [" + secs + "]";
}

}  // namespace finehull::app
