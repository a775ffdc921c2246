#include "finehull/potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "finehull/error.hpp"
#include "finehull/product.hpp"

namespace finehull {

double log_exact_capacity(const Shape& shape) {
  switch (shape.kind()) {
    case Shape::Kind::Interval:
      return shape.log_size() - kLog4;
    case Shape::Kind::Disk:
      return shape.log_size();
    case Shape::Kind::Arc:
      return std::log(std::sin(0.25 * std::exp(shape.log_size())));
  }
  throw Error(Errc::UnsupportedShape, "no closed-form capacity for this shape");
}

double exact_capacity(const Shape& shape) { return std::exp(log_exact_capacity(shape)); }

UnionBound union_capacity_bound(const CompactUnion& set, double tail) {
  if (set.shapes.empty()) throw Error(Errc::InvalidArgument, "empty union");
  UnionBound out;
  out.frame = std::max(1.0, diameter_bound(set));
  out.tail = tail;
  double log_frame = std::log(out.frame);
  if (set.shapes.size() == 1 && tail == 0.0) {
    double c = log_exact_capacity(set.shapes.front());
    if (c >= log_frame) throw Error(Errc::BoundVacuous, "member capacity fills the frame");
    out.reciprocal_sum = 1.0 / (log_frame - c);
    out.log_bound = c;
    return out;
  }
  double s = 0.0;
  for (const auto& shape : set.shapes) {
    double gap = log_frame - log_exact_capacity(shape);
    if (!(gap > 0.0)) throw Error(Errc::BoundVacuous, "member capacity fills the frame");
    s += 1.0 / gap;
  }
  out.reciprocal_sum = s;
  out.log_bound = log_frame - 1.0 / (s + tail);
  return out;
}

CapacitySums cantor_capacity_sums(const CantorSpec& spec, int N) {
  CapacitySums out;
  for (const auto& g : spec.gaps()) {
    double jc = -g.log_length;
    out.gap_sum += 1.0 / (jc + kLog4);
    if (g.index >= N) out.disk_sum += 2.0 / jc;
  }
  auto tail = spec.c_rule().reciprocal_tail(spec.max_index());
  out.tail = tail ? 3.0 * *tail : 0.0;
  return out;
}

FineSets cantor_fine_sets(const CantorSpec& spec, int N) {
  if (N < 1 || N > spec.max_index()) {
    throw Error(Errc::InvalidArgument, "N must lie in 1..max_index");
  }
  auto tail = spec.c_rule().reciprocal_tail(spec.max_index());
  if (!tail) {
    throw Error(Errc::PreconditionFailure, "the c rule gives no tail bound past max_index");
  }
  FineSets out;
  out.N = N;
  out.tail = 3.0 * *tail;
  out.J.shapes.push_back(Shape::interval(spec.a0(), spec.b0()));
  for (const auto& g : spec.gaps()) {
    out.F.shapes.push_back(Shape::interval_log(g.center, g.log_length));
  }
  for (const auto& g : spec.gaps()) {
    if (g.index < N) continue;
    Shape disk = Shape::disk_log({g.center, 0.0}, {g.half_length(), 0.0}, 0.5 * g.log_length);
    out.F.shapes.push_back(disk);
    out.J.shapes.push_back(disk);
  }
  out.bound = union_capacity_bound(out.F, out.tail);
  out.log_target = std::log(spec.b0() - spec.a0()) - kLog4;
  out.closes = out.bound.log_bound < out.log_target;
  return out;
}

FineSets close_cantor_chain(const CantorSpec& spec, int max_N) {
  int last = std::min(max_N, spec.max_index());
  for (int N = 1; N <= last; ++N) {
    FineSets sets = cantor_fine_sets(spec, N);
    if (sets.closes) return sets;
  }
  throw Error(Errc::ChainNotClosed,
              "no N <= " + std::to_string(last) + " gives Cap F_N < Cap J_N");
}

double GreenModel::cap_estimate() const noexcept { return std::exp(log_cap); }

namespace {

struct Candidate {
  AnchoredPoint p;
  double self_log = kNegInf;  // log distance to itself when chosen again
};

std::vector<Candidate> build_candidates(const CompactUnion& set, int n,
                                        const LejaOptions& options) {
  std::vector<Candidate> out;
  for (const auto& shape : set.shapes) {
    if (shape.subresolution(options.resolution)) {
      out.push_back({shape.center(), shape.log_blob_radius()});
      continue;
    }
    for (const auto& p : shape.mesh(options.candidates_per_node * n)) out.push_back({p});
  }
  return out;
}

}  // namespace

GreenModel leja_points(const CompactUnion& set, int n, const LejaOptions& options) {
  if (n < 2) throw Error(Errc::InvalidArgument, "leja_points needs n >= 2");
  if (set.shapes.empty()) throw Error(Errc::DegenerateSet, "empty support");
  std::vector<Candidate> cand = build_candidates(set, n, options);

  std::size_t first = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    double r = std::abs(cand[i].p.value());
    if (r > best) {
      best = r;
      first = i;
    }
  }

  GreenModel model;
  model.support = set;
  std::vector<double> score(cand.size(), 0.0);
  auto absorb = [&](std::size_t s) {
    for (std::size_t i = 0; i < cand.size(); ++i) {
      score[i] += i == s ? cand[s].self_log : log_distance(cand[i].p, cand[s].p);
    }
  };
  auto argmax = [&]() {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < cand.size(); ++i) {
      if (score[i] > score[arg]) arg = i;
    }
    return arg;
  };

  model.points.push_back(cand[first].p);
  absorb(first);
  double pair_sum = 0.0;
  for (int k = 1; k < n; ++k) {
    std::size_t s = argmax();
    if (score[s] == kNegInf) throw Error(Errc::DegenerateSet, "all candidates coincide");
    pair_sum += score[s];
    model.log_d.push_back(2.0 * pair_sum / (static_cast<double>(k) * (k + 1)));
    model.points.push_back(cand[s].p);
    absorb(s);
  }
  model.log_cap = score[argmax()] / n;

  double tol = kNegInf;
  for (const auto& shape : set.shapes) {
    if (shape.subresolution(options.resolution)) continue;
    for (const auto& p : shape.mesh_midpoints(options.candidates_per_node * n)) {
      tol = std::max(tol, green_raw_at(model, p));
    }
  }
  model.support_tolerance = std::max(tol, 0.0);
  return model;
}

double green_raw(const GreenModel& model, complex z) {
  double s = 0.0;
  for (const auto& xi : model.points) s += log_distance(z, xi);
  return s / model.n() - model.log_cap;
}

double green_raw_at(const GreenModel& model, const AnchoredPoint& z) {
  double s = 0.0;
  for (const auto& xi : model.points) s += log_distance(z, xi);
  return s / model.n() - model.log_cap;
}

double green_eval(const GreenModel& model, complex z) {
  return std::max(green_raw(model, z), 0.0);
}

double green_eval_at(const GreenModel& model, const AnchoredPoint& z) {
  return std::max(green_raw_at(model, z), 0.0);
}

double fine_witness_u(const GreenModel& F, const GreenModel& J, complex z) {
  return green_eval(F, z) - green_eval(J, z);
}

complex infinity_proxy(const GreenModel& J) {
  double diam = std::max(diameter_bound(J.support), 1e-300);
  return J.points.front().value() + complex{1e6 * diam, 0.0};
}

double FineWitness::u_infinity() const { return u(infinity_proxy(J)); }

FineWitness build_witness(FineSets sets, int leja_n, const LejaOptions& options) {
  FineWitness w;
  w.F = leja_points(sets.F, leja_n, options);
  w.J = leja_points(sets.J, leja_n, options);
  w.sets = std::move(sets);
  return w;
}

ESample sample_E(const CantorSpec& spec, const FineWitness& witness, int samples) {
  ESample out;
  out.N = witness.sets.N;
  auto remaining = spec.remaining_intervals(out.N);
  int per = std::max(1, samples / static_cast<int>(remaining.size()));
  for (const auto& iv : remaining) {
    for (int i = 0; i < per; ++i) {
      double x = iv.lo + iv.length() * (3.0 * i + 1.0) / (3.0 * per);
      ++out.candidates;
      if (!satisfies_en(spec, x, out.N)) {
        ++out.failed_en;
        continue;
      }
      double u = witness.u({x, 0.0});
      if (!(u > 0.0)) {
        ++out.failed_u;
        continue;
      }
      out.points.push_back({x, u, true});
    }
  }
  if (out.points.empty()) {
    throw Error(Errc::EmptySample,
                "no candidate passed: " + std::to_string(out.candidates) + " candidates, " +
                    std::to_string(out.failed_en) + " outside E_N, " +
                    std::to_string(out.failed_u) + " with u <= 0");
  }
  return out;
}

ESample sample_E(const CantorSpec& spec, int N, int samples, int leja_n) {
  ConditionSum cs = condition_sum(spec, std::max(spec.max_index(), 1));
  if (cs.verdict != Verdict::Satisfied) {
    throw Error(Errc::PreconditionFailure, "sum 1/(j c_j) < 1/2 is not certified");
  }
  FineSets sets = cantor_fine_sets(spec, N);
  if (!sets.closes) {
    throw Error(Errc::PreconditionFailure, "Cap F_N < Cap J_N is not certified at this N");
  }
  return sample_E(spec, build_witness(std::move(sets), leja_n), samples);
}

}  // namespace finehull
