// Iteration of the absolute Frobenius on P^3 over finite binary fields.
#ifndef FROBDYN_DYNAMICS_HPP
#define FROBDYN_DYNAMICS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "frobdyn/fibers.hpp"
#include "frobdyn/gf2k.hpp"
#include "frobdyn/moduli.hpp"

namespace frobdyn {

// How lambda evolves between steps. kFixed applies (lambda_g P_g(x)^2)_g at
// every step; kTwisted replaces lambda by lambda^2 after each step.
enum class FrobeniusConvention { kFixed, kTwisted };

enum class OrbitClass { kPeriodic, kPreperiodic, kDestabilized, kUnresolved };

inline const char* to_string(OrbitClass c) {
  switch (c) {
    case OrbitClass::kPeriodic: return "PERIODIC";
    case OrbitClass::kPreperiodic: return "PREPERIODIC";
    case OrbitClass::kDestabilized: return "DESTABILIZED";
    default: return "UNRESOLVED";
  }
}

struct OrbitReport {
  ProjPoint start;
  // Up to the first repeat (exclusive) or the base point (inclusive).
  std::vector<ProjPoint> trajectory;
  std::size_t preperiod = 0;
  std::optional<std::size_t> period;
  std::optional<std::size_t> hit_base_locus_at;
  OrbitClass classification = OrbitClass::kUnresolved;
  std::size_t max_steps = 0;
};

// Applies the absolute Frobenius up to max_steps times. Cycle detection keys
// on the point (and, for the twisted convention, on the step modulo the field
// degree, since lambda^(2^n) = lambda).
inline OrbitReport iterate_orbit(const ThetaConstants& lambda, const ProjPoint& x, std::size_t max_steps,
                                 FrobeniusConvention convention = FrobeniusConvention::kFixed) {
  if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
  const FieldPtr f = common_field(lambda.field(), x.field());
  const std::size_t phases = convention == FrobeniusConvention::kTwisted ? lambda.field()->degree() : 1;

  OrbitReport report{x.embed_into(f), {x.embed_into(f)}, 0, std::nullopt, std::nullopt, OrbitClass::kUnresolved,
                     max_steps};
  std::unordered_map<ProjPoint, std::vector<std::pair<std::size_t, std::size_t>>, ProjPointHash> seen;
  auto remember = [&](const ProjPoint& p, std::size_t step) { seen[p].emplace_back(step % phases, step); };
  auto lookup = [&](const ProjPoint& p, std::size_t step) -> std::optional<std::size_t> {
    const auto it = seen.find(p);
    if (it == seen.end()) return std::nullopt;
    for (const auto& [phase, at] : it->second) {
      if (phase == step % phases) return at;
    }
    return std::nullopt;
  };

  remember(report.start, 0);
  ThetaConstants lam = lambda.embed_into(f);
  for (std::size_t step = 0; step < max_steps; ++step) {
    const auto next = absolute_frobenius(lam, report.trajectory.back());
    if (!next) {
      report.hit_base_locus_at = step;
      report.classification = OrbitClass::kDestabilized;
      return report;
    }
    if (convention == FrobeniusConvention::kTwisted) lam = lam.squared();
    if (const auto j = lookup(*next, step + 1)) {
      report.preperiod = *j;
      report.period = step + 1 - *j;
      report.classification = *j == 0 ? OrbitClass::kPeriodic : OrbitClass::kPreperiodic;
      return report;
    }
    report.trajectory.push_back(*next);
    remember(*next, step + 1);
  }
  // The last stored point may itself be the base point.
  if (report.trajectory.back().is_base_point()) {
    report.hit_base_locus_at = report.trajectory.size() - 1;
    report.classification = OrbitClass::kDestabilized;
  }
  return report;
}

// ---- census ----

inline constexpr std::uint64_t kCensusMaxPoints = std::uint64_t{1} << 20;

struct CensusRow {
  ProjPoint point;
  OrbitClass classification;
  std::size_t preperiod;
  std::optional<std::size_t> period;
  std::optional<std::size_t> destab_step;
  // Kummer quartic vanishes: periodic boundary points are S-equivalence
  // classes, not necessarily isomorphism classes of bundles.
  bool on_boundary;
};

struct CensusTable {
  FieldPtr field;
  ThetaConstants lambda;
  FrobeniusConvention convention = FrobeniusConvention::kFixed;
  std::vector<CensusRow> rows;
  std::size_t periodic = 0, preperiodic = 0, destabilized = 0, unresolved = 0;
  std::size_t periodic_on_boundary = 0;
  std::map<std::size_t, std::size_t> cycle_lengths;
  std::map<std::size_t, std::size_t> destab_depths;
};

// Classifies every point of P^3(F). Work is split across `threads` workers;
// rows are written by index and then sorted, so the table does not depend on
// the thread count.
inline CensusTable census(const ThetaConstants& lambda, const FieldPtr& field, unsigned threads = 1,
                          FrobeniusConvention convention = FrobeniusConvention::kFixed) {
  if (field->degree() > 20 || projective_point_count(field->degree()) > kCensusMaxPoints) {
    throw std::length_error("field too large for census enumeration");
  }
  const FieldPtr f = common_field(lambda.field(), field);
  if (!f->same_as(*field)) throw std::invalid_argument("lambda must be defined over the census field");
  const ThetaConstants lam = lambda.embed_into(f);
  const std::vector<ProjPoint> points = all_points(f);
  const std::size_t max_steps = points.size() * (convention == FrobeniusConvention::kTwisted ? f->degree() : 1) + 1;

  std::vector<std::optional<CensusRow>> rows(points.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const OrbitReport r = iterate_orbit(lam, points[i], max_steps, convention);
      rows[i] = CensusRow{points[i], r.classification, r.preperiod, r.period, r.hit_base_locus_at,
                          kummer_eval(lam, points[i]).is_zero()};
    }
  };
  threads = std::max(1U, threads);
  if (threads == 1) {
    work(0, points.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (points.size() + threads - 1) / threads;
    for (std::size_t begin = 0; begin < points.size(); begin += chunk) {
      pool.emplace_back(work, begin, std::min(points.size(), begin + chunk));
    }
  }

  CensusTable table{f, lam, convention, {}, 0, 0, 0, 0, 0, {}, {}};
  table.rows.reserve(rows.size());
  for (auto& r : rows) table.rows.push_back(std::move(*r));
  std::sort(table.rows.begin(), table.rows.end(),
            [](const CensusRow& a, const CensusRow& b) { return a.point < b.point; });
  for (const CensusRow& r : table.rows) {
    switch (r.classification) {
      case OrbitClass::kPeriodic:
        ++table.periodic;
        if (r.on_boundary) ++table.periodic_on_boundary;
        break;
      case OrbitClass::kPreperiodic: ++table.preperiodic; break;
      case OrbitClass::kDestabilized: ++table.destabilized; break;
      case OrbitClass::kUnresolved: ++table.unresolved; break;
    }
    if (r.period) ++table.cycle_lengths[*r.period];
    if (r.destab_step) ++table.destab_depths[*r.destab_step];
  }
  return table;
}

// ---- preimage tower ----

struct TowerLevel {
  FieldPtr field;
  // Field degree over the starting field at this level.
  std::uint64_t cumulative_degree = 1;
  std::uint64_t degree_ratio = 1;
  std::vector<ProjPoint> points;
  // Targets whose Verschiebung fiber was a line or empty; lines are recorded
  // but not expanded into further levels.
  std::size_t line_fibers = 0;
  std::size_t empty_fibers = 0;
};

struct TowerReport {
  std::size_t depth = 0;
  std::vector<TowerLevel> levels;
  std::vector<std::uint64_t> degree_ratios;
};

// Level 0 is {x}. Level m collects the absolute-Frobenius preimages of level
// m-1: Verschiebung fibers followed by coordinatewise square roots. Square
// roots stay inside the field, so every degree jump comes from a root
// quadratic that needs the quadratic extension.
inline TowerReport preimage_tower(const ThetaConstants& lambda, const ProjPoint& x, std::size_t depth) {
  if (depth < 1) throw std::invalid_argument("depth must be at least 1");
  FieldPtr field = common_field(lambda.field(), x.field());
  if (depth >= 32 || (std::uint64_t{field->degree()} << depth) > kMaxFieldBits) {
    throw std::length_error("tower depth exceeds the field size cap of " + std::to_string(kMaxFieldBits) + " bits");
  }
  TowerReport report;
  report.depth = depth;
  report.levels.push_back(TowerLevel{field, 1, 1, {x.embed_into(field)}, 0, 0});

  for (std::size_t m = 1; m <= depth; ++m) {
    const TowerLevel& prev = report.levels.back();
    TowerLevel level{prev.field, prev.cumulative_degree, 1, {}, 0, 0};
    std::vector<ProjPoint> found;
    const ThetaConstants lam = lambda.embed_into(prev.field);
    for (const ProjPoint& y : prev.points) {
      const FiberResult fiber = preimage(lam, y);
      if (std::holds_alternative<LineFiber>(fiber)) {
        ++level.line_fibers;
      } else if (std::holds_alternative<EmptyFiber>(fiber)) {
        ++level.empty_fibers;
      } else {
        const auto& four = std::get<GenericFour>(fiber);
        if (four.derivation.extension_used && level.degree_ratio == 1) {
          level.degree_ratio = 2;
          level.field = quadratic_extension(prev.field);
        }
        for (const ProjPoint& z : four.points) found.push_back(z.sqrt());
      }
    }
    std::set<ProjPoint> unique;
    for (const ProjPoint& p : found) unique.insert(p.embed_into(level.field));
    level.points.assign(unique.begin(), unique.end());
    level.cumulative_degree *= level.degree_ratio;
    report.degree_ratios.push_back(level.degree_ratio);
    report.levels.push_back(std::move(level));
  }
  return report;
}

// ---- finite-field shadow of the Frobenius-semistable locus ----

struct OmegaFrobReport {
  bool exhaustive = false;
  std::uint64_t seed = 0;
  std::size_t max_depth = 0;
  std::size_t total = 0;
  // Points whose forward orbit reaches (1:1:1:1) within the horizon.
  std::vector<ProjPoint> destabilized;
  // Points that never do (for sampled runs: not within max_depth steps).
  std::vector<ProjPoint> semistable;

  double destabilized_fraction() const {
    return total == 0 ? 0.0 : static_cast<double>(destabilized.size()) / static_cast<double>(total);
  }
};

// Exhaustive over P^3(F) when the census cap allows, otherwise `samples`
// seeded random points iterated for max_depth steps.
inline OmegaFrobReport classify_omega_frob_sample(const ThetaConstants& lambda, const FieldPtr& field,
                                                  std::size_t max_depth, std::uint64_t seed = 1,
                                                  std::size_t samples = 1000, unsigned threads = 1) {
  OmegaFrobReport report;
  report.seed = seed;
  report.max_depth = max_depth;
  if (field->degree() <= 20 && projective_point_count(field->degree()) <= kCensusMaxPoints) {
    report.exhaustive = true;
    const CensusTable table = census(lambda, field, threads);
    for (const CensusRow& r : table.rows) {
      (r.classification == OrbitClass::kDestabilized ? report.destabilized : report.semistable).push_back(r.point);
    }
    report.total = table.rows.size();
    return report;
  }
  std::mt19937_64 rng(seed);
  const ThetaConstants lam = lambda.embed_into(common_field(lambda.field(), field));
  const FieldPtr& f = lam.field();
  for (std::size_t i = 0; i < samples; ++i) {
    std::optional<ProjPoint> p;
    while (!p) {
      p = ProjPoint::try_make(Coords{FieldElement::random(f, rng), FieldElement::random(f, rng),
                                     FieldElement::random(f, rng), FieldElement::random(f, rng)});
    }
    const OrbitReport r = iterate_orbit(lam, *p, std::max<std::size_t>(1, max_depth));
    (r.classification == OrbitClass::kDestabilized ? report.destabilized : report.semistable).push_back(*p);
  }
  report.total = samples;
  return report;
}

}  // namespace frobdyn

#endif  // FROBDYN_DYNAMICS_HPP
