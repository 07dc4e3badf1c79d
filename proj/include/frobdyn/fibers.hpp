// Closed-form fibers of the Verschiebung x -> (lambda_g P_g(x))_g.
//
// For a target a put b_g = a_g / lambda_g and c = sqrt(b_00). With
//   alpha = x00 + x11, beta = x01 + x10, gamma = x00 + x01, delta = x11 + x10
// the system P_g = b_g forces {alpha, beta} to be the roots of
// t^2 + c t + (b01 + b10) and {gamma, delta} those of t^2 + c t + (b11 + b10),
// and then c x00 = b10 + gamma alpha. When c != 0 this gives four points, one
// per labelling of the roots. When c = 0 the target lies on H = {x00 = 0}:
// there is no solution unless b01 b10 + b01 b11 + b10 b11 = 0, in which case
// the fiber is the line H1 n {(alpha+gamma) x00 + alpha x01 + gamma x11 = 0}
// through (1:1:1:1).
#ifndef FROBDYN_FIBERS_HPP
#define FROBDYN_FIBERS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <variant>
#include <vector>

#include "frobdyn/gf2k.hpp"
#include "frobdyn/group.hpp"
#include "frobdyn/moduli.hpp"

namespace frobdyn {

struct FiberDerivation {
  Coords b;
  FieldElement c;
  FieldElement alpha, beta, gamma, delta;
  bool extension_used = false;
};

struct GenericFour {
  std::array<ProjPoint, 4> points;
  FiberDerivation derivation;
};

struct EmptyFiber {
  // b01 b10 + b01 b11 + b10 b11, nonzero.
  FieldElement obstruction;
};

// The projective line H1 n H_{alpha,gamma}, spanned by `through` = (1:1:1:1)
// and `other`.
struct LineFiber {
  Coords h1;
  Coords h_alpha_gamma;
  FieldElement alpha, gamma;
  ProjPoint through;
  ProjPoint other;

  // s * through + t * other; empty for s = t = 0.
  std::optional<ProjPoint> point(const FieldElement& s, const FieldElement& t) const {
    Coords c;
    for (std::size_t i = 0; i < 4; ++i) c[i] = s * through.coords()[i] + t * other.coords()[i];
    return ProjPoint::try_make(std::move(c));
  }

  // All points of the line over its field of definition.
  std::vector<ProjPoint> rational_points() const {
    const FieldPtr& f = through.field();
    std::vector<ProjPoint> out{other};
    for (const FieldElement& s : all_elements(f)) out.push_back(*point(FieldElement::one(f), s));
    return out;
  }
};

using FiberResult = std::variant<GenericFour, EmptyFiber, LineFiber>;

inline const char* fiber_kind(const FiberResult& r) {
  switch (r.index()) {
    case 0: return "four";
    case 1: return "empty";
    default: return "line";
  }
}

inline bool extension_used(const FiberResult& r) {
  const auto* four = std::get_if<GenericFour>(&r);
  return four != nullptr && four->derivation.extension_used;
}

namespace detail {

inline FieldElement dot(const Coords& h, const Coords& x) {
  return h[0] * x[0] + h[1] * x[1] + h[2] * x[2] + h[3] * x[3];
}

// A second basis vector of the kernel of the 2x4 system {h1, h2}, chosen from
// the reduced row echelon form. `skip` is a known kernel vector.
inline ProjPoint second_kernel_vector(Coords r1, Coords r2, const ProjPoint& skip) {
  const FieldPtr f = r1[0].field();
  std::array<Coords*, 2> rows = {&r1, &r2};
  std::array<int, 2> pivot = {-1, -1};
  std::size_t rank = 0;
  for (std::size_t col = 0; col < 4 && rank < 2; ++col) {
    std::size_t sel = rank;
    while (sel < 2 && (*rows[sel])[col].is_zero()) ++sel;
    if (sel == 2) continue;
    std::swap(rows[rank], rows[sel]);
    const FieldElement inv = (*rows[rank])[col].inv();
    for (auto& v : *rows[rank]) v *= inv;
    for (std::size_t r = 0; r < 2; ++r) {
      if (r == rank || (*rows[r])[col].is_zero()) continue;
      const FieldElement factor = (*rows[r])[col];
      for (std::size_t k = 0; k < 4; ++k) (*rows[r])[k] += factor * (*rows[rank])[k];
    }
    pivot[rank++] = static_cast<int>(col);
  }
  for (std::size_t free = 0; free < 4; ++free) {
    if (static_cast<int>(free) == pivot[0] || static_cast<int>(free) == pivot[1]) continue;
    Coords v{FieldElement::zero(f), FieldElement::zero(f), FieldElement::zero(f), FieldElement::zero(f)};
    v[free] = FieldElement::one(f);
    for (std::size_t r = 0; r < rank; ++r) v[static_cast<std::size_t>(pivot[r])] = (*rows[r])[free];
    ProjPoint p(v);
    if (!(p == skip)) return p;
  }
  throw std::logic_error("line fiber kernel is degenerate");
}

}  // namespace detail

// Fiber of the Verschiebung over `target`. Points are over the common field
// of lambda and the target, or its quadratic extension when one of the two
// root quadratics does not split there.
inline FiberResult preimage(const ThetaConstants& lambda, const ProjPoint& target) {
  const FieldPtr base = common_field(lambda.field(), target.field());
  const ThetaConstants lam = lambda.embed_into(base);
  const ProjPoint a = target.embed_into(base);

  Coords b;
  for (GroupElement g : kGroup) b[g.index()] = a[g] / lam[g];
  const FieldElement& b00 = b[0];
  const FieldElement& b01 = b[1];
  const FieldElement& b10 = b[2];
  const FieldElement& b11 = b[3];

  if (b00.is_zero()) {
    const FieldElement obstruction = b01 * b10 + b01 * b11 + b10 * b11;
    if (!obstruction.is_zero()) return EmptyFiber{obstruction};
    const FieldElement alpha = (b01 + b10).sqrt();
    const FieldElement gamma = (b11 + b10).sqrt();
    const FieldElement one = FieldElement::one(base), zero = FieldElement::zero(base);
    const Coords h1{one, one, one, one};
    const Coords hag{alpha + gamma, alpha, zero, gamma};
    const ProjPoint through = ProjPoint::base_point(base);
    return LineFiber{h1, hag, alpha, gamma, through, detail::second_kernel_vector(h1, hag, through)};
  }

  FieldPtr field = base;
  FieldElement c = b00.sqrt();
  auto ab = artin_schreier_roots(c, b01 + b10);
  auto gd = artin_schreier_roots(c, b11 + b10);
  const bool extend = ab.empty() || gd.empty();
  if (extend) {
    field = quadratic_extension(base);
    for (auto& v : b) v = v.embed_into(field);
    c = c.embed_into(field);
    ab = artin_schreier_roots(c, b[1] + b[2]);
    gd = artin_schreier_roots(c, b[3] + b[2]);
    if (ab.size() != 2 || gd.size() != 2) throw std::logic_error("quadratic failed to split in the extension");
  }

  FiberDerivation d{b, c, ab[0], ab[1], gd[0], gd[1], extend};
  const FieldElement cinv = c.inv();
  const FieldElement& b10e = b[2];
  auto point = [&](const FieldElement& al, const FieldElement& be, const FieldElement& ga, const FieldElement& de) {
    return ProjPoint(Coords{(b10e + ga * al) * cinv, (b10e + ga * be) * cinv, (b10e + be * de) * cinv,
                            (b10e + de * al) * cinv});
  };
  return GenericFour{{point(d.alpha, d.beta, d.gamma, d.delta), point(d.beta, d.alpha, d.gamma, d.delta),
                      point(d.alpha, d.beta, d.delta, d.gamma), point(d.beta, d.alpha, d.delta, d.gamma)},
                     d};
}

inline constexpr unsigned kEmptyFiberSearchMaxDegree = 12;

namespace detail {

inline bool maps_to(const ThetaConstants& lam, const ProjPoint& x, const ProjPoint& target) {
  const auto y = verschiebung(lam, x);
  return y && *y == target.embed_into(y->field());
}

}  // namespace detail

// Independent forward check of a fiber. Points are pushed through the
// Verschiebung. An empty fiber is confirmed by searching the plane H1 (where
// P_00 vanishes, a necessary condition for a target on H) when the field has
// at most 2^12 elements; beyond that only the target's position is rechecked.
inline bool verify_fiber(const ThetaConstants& lambda, const ProjPoint& target, const FiberResult& result,
                         std::uint64_t seed = 0) {
  const FieldPtr base = common_field(lambda.field(), target.field());
  if (const auto* four = std::get_if<GenericFour>(&result)) {
    const auto& pts = four->points;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) {
        if (pts[i] == pts[j]) return false;
      }
      if (!detail::maps_to(lambda.embed_into(pts[i].field()), pts[i], target)) return false;
    }
    return true;
  }
  const ProjPoint a = target.embed_into(base);
  if (const auto* line = std::get_if<LineFiber>(&result)) {
    if (!line->through.is_base_point()) return false;
    for (const ProjPoint* p : {&line->through, &line->other}) {
      if (!detail::dot(line->h1, p->coords()).is_zero() || !detail::dot(line->h_alpha_gamma, p->coords()).is_zero()) {
        return false;
      }
    }
    const FieldPtr& f = line->through.field();
    const ThetaConstants lam = lambda.embed_into(f);
    std::vector<ProjPoint> samples;
    if (f->degree() <= 8) {
      samples = line->rational_points();
    } else {
      std::mt19937_64 rng(seed);
      for (int i = 0; i < 16; ++i) {
        if (auto p = line->point(FieldElement::random(f, rng), FieldElement::random(f, rng))) samples.push_back(*p);
      }
    }
    for (const ProjPoint& p : samples) {
      if (p.is_base_point()) {
        if (verschiebung(lam, p)) return false;
      } else if (!detail::maps_to(lam, p, a)) {
        return false;
      }
    }
    return true;
  }
  if (!on_H(a)) return false;
  if (base->degree() > kEmptyFiberSearchMaxDegree) return true;
  const ThetaConstants lam = lambda.embed_into(base);
  const std::vector<FieldElement> elems = all_elements(base);
  const FieldElement one = FieldElement::one(base), zero = FieldElement::zero(base);
  // Points of H1: x00 = x01 + x10 + x11 with (x01 : x10 : x11) in P^2.
  for (std::size_t lead = 1; lead < 4; ++lead) {
    const std::size_t free = 3 - lead;
    const std::size_t total = free == 0 ? 1 : free == 1 ? elems.size() : elems.size() * elems.size();
    for (std::size_t idx = 0; idx < total; ++idx) {
      Coords c{zero, zero, zero, zero};
      c[lead] = one;
      std::size_t rest = idx;
      for (std::size_t j = 3; j > lead; --j) {
        c[j] = elems[rest % elems.size()];
        rest /= elems.size();
      }
      c[0] = c[1] + c[2] + c[3];
      const ProjPoint x(c);
      if (detail::maps_to(lam, x, a)) return false;
    }
  }
  return true;
}

struct SurjectivityWitness {
  GroupElement shift;
  ProjPoint translated;
  FiberResult fiber;
};

// Translate y by the first g with y_g != 0 so the shifted target is off H,
// then take its four-point fiber.
inline SurjectivityWitness surjectivity_witness(const ThetaConstants& lambda, const ProjPoint& y) {
  for (GroupElement g : kGroup) {
    if (y[g].is_zero()) continue;
    ProjPoint shifted = translate(g, y);
    FiberResult fiber = preimage(lambda, shifted);
    return {g, std::move(shifted), std::move(fiber)};
  }
  throw std::logic_error("projective point with all coordinates zero");
}

}  // namespace frobdyn

#endif  // FROBDYN_FIBERS_HPP
